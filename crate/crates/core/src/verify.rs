//! The identity-verification suite.
//!
//! A run fixes one reflection group configuration and walks the degrees
//! `n = 0..=max_n`, checking every identity the crate implements: the
//! explicit low-order table, the lowering actions of the Dunkl-Dirac
//! operator, the spherical decomposition, the Rodrigues formula, the
//! differential equation, the three-term recurrence, the Laguerre closed
//! form with its coefficient recurrences, and the module-rank count. For
//! hyperoctahedral groups the Gaussian pairings are checked symbolically
//! (exact Gamma-expression equality) and cross-checked by tensor
//! quadrature; for the other groups the operator identities stay exact and
//! orthogonality is confirmed by seeded Monte Carlo.
//!
//! Every check becomes one record; a fixed configuration and seed yield a
//! byte-identical report.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::dunkl::{
    dunkl_dirac, gamma_sph, gaussian_dirac, spherical_identity_residual, GaussianDressed,
};
use crate::error::{Error, Result};
use crate::hermite::{
    c_coefficient, c_coefficient_or_zero, coeff_recurrence_check, hermite_generate,
    laguerre_oracle_compare, three_term_next, HermiteFamily,
};
use crate::integrate::{
    adjoint_check, gamma_norm, gamma_norm_closed_form, inner_product_h, inner_product_h_full,
    pairing_closed_form, radial_to_poly, spherical_pairing_z2, GammaExpr,
};
use crate::monogenic::{module_basis, orthonormalize_z2, MonogenicBasis};
use crate::multipoly::CPoly;
use crate::numeric::{mc_inner_product, numeric_inner_product};
use crate::rat::{format_rat, parse_rat, rint, Rat};
use crate::reflection::{build_group, Family, ReflectionData};

/// Relative tolerance for quadrature-versus-symbolic comparisons.
pub const QUAD_REL_TOL: f64 = 1e-10;
/// Monte Carlo acceptance band in standard errors.
pub const MC_SIGMA: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub family: Family,
    /// Dimension `d`, or the dihedral order for `I2`.
    pub size: usize,
    pub kappa: Vec<Rat>,
    pub max_n: usize,
    pub max_s: usize,
    pub quad_order: Option<usize>,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            family: Family::Z2,
            size: 2,
            kappa: vec![parse_rat("1/2").unwrap(), parse_rat("1/3").unwrap()],
            max_n: 3,
            max_s: 8,
            quad_order: None,
            mc_samples: 1_000_000,
            seed: 42,
        }
    }
}

/// JSON/flag-level configuration with every field optional, so a config
/// file and command-line flags can be layered (flags win).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PartialConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl PartialConfig {
    /// Overlays `self` on `base`: fields present here win.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            family: self.family.or(base.family),
            d: self.d.or(base.d),
            kappa: self.kappa.or(base.kappa),
            max_n: self.max_n.or(base.max_n),
            max_s: self.max_s.or(base.max_s),
            quad_order: self.quad_order.or(base.quad_order),
            mc_samples: self.mc_samples.or(base.mc_samples),
            seed: self.seed.or(base.seed),
        }
    }

    pub fn resolve(self) -> Result<VerifyConfig> {
        let defaults = VerifyConfig::default();
        let family = match self.family {
            Some(s) => Family::parse(&s)?,
            None => defaults.family,
        };
        let kappa = match self.kappa {
            Some(list) => list.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
            None => defaults.kappa,
        };
        Ok(VerifyConfig {
            family,
            size: self.d.unwrap_or(defaults.size),
            kappa,
            max_n: self.max_n.unwrap_or(defaults.max_n),
            max_s: self.max_s.unwrap_or(defaults.max_s),
            quad_order: self.quad_order.or(defaults.quad_order),
            mc_samples: self.mc_samples.unwrap_or(defaults.mc_samples),
            seed: self.seed.unwrap_or(defaults.seed),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "exact-pass")]
    ExactPass,
    #[serde(rename = "numeric-pass")]
    NumericPass,
    #[serde(rename = "fail")]
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub exact_pass: usize,
    pub numeric_pass: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub family: String,
    pub d: usize,
    pub kappa: Vec<String>,
    pub gamma_kappa: String,
    pub mu: String,
    pub max_n: usize,
    pub max_s: usize,
    pub quad_order: Option<usize>,
    pub mc_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.summary.failed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!(
            "verification: family={} d={} kappa={} (gamma_kappa={}, mu={}) max_n={} max_s={} seed={}\n",
            c.family,
            c.d,
            c.kappa.join(","),
            c.gamma_kappa,
            c.mu,
            c.max_n,
            c.max_s,
            c.seed
        ));
        let name_width = self
            .checks
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(0);
        for r in &self.checks {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = match r.status {
                CheckStatus::ExactPass => "exact-pass",
                CheckStatus::NumericPass => "numeric-pass",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!(
                "  {:<name_width$}  {:<24}  {}\n",
                r.name,
                params.join(" "),
                status
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!("      witness: {w}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} checks, {} exact, {} numeric, {} failed\n",
            s.total, s.exact_pass, s.numeric_pass, s.failed
        ));
        out
    }
}

struct RecordBuilder {
    records: Vec<CheckRecord>,
}

impl RecordBuilder {
    fn new() -> Self {
        RecordBuilder { records: Vec::new() }
    }

    fn push(
        &mut self,
        name: &str,
        identity: &str,
        params: &[(&str, String)],
        status: CheckStatus,
        witness: Option<String>,
    ) {
        self.records.push(CheckRecord {
            name: name.to_string(),
            identity: identity.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            status,
            witness,
        });
    }

    fn exact(&mut self, name: &str, identity: &str, params: &[(&str, String)], ok: bool, witness: Option<String>) {
        self.push(
            name,
            identity,
            params,
            if ok { CheckStatus::ExactPass } else { CheckStatus::Fail },
            if ok { None } else { witness },
        );
    }

    fn numeric(&mut self, name: &str, identity: &str, params: &[(&str, String)], ok: bool, witness: Option<String>) {
        self.push(
            name,
            identity,
            params,
            if ok { CheckStatus::NumericPass } else { CheckStatus::Fail },
            if ok { None } else { witness },
        );
    }
}

/// Artifacts shared by the per-degree checks.
struct DegreeArtifacts {
    n: usize,
    basis: MonogenicBasis,
    families: Vec<HermiteFamily>,
}

fn build_degree_artifacts(rd: &ReflectionData, cfg: &VerifyConfig, n: usize) -> Result<DegreeArtifacts> {
    let basis = module_basis(rd, n)?;
    let basis = if rd.family() == Family::Z2 {
        orthonormalize_z2(rd, &basis)?
    } else {
        basis
    };
    let families = basis
        .elements()
        .iter()
        .map(|p| hermite_generate(rd, p, cfg.max_s))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeArtifacts { n, basis, families })
}

/// The explicit radial templates of `H_0..H_4`.
fn explicit_radial_template(s: usize, mu: &Rat, n: usize) -> Vec<Rat> {
    let mun = mu + rint(2 * n as i64);
    match s {
        0 => vec![rint(1)],
        1 => vec![rint(0), rint(-2)],
        2 => vec![rint(2) * &mun, rint(0), rint(4)],
        3 => vec![rint(0), rint(-4) * (&mun + rint(2)), rint(0), rint(-8)],
        4 => vec![
            rint(4) * (&mun + rint(2)) * &mun,
            rint(0),
            rint(16) * (&mun + rint(2)),
            rint(0),
            rint(16),
        ],
        _ => unreachable!("template only covers s <= 4"),
    }
}

/// Deterministic pseudo-random homogeneous polynomial of degree `m`.
fn random_homogeneous(d: usize, m: usize, seed: u64) -> CPoly {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut p = CPoly::zero(d);
    for _ in 0..4 {
        let mut exps = vec![0u32; d];
        for _ in 0..m {
            exps[rng.gen_range(0..d)] += 1;
        }
        let mask = rng.gen_range(0..(1u32 << d));
        let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        let c = rint(rng.gen_range(-5..=5));
        let mut mono = CPoly::constant(Multivector::blade(d, &idx).scale(&c));
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                mono = &mono * &CPoly::var(d, i + 1);
            }
        }
        p = &p + &mono;
    }
    if p.is_zero() && m == 0 {
        return CPoly::one(d);
    }
    if p.is_zero() {
        // all four draws cancelled; fall back to a plain monomial
        let mut mono = CPoly::one(d);
        for _ in 0..m {
            mono = &mono * &CPoly::var(d, 1);
        }
        return mono;
    }
    p
}

fn random_radial_coeffs(rng: &mut impl Rng, max_degree: usize) -> Vec<Rat> {
    (0..=max_degree)
        .map(|_| rint(rng.gen_range(-3..=3)))
        .collect()
}

fn lowering_eigenvalue(s: usize, mu: &Rat, n: usize) -> Rat {
    if s % 2 == 0 {
        rint(-(s as i64))
    } else {
        -(rint((s + 2 * n) as i64) + mu - rint(1))
    }
}

fn relative_close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(scale)
}

fn checks_for_degree(
    rd: &ReflectionData,
    cfg: &VerifyConfig,
    art: &DegreeArtifacts,
) -> Result<Vec<CheckRecord>> {
    let mut rb = RecordBuilder::new();
    let n = art.n;
    let mu = rd.mu();
    let d = rd.dim();
    let ns = n.to_string();

    // module rank
    {
        let b = &art.basis;
        let ok = b.rank_matches();
        rb.exact(
            "module-rank",
            "module rank of M_n equals C(n+d-2, n) and blade multiples span ker D_h",
            &[("n", ns.clone())],
            ok,
            Some(format!(
                "measured rank {} (expected {}), kernel dimension {}, spans kernel: {}",
                b.rank(),
                b.expected_rank(),
                b.kernel_dim(),
                b.spans_kernel()
            )),
        );
    }

    if art.basis.rank() == 0 {
        return Ok(rb.records);
    }
    let p_n = &art.basis.elements()[0];
    let family = &art.families[0];
    let polys = family.polys();

    // explicit low-order table
    {
        let top = cfg.max_s.min(4);
        let mut witness = None;
        let mut ok = true;
        for s in 0..=top {
            let mut expect = CPoly::zero(d);
            for (j, c) in explicit_radial_template(s, mu, n).iter().enumerate() {
                expect = &expect + &CPoly::vector_power(d, j).scale(c).poly_mul(p_n)?;
            }
            if polys[s] != expect {
                ok = false;
                witness = Some(format!("H_{s} differs from the explicit template"));
                break;
            }
        }
        rb.exact(
            "explicit-table",
            "H_0..H_4 match the explicit low-order table",
            &[("n", ns.clone())],
            ok,
            witness,
        );
    }

    // lowering action on x^s P_n
    {
        let mut ok = true;
        let mut witness = None;
        let mut x_pow_p = p_n.clone();
        for s in 1..=cfg.max_s {
            x_pow_p = CPoly::x_poly(d).poly_mul(&x_pow_p)?; // x^s P_n
            let got = dunkl_dirac(rd, &x_pow_p)?;
            let expect = CPoly::vector_power(d, s - 1)
                .poly_mul(p_n)?
                .scale(&lowering_eigenvalue(s, mu, n));
            if got != expect {
                ok = false;
                witness = Some(format!("D_h(x^{s} P_n) mismatch"));
                break;
            }
        }
        rb.exact(
            "lowering-action",
            "D_h(x^s P_n) = -s x^(s-1) P_n (even s), -(s+mu+2n-1) x^(s-1) P_n (odd s)",
            &[("n", ns.clone())],
            ok,
            witness,
        );
    }

    // spherical eigenvalues
    {
        let gp = gamma_sph(rd, p_n)?;
        let ok1 = gp == p_n.scale(&rint(-(n as i64)));
        let xp = CPoly::x_poly(d).poly_mul(p_n)?;
        let gxp = gamma_sph(rd, &xp)?;
        let ok2 = gxp == xp.scale(&(mu + rint(n as i64) - rint(1)));
        rb.exact(
            "spherical-eigenvalues",
            "Gamma_kappa P_n = -n P_n and Gamma_kappa(x P_n) = (mu+n-1) x P_n",
            &[("n", ns.clone())],
            ok1 && ok2,
            Some(format!("eigenrelation on P_n: {ok1}, on x P_n: {ok2}")),
        );
    }

    // Rodrigues: repeated Gaussian-dressed applications reproduce the family
    {
        let mut dressed = GaussianDressed::new(p_n.clone());
        let mut ok = true;
        let mut witness = None;
        for s in 1..=cfg.max_s {
            dressed = gaussian_dirac(rd, &dressed)?;
            if dressed.poly != polys[s] {
                ok = false;
                witness = Some(format!("dressed application {s} differs from H_{s}"));
                break;
            }
        }
        rb.exact(
            "rodrigues",
            "s-fold Dirac application under the Gaussian yields H_s",
            &[("n", ns.clone())],
            ok,
            witness,
        );
    }

    // lowering ladder and differential equation
    {
        let mut ok = dunkl_dirac(rd, &polys[0])?.is_zero();
        let mut witness = if ok { None } else { Some("D_h H_0 != 0".to_string()) };
        for s in 1..=cfg.max_s {
            let got = dunkl_dirac(rd, &polys[s])?;
            let expect = polys[s - 1].scale(&c_coefficient(s, mu, n)?);
            if got != expect {
                ok = false;
                witness = Some(format!("D_h H_{s} != C({s}) H_{}", s - 1));
                break;
            }
        }
        rb.exact(
            "hermite-lowering",
            "D_h H_s = C(s, mu, n) H_(s-1) with C(0) = 0",
            &[("n", ns.clone())],
            ok,
            witness,
        );

        let mut ok = true;
        let mut witness = None;
        for s in 0..=cfg.max_s {
            let res = crate::hermite::differential_equation_residual(rd, &polys[s], s, mu, n)?;
            if !res.is_zero() {
                ok = false;
                witness = Some(format!("residual at s = {s}: {res}"));
                break;
            }
        }
        rb.exact(
            "differential-equation",
            "D_h^2 H_s - 2x D_h H_s - C(s, mu, n) H_s = 0",
            &[("n", ns.clone())],
            ok,
            witness,
        );
    }

    // three-term recurrence
    {
        let mut ok = true;
        let mut witness = None;
        for s in 0..cfg.max_s {
            let prev = if s > 0 { Some(&polys[s - 1]) } else { None };
            let next = three_term_next(rd, &polys[s], prev, s, mu, n)?;
            if next != polys[s + 1] {
                ok = false;
                witness = Some(format!("recurrence at s = {s}"));
                break;
            }
        }
        rb.exact(
            "three-term",
            "H_(s+1) = -2x H_s + C(s, mu, n) H_(s-1)",
            &[("n", ns.clone())],
            ok,
            witness,
        );
    }

    // Laguerre closed form and coefficient recurrences
    {
        let mut ok = true;
        let mut witness = None;
        for s in 0..=cfg.max_s {
            if !laguerre_oracle_compare(rd, family, s)? {
                ok = false;
                witness = Some(format!("Laguerre form differs at s = {s}"));
                break;
            }
        }
        rb.exact(
            "laguerre-form",
            "H_s equals the scaled generalized Laguerre closed form",
            &[("n", ns.clone())],
            ok,
            witness,
        );
        let ok = coeff_recurrence_check(family);
        rb.exact(
            "coeff-recurrence",
            "radial coefficients satisfy the recurrences, ladders, and seeds",
            &[("n", ns.clone())],
            ok,
            Some("a recurrence or seed failed".into()),
        );
    }

    if rd.family() == Family::Z2 {
        // exact orthogonality per generator
        for (j, fam) in art.families.iter().enumerate() {
            let mut ok = true;
            let mut witness = None;
            'outer: for s in 0..=cfg.max_s {
                for t in (s + 1)..=cfg.max_s {
                    let ip = inner_product_h(rd, &fam.polys()[s], &fam.polys()[t])?;
                    if !ip.is_zero() {
                        ok = false;
                        witness = Some(format!("(H_{s}, H_{t})_H = {ip}"));
                        break 'outer;
                    }
                    if s % 2 != t % 2 {
                        // mixed parity: the full Clifford-valued pairing vanishes
                        let full = inner_product_h_full(rd, &fam.polys()[s], &fam.polys()[t])?;
                        if !full.is_empty() {
                            ok = false;
                            witness = Some(format!("full pairing survives for (H_{s}, H_{t})"));
                            break 'outer;
                        }
                    }
                }
            }
            rb.exact(
                "orthogonality",
                "(H_s, H_t)_H = 0 for s != t (exact)",
                &[("n", ns.clone()), ("j", j.to_string())],
                ok,
                witness,
            );
        }

        // closed-form pairings of x-power multiples
        {
            let norm = spherical_pairing_z2(rd, p_n, p_n)?;
            let mut ok = true;
            let mut witness = None;
            let top = cfg.max_s.min(6);
            'cf: for s in 0..=top {
                for t in 0..=top {
                    let f = CPoly::vector_power(d, s).poly_mul(p_n)?;
                    let g = CPoly::vector_power(d, t).poly_mul(p_n)?;
                    let lhs = inner_product_h(rd, &f, &g)?;
                    let rhs = pairing_closed_form(s, t, n, mu, &norm)?;
                    if lhs != rhs {
                        ok = false;
                        witness = Some(format!("(x^{s} P, x^{t} P): engine {lhs} vs closed form {rhs}"));
                        break 'cf;
                    }
                }
            }
            rb.exact(
                "closed-form-pairing",
                "(x^s P_n, x^t P_n)_H matches the parity-signed Gamma closed form",
                &[("n", ns.clone())],
                ok,
                witness,
            );
        }

        // adjointness for radial multipliers
        {
            let mut ok = true;
            let mut witness = None;
            'adj: for ps in 0..=4usize {
                for qs in 0..=4usize {
                    let mut p = vec![Rat::zero(); ps + 1];
                    p[ps] = rint(1);
                    let mut q = vec![Rat::zero(); qs + 1];
                    q[qs] = rint(1);
                    if !adjoint_check(rd, &p, &q, p_n)? {
                        ok = false;
                        witness = Some(format!("monomial case p = x^{ps}, q = x^{qs}"));
                        break 'adj;
                    }
                }
            }
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(cfg.seed ^ (n as u64) << 8);
            for trial in 0..2 {
                let p = random_radial_coeffs(&mut rng, 4);
                let q = random_radial_coeffs(&mut rng, 4);
                if !adjoint_check(rd, &p, &q, p_n)? {
                    ok = false;
                    witness = Some(format!("random radial pair, trial {trial}"));
                }
            }
            rb.exact(
                "adjointness",
                "(D_+(p P_n), q P_n)_H = (p P_n, D_h(q P_n))_H for radial p, q of degree <= 4",
                &[("n", ns.clone())],
                ok,
                witness,
            );
        }

        // orthogonality across distinct generators
        if art.basis.rank() >= 2 {
            let mut ok = true;
            let mut witness = None;
            let top = cfg.max_s.min(4);
            'cross: for s in 0..=top {
                for i in 0..art.basis.rank() {
                    for j in (i + 1)..art.basis.rank() {
                        let ip = inner_product_h(
                            rd,
                            &art.families[i].polys()[s],
                            &art.families[j].polys()[s],
                        )?;
                        if !ip.is_zero() {
                            ok = false;
                            witness =
                                Some(format!("(H_(s,P_{i}), H_(s,P_{j})) != 0 at s = {s}: {ip}"));
                            break 'cross;
                        }
                    }
                }
            }
            rb.exact(
                "cross-orthogonality",
                "(H_(s,P_i), H_(s,P_j))_H = 0 for i != j after orthogonalization",
                &[("n", ns.clone())],
                ok,
                witness,
            );
        }

        // norms: closed form and the C-ladder
        for (j, fam) in art.families.iter().enumerate() {
            let mut ok = true;
            let mut witness = None;
            let mut previous: Option<GammaExpr> = None;
            for s in 0..=cfg.max_s {
                let engine = gamma_norm(rd, fam, &art.basis, s, j)?;
                let closed = gamma_norm_closed_form(s, mu, n, d)?;
                if engine != closed {
                    ok = false;
                    witness = Some(format!("s = {s}: engine {engine} vs closed form {closed}"));
                    break;
                }
                if engine.to_f64() <= 0.0 {
                    ok = false;
                    witness = Some(format!("norm at s = {s} not positive: {engine}"));
                    break;
                }
                if let Some(prev) = &previous {
                    match engine.ratio_to(prev) {
                        Some(r) if r == c_coefficient(s, mu, n)? => {}
                        other => {
                            ok = false;
                            witness = Some(format!(
                                "ladder ratio at s = {s}: {:?} vs C({s})",
                                other.map(|r| format_rat(&r))
                            ));
                            break;
                        }
                    }
                }
                previous = Some(engine);
            }
            rb.exact(
                "norm-closed-form",
                "gamma_(s,mu,n) matches 4^s (s/2)! pi^(d/2) Gamma(..)/Gamma(d/2); gamma_s/gamma_(s-1) = C(s)",
                &[("n", ns.clone()), ("j", j.to_string())],
                ok,
                witness,
            );
        }

        // quadrature cross-check
        {
            let pairs: &[(usize, usize)] = &[(0, 0), (1, 1), (2, 2), (0, 2), (2, 4), (3, 3)];
            let mut ok = true;
            let mut witness = None;
            for &(s, t) in pairs {
                if s > cfg.max_s || t > cfg.max_s {
                    continue;
                }
                let f = &polys[s];
                let g = &polys[t];
                let degree = f.degree() + g.degree();
                let order = cfg.quad_order.unwrap_or(degree / 2 + 1).max(degree / 2 + 1);
                let numeric = numeric_inner_product(rd, f, g, order)?;
                let symbolic = inner_product_h(rd, f, g)?.to_f64();
                let scale = inner_product_h(rd, f, f)?.to_f64().abs().sqrt()
                    * inner_product_h(rd, g, g)?.to_f64().abs().sqrt();
                if !relative_close(numeric, symbolic, scale, QUAD_REL_TOL) {
                    ok = false;
                    witness = Some(format!(
                        "(H_{s}, H_{t}): quadrature {numeric:e} vs symbolic {symbolic:e}"
                    ));
                    break;
                }
            }
            rb.numeric(
                "quadrature-consistency",
                "tensor quadrature agrees with symbolic Gamma values (relative 1e-10)",
                &[("n", ns.clone())],
                ok,
                witness,
            );
        }
    } else if cfg.max_s >= 4 {
        // Monte Carlo orthogonality for groups without a symbolic pairing
        let (value, stderr) =
            mc_inner_product(rd, &polys[2], &polys[4], cfg.mc_samples, cfg.seed ^ (n as u64))?;
        let ok = value.abs() <= MC_SIGMA * stderr;
        rb.numeric(
            "mc-orthogonality",
            "(H_2, H_4)_H = 0 within 3 standard errors (Monte Carlo)",
            &[("n", ns.clone())],
            ok,
            Some(format!("value {value:e}, standard error {stderr:e}")),
        );
    }

    Ok(rb.records)
}

/// Degree-independent checks.
fn global_checks(rd: &ReflectionData, cfg: &VerifyConfig) -> Result<Vec<CheckRecord>> {
    let mut rb = RecordBuilder::new();
    for m in 0..=6usize {
        let f = random_homogeneous(rd.dim(), m, cfg.seed.wrapping_add(m as u64));
        let res = spherical_identity_residual(rd, &f)?;
        let ok = res.is_zero();
        rb.exact(
            "spherical-identity",
            "x D_h f + m f + Gamma_kappa f = 0 for homogeneous f of degree m",
            &[("m", m.to_string())],
            ok,
            Some(format!("residual: {res}")),
        );
    }
    Ok(rb.records)
}

/// Expected number of records, given the measured module ranks per degree.
/// Guards against silently dropped checks.
pub fn expected_record_count(cfg: &VerifyConfig, ranks: &[usize]) -> usize {
    let mut count = 7; // spherical-identity m = 0..6
    for &rank in ranks {
        count += 1; // module-rank
        if rank == 0 {
            continue;
        }
        count += 9; // per-degree operator checks
        if cfg.family == Family::Z2 {
            count += rank; // orthogonality per generator
            count += 2; // closed-form-pairing, adjointness
            if rank >= 2 {
                count += 1; // cross-orthogonality
            }
            count += rank; // norm-closed-form per generator
            count += 1; // quadrature-consistency
        } else if cfg.max_s >= 4 {
            count += 1; // mc-orthogonality
        }
    }
    count
}

/// Runs the whole suite for one configuration. Degrees are processed in
/// parallel; the report order is deterministic.
pub fn run(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let rd = build_group(cfg.family, cfg.size, &cfg.kappa)?;
    let mut checks = global_checks(&rd, cfg)?;

    let per_degree: Vec<(usize, Vec<CheckRecord>)> = (0..=cfg.max_n)
        .into_par_iter()
        .map(|n| -> Result<(usize, Vec<CheckRecord>)> {
            let art = build_degree_artifacts(&rd, cfg, n)?;
            let records = checks_for_degree(&rd, cfg, &art)?;
            Ok((art.basis.rank(), records))
        })
        .collect::<Result<_>>()?;

    let ranks: Vec<usize> = per_degree.iter().map(|(r, _)| *r).collect();
    for (_, records) in per_degree {
        checks.extend(records);
    }

    let expected = expected_record_count(cfg, &ranks);
    if checks.len() != expected {
        return Err(Error::internal(
            "verify",
            format!("record count {} differs from expected {}", checks.len(), expected),
        ));
    }

    let summary = Summary {
        total: checks.len(),
        exact_pass: checks.iter().filter(|c| c.status == CheckStatus::ExactPass).count(),
        numeric_pass: checks.iter().filter(|c| c.status == CheckStatus::NumericPass).count(),
        failed: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
    };
    Ok(VerificationReport {
        config: ConfigEcho {
            family: rd.family().to_string(),
            d: rd.dim(),
            kappa: cfg.kappa.iter().map(format_rat).collect(),
            gamma_kappa: format_rat(rd.gamma_kappa()),
            mu: format_rat(rd.mu()),
            max_n: cfg.max_n,
            max_s: cfg.max_s,
            quad_order: cfg.quad_order,
            mc_samples: cfg.mc_samples,
            seed: cfg.seed,
        },
        checks,
        summary,
    })
}

/// One row of the table command: a family member with its radial data and,
/// for hyperoctahedral groups, the exact norm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub s: usize,
    pub lowering_constant: String,
    pub radial: Vec<String>,
    pub poly: CPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<GammaExpr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableOutput {
    pub config: ConfigEcho,
    pub rows: Vec<TableRow>,
}

/// Builds the family table for the first module generator of each degree.
pub fn table(cfg: &VerifyConfig, degrees: &[usize], s_values: &[usize]) -> Result<TableOutput> {
    let rd = build_group(cfg.family, cfg.size, &cfg.kappa)?;
    let mut rows = Vec::new();
    for &n in degrees {
        let basis = module_basis(&rd, n)?;
        let basis = if rd.family() == Family::Z2 {
            orthonormalize_z2(&rd, &basis)?
        } else {
            basis
        };
        if basis.rank() == 0 {
            continue;
        }
        let max_s = s_values.iter().copied().max().unwrap_or(0);
        let family = hermite_generate(&rd, &basis.elements()[0], max_s)?;
        for &s in s_values {
            let norm = if rd.family() == Family::Z2 {
                Some(gamma_norm(&rd, &family, &basis, s, 0)?)
            } else {
                None
            };
            rows.push(TableRow {
                n,
                s,
                lowering_constant: format_rat(&c_coefficient_or_zero(s, rd.mu(), n)),
                radial: family.radial()[s].iter().map(format_rat).collect(),
                poly: family.polys()[s].clone(),
                norm,
            });
        }
    }
    Ok(TableOutput {
        config: ConfigEcho {
            family: rd.family().to_string(),
            d: rd.dim(),
            kappa: cfg.kappa.iter().map(format_rat).collect(),
            gamma_kappa: format_rat(rd.gamma_kappa()),
            mu: format_rat(rd.mu()),
            max_n: cfg.max_n,
            max_s: cfg.max_s,
            quad_order: cfg.quad_order,
            mc_samples: cfg.mc_samples,
            seed: cfg.seed,
        },
        rows,
    })
}

/// Exported basis of `M_n`: elements plus norms where available.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisExport {
    pub n: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub kernel_dim: usize,
    pub elements: Vec<CPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norms: Option<Vec<GammaExpr>>,
}

pub fn export_basis(cfg: &VerifyConfig, n: usize) -> Result<BasisExport> {
    let rd = build_group(cfg.family, cfg.size, &cfg.kappa)?;
    let basis = module_basis(&rd, n)?;
    let basis = if rd.family() == Family::Z2 {
        orthonormalize_z2(&rd, &basis)?
    } else {
        basis
    };
    let norms = basis
        .gram()
        .map(|g| (0..basis.rank()).map(|j| g[j][j].clone()).collect());
    Ok(BasisExport {
        n,
        rank: basis.rank(),
        expected_rank: basis.expected_rank(),
        kernel_dim: basis.kernel_dim(),
        elements: basis.elements().to_vec(),
        norms,
    })
}

/// Radial coefficient polynomial built back into a full polynomial; used by
/// table consumers.
pub fn radial_poly(dim: usize, coeffs: &[Rat]) -> CPoly {
    radial_to_poly(dim, coeffs)
}
