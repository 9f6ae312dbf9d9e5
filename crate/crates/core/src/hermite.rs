//! Clifford-Hermite families for Dunkl operators.
//!
//! Fixing a homogeneous Dunkl-monogenic `P_n`, the family is
//! `H_s = (D_+)^s P_n`. Each `H_s` factors as a radial polynomial in the
//! vector variable times `P_n`; the radial coefficient vectors `a_j^s`
//! (`H_s = sum_j a_j^s x^j P_n`) depend only on `mu` and `n`, satisfy a
//! parity rule (`a_j^s = 0` for `j != s mod 2`), and reproduce scaled
//! generalized Laguerre polynomials. The lowering identity
//! `D_h H_s = C(s, mu, n) H_{s-1}` holds with `C(s) = 2s` for even `s` and
//! `2(s + mu + 2n - 1)` for odd `s`; by convention `C(0) = 0`.

use num_traits::{One, Zero};

use crate::dunkl::{d_plus, dunkl_dirac};
use crate::error::{Error, Result};
use crate::multipoly::CPoly;
use crate::rat::{factorial, rint, Rat};
use crate::reflection::ReflectionData;

/// The cached family `H_0..H_S` for one monogenic `P_n`.
#[derive(Debug, Clone)]
pub struct HermiteFamily {
    degree_n: usize,
    mu: Rat,
    max_s: usize,
    p_n: CPoly,
    polys: Vec<CPoly>,
    radial: Vec<Vec<Rat>>,
}

impl HermiteFamily {
    pub fn degree_n(&self) -> usize {
        self.degree_n
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn max_s(&self) -> usize {
        self.max_s
    }

    pub fn p_n(&self) -> &CPoly {
        &self.p_n
    }

    pub fn polys(&self) -> &[CPoly] {
        &self.polys
    }

    /// Radial coefficients of `H_s`: index `j` holds `a_j^s`.
    pub fn radial(&self) -> &[Vec<Rat>] {
        &self.radial
    }
}

/// Builds `H_0..H_S` by repeated application of the raising operator,
/// together with the radial coefficient vectors.
pub fn hermite_generate(rd: &ReflectionData, p_n: &CPoly, max_s: usize) -> Result<HermiteFamily> {
    let n = p_n.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if p_n.is_zero() || !dunkl_dirac(rd, p_n)?.is_zero() {
        return Err(Error::NotMonogenic);
    }
    let mut polys = Vec::with_capacity(max_s + 1);
    let mut radial = Vec::with_capacity(max_s + 1);
    polys.push(p_n.clone());
    for s in 1..=max_s {
        let next = d_plus(rd, &polys[s - 1])?;
        polys.push(next);
    }
    for (s, h) in polys.iter().enumerate() {
        let mut coeffs = h.radial_decompose(p_n)?;
        coeffs.resize(s + 1, Rat::zero());
        radial.push(coeffs);
    }
    Ok(HermiteFamily {
        degree_n: n,
        mu: rd.mu().clone(),
        max_s,
        p_n: p_n.clone(),
        polys,
        radial,
    })
}

/// The lowering constant `C(s, mu, n)`; errors at `s = 0`.
pub fn c_coefficient(s: usize, mu: &Rat, n: usize) -> Result<Rat> {
    if s == 0 {
        return Err(Error::CoefficientAtZero);
    }
    Ok(if s % 2 == 0 {
        rint(2 * s as i64)
    } else {
        rint(2) * (rint((s + 2 * n) as i64) + mu - Rat::one())
    })
}

/// `C(s, mu, n)` with the `C(0) = 0` convention.
pub fn c_coefficient_or_zero(s: usize, mu: &Rat, n: usize) -> Rat {
    if s == 0 {
        Rat::zero()
    } else {
        c_coefficient(s, mu, n).expect("s > 0")
    }
}

/// One step of the three-term recurrence:
/// `H_{s+1} = -2x H_s + C(s, mu, n) H_{s-1}` (the `C` term is absent at
/// `s = 0`).
pub fn three_term_next(
    rd: &ReflectionData,
    h_s: &CPoly,
    h_prev: Option<&CPoly>,
    s: usize,
    mu: &Rat,
    n: usize,
) -> Result<CPoly> {
    let x = CPoly::x_poly(rd.dim());
    let mut next = x.poly_mul(h_s)?.scale(&rint(-2));
    if s > 0 {
        let prev = h_prev.ok_or_else(|| {
            Error::internal("three_term_next", "missing predecessor for s > 0")
        })?;
        next = &next + &prev.scale(&c_coefficient(s, mu, n)?);
    }
    Ok(next)
}

/// Residual of the differential equation
/// `D_h^2 H_s - 2x D_h H_s - C(s, mu, n) H_s`; the contract is exact zero.
pub fn differential_equation_residual(
    rd: &ReflectionData,
    h_s: &CPoly,
    s: usize,
    mu: &Rat,
    n: usize,
) -> Result<CPoly> {
    let dh = dunkl_dirac(rd, h_s)?;
    let dh2 = dunkl_dirac(rd, &dh)?;
    let x_dh = CPoly::x_poly(rd.dim()).poly_mul(&dh)?;
    let c = c_coefficient_or_zero(s, mu, n);
    Ok(&(&dh2 - &x_dh.scale(&rint(2))) - &h_s.scale(&c))
}

/// Generalized Laguerre polynomial `L_s^alpha` as rational coefficients of
/// `t^0..t^s`. The Gamma ratios reduce to the finite products
/// `prod_{k=j}^{s-1} (alpha + 1 + k)`, so `alpha > -1` suffices.
pub fn laguerre_poly(s: usize, alpha: &Rat) -> Result<Vec<Rat>> {
    if *alpha <= rint(-1) {
        return Err(Error::LaguerreParameter(crate::rat::format_rat(alpha)));
    }
    let mut coeffs = Vec::with_capacity(s + 1);
    for j in 0..=s {
        let mut c = Rat::one();
        for k in j..s {
            c *= alpha + rint(1 + k as i64);
        }
        c /= factorial(j) * factorial(s - j);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Compares `H_s` against the Laguerre closed form:
/// `2^s (s/2)! L_{s/2}^{mu/2 + n - 1}(|x|^2) P_n` for even `s` and
/// `-2^s ((s-1)/2)! x L_{(s-1)/2}^{mu/2 + n}(|x|^2) P_n` for odd `s`.
pub fn laguerre_oracle_compare(
    rd: &ReflectionData,
    family: &HermiteFamily,
    s: usize,
) -> Result<bool> {
    if s > family.max_s {
        return Err(Error::internal(
            "laguerre_oracle_compare",
            format!("s = {s} beyond the family"),
        ));
    }
    let d = rd.dim();
    let n = family.degree_n;
    let mu = &family.mu;
    let half_mu_n = mu / rint(2) + rint(n as i64);

    // |x|^2 as a scalar polynomial
    let r2 = {
        let mut acc = CPoly::zero(d);
        for i in 1..=d {
            acc = &acc + &(&CPoly::var(d, i) * &CPoly::var(d, i));
        }
        acc
    };
    let r2_pow = |j: usize| -> CPoly {
        let mut acc = CPoly::one(d);
        for _ in 0..j {
            acc = &acc * &r2;
        }
        acc
    };
    let two_pow_s = Rat::from_integer(num_bigint::BigInt::from(2).pow(s as u32));

    let rhs = if s % 2 == 0 {
        let lag = laguerre_poly(s / 2, &(&half_mu_n - Rat::one()))?;
        let mut radial = CPoly::zero(d);
        for (j, c) in lag.iter().enumerate() {
            radial = &radial + &r2_pow(j).scale(c);
        }
        radial
            .scale(&(two_pow_s * factorial(s / 2)))
            .poly_mul(&family.p_n)?
    } else {
        let lag = laguerre_poly((s - 1) / 2, &half_mu_n)?;
        let mut radial = CPoly::zero(d);
        for (j, c) in lag.iter().enumerate() {
            radial = &radial + &r2_pow(j).scale(c);
        }
        let scaled = radial.scale(&(-two_pow_s * factorial((s - 1) / 2)));
        CPoly::x_poly(d).poly_mul(&scaled)?.poly_mul(&family.p_n)?
    };
    Ok(family.polys[s] == rhs)
}

fn radial_at(family: &HermiteFamily, s: isize, j: isize) -> Rat {
    if s < 0 || j < 0 {
        return Rat::zero();
    }
    family
        .radial
        .get(s as usize)
        .and_then(|v| v.get(j as usize))
        .cloned()
        .unwrap_or_else(Rat::zero)
}

/// Verifies the coefficient recurrences of the radial expansion: the
/// three-step recurrence across `s`, the in-level ladder across `j`, and
/// the closed seeds
/// `a_0^{2t} = 2^{2t} prod_{k<t} (mu/2 + n + k)`,
/// `a_1^{2t+1} = -2 * 2^{2t} prod_{k<t} (mu/2 + n + 1 + k)`.
pub fn coeff_recurrence_check(family: &HermiteFamily) -> bool {
    let mu = &family.mu;
    let n = family.degree_n as i64;
    let half_mu_n = mu / rint(2) + rint(n);
    let mun = mu + rint(2 * n);
    let a = |s: isize, j: isize| radial_at(family, s, j);

    for s in 0..=family.max_s as isize {
        // parity: a_j^s = 0 unless j == s (mod 2)
        for (j, c) in family.radial[s as usize].iter().enumerate() {
            if (j as isize - s) % 2 != 0 && !c.is_zero() {
                return false;
            }
        }

        if s % 2 == 0 {
            let t = s / 2;
            // seed a_0^{2t}
            let mut seed = Rat::from_integer(num_bigint::BigInt::from(2).pow(2 * t as u32));
            for k in 0..t {
                seed *= &half_mu_n + rint(k as i64);
            }
            if a(s, 0) != seed {
                return false;
            }
            for j in 0..=t {
                // recurrence in s (valid for s >= 2)
                if s >= 2 {
                    let lhs = a(s, 2 * j);
                    let rhs = (rint(2 * (j + 1) as i64) * (rint(2 * j as i64) + &mun))
                        * a(s - 2, 2 * j + 2)
                        + (rint(2) * (rint(4 * j as i64) + &mun)) * a(s - 2, 2 * j)
                        + rint(4) * a(s - 2, 2 * j - 2);
                    if lhs != rhs {
                        return false;
                    }
                }
                // ladder in j: 2j(2j + mu + 2n - 2) a_{2j} = 4(t - j + 1) a_{2j-2}
                if j >= 1 {
                    let lhs = (rint(2 * j as i64) * (rint(2 * j as i64) + &mun - rint(2)))
                        * a(s, 2 * j);
                    let rhs = rint(4 * (t - j + 1) as i64) * a(s, 2 * j - 2);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        } else {
            let t = (s - 1) / 2;
            // seed a_1^{2t+1}
            let mut seed = -rint(2) * Rat::from_integer(num_bigint::BigInt::from(2).pow(2 * t as u32));
            for k in 0..t {
                seed *= &half_mu_n + rint(1 + k as i64);
            }
            if a(s, 1) != seed {
                return false;
            }
            for j in 0..=t {
                if s >= 2 {
                    let lhs = a(s, 2 * j + 1);
                    let rhs = (rint(2 * (j + 1) as i64) * (rint(2 * j as i64) + &mun + rint(2)))
                        * a(s - 2, 2 * j + 3)
                        + (rint(2) * (rint(4 * j as i64) + &mun + rint(2))) * a(s - 2, 2 * j + 1)
                        + rint(4) * a(s - 2, 2 * j - 1);
                    if lhs != rhs {
                        return false;
                    }
                }
                // ladder: 2j(2j + mu + 2n) a_{2j+1} = 4(t - j + 1) a_{2j-1}
                if j >= 1 {
                    let lhs = (rint(2 * j as i64) * (rint(2 * j as i64) + &mun)) * a(s, 2 * j + 1);
                    let rhs = rint(4 * (t - j + 1) as i64) * a(s, 2 * j - 1);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
