//! Floating-point cross checks for the exact engine.
//!
//! The quadrature here targets the one-dimensional weight
//! `|t|^{2 kappa} exp(-t^2)`, whose even moments are
//! `Gamma((2j + 2 kappa + 1)/2)`. The three-term recurrence coefficients of
//! the orthogonal polynomials are derived from the moments with the
//! Chebyshev algorithm run in exact rational arithmetic (the moment ratios
//! are rational), which sidesteps the notorious ill-conditioning of
//! floating-point moment methods; only the final eigenvalue step is
//! numerical. Tensorizing the rules integrates the hyperoctahedral weight
//! in any dimension; other reflection groups are handled by seeded Monte
//! Carlo importance sampling against the Gaussian.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::multipoly::CPoly;
use crate::rat::{rat, rat_to_f64, rint, Rat};
use crate::reflection::{Family, ReflectionData};

/// Lanczos approximation of the Gamma function (g = 7, 9 terms), with the
/// reflection formula below 1/2. Accurate to roughly 1e-13 relative.
pub fn lanczos_gamma(x: f64) -> f64 {
    const P: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut t = P[0];
    for (i, p) in P.iter().enumerate().skip(1) {
        t += p / (x + i as f64);
    }
    let w = x + 7.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * t
}

/// Gauss rule for `int f(t) |t|^{2 kappa} exp(-t^2) dt`.
#[derive(Debug, Clone)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kappa: Rat,
    order: usize,
}

impl QuadRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// `int t^b` under the weight, from the rule.
    pub fn moment(&self, b: u32) -> f64 {
        self.integrate(|t| t.powi(b as i32))
    }
}

/// Exact recurrence coefficients `beta_1..beta_{m-1}` of the monic
/// orthogonal polynomials for the weight, from the normalized moments via
/// the Chebyshev algorithm (the `alpha` coefficients vanish by symmetry).
pub fn jacobi_recurrence_beta(kappa: &Rat, m: usize) -> Vec<Rat> {
    let count = 2 * m;
    // normalized moments: m_{2j} = prod_{i<j} (kappa + 1/2 + i), odd zero
    let mut moments = vec![Rat::zero(); count];
    let mut acc = rint(1);
    let mut j = 0;
    loop {
        let idx = 2 * j;
        if idx >= count {
            break;
        }
        moments[idx] = acc.clone();
        acc *= kappa + rat(1, 2) + rint(j as i64);
        j += 1;
    }

    let mut betas: Vec<Rat> = Vec::with_capacity(m.saturating_sub(1));
    let mut sigma_prev: Vec<Rat> = vec![Rat::zero(); count]; // sigma_{k-2}
    let mut sigma_cur: Vec<Rat> = moments; // sigma_{k-1} starting at k = 1
    let mut prev_diag = rint(1); // sigma_{0,0} with normalized m_0 = 1
    for k in 1..m {
        let mut next = vec![Rat::zero(); count];
        let beta_prev = if k == 1 { Rat::zero() } else { betas[k - 2].clone() };
        for l in k..(count - k) {
            let mut v = sigma_cur[l + 1].clone();
            if !beta_prev.is_zero() {
                v -= &beta_prev * &sigma_prev[l];
            }
            next[l] = v;
        }
        let beta_k = &next[k] / &prev_diag;
        prev_diag = next[k].clone();
        betas.push(beta_k);
        sigma_prev = std::mem::replace(&mut sigma_cur, next);
    }
    betas
}

/// Values `p_0(t)..p_m(t)` of the orthonormal polynomials (mass-1
/// normalization) and the derivative of `p_m`, from the recurrence
/// `p_(k+1) = (t p_k - sqrt(beta_k) p_(k-1)) / sqrt(beta_(k+1))`.
fn orthonormal_values(sqrt_betas: &[f64], m: usize, t: f64) -> (Vec<f64>, f64) {
    let mut values = Vec::with_capacity(m + 1);
    values.push(1.0);
    let mut deriv_prev = 0.0;
    let mut deriv = 0.0;
    if m >= 1 {
        values.push(t / sqrt_betas[0]);
        deriv = 1.0 / sqrt_betas[0];
    }
    for k in 1..m {
        let next = (t * values[k] - sqrt_betas[k - 1] * values[k - 1]) / sqrt_betas[k];
        let next_deriv = (values[k] + t * deriv - sqrt_betas[k - 1] * deriv_prev) / sqrt_betas[k];
        values.push(next);
        deriv_prev = deriv;
        deriv = next_deriv;
    }
    (values, deriv)
}

/// Builds an `m`-point rule: eigenvalues of the Jacobi matrix seed the
/// nodes, a few Newton steps on the orthonormal polynomial polish them, and
/// the weights come from the Christoffel sums
/// `w_i = mass / sum_(k<m) p_k(t_i)^2`. Symmetry about zero is enforced on
/// the node pairs.
pub fn quad_rule(kappa: &Rat, m: usize) -> Result<QuadRule> {
    if kappa.is_negative() {
        return Err(Error::NegativeKappa);
    }
    if m == 0 || m > 64 {
        return Err(Error::QuadOrder(m));
    }
    // one extra coefficient: the Newton polish evaluates p_m itself
    let betas = jacobi_recurrence_beta(kappa, m + 1);
    let mut sqrt_betas = Vec::with_capacity(betas.len());
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for (k, beta) in betas.iter().enumerate() {
        let b = rat_to_f64(beta);
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::QuadOrder(m));
        }
        let off = b.sqrt();
        sqrt_betas.push(off);
        if k + 1 < m {
            jacobi[(k, k + 1)] = off;
            jacobi[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut nodes: Vec<f64> = (0..m).map(|i| eig.eigenvalues[i]).collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for t in &mut nodes {
        for _ in 0..4 {
            let (values, deriv) = orthonormal_values(&sqrt_betas, m, *t);
            if deriv == 0.0 {
                break;
            }
            let step = values[m] / deriv;
            *t -= step;
            if step.abs() <= 1e-16 * t.abs().max(1.0) {
                break;
            }
        }
    }
    // the weight is even, so nodes pair up as +-t (middle node of an odd
    // rule sits at zero)
    for i in 0..m / 2 {
        let t = (nodes[m - 1 - i] - nodes[i]) / 2.0;
        nodes[m - 1 - i] = t;
        nodes[i] = -t;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    let mass = lanczos_gamma(rat_to_f64(kappa) + 0.5);
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&t| {
            let (values, _) = orthonormal_values(&sqrt_betas, m, t);
            let christoffel: f64 = values[..m].iter().map(|v| v * v).sum();
            mass / christoffel
        })
        .collect();
    Ok(QuadRule {
        nodes,
        weights,
        kappa: kappa.clone(),
        order: m,
    })
}

/// Evaluates a polynomial at a float point; returns the `2^d` blade
/// components.
pub fn eval_poly(f: &CPoly, x: &[f64]) -> Vec<f64> {
    assert_eq!(f.dim(), x.len(), "dimension mismatch");
    let mut out = vec![0.0; 1 << f.dim()];
    for (exps, coeff) in f.terms() {
        let mono: f64 = exps
            .iter()
            .zip(x)
            .map(|(&e, &xi)| xi.powi(e as i32))
            .product();
        for (mask, c) in coeff.terms() {
            out[mask as usize] += rat_to_f64(c) * mono;
        }
    }
    out
}

fn scalar_integrand(f: &CPoly, g: &CPoly) -> Result<Vec<(Vec<u32>, f64)>> {
    let product = f.conjugate_coeffs().poly_mul(g)?;
    Ok(product
        .scalar_component()
        .into_iter()
        .map(|(e, c)| (e, rat_to_f64(&c)))
        .collect())
}

/// Tensor-quadrature value of `sc (f, g)_H` for a hyperoctahedral group.
/// Each monomial integrates as a product of one-dimensional rule moments;
/// the rule must be exact for the integrand's per-axis degrees.
pub fn numeric_inner_product(
    rd: &ReflectionData,
    f: &CPoly,
    g: &CPoly,
    m: usize,
) -> Result<f64> {
    if rd.family() != Family::Z2 {
        return Err(Error::UnsupportedGroup(rd.family().to_string()));
    }
    let d = rd.dim();
    let terms = scalar_integrand(f, g)?;
    let max_axis_degree = terms
        .iter()
        .flat_map(|(e, _)| e.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    if max_axis_degree > 2 * m - 1 {
        return Err(Error::DegreeExceedsRule {
            degree: max_axis_degree,
            order: m,
        });
    }
    let rules: Vec<QuadRule> = (0..d)
        .map(|i| quad_rule(rd.kappa(i), m))
        .collect::<Result<_>>()?;
    // per-axis rule moments up to the needed degree
    let axis_moments: Vec<Vec<f64>> = rules
        .iter()
        .map(|r| (0..=max_axis_degree as u32).map(|b| r.moment(b)).collect())
        .collect();
    let mut total = 0.0;
    for (exps, c) in &terms {
        let mut v = *c;
        for (i, &e) in exps.iter().enumerate() {
            v *= axis_moments[i][e as usize];
        }
        total += v;
    }
    Ok(total)
}

/// Monte Carlo estimate of `sc (f, g)_H`, importance-sampled from a
/// Gaussian proposal whose width is matched to the radial peak of the
/// integrand (`|x|^D exp(-|x|^2)` peaks at `|x|^2 = (D + d - 1)/2`, and a
/// proposal matched to the plain Gaussian undersamples that shell badly for
/// high degrees). Returns `(value, standard error)`; deterministic for a
/// fixed seed.
pub fn mc_inner_product(
    rd: &ReflectionData,
    f: &CPoly,
    g: &CPoly,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::McSamples(samples));
    }
    let d = rd.dim();
    let terms = scalar_integrand(f, g)?;
    let poly_degree = terms
        .iter()
        .map(|(e, _)| e.iter().sum::<u32>() as usize)
        .max()
        .unwrap_or(0);
    let weight_degree = 2.0 * rat_to_f64(rd.gamma_kappa());
    let effective = poly_degree as f64 + weight_degree;
    // per-coordinate proposal variance; 1/2 reproduces the bare Gaussian
    let sigma2 = ((effective + d as f64 - 1.0) / (2.0 * d as f64)).max(0.5);
    let residual = 1.0 - 1.0 / (2.0 * sigma2); // leftover Gaussian exponent
    let scale = (2.0 * std::f64::consts::PI * sigma2).powf(d as f64 / 2.0);

    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma2.sqrt()).unwrap();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut x = vec![0.0; d];
    for _ in 0..samples {
        let mut r2 = 0.0;
        for xi in &mut x {
            *xi = normal.sample(&mut rng);
            r2 += *xi * *xi;
        }
        let mut poly = 0.0;
        for (exps, c) in &terms {
            let mono: f64 = exps
                .iter()
                .zip(&x)
                .map(|(&e, &xi)| xi.powi(e as i32))
                .product();
            poly += c * mono;
        }
        let v = poly * rd.weight_eval(&x) * (-residual * r2).exp();
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) / (n - 1.0);
    Ok((scale * mean, scale * var.sqrt()))
}
