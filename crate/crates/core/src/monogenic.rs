//! Exact bases of the homogeneous Dunkl-monogenic polynomials `M_n`.
//!
//! `M_n` is the kernel of the Dunkl-Dirac operator on Clifford-valued
//! homogeneous polynomials of degree `n`, computed here as the exact
//! nullspace of the operator's matrix in the monomial-blade basis. `M_n` is
//! a right module over the Clifford algebra (right multiplication by a
//! constant commutes with `D_h`); a generating set is extracted greedily and
//! the expected rank is `C(n + d - 2, n)`. A measured rank that disagrees is
//! reported, never silently accepted.

use num_traits::Zero;

use crate::clifford::Multivector;
use crate::dunkl::dunkl_dirac;
use crate::error::{Error, Result};
use crate::integrate::{spherical_pairing_z2, GammaExpr};
use crate::linalg;
use crate::multipoly::CPoly;
use crate::rat::{binomial, Rat};
use crate::reflection::{Family, ReflectionData};

/// A right-module generating set for `M_n`, with optional exact spherical
/// Gram data (hyperoctahedral groups only).
#[derive(Debug, Clone)]
pub struct MonogenicBasis {
    degree: usize,
    elements: Vec<CPoly>,
    /// Scalar dimension of `ker D_h` on degree-`n` polynomials.
    kernel_dim: usize,
    /// `C(n + d - 2, n)`.
    expected_rank: usize,
    /// Whether the blade multiples of `elements` span the whole kernel.
    spans_kernel: bool,
    /// Pairwise spherical pairings after orthogonalization.
    gram: Option<Vec<Vec<GammaExpr>>>,
}

impl MonogenicBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[CPoly] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn expected_rank(&self) -> usize {
        self.expected_rank
    }

    pub fn rank_matches(&self) -> bool {
        self.rank() == self.expected_rank && self.spans_kernel
    }

    pub fn spans_kernel(&self) -> bool {
        self.spans_kernel
    }

    pub fn gram(&self) -> Option<&Vec<Vec<GammaExpr>>> {
        self.gram.as_ref()
    }

    /// Squared spherical norm of the `j`-th element (orthogonalized bases).
    pub fn norm(&self, j: usize) -> Option<&GammaExpr> {
        self.gram.as_ref().map(|g| &g[j][j])
    }
}

/// All exponent multi-indices of total degree `n` in `d` variables, in
/// lexicographic order.
fn monomials(d: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(d: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=n {
            prefix.push(k);
            rec(d - 1, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n as u32, &mut Vec::new(), &mut out);
    out
}

fn expected_module_rank(d: usize, n: usize) -> usize {
    if n == 0 {
        1
    } else if d == 1 {
        0
    } else {
        binomial(n + d - 2, n)
    }
}

/// Coordinates of a polynomial in a fixed (monomial, blade) frame.
fn coordinates(p: &CPoly, monos: &[Vec<u32>], blade_count: u32) -> Vec<Rat> {
    let index: std::collections::BTreeMap<&Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![Rat::zero(); monos.len() * blade_count as usize];
    for (e, c) in p.terms() {
        let mi = *index.get(e).expect("monomial outside the frame");
        for (mask, val) in c.terms() {
            v[mi * blade_count as usize + mask as usize] = val.clone();
        }
    }
    v
}

/// Spanning set of `ker D_h` on homogeneous degree-`n` polynomials, as the
/// exact nullspace of the operator matrix.
pub fn monogenic_kernel(rd: &ReflectionData, n: usize) -> Result<Vec<CPoly>> {
    let d = rd.dim();
    let blade_count = 1u32 << d;
    let in_monos = monomials(d, n);
    let columns = in_monos.len() * blade_count as usize;

    if n == 0 {
        // constants: one generator per blade
        return Ok((0..blade_count)
            .map(|mask| {
                let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                CPoly::constant(Multivector::blade(d, &idx))
            })
            .collect());
    }

    let out_monos = monomials(d, n - 1);
    let rows = out_monos.len() * blade_count as usize;

    // D_h of each scalar monomial; blades enter by right multiplication
    let dh_of_mono: Vec<CPoly> = in_monos
        .iter()
        .map(|e| {
            let mut p = CPoly::zero(d);
            p = &p + &CPoly::constant(Multivector::one(d));
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    p = &p * &CPoly::var(d, i + 1);
                }
            }
            dunkl_dirac(rd, &p)
        })
        .collect::<Result<_>>()?;

    let mut matrix = vec![vec![Rat::zero(); columns]; rows];
    for (mi, dh) in dh_of_mono.iter().enumerate() {
        for mask in 0..blade_count {
            let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            let img = dh.mul_mv_right(&Multivector::blade(d, &idx));
            let col = mi * blade_count as usize + mask as usize;
            let coords = coordinates(&img, &out_monos, blade_count);
            for (r, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    matrix[r][col] = v;
                }
            }
        }
    }

    let null = linalg::nullspace(&matrix, columns);
    let mut kernel = Vec::with_capacity(null.len());
    for vec in null {
        let mut p = CPoly::zero(d);
        for (mi, e) in in_monos.iter().enumerate() {
            let mut coeff = Multivector::zero(d);
            for mask in 0..blade_count {
                let v = &vec[mi * blade_count as usize + mask as usize];
                if !v.is_zero() {
                    let idx: Vec<usize> =
                        (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                    coeff = &coeff + &Multivector::blade(d, &idx).scale(v);
                }
            }
            if !coeff.is_zero() {
                let mut mono = CPoly::constant(coeff);
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        mono = &mono * &CPoly::var(d, i + 1);
                    }
                }
                p = &p + &mono;
            }
        }
        if !dunkl_dirac(rd, &p)?.is_zero() {
            return Err(Error::internal(
                "monogenic_kernel",
                "nullspace vector not annihilated",
            ));
        }
        kernel.push(p);
    }
    Ok(kernel)
}

/// Incremental exact rank tracker.
struct RankTracker {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RankTracker {
    fn new() -> Self {
        RankTracker {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; keeps it when independent.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone().recip();
        for x in &mut v {
            *x *= &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Extracts a right-module generating set from the kernel: a kernel vector
/// is kept when its blade multiples enlarge the exact span.
pub fn module_basis(rd: &ReflectionData, n: usize) -> Result<MonogenicBasis> {
    let d = rd.dim();
    let blade_count = 1u32 << d;
    let kernel = monogenic_kernel(rd, n)?;
    let kernel_dim = kernel.len();
    let monos = monomials(d, n);

    let mut tracker = RankTracker::new();
    let mut elements = Vec::new();
    for p in &kernel {
        if tracker.rank() == kernel_dim {
            break;
        }
        let mut grew = false;
        for mask in 0..blade_count {
            let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            let multiple = p.mul_mv_right(&Multivector::blade(d, &idx));
            if tracker.insert(coordinates(&multiple, &monos, blade_count)) {
                grew = true;
            }
        }
        if grew {
            elements.push(p.clone());
        }
    }

    Ok(MonogenicBasis {
        degree: n,
        elements,
        kernel_dim,
        expected_rank: expected_module_rank(d, n),
        spans_kernel: tracker.rank() == kernel_dim,
        gram: None,
    })
}

/// Gram-Schmidt against the exact spherical pairing. The pairings of two
/// degree-`n` monogenics share one symbolic Gamma factor, so the projection
/// coefficients are plain rationals and the orthogonalized elements stay in
/// the rational span.
pub fn orthonormalize_z2(rd: &ReflectionData, basis: &MonogenicBasis) -> Result<MonogenicBasis> {
    if rd.family() != Family::Z2 {
        return Err(Error::UnsupportedGroup(rd.family().to_string()));
    }
    let mut elements: Vec<CPoly> = Vec::with_capacity(basis.elements.len());
    let mut norms: Vec<GammaExpr> = Vec::new();
    for p in &basis.elements {
        let mut q = p.clone();
        for (prev, prev_norm) in elements.iter().zip(&norms) {
            let pairing = spherical_pairing_z2(rd, prev, &q)?;
            if pairing.is_zero() {
                continue;
            }
            let c = pairing.ratio_to(prev_norm).ok_or_else(|| {
                Error::internal("orthonormalize_z2", "projection coefficient not rational")
            })?;
            q = &q - &prev.scale(&c);
        }
        let norm = spherical_pairing_z2(rd, &q, &q)?;
        if norm.is_zero() {
            return Err(Error::internal(
                "orthonormalize_z2",
                "degenerate norm during orthogonalization",
            ));
        }
        elements.push(q);
        norms.push(norm);
    }

    let k = elements.len();
    let mut gram = vec![vec![GammaExpr::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let v = spherical_pairing_z2(rd, &elements[i], &elements[j])?;
            if i != j && !v.is_zero() {
                return Err(Error::internal(
                    "orthonormalize_z2",
                    "off-diagonal pairing survived orthogonalization",
                ));
            }
            gram[i][j] = v;
        }
    }

    Ok(MonogenicBasis {
        degree: basis.degree,
        elements,
        kernel_dim: basis.kernel_dim,
        expected_rank: basis.expected_rank,
        spans_kernel: basis.spans_kernel,
        gram: Some(gram),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::reflection::build_group;

    fn z2_2() -> ReflectionData {
        build_group(Family::Z2, 2, &[rat(1, 2), rat(1, 3)]).unwrap()
    }

    #[test]
    fn degree_zero_kernel_is_all_constants() {
        let rd = z2_2();
        let kern = monogenic_kernel(&rd, 0).unwrap();
        assert_eq!(kern.len(), 4);
        let basis = module_basis(&rd, 0).unwrap();
        assert_eq!(basis.rank(), 1);
        assert!(basis.rank_matches());
    }

    #[test]
    fn degree_one_kernel_z2() {
        // kernel contains -(1 + 2 k2) e1 x1 + (1 + 2 k1) e2 x2
        let rd = z2_2();
        let kern = monogenic_kernel(&rd, 1).unwrap();
        assert_eq!(kern.len(), 4); // one module generator times four blades
        let d = 2;
        let p1 = {
            let a = CPoly::var(d, 1)
                .mul_mv_left(&Multivector::basis_vector(d, 1))
                .scale(&-(rint(1) + rat(2, 3))); // -(1 + 2 kappa_2)
            let b = CPoly::var(d, 2)
                .mul_mv_left(&Multivector::basis_vector(d, 2))
                .scale(&rint(2)); // 1 + 2 kappa_1 = 2
            &a + &b
        };
        assert!(dunkl_dirac(&rd, &p1).unwrap().is_zero());
        let basis = module_basis(&rd, 1).unwrap();
        assert_eq!(basis.rank(), 1);
        assert!(basis.rank_matches());
    }

    #[test]
    fn vector_multiples_of_monogenics_are_harmonic() {
        // monogenics are harmonic, and so are their vector multiples x P_n
        // (which are not monogenic themselves)
        let rd = z2_2();
        for n in 0..=2 {
            let basis = module_basis(&rd, n).unwrap();
            for p in basis.elements() {
                assert!(crate::dunkl::dunkl_laplacian(&rd, p).unwrap().is_zero());
                let xp = &CPoly::x_poly(2) * p;
                assert!(crate::dunkl::dunkl_laplacian(&rd, &xp).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn one_dimensional_kernel_is_trivial_above_degree_zero() {
        let rd = build_group(Family::Z2, 1, &[rat(1, 2)]).unwrap();
        assert!(monogenic_kernel(&rd, 1).unwrap().is_empty());
        let basis = module_basis(&rd, 1).unwrap();
        assert_eq!(basis.rank(), 0);
        assert_eq!(basis.expected_rank(), 0);
        assert!(basis.rank_matches());
    }

    #[test]
    fn x_times_monogenic_is_never_monogenic() {
        let rd = z2_2();
        let basis = module_basis(&rd, 1).unwrap();
        let xp = &CPoly::x_poly(2) * &basis.elements()[0];
        assert!(!dunkl_dirac(&rd, &xp).unwrap().is_zero());
    }

    #[test]
    fn ranks_in_dimension_three() {
        let rd = build_group(Family::Z2, 3, &[rat(3, 2), rat(1, 2), rint(1)]).unwrap();
        for n in 0..=2 {
            let basis = module_basis(&rd, n).unwrap();
            assert_eq!(basis.expected_rank(), expected_module_rank(3, n));
            assert_eq!(basis.rank(), basis.expected_rank(), "n = {n}");
            assert!(basis.rank_matches());
            assert_eq!(basis.kernel_dim(), 8 * basis.expected_rank());
        }
        // C(2 + 1, 2) = 3
        assert_eq!(expected_module_rank(3, 2), 3);
    }

    #[test]
    fn orthogonalization_z2() {
        let rd = build_group(Family::Z2, 3, &[rat(1, 2), rat(1, 3), rint(1)]).unwrap();
        let basis = module_basis(&rd, 2).unwrap();
        let ortho = orthonormalize_z2(&rd, &basis).unwrap();
        let gram = ortho.gram().unwrap();
        for i in 0..ortho.rank() {
            for j in 0..ortho.rank() {
                if i == j {
                    assert!(!gram[i][j].is_zero());
                    assert!(gram[i][j].to_f64() > 0.0);
                } else {
                    assert!(gram[i][j].is_zero());
                }
            }
        }
        // orthogonalized elements stay monogenic
        for p in ortho.elements() {
            assert!(dunkl_dirac(&rd, p).unwrap().is_zero());
        }
    }

    #[test]
    fn orthonormalize_rejects_other_groups() {
        let rd = build_group(Family::A, 3, &[rint(1)]).unwrap();
        let basis = module_basis(&rd, 1).unwrap();
        assert!(matches!(
            orthonormalize_z2(&rd, &basis),
            Err(Error::UnsupportedGroup(_))
        ));
    }

    #[test]
    fn blade_multiple_pairing_invariance() {
        let rd = z2_2();
        let basis = module_basis(&rd, 1).unwrap();
        let p = &basis.elements()[0];
        let pe1 = p.mul_mv_right(&Multivector::basis_vector(2, 1));
        let a = spherical_pairing_z2(&rd, p, p).unwrap();
        let b = spherical_pairing_z2(&rd, &pe1, &pe1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_degree_monogenics_pair_to_zero() {
        let rd = z2_2();
        let p0 = CPoly::one(2);
        let basis2 = module_basis(&rd, 2).unwrap();
        for p2 in basis2.elements() {
            // degrees 0 and 2: integrand is homogeneous of degree 2
            let pairing = spherical_pairing_z2(&rd, &p0, p2).unwrap();
            assert!(pairing.is_zero());
        }
    }
}
