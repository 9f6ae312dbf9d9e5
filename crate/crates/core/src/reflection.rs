//! Root systems, finite reflection groups, and multiplicity functions.
//!
//! A [`ReflectionData`] bundles a root system `R` with a positive subsystem
//! `R+`, the group `W` generated by the root reflections (closed by breadth
//! first search over exact rational matrices), and a `W`-invariant
//! multiplicity `kappa` assigned per orbit. From these it derives the index
//! `gamma_kappa = sum_{alpha in R+} kappa(alpha)` and the homogeneity
//! parameter `mu = 2 gamma_kappa + d` that replaces the Euclidean dimension
//! in every radial formula downstream.
//!
//! Supported families: `Z2^d` (coordinate sign flips), `A_{d-1}` (symmetric
//! group, roots `e_i - e_j`), `B_d`, and the dihedral groups `I2(m)` for the
//! orders with rational root coordinates (`m = 1, 2, 4`). Other dihedral
//! orders have no rational realization in the plane; `I2(3)` is available as
//! family `A` in dimension 3.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, rint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Hyperoctahedral sign flips `Z2^d`.
    Z2,
    /// `A_{d-1}` realized in dimension `d` (roots `e_i - e_j`).
    A,
    /// `B_d` (roots `e_i` and `e_i +- e_j`).
    B,
    /// Dihedral `I2(m)` in the plane.
    I2,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "Z2^d" | "Z2" | "z2" => Ok(Family::Z2),
            "A" | "a" | "A_{d-1}" => Ok(Family::A),
            "B" | "b" | "B_d" => Ok(Family::B),
            "I2" | "i2" | "I2(m)" => Ok(Family::I2),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Z2 => write!(f, "Z2^d"),
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::I2 => write!(f, "I2"),
        }
    }
}

/// Orthogonal matrix with rational entries, row major.
pub type RatMatrix = Vec<Vec<Rat>>;

/// A root system with positive subsystem, group closure, and multiplicities.
#[derive(Debug, Clone)]
pub struct ReflectionData {
    family: Family,
    dim: usize,
    /// Positive roots, in family order.
    positive: Vec<Vec<Rat>>,
    /// Multiplicity of each positive root, aligned with `positive`.
    kappa: Vec<Rat>,
    /// Orbit index of each positive root, aligned with `positive`.
    orbit_of: Vec<usize>,
    orbit_count: usize,
    group: Vec<RatMatrix>,
    gamma_kappa: Rat,
    mu: Rat,
}

impl ReflectionData {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positive_roots(&self) -> &[Vec<Rat>] {
        &self.positive
    }

    /// All roots (`R+` followed by `-R+`).
    pub fn roots(&self) -> Vec<Vec<Rat>> {
        let mut all = self.positive.clone();
        all.extend(
            self.positive
                .iter()
                .map(|r| r.iter().map(|c| -c.clone()).collect::<Vec<Rat>>()),
        );
        all
    }

    pub fn kappa(&self, positive_index: usize) -> &Rat {
        &self.kappa[positive_index]
    }

    pub fn kappa_values(&self) -> &[Rat] {
        &self.kappa
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    pub fn group(&self) -> &[RatMatrix] {
        &self.group
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn gamma_kappa(&self) -> &Rat {
        &self.gamma_kappa
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    /// `h_kappa^2(x) = prod_{alpha in R+} |<alpha, x>|^{2 kappa(alpha)}`.
    pub fn weight_eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        let mut w = 1.0;
        for (root, k) in self.positive.iter().zip(&self.kappa) {
            let dot: f64 = root
                .iter()
                .zip(x)
                .map(|(a, xi)| rat_to_f64(a) * xi)
                .sum();
            w *= dot.abs().powf(2.0 * rat_to_f64(k));
        }
        w
    }
}

/// Builds a reflection group with per-orbit multiplicities.
///
/// `size` is the dimension `d` for families `Z2^d`, `A`, `B`, and the
/// dihedral order `m` for `I2` (which always acts on the plane). `kappa`
/// lists one nonnegative rational per root orbit, in the family's orbit
/// order; the sum over positive roots must be positive.
pub fn build_group(family: Family, size: usize, kappa: &[Rat]) -> Result<ReflectionData> {
    let (dim, positive) = family_positive_roots(family, size)?;
    // the polynomial pipeline allocates 2^d blades per coefficient
    if dim > crate::clifford::DEFAULT_MAX_DIM {
        return Err(Error::DimensionTooLarge(dim, crate::clifford::DEFAULT_MAX_DIM));
    }
    // positive system is recovered from <alpha, beta> > 0 with a fixed
    // generic beta = (d, d-1, ..., 1); assert the table satisfies it so the
    // selection is reproducible rather than convention-dependent.
    let beta: Vec<Rat> = (0..dim).map(|i| rint((dim - i) as i64)).collect();
    for root in &positive {
        let dot: Rat = root.iter().zip(&beta).map(|(a, b)| a * b).sum();
        if !dot.is_positive() {
            return Err(Error::internal(
                "build_group",
                format!("root {root:?} not positive against the fixed chamber"),
            ));
        }
    }

    let group = close_group(dim, &positive)?;
    check_root_system(&positive, &group)?;

    let (orbit_of, orbit_count) = orbits(&positive, &group);
    if kappa.len() != orbit_count {
        return Err(Error::KappaCount {
            expected: orbit_count,
            got: kappa.len(),
        });
    }
    if kappa.iter().any(|k| k.is_negative()) {
        return Err(Error::NegativeKappa);
    }
    let per_root: Vec<Rat> = orbit_of.iter().map(|&o| kappa[o].clone()).collect();
    let gamma_kappa: Rat = per_root.iter().sum();
    if !gamma_kappa.is_positive() {
        return Err(Error::ZeroGammaKappa);
    }
    let mu = &gamma_kappa + &gamma_kappa + rint(dim as i64);

    let rd = ReflectionData {
        family,
        dim,
        positive,
        kappa: per_root,
        orbit_of,
        orbit_count,
        group,
        gamma_kappa,
        mu,
    };
    check_kappa_invariance(&rd)?;
    Ok(rd)
}

fn family_positive_roots(family: Family, size: usize) -> Result<(usize, Vec<Vec<Rat>>)> {
    let unit = |d: usize, i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); d];
        v[i] = rint(1);
        v
    };
    match family {
        Family::Z2 => {
            let d = size;
            if d == 0 {
                return Err(Error::UnknownFamily("Z2^0".into()));
            }
            Ok((d, (0..d).map(|i| unit(d, i)).collect()))
        }
        Family::A => {
            let d = size;
            if d < 2 {
                return Err(Error::UnknownFamily(format!("A in dimension {d}")));
            }
            let mut roots = Vec::new();
            for i in 0..d {
                for j in (i + 1)..d {
                    let mut v = vec![Rat::zero(); d];
                    v[i] = rint(1);
                    v[j] = rint(-1);
                    roots.push(v);
                }
            }
            Ok((d, roots))
        }
        Family::B => {
            let d = size;
            if d < 2 {
                return Err(Error::UnknownFamily(format!("B in dimension {d}")));
            }
            // short orbit first (e_i), then the long orbit (e_i +- e_j)
            let mut roots: Vec<Vec<Rat>> = (0..d).map(|i| unit(d, i)).collect();
            for i in 0..d {
                for j in (i + 1)..d {
                    for sign in [1i64, -1] {
                        let mut v = vec![Rat::zero(); d];
                        v[i] = rint(1);
                        v[j] = rint(sign);
                        roots.push(v);
                    }
                }
            }
            Ok((d, roots))
        }
        Family::I2 => {
            let m = size;
            let roots: Vec<Vec<Rat>> = match m {
                1 => vec![vec![rint(0), rint(1)]],
                2 => vec![vec![rint(1), rint(0)], vec![rint(0), rint(1)]],
                4 => vec![
                    vec![rint(1), rint(0)],
                    vec![rint(0), rint(1)],
                    vec![rint(1), rint(1)],
                    vec![rint(1), rint(-1)],
                ],
                other => return Err(Error::IrrationalDihedral(other)),
            };
            Ok((2, roots))
        }
    }
}

fn reflection_matrix(dim: usize, alpha: &[Rat]) -> RatMatrix {
    let norm2: Rat = alpha.iter().map(|a| a * a).sum();
    let two = rint(2);
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut m = -(&two * &alpha[i] * &alpha[j]) / &norm2;
                    if i == j {
                        m += rint(1);
                    }
                    m
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_apply(m: &RatMatrix, x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(c, xi)| c * xi).sum())
        .collect()
}

fn identity(dim: usize) -> RatMatrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| rint((i == j) as i64)).collect())
        .collect()
}

const GROUP_ORDER_CAP: usize = 100_000;

/// Closure of the generated group by breadth-first multiplication.
fn close_group(dim: usize, positive: &[Vec<Rat>]) -> Result<Vec<RatMatrix>> {
    let generators: Vec<RatMatrix> = positive
        .iter()
        .map(|alpha| reflection_matrix(dim, alpha))
        .collect();
    let mut seen: BTreeSet<RatMatrix> = BTreeSet::new();
    let mut queue = vec![identity(dim)];
    seen.insert(queue[0].clone());
    while let Some(w) = queue.pop() {
        for g in &generators {
            let next = mat_mul(g, &w);
            if seen.insert(next.clone()) {
                if seen.len() > GROUP_ORDER_CAP {
                    return Err(Error::internal("close_group", "group closure did not terminate"));
                }
                queue.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `R` meets every line in exactly `{alpha, -alpha}` and is stable under its
/// own reflections.
fn check_root_system(positive: &[Vec<Rat>], group: &[RatMatrix]) -> Result<()> {
    let mut all: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for r in positive {
        all.insert(r.clone());
        all.insert(r.iter().map(|c| -c.clone()).collect());
    }
    if all.len() != 2 * positive.len() {
        return Err(Error::internal("check_root_system", "duplicate roots"));
    }
    for a in &all {
        for b in &all {
            if a == b {
                continue;
            }
            // proportional roots other than the pair a, -a are rejected
            if is_proportional(a, b) && b != &a.iter().map(|c| -c.clone()).collect::<Vec<Rat>>() {
                return Err(Error::internal("check_root_system", "non-reduced root system"));
            }
        }
    }
    for w in group {
        for r in &all {
            if !all.contains(&mat_apply(w, r)) {
                return Err(Error::internal(
                    "check_root_system",
                    "root set is not group stable",
                ));
            }
        }
    }
    Ok(())
}

fn is_proportional(a: &[Rat], b: &[Rat]) -> bool {
    let mut ratio: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let r = x / y;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Orbit partition of the positive roots under `W` (sign-insensitive), with
/// orbits numbered by their first representative in family order.
fn orbits(positive: &[Vec<Rat>], group: &[RatMatrix]) -> (Vec<usize>, usize) {
    let index_of = |v: &Vec<Rat>| -> Option<usize> {
        let neg: Vec<Rat> = v.iter().map(|c| -c.clone()).collect();
        positive.iter().position(|r| r == v || r == &neg)
    };
    let mut orbit_of = vec![usize::MAX; positive.len()];
    let mut next = 0;
    for start in 0..positive.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        orbit_of[start] = next;
        while let Some(i) = stack.pop() {
            for w in group {
                let img = mat_apply(w, &positive[i]);
                let j = index_of(&img).expect("group must permute the roots");
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    (orbit_of, next)
}

fn check_kappa_invariance(rd: &ReflectionData) -> Result<()> {
    // per-orbit assignment is invariant by construction; this re-checks the
    // stored values against explicit group images
    let index_of = |v: &Vec<Rat>| -> Option<usize> {
        let neg: Vec<Rat> = v.iter().map(|c| -c.clone()).collect();
        rd.positive.iter().position(|r| r == v || r == &neg)
    };
    for w in &rd.group {
        for (i, root) in rd.positive.iter().enumerate() {
            let img = mat_apply(w, root);
            let j = index_of(&img).ok_or(Error::KappaNotInvariant)?;
            if rd.kappa[i] != rd.kappa[j] {
                return Err(Error::KappaNotInvariant);
            }
            if rd.orbit_of[i] != rd.orbit_of[j] {
                return Err(Error::internal("orbits", "orbit labels not group stable"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn z2_squared_example() {
        let rd = build_group(Family::Z2, 2, &[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(rd.positive_roots().len(), 2);
        assert_eq!(rd.group_order(), 4);
        assert_eq!(rd.gamma_kappa(), &rat(5, 6));
        assert_eq!(rd.mu(), &rat(11, 3));
        assert_eq!(rd.orbit_count(), 2);
        // kappa attaches to e_1 then e_2
        assert_eq!(rd.kappa(0), &rat(1, 2));
        assert_eq!(rd.kappa(1), &rat(1, 3));
    }

    #[test]
    fn a2_example() {
        let rd = build_group(Family::A, 3, &[rint(1)]).unwrap();
        assert_eq!(rd.positive_roots().len(), 3);
        assert_eq!(rd.group_order(), 6);
        assert_eq!(rd.orbit_count(), 1);
        assert_eq!(rd.gamma_kappa(), &rint(3));
        assert_eq!(rd.mu(), &rint(9));
    }

    #[test]
    fn b2_orbits_and_order() {
        let rd = build_group(Family::B, 2, &[rint(1), rat(1, 2)]).unwrap();
        assert_eq!(rd.positive_roots().len(), 4);
        assert_eq!(rd.group_order(), 8);
        assert_eq!(rd.orbit_count(), 2);
        // gamma = 2 * 1 + 2 * 1/2 = 3
        assert_eq!(rd.gamma_kappa(), &rint(3));
    }

    #[test]
    fn dihedral_support() {
        let rd = build_group(Family::I2, 4, &[rint(1), rint(2)]).unwrap();
        assert_eq!(rd.group_order(), 8);
        assert_eq!(rd.orbit_count(), 2);
        assert!(matches!(
            build_group(Family::I2, 3, &[rint(1)]),
            Err(Error::IrrationalDihedral(3))
        ));
        let small = build_group(Family::I2, 2, &[rint(1), rint(1)]).unwrap();
        assert_eq!(small.group_order(), 4);
    }

    #[test]
    fn zero_multiplicity_rejected() {
        assert!(matches!(
            build_group(Family::Z2, 2, &[rint(0), rint(0)]),
            Err(Error::ZeroGammaKappa)
        ));
        assert!(matches!(
            build_group(Family::Z2, 2, &[rint(1)]),
            Err(Error::KappaCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            build_group(Family::Z2, 2, &[rint(1), rat(-1, 2)]),
            Err(Error::NegativeKappa)
        ));
    }

    #[test]
    fn weight_examples() {
        let rd = build_group(Family::Z2, 2, &[rat(1, 2), rat(1, 2)]).unwrap();
        assert!((rd.weight_eval(&[1.0, 1.0]) - 1.0).abs() < 1e-15);
        assert_eq!(rd.weight_eval(&[0.0, 2.0]), 0.0);
        // an orbit with zero multiplicity contributes 1, even on its mirror;
        // the kappa = 1 orbit contributes |x_2|^2 = 9
        let rd = build_group(Family::Z2, 2, &[rint(0), rint(1)]).unwrap();
        assert!((rd.weight_eval(&[0.0, 3.0]) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_cap_enforced() {
        let kappa: Vec<Rat> = (0..9).map(|_| rat(1, 2)).collect();
        assert!(matches!(
            build_group(Family::Z2, 9, &kappa),
            Err(Error::DimensionTooLarge(9, 8))
        ));
    }

    #[test]
    fn weight_group_invariance() {
        let rd = build_group(Family::A, 3, &[rat(3, 2)]).unwrap();
        let x = vec![rat(3, 10), rat(-17, 10), rat(9, 10)];
        let x_f: Vec<f64> = x.iter().map(rat_to_f64).collect();
        let base = rd.weight_eval(&x_f);
        for w in rd.group() {
            let img = mat_apply(w, &x);
            let img_f: Vec<f64> = img.iter().map(rat_to_f64).collect();
            let value = rd.weight_eval(&img_f);
            assert!((value - base).abs() <= 1e-12 * base.abs().max(1.0));
        }
    }

    #[test]
    fn group_elements_contain_root_reflections() {
        let rd = build_group(Family::B, 2, &[rat(1, 2), rat(1, 3)]).unwrap();
        for alpha in rd.positive_roots() {
            let m = reflection_matrix(rd.dim(), alpha);
            assert!(rd.group().contains(&m));
        }
    }
}
