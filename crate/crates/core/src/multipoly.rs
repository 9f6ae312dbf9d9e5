//! Multivariate polynomials in `x_1..x_d` with multivector coefficients.
//!
//! The variables are real-valued and therefore central: they commute with
//! each other and with every Clifford coefficient. A polynomial is stored as
//! a sparse map from the exponent multi-index to its [`Multivector`]
//! coefficient, with zero coefficients dropped eagerly. The distinguished
//! element [`CPoly::x_poly`] is the vector variable `x = sum_i x_i e_i`,
//! whose geometric powers generate the radial factors used throughout the
//! crate (`x^2 = -|x|^2`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;

/// Sparse polynomial with rational multivector coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoly {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Multivector>,
}

impl CPoly {
    pub fn zero(dim: usize) -> Self {
        CPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        CPoly::constant(Multivector::one(dim))
    }

    pub fn scalar(dim: usize, c: Rat) -> Self {
        CPoly::constant(Multivector::scalar(dim, c))
    }

    pub fn constant(coeff: Multivector) -> Self {
        let mut p = CPoly::zero(coeff.dim());
        p.add_term(vec![0; p.dim], coeff);
        p
    }

    /// The scalar variable `x_i`, `i` 1-based.
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "variable index out of range");
        let mut exps = vec![0; dim];
        exps[i - 1] = 1;
        let mut p = CPoly::zero(dim);
        p.add_term(exps, Multivector::one(dim));
        p
    }

    /// The vector variable `x = sum_i x_i e_i`.
    pub fn x_poly(dim: usize) -> Self {
        let mut p = CPoly::zero(dim);
        for i in 1..=dim {
            let mut exps = vec![0; dim];
            exps[i - 1] = 1;
            p.add_term(exps, Multivector::basis_vector(dim, i));
        }
        p
    }

    /// `x^j` as a polynomial (geometric powers of the vector variable).
    pub fn vector_power(dim: usize, j: usize) -> Self {
        let x = CPoly::x_poly(dim);
        let mut acc = CPoly::one(dim);
        for _ in 0..j {
            acc = &acc * &x;
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Multivector)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Multivector {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.dim))
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Multivector) {
        debug_assert_eq!(exps.len(), self.dim);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `Some(m)` when every term has total degree `m` (zero counts as
    /// homogeneous of degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>() as usize);
        let Some(first) = it.next() else {
            return Some(0);
        };
        it.all(|m| m == first).then_some(first)
    }

    /// The homogeneous component of total degree `m`.
    pub fn homogeneous_part(&self, m: usize) -> CPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() as usize == m)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        CPoly {
            dim: self.dim,
            terms,
        }
    }

    /// Coefficient-wise Clifford conjugation (the variables are real).
    pub fn conjugate_coeffs(&self) -> CPoly {
        CPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.conjugate()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> CPoly {
        if c.is_zero() {
            return CPoly::zero(self.dim);
        }
        CPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// Left-multiplies every coefficient by `m`.
    pub fn mul_mv_left(&self, m: &Multivector) -> CPoly {
        let mut out = CPoly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), m.geometric_product(c).expect("dimension mismatch"));
        }
        out
    }

    /// Right-multiplies every coefficient by `m`.
    pub fn mul_mv_right(&self, m: &Multivector) -> CPoly {
        let mut out = CPoly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.geometric_product(m).expect("dimension mismatch"));
        }
        out
    }

    /// Product with coefficients multiplied in the geometric algebra,
    /// left factor's coefficients on the left.
    pub fn poly_mul(&self, other: &CPoly) -> Result<CPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = CPoly::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1.geometric_product(c2)?);
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, i: usize) -> CPoly {
        assert!(i >= 1 && i <= self.dim, "variable index out of range");
        let mut out = CPoly::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i - 1] -= 1;
            out.add_term(exps, c.scale(&Rat::from_integer(k.into())));
        }
        out
    }

    /// Substitutes `x_k -> sum_j rows[k][j] x_j` and expands. Coefficients
    /// are untouched.
    pub fn substitute_linear(&self, rows: &[Vec<Rat>]) -> CPoly {
        assert_eq!(rows.len(), self.dim);
        // scalar linear forms L_k and lazily grown power tables
        let forms: Vec<CPoly> = rows
            .iter()
            .map(|row| {
                let mut l = CPoly::zero(self.dim);
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let mut exps = vec![0; self.dim];
                        exps[j] = 1;
                        l.add_term(exps, Multivector::scalar(self.dim, c.clone()));
                    }
                }
                l
            })
            .collect();
        let mut powers: Vec<Vec<CPoly>> = (0..self.dim).map(|_| vec![CPoly::one(self.dim)]).collect();
        let mut out = CPoly::zero(self.dim);
        for (e, c) in &self.terms {
            let mut term = CPoly::one(self.dim);
            for (k, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                while powers[k].len() <= exp as usize {
                    let next = powers[k].last().unwrap().poly_mul(&forms[k]).unwrap();
                    powers[k].push(next);
                }
                term = term.poly_mul(&powers[k][exp as usize]).unwrap();
            }
            out = &out + &term.mul_mv_left(c);
        }
        out
    }

    /// Substitutes `x -> sigma_alpha x` (the reflection through the mirror
    /// orthogonal to `alpha`).
    pub fn poly_reflect(&self, alpha: &[Rat]) -> Result<CPoly> {
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch(alpha.len(), self.dim));
        }
        let norm2: Rat = alpha.iter().map(|a| a * a).sum();
        if norm2.is_zero() {
            return Err(Error::ZeroRoot);
        }
        let two = Rat::from_integer(2.into());
        let rows: Vec<Vec<Rat>> = (0..self.dim)
            .map(|k| {
                (0..self.dim)
                    .map(|j| {
                        let mut m = -(&two * &alpha[k] * &alpha[j]) / &norm2;
                        if k == j {
                            m += Rat::from_integer(1.into());
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Ok(self.substitute_linear(&rows))
    }

    /// `(p - p(sigma_alpha x)) / <alpha, x>`, exact.
    ///
    /// The numerator vanishes on the mirror, so the division has no
    /// remainder; a nonzero remainder indicates an arithmetic bug and is
    /// reported as an internal error. The division changes coordinates so
    /// the linear form becomes a single variable, divides term by term, and
    /// substitutes back.
    pub fn divided_difference(&self, alpha: &[Rat]) -> Result<CPoly> {
        let numerator = self - &self.poly_reflect(alpha)?;
        numerator.div_linear_form(alpha)
    }

    fn div_linear_form(&self, alpha: &[Rat]) -> Result<CPoly> {
        if self.is_zero() {
            return Ok(CPoly::zero(self.dim));
        }
        let pivot = alpha
            .iter()
            .position(|a| !a.is_zero())
            .ok_or(Error::ZeroRoot)?;
        // forward: x_pivot = (y_pivot - sum_{j != pivot} alpha_j y_j) / alpha_pivot
        let mut fwd: Vec<Vec<Rat>> = (0..self.dim)
            .map(|k| {
                let mut row = vec![Rat::zero(); self.dim];
                row[k] = Rat::from_integer(1.into());
                row
            })
            .collect();
        let inv = alpha[pivot].clone().recip();
        for j in 0..self.dim {
            fwd[pivot][j] = if j == pivot {
                inv.clone()
            } else {
                -(&alpha[j] * &inv)
            };
        }
        let in_y = self.substitute_linear(&fwd);
        let mut quotient = CPoly::zero(self.dim);
        for (e, c) in &in_y.terms {
            if e[pivot] == 0 {
                return Err(Error::internal(
                    "divided_difference",
                    "numerator does not vanish on the mirror",
                ));
            }
            let mut exps = e.clone();
            exps[pivot] -= 1;
            quotient.add_term(exps, c.clone());
        }
        // back: y_pivot = <alpha, x>, other coordinates unchanged
        let mut back: Vec<Vec<Rat>> = (0..self.dim)
            .map(|k| {
                let mut row = vec![Rat::zero(); self.dim];
                row[k] = Rat::from_integer(1.into());
                row
            })
            .collect();
        back[pivot] = alpha.to_vec();
        Ok(quotient.substitute_linear(&back))
    }

    /// Writes `self = sum_j a_j x^j p_n` with rational `a_j`, solving the
    /// exact linear system in the monomial basis. Errors when no such
    /// decomposition exists.
    pub fn radial_decompose(&self, p_n: &CPoly) -> Result<Vec<Rat>> {
        if p_n.is_zero() {
            return Err(Error::DecompositionFailed("zero reference polynomial".into()));
        }
        if self.dim != p_n.dim {
            return Err(Error::DimensionMismatch(self.dim, p_n.dim));
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let n = p_n.degree();
        let deg = self.degree();
        if deg < n {
            return Err(Error::DecompositionFailed(format!(
                "degree {deg} below the reference degree {n}"
            )));
        }
        let m = deg - n;
        let basis: Vec<CPoly> = (0..=m)
            .map(|j| CPoly::vector_power(self.dim, j).poly_mul(p_n).unwrap())
            .collect();

        // coordinates: every (monomial, blade) slot present anywhere
        let mut slots: BTreeMap<(Vec<u32>, u32), usize> = BTreeMap::new();
        let register = |p: &CPoly, slots: &mut BTreeMap<(Vec<u32>, u32), usize>| {
            for (e, c) in &p.terms {
                for (mask, _) in c.terms() {
                    let key = (e.clone(), mask);
                    let next = slots.len();
                    slots.entry(key).or_insert(next);
                }
            }
        };
        register(self, &mut slots);
        for b in &basis {
            register(b, &mut slots);
        }

        let rows = slots.len();
        let mut mat = vec![vec![Rat::zero(); basis.len()]; rows];
        let mut rhs = vec![Rat::zero(); rows];
        for (j, b) in basis.iter().enumerate() {
            for (e, c) in &b.terms {
                for (mask, v) in c.terms() {
                    mat[slots[&(e.clone(), mask)]][j] = v.clone();
                }
            }
        }
        for (e, c) in &self.terms {
            for (mask, v) in c.terms() {
                rhs[slots[&(e.clone(), mask)]] = v.clone();
            }
        }
        let coeffs = linalg::solve(&mat, &rhs)
            .ok_or_else(|| Error::DecompositionFailed("inconsistent linear system".into()))?;

        // reconstruction check
        let mut rebuilt = CPoly::zero(self.dim);
        for (a, b) in coeffs.iter().zip(&basis) {
            rebuilt = &rebuilt + &b.scale(a);
        }
        if &rebuilt != self {
            return Err(Error::internal(
                "radial_decompose",
                "reconstruction mismatch after solve",
            ));
        }
        Ok(coeffs)
    }

    /// The grade-0 component as a plain rational polynomial.
    pub fn scalar_component(&self) -> BTreeMap<Vec<u32>, Rat> {
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let s = c.scalar_part();
                (!s.is_zero()).then(|| (e.clone(), s))
            })
            .collect()
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            dim: self.dim,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        self.poly_mul(rhs).expect("dimension mismatch")
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

// JSON wire form:
// {"d": 2, "terms": [{"monomial": [2, 0], "coeff": {...multivector...}}]}

#[derive(Serialize, Deserialize)]
struct CPolyWire {
    d: usize,
    terms: Vec<MonomialTermWire>,
}

#[derive(Serialize, Deserialize)]
struct MonomialTermWire {
    monomial: Vec<u32>,
    coeff: Multivector,
}

impl Serialize for CPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| MonomialTermWire {
                monomial: e.clone(),
                coeff: c.clone(),
            })
            .collect();
        CPolyWire { d: self.dim, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CPolyWire::deserialize(deserializer)?;
        let mut p = CPoly::zero(wire.d);
        for t in wire.terms {
            if t.monomial.len() != wire.d {
                return Err(D::Error::custom("monomial length does not match dimension"));
            }
            if t.coeff.dim() != wire.d {
                return Err(D::Error::custom("coefficient dimension does not match"));
            }
            p.add_term(t.monomial, t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn vector_variable_squares_to_minus_radius() {
        let d = 3;
        let x = CPoly::x_poly(d);
        let x2 = &x * &x;
        let mut expect = CPoly::zero(d);
        for i in 1..=d {
            let xi = CPoly::var(d, i);
            expect = &expect + &(&xi * &xi);
        }
        assert_eq!(x2, -expect);
    }

    #[test]
    fn x1_e1_squared() {
        let d = 2;
        let p = CPoly::var(d, 1).mul_mv_left(&Multivector::basis_vector(d, 1));
        let sq = &p * &p;
        let expect = -(&CPoly::var(d, 1) * &CPoly::var(d, 1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn identity_multiplication() {
        let d = 2;
        let p = &CPoly::var(d, 1) + &CPoly::scalar(d, rat(1, 3));
        assert_eq!(&CPoly::one(d) * &p, p);
        assert!(matches!(
            CPoly::one(2).poly_mul(&CPoly::one(3)),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn reflect_examples() {
        let d = 2;
        let e1 = vec![rint(1), rint(0)];
        let x1 = CPoly::var(d, 1);
        let x1sq = &x1 * &x1;
        assert_eq!(x1sq.poly_reflect(&e1).unwrap(), x1sq);
        assert_eq!(x1.poly_reflect(&e1).unwrap(), -x1.clone());
        // transposition mirror swaps x1 and x2
        let swap = vec![rint(1), rint(-1)];
        assert_eq!(x1.poly_reflect(&swap).unwrap(), CPoly::var(d, 2));
        assert!(x1.poly_reflect(&[rint(0), rint(0)]).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        let d = 2;
        let e1 = vec![rint(1), rint(0)];
        let x1 = CPoly::var(d, 1);
        let x1sq = &x1 * &x1;
        assert!(x1sq.divided_difference(&e1).unwrap().is_zero());
        assert_eq!(x1.divided_difference(&e1).unwrap(), CPoly::scalar(d, rint(2)));
        let x1cubed = &x1sq * &x1;
        assert_eq!(x1cubed.divided_difference(&e1).unwrap(), x1sq.scale(&rint(2)));
    }

    #[test]
    fn divided_difference_general_direction() {
        // reconstruction: dd(p, a) * <a, x> + p(sigma_a x) = p
        let d = 3;
        let alpha = vec![rint(1), rint(-2), rat(1, 2)];
        let p = {
            let x1 = CPoly::var(d, 1);
            let x2 = CPoly::var(d, 2);
            let x3 = CPoly::var(d, 3);
            let mut q = &(&x1 * &x2) * &x3;
            q = &q + &(&x2 * &x2).scale(&rat(3, 5));
            &q + &x1.mul_mv_left(&Multivector::blade(d, &[1, 3]))
        };
        let dd = p.divided_difference(&alpha).unwrap();
        let mut form = CPoly::zero(d);
        for (i, a) in alpha.iter().enumerate() {
            form = &form + &CPoly::var(d, i + 1).scale(a);
        }
        let rebuilt = &(&dd * &form) + &p.poly_reflect(&alpha).unwrap();
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn radial_decomposition() {
        let d = 2;
        let p_n = CPoly::one(d);
        assert_eq!(p_n.radial_decompose(&p_n).unwrap(), vec![rint(1)]);

        let x = CPoly::x_poly(d);
        let m2x = x.scale(&rint(-2));
        assert_eq!(m2x.radial_decompose(&p_n).unwrap(), vec![rint(0), rint(-2)]);

        // something outside span{x^j}
        let stray = CPoly::var(d, 1);
        assert!(matches!(
            stray.radial_decompose(&p_n),
            Err(Error::DecompositionFailed(_))
        ));
        assert!(CPoly::zero(d).radial_decompose(&p_n).unwrap().is_empty());
    }

    #[test]
    fn homogeneity_queries() {
        let d = 2;
        let x1 = CPoly::var(d, 1);
        let p = &(&x1 * &x1) + &CPoly::var(d, 2);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!((&x1 * &x1).homogeneous_degree(), Some(2));
        assert_eq!(p.homogeneous_part(1), CPoly::var(d, 2));
    }

    #[test]
    fn json_round_trip() {
        let d = 2;
        let p = &CPoly::var(d, 1).mul_mv_left(&Multivector::blade(d, &[1, 2])).scale(&rat(-3, 4))
            + &CPoly::one(d);
        let text = serde_json::to_string(&p).unwrap();
        let back: CPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
