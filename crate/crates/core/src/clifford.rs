//! Exact arithmetic in the universal real Clifford algebra `R_{0,d}`.
//!
//! Generators satisfy `e_i e_j + e_j e_i = -2 delta_ij`, so every generator
//! squares to `-1` and a vector squares to minus its Euclidean norm. Elements
//! are stored sparsely: a blade `e_A` is keyed by the bitmask of its index
//! set `A` (bit `i-1` set means `e_i` occurs), and the canonical blade has
//! ascending indices. All components are arbitrary-precision rationals, so
//! every identity in this module holds exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};

/// Dimensions above this are rejected by the plain constructors; use
/// [`Multivector::zero_with_cap`] to go higher (the blade count is `2^d`).
pub const DEFAULT_MAX_DIM: usize = 8;

/// Hard ceiling: blade masks are `u32`.
pub const HARD_MAX_DIM: usize = 24;

/// Element of `R_{0,d}` with rational components, sparse over blades.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<u32, Rat>,
}

fn check_dim(dim: usize, cap: usize) -> Result<()> {
    if dim > cap.min(HARD_MAX_DIM) {
        return Err(Error::DimensionTooLarge(dim, cap.min(HARD_MAX_DIM)));
    }
    Ok(())
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        check_dim(dim, DEFAULT_MAX_DIM).expect("dimension above default cap");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Zero element in a dimension above [`DEFAULT_MAX_DIM`].
    pub fn zero_with_cap(dim: usize, cap: usize) -> Result<Self> {
        check_dim(dim, cap)?;
        Ok(Multivector {
            dim,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(dim: usize, value: Rat) -> Self {
        let mut m = Multivector::zero(dim);
        m.add_term(0, value);
        m
    }

    pub fn one(dim: usize) -> Self {
        Multivector::scalar(dim, Rat::from_integer(1.into()))
    }

    /// The generator `e_i`, `i` 1-based.
    pub fn basis_vector(dim: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= dim, "generator index out of range");
        let mut m = Multivector::zero(dim);
        m.add_term(1 << (i - 1), Rat::from_integer(1.into()));
        m
    }

    /// The blade `e_A` for ascending 1-based indices.
    pub fn blade(dim: usize, indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!(i >= 1 && i <= dim, "blade index out of range");
            assert!(mask & (1 << (i - 1)) == 0, "repeated blade index");
            mask |= 1 << (i - 1);
        }
        let mut m = Multivector::zero(dim);
        m.add_term(mask, Rat::from_integer(1.into()));
        m
    }

    /// Embeds a coordinate vector as `sum_i x_i e_i`.
    pub fn from_vector(x: &[Rat]) -> Self {
        let mut m = Multivector::zero(x.len());
        for (i, c) in x.iter().enumerate() {
            m.add_term(1 << i, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(blade mask, component)` in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn component(&self, mask: u32) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    /// sc[x]: the coefficient of the empty blade.
    pub fn scalar_part(&self) -> Rat {
        self.component(0)
    }

    /// The grade-1 coordinates if this is a pure vector (zero counts).
    pub fn as_vector(&self) -> Option<Vec<Rat>> {
        if self.terms.keys().any(|m| m.count_ones() != 1) {
            return None;
        }
        Some((0..self.dim).map(|i| self.component(1 << i)).collect())
    }

    fn add_term(&mut self, mask: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// Geometric product. Errors when the operands live in different
    /// dimensions.
    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Multivector {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let sign = blade_product_sign(a, b);
                let c = ca * cb;
                out.add_term(a ^ b, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Clifford conjugation: the anti-involution with `conj(e_i) = -e_i`.
    /// On a grade-`g` blade it multiplies by `(-1)^{g(g+1)/2}`.
    pub fn conjugate(&self) -> Multivector {
        let mut out = Multivector {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (&mask, c) in &self.terms {
            let g = mask.count_ones() as u64;
            let flip = (g * (g + 1) / 2) % 2 == 1;
            out.add_term(mask, if flip { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Inverse of a nonzero pure vector: `x^{-1} = -x / |x|^2`.
    pub fn vector_inverse(&self) -> Result<Multivector> {
        let coords = self.as_vector().ok_or(Error::NotAVector)?;
        let norm2: Rat = coords.iter().map(|c| c * c).sum();
        if norm2.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(&(-norm2.recip())))
    }

    pub fn scale(&self, c: &Rat) -> Multivector {
        if c.is_zero() {
            return Multivector {
                dim: self.dim,
                terms: BTreeMap::new(),
            };
        }
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    pub fn max_grade(&self) -> u32 {
        self.terms.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }
}

/// Sign of `e_A e_B` relative to the canonical blade `e_{A xor B}` for the
/// all-negative signature: transposition parity from merging the index lists,
/// times `-1` per common index.
fn blade_product_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    let negatives = (a & b).count_ones();
    if (swaps + negatives) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coordinate reflection of `x` in the hyperplane orthogonal to `alpha`:
/// `x - 2<x,alpha>/|alpha|^2 alpha`.
pub fn reflect_vector(x: &[Rat], alpha: &[Rat]) -> Result<Vec<Rat>> {
    if x.len() != alpha.len() {
        return Err(Error::DimensionMismatch(x.len(), alpha.len()));
    }
    let norm2: Rat = alpha.iter().map(|a| a * a).sum();
    if norm2.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let dot: Rat = x.iter().zip(alpha).map(|(xi, ai)| xi * ai).sum();
    let t = rat2(&dot) / norm2;
    Ok(x.iter()
        .zip(alpha)
        .map(|(xi, ai)| xi - &t * ai)
        .collect())
}

fn rat2(r: &Rat) -> Rat {
    r + r
}

/// Same reflection computed inside the algebra as `-alpha x alpha^{-1}`.
pub fn reflect_vector_clifford(x: &[Rat], alpha: &[Rat]) -> Result<Vec<Rat>> {
    if x.len() != alpha.len() {
        return Err(Error::DimensionMismatch(x.len(), alpha.len()));
    }
    let a = Multivector::from_vector(alpha);
    let a_inv = a.vector_inverse().map_err(|e| match e {
        Error::ZeroVector => Error::ZeroRoot,
        other => other,
    })?;
    let xm = Multivector::from_vector(x);
    let out = (-(a.geometric_product(&xm)?)).geometric_product(&a_inv)?;
    out.as_vector().ok_or_else(|| {
        Error::internal("reflect_vector_clifford", "sandwich product is not a vector")
    })
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c.clone());
        }
        out
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            dim: self.dim,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("dimension mismatch")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&mask, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{}", format_rat(c))?;
            } else {
                let idx: String = (0..self.dim)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| (i + 1).to_string())
                    .collect();
                write!(f, "{}*e{}", format_rat(c), idx)?;
            }
        }
        Ok(())
    }
}

// JSON wire form:
// {"d": 2, "terms": [{"blade": [1, 2], "coeff": "-3/4"}]}

#[derive(Serialize, Deserialize)]
struct MultivectorWire {
    d: usize,
    terms: Vec<BladeTermWire>,
}

#[derive(Serialize, Deserialize)]
struct BladeTermWire {
    blade: Vec<usize>,
    coeff: String,
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(&mask, c)| BladeTermWire {
                blade: (0..self.dim).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect(),
                coeff: format_rat(c),
            })
            .collect();
        MultivectorWire { d: self.dim, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MultivectorWire::deserialize(deserializer)?;
        let mut m = Multivector::zero_with_cap(wire.d, HARD_MAX_DIM).map_err(D::Error::custom)?;
        for t in wire.terms {
            let mut mask = 0u32;
            for i in t.blade {
                if i < 1 || i > wire.d {
                    return Err(D::Error::custom(format!("blade index {i} out of range")));
                }
                if mask & (1 << (i - 1)) != 0 {
                    return Err(D::Error::custom("repeated blade index"));
                }
                mask |= 1 << (i - 1);
            }
            let c = parse_rat(&t.coeff).map_err(D::Error::custom)?;
            m.add_term(mask, c);
        }
        Ok(m)
    }
}
