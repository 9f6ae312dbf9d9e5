//! Exact symbolic values built from Gamma-function evaluations.
//!
//! A [`GammaExpr`] is a finite sum of terms `c * pi^(p/2) * prod Gamma(a_i)^m_i`
//! with rational `c`, integer half-power `p`, and arguments `a_i` in `(0, 1)`.
//! The normal form is reached by the functional equation `Gamma(z+1) = z Gamma(z)`
//! (folding integer shifts into the coefficient), `Gamma(1) = 1`, and
//! `Gamma(1/2) = sqrt(pi)`; terms with the same symbolic signature merge.
//! Equality of normal forms is decidable and zero means an empty sum, which
//! is what makes the exact orthogonality checks possible.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::lanczos_gamma;
use crate::rat::{format_rat, parse_rat, rat_to_f64, split_fractional, Rat};

/// Symbolic signature of one term: half-power of pi and the multiset of
/// Gamma arguments (each in `(0,1)`, never `1/2`), with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
struct TermKey {
    pi_half: i64,
    gammas: BTreeMap<Rat, i64>,
}

/// Exact value of the form `sum_k c_k * pi^(p_k/2) * prod Gamma(a)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaExpr {
    terms: BTreeMap<TermKey, Rat>,
}

impl GammaExpr {
    pub fn zero() -> Self {
        GammaExpr::default()
    }

    pub fn one() -> Self {
        GammaExpr::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut e = GammaExpr::zero();
        e.add_term(TermKey::default(), c);
        e
    }

    /// `Gamma(z)` for rational `z > 0`, normalized.
    pub fn gamma(z: &Rat) -> Result<Self> {
        let (a, k) = split_fractional(z)?;
        let mut coeff = Rat::one();
        for i in 0..k {
            coeff *= &a + Rat::from_integer(i.into());
        }
        let mut key = TermKey::default();
        if a == Rat::new(1.into(), 2.into()) {
            key.pi_half = 1;
        } else if !a.is_one() {
            key.gammas.insert(a, 1);
        }
        let mut e = GammaExpr::zero();
        e.add_term(key, coeff);
        Ok(e)
    }

    /// `pi^(p/2)`.
    pub fn pi_half_power(p: i64) -> Self {
        let mut e = GammaExpr::zero();
        e.add_term(
            TermKey {
                pi_half: p,
                gammas: BTreeMap::new(),
            },
            Rat::one(),
        );
        e
    }

    /// Surface measure of the unit sphere, `2 pi^(d/2) / Gamma(d/2)`.
    pub fn sphere_surface(d: usize) -> Self {
        let half_d = Rat::new((d as i64).into(), 2.into());
        let gamma_half_d = GammaExpr::gamma(&half_d).expect("positive argument");
        let num = GammaExpr::pi_half_power(d as i64).scale(&Rat::from_integer(2.into()));
        num.div_single(&gamma_half_d).expect("Gamma(d/2) is a single term")
    }

    fn add_term(&mut self, key: TermKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(c)` when the value is the plain rational `c`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (key, c) = self.terms.iter().next().unwrap();
        (key.pi_half == 0 && key.gammas.is_empty()).then(|| c.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return GammaExpr::zero();
        }
        GammaExpr {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Division by a one-term expression.
    pub fn div_single(&self, divisor: &GammaExpr) -> Result<Self> {
        if divisor.terms.len() != 1 {
            return Err(Error::GammaDivision(format!(
                "not a single term ({} terms)",
                divisor.terms.len()
            )));
        }
        let (dk, dc) = divisor.terms.iter().next().unwrap();
        let mut out = GammaExpr::zero();
        for (k, c) in &self.terms {
            let mut gammas = k.gammas.clone();
            for (a, m) in &dk.gammas {
                let e = gammas.entry(a.clone()).or_insert(0);
                *e -= m;
                if *e == 0 {
                    gammas.remove(a);
                }
            }
            out.add_term(
                TermKey {
                    pi_half: k.pi_half - dk.pi_half,
                    gammas,
                },
                c / dc,
            );
        }
        Ok(out)
    }

    /// `Some(r)` when `self == r * other` for a rational `r`.
    pub fn ratio_to(&self, other: &GammaExpr) -> Option<Rat> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let (k0, c0) = other.terms.iter().next().unwrap();
        let r = self.terms.get(k0)? / c0;
        (self == &other.scale(&r)).then_some(r)
    }

    /// Double-precision value via the Lanczos Gamma approximation.
    pub fn to_f64(&self) -> f64 {
        let mut total = 0.0;
        for (k, c) in &self.terms {
            let mut v = rat_to_f64(c) * std::f64::consts::PI.powf(k.pi_half as f64 / 2.0);
            for (a, m) in &k.gammas {
                v *= lanczos_gamma(rat_to_f64(a)).powi(*m as i32);
            }
            total += v;
        }
        total
    }
}

impl Add for &GammaExpr {
    type Output = GammaExpr;
    fn add(self, rhs: &GammaExpr) -> GammaExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GammaExpr {
    type Output = GammaExpr;
    fn sub(self, rhs: &GammaExpr) -> GammaExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Neg for GammaExpr {
    type Output = GammaExpr;
    fn neg(self) -> GammaExpr {
        GammaExpr {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &GammaExpr {
    type Output = GammaExpr;
    fn mul(self, rhs: &GammaExpr) -> GammaExpr {
        let mut out = GammaExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut gammas = ka.gammas.clone();
                for (a, m) in &kb.gammas {
                    let e = gammas.entry(a.clone()).or_insert(0);
                    *e += m;
                    if *e == 0 {
                        gammas.remove(a);
                    }
                }
                out.add_term(
                    TermKey {
                        pi_half: ka.pi_half + kb.pi_half,
                        gammas,
                    },
                    ca * cb,
                );
            }
        }
        out
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rat(c))?;
            if k.pi_half != 0 {
                if k.pi_half % 2 == 0 {
                    write!(f, " * pi^({})", k.pi_half / 2)?;
                } else {
                    write!(f, " * pi^({}/2)", k.pi_half)?;
                }
            }
            for (a, m) in &k.gammas {
                if *m == 1 {
                    write!(f, " * Gamma({})", format_rat(a))?;
                } else {
                    write!(f, " * Gamma({})^{}", format_rat(a), m)?;
                }
            }
        }
        Ok(())
    }
}

// JSON mirror of the term list.

#[derive(Serialize, Deserialize)]
struct GammaExprWire {
    terms: Vec<GammaTermWire>,
}

#[derive(Serialize, Deserialize)]
struct GammaTermWire {
    coeff: String,
    pi_half_pow: i64,
    gammas: Vec<GammaFactorWire>,
}

#[derive(Serialize, Deserialize)]
struct GammaFactorWire {
    arg: String,
    pow: i64,
}

impl Serialize for GammaExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| GammaTermWire {
                coeff: format_rat(c),
                pi_half_pow: k.pi_half,
                gammas: k
                    .gammas
                    .iter()
                    .map(|(a, m)| GammaFactorWire {
                        arg: format_rat(a),
                        pow: *m,
                    })
                    .collect(),
            })
            .collect();
        GammaExprWire { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GammaExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = GammaExprWire::deserialize(d)?;
        let mut out = GammaExpr::zero();
        for t in wire.terms {
            let mut gammas = BTreeMap::new();
            for g in t.gammas {
                let a = parse_rat(&g.arg).map_err(D::Error::custom)?;
                if !a.is_positive() || a >= Rat::one() {
                    return Err(D::Error::custom("gamma argument outside (0,1)"));
                }
                if g.pow != 0 {
                    gammas.insert(a, g.pow);
                }
            }
            out.add_term(
                TermKey {
                    pi_half: t.pi_half_pow,
                    gammas,
                },
                parse_rat(&t.coeff).map_err(D::Error::custom)?,
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn functional_equation_folding() {
        // Gamma(11/6) = (5/6) Gamma(5/6)
        let g = GammaExpr::gamma(&rat(11, 6)).unwrap();
        let base = GammaExpr::gamma(&rat(5, 6)).unwrap();
        assert_eq!(g, base.scale(&rat(5, 6)));
        assert_eq!(g.to_string(), "5/6 * Gamma(5/6)");
        // Gamma(3) = 2, Gamma(1) = 1
        assert_eq!(GammaExpr::gamma(&rint(3)).unwrap().as_rational(), Some(rint(2)));
        assert_eq!(GammaExpr::gamma(&rint(1)).unwrap(), GammaExpr::one());
        // Gamma(5/2) = (3/4) sqrt(pi)
        let g52 = GammaExpr::gamma(&rat(5, 2)).unwrap();
        assert_eq!(g52, GammaExpr::pi_half_power(1).scale(&rat(3, 4)));
        assert!(GammaExpr::gamma(&rint(0)).is_err());
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = GammaExpr::gamma(&rat(5, 6)).unwrap();
        let b = GammaExpr::gamma(&rat(11, 6)).unwrap();
        // b - (5/6) a = 0
        let diff = &b - &a.scale(&rat(5, 6));
        assert!(diff.is_zero());
        let prod = &a * &a;
        assert_eq!(prod.num_terms(), 1);
        assert!(prod.as_rational().is_none());
        assert_eq!(prod.div_single(&a).unwrap(), a);
    }

    #[test]
    fn ratio_extraction() {
        let a = GammaExpr::gamma(&rat(7, 6)).unwrap();
        let b = a.scale(&rat(-3, 7));
        assert_eq!(b.ratio_to(&a), Some(rat(-3, 7)));
        let c = GammaExpr::gamma(&rat(1, 3)).unwrap();
        assert_eq!(c.ratio_to(&a), None);
        assert_eq!(GammaExpr::zero().ratio_to(&a), Some(rint(0)));
    }

    #[test]
    fn sphere_surface_values() {
        // d = 2: 2 pi; d = 3: 4 pi; d = 1: 2
        assert_eq!(GammaExpr::sphere_surface(2), GammaExpr::pi_half_power(2).scale(&rint(2)));
        assert_eq!(GammaExpr::sphere_surface(3), GammaExpr::pi_half_power(2).scale(&rint(4)));
        assert_eq!(GammaExpr::sphere_surface(1), GammaExpr::from_rat(rint(2)));
    }

    #[test]
    fn float_evaluation() {
        let g = GammaExpr::gamma(&rat(1, 2)).unwrap();
        assert!((g.to_f64() - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let g4 = GammaExpr::gamma(&rint(4)).unwrap();
        assert!((g4.to_f64() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn text_and_json_forms() {
        let e = &GammaExpr::gamma(&rat(5, 6)).unwrap().scale(&rat(1, 2))
            + &GammaExpr::pi_half_power(3).scale(&rint(2));
        let text = e.to_string();
        assert!(text.contains("1/2 * Gamma(5/6)"));
        assert!(text.contains("2 * pi^(3/2)"));
        let json = serde_json::to_string(&e).unwrap();
        let back: GammaExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
