//! Arbitrary-precision rational helpers.
//!
//! All exact computation in the crate runs over `num_rational::BigRational`,
//! aliased to [`Rat`]. Rationals cross the serialization boundary as
//! decimal-free strings: `"3"`, `"-3/4"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Formats without a denominator when it is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Divide as floats after separately converting numerator and denominator;
    // accurate enough for the magnitudes that occur here.
    let p = bigint_to_f64(r.numer());
    let q = bigint_to_f64(r.denom());
    p / q
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_radix_le(256);
    let mut value = 0.0;
    let mut scale = 1.0;
    for d in digits {
        value += d as f64 * scale;
        scale *= 256.0;
    }
    if sign == num_bigint::Sign::Minus {
        -value
    } else {
        value
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
        .try_into()
        .expect("binomial overflow")
}

/// Splits a positive rational as `a + k` with `a` in `(0, 1]` and `k >= 0`.
pub fn split_fractional(z: &Rat) -> Result<(Rat, u64)> {
    if !z.is_positive() {
        return Err(Error::GammaPole(format_rat(z)));
    }
    let k = (z.ceil() - Rat::one()).to_integer();
    let a = z - Rat::from_integer(k.clone());
    let k: u64 = k.try_into().map_err(|_| Error::GammaPole(format_rat(z)))?;
    Ok((a, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-3/4", "0", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn fractional_split() {
        let (a, k) = split_fractional(&rat(11, 6)).unwrap();
        assert_eq!(a, rat(5, 6));
        assert_eq!(k, 1);
        let (a, k) = split_fractional(&rint(3)).unwrap();
        assert_eq!(a, rint(1));
        assert_eq!(k, 2);
        assert!(split_fractional(&rint(0)).is_err());
        assert!(split_fractional(&rat(-1, 2)).is_err());
    }

    #[test]
    fn rational_to_float() {
        assert_eq!(rat_to_f64(&rat(-3, 4)), -0.75);
        assert!((rat_to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
