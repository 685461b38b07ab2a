//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_negative_integer(q: &Rational) -> bool {
    is_integer(q) && q.is_negative()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" -1/2 ").unwrap().to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn normalised_representation() {
        let q = rat(4, -6);
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }

    #[test]
    fn addition_matches_cross_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, c): (i64, i64) = (rng.gen_range(-50..50), rng.gen_range(-50..50));
            let (b, d): (i64, i64) = (rng.gen_range(1..40), rng.gen_range(1..40));
            let sum = rat(a, b) + rat(c, d);
            let n = a * d + c * b;
            let m = b * d;
            assert_eq!(sum.numer() * BigInt::from(m), sum.denom() * BigInt::from(n));
            assert!(sum.denom() > &BigInt::zero());
        }
    }

    #[test]
    fn integer_predicates() {
        assert!(is_negative_integer(&int(-1)));
        assert!(!is_negative_integer(&rat(-1, 2)));
        assert!(!is_negative_integer(&int(0)));
        assert_eq!(to_i64(&int(5)), Some(5));
        assert_eq!(to_i64(&rat(5, 2)), None);
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(factorial(0), BigInt::from(1));
    }
}
