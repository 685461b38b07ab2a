//! Weight orders refined by graded reverse lexicographic order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::Rational;

/// Compares `w·a` first and breaks ties with grevlex.
///
/// Negative weights are allowed. The order is then only a well-order on
/// monomials of fixed total degree, which is all that homogeneous ideals need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weight: Vec<Rational>,
    scaled: Vec<i128>,
}

impl TermOrder {
    pub fn new(weight: Vec<Rational>) -> Self {
        let lcm = weight.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scaled = weight
            .iter()
            .map(|w| {
                (w.numer() * (&lcm / w.denom()))
                    .to_i128()
                    .expect("scaled weight out of range")
            })
            .collect();
        TermOrder { weight, scaled }
    }

    pub fn from_ints(weight: &[i64]) -> Self {
        Self::new(weight.iter().map(|&w| crate::rational::int(w)).collect())
    }

    pub fn grevlex(n: usize) -> Self {
        Self::from_ints(&vec![0; n])
    }

    /// Order on `n + 1` variables in which any monomial containing the last
    /// variable exceeds every monomial free of it.
    pub fn eliminate_last(n: usize) -> Self {
        let mut w = vec![0; n + 1];
        w[n] = 1;
        Self::from_ints(&w)
    }

    pub fn nvars(&self) -> usize {
        self.weight.len()
    }

    pub fn weight(&self) -> &[Rational] {
        &self.weight
    }

    /// Weight of a monomial, scaled by the common denominator of `w`.
    pub fn scaled_weight(&self, m: &Monomial) -> i128 {
        self.scaled.iter().zip(m.exps()).map(|(w, &e)| w * e as i128).sum()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.nvars() != self.nvars() {
                return Err(Error::Dimension { expected: self.nvars(), found: m.nvars() });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; lengths must agree.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        self.scaled_weight(a)
            .cmp(&self.scaled_weight(b))
            .then_with(|| grevlex(a, b))
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exps().iter().zip(b.exps()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    /// Textbook grevlex: degree, then the last differing entry of a − b is negative.
    fn brute_grevlex(a: &Monomial, b: &Monomial) -> Ordering {
        if a.degree() != b.degree() {
            return a.degree().cmp(&b.degree());
        }
        let diff: Vec<i64> = a.exps().iter().zip(b.exps()).map(|(x, y)| *x as i64 - *y as i64).collect();
        match diff.iter().rev().find(|d| **d != 0) {
            None => Ordering::Equal,
            Some(d) if *d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn weight_decides_first() {
        let o = TermOrder::from_ints(&[1, 3, 0, 0]);
        assert_eq!(o.compare(&m(&[0, 1, 1, 0]), &m(&[1, 0, 0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0, 1]), &m(&[1, 0, 0, 1])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn dimension_is_checked() {
        let o = TermOrder::grevlex(3);
        assert!(o.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn zero_weight_is_grevlex() {
        let o = TermOrder::grevlex(3);
        let all = Monomial::all_up_to_degree(3, 4);
        for a in &all {
            for b in &all {
                assert_eq!(o.cmp(a, b), brute_grevlex(a, b));
            }
        }
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn total_and_multiplicative() {
        let o = TermOrder::new(vec![crate::rational::rat(1, 2), crate::rational::int(-2), crate::rational::int(1)]);
        let all = Monomial::all_up_to_degree(3, 3);
        for a in &all {
            for b in &all {
                let ab = o.cmp(a, b);
                assert_eq!(ab, o.cmp(b, a).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &all {
                    if ab == Ordering::Greater && o.cmp(b, c) == Ordering::Greater {
                        assert_eq!(o.cmp(a, c), Ordering::Greater);
                    }
                    assert_eq!(o.cmp(&a.mul(c), &b.mul(c)), ab);
                }
            }
        }
    }
}
