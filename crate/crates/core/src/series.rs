//! Multivariate power series truncated at a total degree.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{act, Family, Polynomial};

/// Power series known exactly up to and including total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: Polynomial,
    degree: u32,
}

impl TruncatedSeries {
    pub fn new(poly: Polynomial, degree: u32) -> Self {
        TruncatedSeries { poly: poly.truncate(degree), degree }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn family(&self) -> Family {
        self.poly.family()
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree.min(other.degree);
        Self::new(&self.poly.truncate(d) + &other.poly.truncate(d), d)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree.min(other.degree);
        let a = self.poly.truncate(d);
        let b = other.poly.truncate(d);
        let mut out = Polynomial::zero(a.family(), a.nvars());
        for (m, x) in a.terms() {
            for (k, y) in b.terms() {
                if m.degree() + k.degree() <= d {
                    out.add_term(m.mul(k), x * y);
                }
            }
        }
        TruncatedSeries { poly: out, degree: d }
    }

    /// Multiplies by a polynomial, keeping this series' truncation degree.
    pub fn mul_poly(&self, p: &Polynomial) -> TruncatedSeries {
        self.mul(&TruncatedSeries::new(p.clone(), self.degree))
    }

    /// Applies `q(∂)` and lowers the truncation degree by `deg q`.
    pub fn apply_operator(&self, q: &Polynomial) -> Result<TruncatedSeries> {
        if !q.family().is_operator() || self.family() != q.family().dual() {
            return Err(Error::Ring(q.family(), self.family()));
        }
        let drop = q.degree().unwrap_or(0);
        let d = self.degree.saturating_sub(drop);
        Ok(TruncatedSeries::new(act(q, &self.poly, self.family()), d))
    }
}

/// Inverse of a unit series modulo terms of total degree above `deg`.
pub fn series_invert_unit(f: &TruncatedSeries, deg: u32) -> Result<TruncatedSeries> {
    let c0 = f.poly.constant_term();
    if c0.is_zero() {
        return Err(Error::NonUnit);
    }
    let d = deg.min(f.degree);
    let fam = f.family();
    let n = f.poly.nvars();
    // f = c0 (1 − g) with g of positive order; 1/f = c0⁻¹ Σ g^k.
    let inv0 = c0.recip();
    let g = TruncatedSeries::new(&Polynomial::one(fam, n) - &f.poly.scale(&inv0), d);
    let mut acc = TruncatedSeries::new(Polynomial::one(fam, n), d);
    let mut power = acc.clone();
    for _ in 0..d {
        power = power.mul(&g);
        if power.poly.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    let out = TruncatedSeries::new(acc.poly.scale(&inv0), d);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(s: &str) -> Polynomial {
        Polynomial::parse(s, Family::T, 4).unwrap()
    }

    #[test]
    fn geometric_series() {
        let f = TruncatedSeries::new(t("1 + t2"), 5);
        let inv = series_invert_unit(&f, 2).unwrap();
        assert_eq!(inv.poly(), &t("1 - t2 + t2^2"));
        assert_eq!(inv.degree(), 2);
        let one = TruncatedSeries::new(t("1"), 3);
        assert_eq!(series_invert_unit(&one, 3).unwrap().poly(), &t("1"));
        assert_eq!(series_invert_unit(&TruncatedSeries::new(t("t1"), 2), 2), Err(Error::NonUnit));
    }

    #[test]
    fn product_of_units_multiplies_back() {
        let f = TruncatedSeries::new(&t("1 + t2") * &t("1 + t4"), 10);
        let inv = series_invert_unit(&f, 3).unwrap();
        let prod = inv.mul(&f);
        assert_eq!(prod.poly(), &t("1"));
        assert_eq!(prod.degree(), 3);
    }

    #[test]
    fn random_units_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let monos = Monomial::all_up_to_degree(3, 3);
        for _ in 0..100 {
            let mut f = Polynomial::constant(Family::S, 3, rat(rng.gen_range(1..5), rng.gen_range(1..4)));
            for _ in 0..4 {
                let m = monos[rng.gen_range(1..monos.len())].clone();
                f.add_term(m, rat(rng.gen_range(-3..4), rng.gen_range(1..3)));
            }
            let deg = rng.gen_range(0..5);
            let fs = TruncatedSeries::new(f, 6);
            let inv = series_invert_unit(&fs, deg).unwrap();
            let check = &inv.mul(&fs).poly().truncate(deg) - &Polynomial::one(Family::S, 3);
            assert!(check.is_zero(), "residual {check}");
        }
    }

    #[test]
    fn truncation_degree_is_minimum() {
        let a = TruncatedSeries::new(t("1 + t1"), 2);
        let b = TruncatedSeries::new(t("1 + t1^2 + t1^3"), 5);
        let c = a.mul(&b);
        assert_eq!(c.degree(), 2);
        assert_eq!(c.poly(), &t("1 + t1 + t1^2"));
        let d = b.apply_operator(&Polynomial::parse("dt1", Family::Dt, 4).unwrap()).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.poly(), &t("2*t1 + 3*t1^2"));
    }
}
