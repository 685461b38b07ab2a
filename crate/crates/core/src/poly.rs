//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{grevlex, TermOrder};
use crate::rational::{int, parse_rational, Rational};

/// Variable family a polynomial lives in.
///
/// Coordinates and their derivations come in dual pairs: `x`/`dx`, `s`/`ds`,
/// `t`/`dt`, `y`/`dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Dx,
    S,
    Ds,
    T,
    Dt,
    Y,
    Dy,
}

impl Family {
    pub fn dual(self) -> Family {
        use Family::*;
        match self {
            X => Dx,
            Dx => X,
            S => Ds,
            Ds => S,
            T => Dt,
            Dt => T,
            Y => Dy,
            Dy => Y,
        }
    }

    pub fn is_operator(self) -> bool {
        matches!(self, Family::Dx | Family::Ds | Family::Dt | Family::Dy)
    }

    pub fn prefix(self) -> &'static str {
        use Family::*;
        match self {
            X => "x",
            Dx => "dx",
            S => "s",
            Ds => "ds",
            T => "t",
            Dt => "dt",
            Y => "y",
            Dy => "dy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

/// Polynomial over ℚ stored as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    family: Family,
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(family: Family, nvars: usize) -> Self {
        Polynomial { family, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(family: Family, nvars: usize, c: Rational) -> Self {
        Self::term(family, Monomial::one(nvars), c)
    }

    pub fn one(family: Family, nvars: usize) -> Self {
        Self::constant(family, nvars, Rational::one())
    }

    pub fn var(family: Family, nvars: usize, i: usize) -> Self {
        Self::term(family, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(family: Family, m: Monomial) -> Self {
        Self::term(family, m, Rational::one())
    }

    pub fn term(family: Family, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(family, m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(family: Family, nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(family, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ c_i v_i + c0`.
    pub fn linear(family: Family, coeffs: &[Rational], c0: Rational) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(family, n, c0);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        self.filter(|m| m.degree() == d)
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Polynomial {
        self.filter(|m| m.degree() <= d)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            family: self.family,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.family, self.nvars);
        }
        Polynomial {
            family: self.family,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.family, self.nvars);
        }
        Polynomial {
            family: self.family,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.family, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Same coefficients, reinterpreted in another family.
    pub fn retag(&self, family: Family) -> Polynomial {
        Polynomial { family, nvars: self.nvars, terms: self.terms.clone() }
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let fam = images.first().map(|p| p.family).unwrap_or(self.family);
        let nv = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(fam, nv), p.clone()]).collect();
        let mut out = Self::zero(fam, nv);
        for (m, c) in &self.terms {
            let mut t = Self::constant(fam, nv, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Appends `extra` variables with exponent zero.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let n = self.nvars + extra;
        Polynomial {
            family: self.family,
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e.resize(n, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Removes the last variable; `None` if it occurs.
    pub fn drop_last_var(&self) -> Option<Polynomial> {
        let n = self.nvars.checked_sub(1)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exps()[n] != 0 {
                return None;
            }
            terms.insert(Monomial::new(m.exps()[..n].to_vec()), c.clone());
        }
        Some(Polynomial { family: self.family, nvars: n, terms })
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(self.family, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e > 0 {
                let mut x = m.exps().to_vec();
                x[i] -= 1;
                out.add_term(Monomial::new(x), c * int(e as i64));
            }
        }
        out
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms sorted in descending grevlex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex(b.0, a.0));
        v
    }

    /// Coefficients of the degree-`d` part in the basis `Monomial::all_of_degree(n, d)`.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coefficient_vector(family: Family, basis: &[Monomial], v: &[Rational], nvars: usize) -> Self {
        Self::from_terms(family, nvars, basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// Exact quotient `self / f`, or `None` when `f` does not divide `self`.
    pub fn exact_div(&self, f: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.family, f.family, "family mismatch in division");
        let order = TermOrder::grevlex(self.nvars);
        let (lm, lc) = f.leading_term(&order)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.family, self.nvars);
        while let Some((m, c)) = rem.leading_term(&order) {
            let q = m.div(&lm)?;
            let k = c / &lc;
            rem = &rem - &f.mul_term(&q, &k);
            quot.add_term(q, k);
        }
        Some(quot)
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.family != other.family {
            return Err(Error::Ring(self.family, other.family));
        }
        if self.nvars != other.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Renders with variable names `<prefix><index>`, one-based.
    pub fn format_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{}^{e}", i + 1) })
                .collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// Parses text such as `dt1*dt3^2 - 1/2*dt2 + 3` in the given family.
    pub fn parse(s: &str, family: Family, nvars: usize) -> Result<Polynomial> {
        let prefix = family.prefix();
        let mut p = Self::zero(family, nvars);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    pieces.push((sign, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                sign = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((sign, cur));
        for (neg, piece) in pieces {
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; nvars];
            for factor in piece.split('*') {
                if let Some(rest) = factor.strip_prefix(prefix).filter(|r| r.starts_with(|c: char| c.is_ascii_digit())) {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!("variable {factor:?} out of range 1..={nvars}")));
                    }
                    exps[idx - 1] += e;
                } else {
                    coeff *= parse_rational(factor)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(Monomial::new(exps), coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(self.family.prefix()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.family, rhs.family, "family mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.family, rhs.family, "family mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.family, rhs.family, "family mismatch in multiplication");
        let mut out = Polynomial::zero(self.family, self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

/// `[β]_α = ∏ β_i (β_i − 1) ⋯ (β_i − α_i + 1)` for nonnegative exponents.
fn descending_product(beta: &Monomial, alpha: &Monomial) -> BigInt {
    let mut acc = BigInt::one();
    for (&b, &a) in beta.exps().iter().zip(alpha.exps()) {
        for k in 0..a {
            acc *= BigInt::from(b - k);
        }
    }
    acc
}

/// `q(∂) • f` on raw term maps, ignoring family tags.
pub(crate) fn act(q: &Polynomial, f: &Polynomial, result_family: Family) -> Polynomial {
    let mut out = Polynomial::zero(result_family, f.nvars);
    for (a, qa) in &q.terms {
        for (b, fb) in &f.terms {
            if let Some(rest) = b.div(a) {
                let k = descending_product(b, a);
                out.add_term(rest, qa * fb * Rational::from_integer(k));
            }
        }
    }
    out
}

/// Applies the differential operator `q(∂)` to `f`.
///
/// `q` must be in an operator family and `f` in the dual coordinate family.
pub fn apply_operator(q: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if !q.family.is_operator() || f.family != q.family.dual() {
        return Err(Error::Ring(q.family, f.family));
    }
    if q.nvars != f.nvars {
        return Err(Error::Dimension { expected: q.nvars, found: f.nvars });
    }
    Ok(act(q, f, f.family))
}

/// `∏_j ∏_{k<u_j} (v_j + t_j − k)` as a polynomial in `family`.
pub fn falling_factorial(v: &[Rational], u: &[u32], family: Family) -> Result<Polynomial> {
    if v.len() != u.len() {
        return Err(Error::Dimension { expected: v.len(), found: u.len() });
    }
    let n = v.len();
    let mut acc = Polynomial::one(family, n);
    for j in 0..n {
        for k in 0..u[j] {
            let mut f = Polynomial::var(family, n, j);
            f.add_term(Monomial::one(n), &v[j] - int(k as i64));
            acc = &acc * &f;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(s: &str, fam: Family, n: usize) -> Polynomial {
        Polynomial::parse(s, fam, n).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        let q = p("dx2*dx3 - dx1*dx4", Family::Dx, 4);
        assert_eq!(q.to_string(), "dx2*dx3 - dx1*dx4");
        let r = p("-1/2*t1^2 + 3 - t2", Family::T, 2);
        assert_eq!(r.to_string(), "-1/2*t1^2 - t2 + 3");
        assert_eq!(Polynomial::parse(&r.to_string(), Family::T, 2).unwrap(), r);
        assert!(Polynomial::parse("t3", Family::T, 2).is_err());
        assert!(Polynomial::parse("t1 +", Family::T, 2).is_err());
        assert_eq!(Polynomial::zero(Family::S, 2).to_string(), "0");
    }

    #[test]
    fn derivative_action() {
        let d = p("ds1", Family::Ds, 2);
        let f = p("s1^2", Family::S, 2);
        assert_eq!(apply_operator(&d, &f).unwrap(), p("2*s1", Family::S, 2));
        let a = Monomial::new(vec![2, 1, 3]);
        let e = apply_operator(&Polynomial::monomial(Family::Ds, a.clone()), &Polynomial::monomial(Family::S, a.clone())).unwrap();
        assert_eq!(e.constant_term(), Rational::from_integer(a.factorial()));
        assert!(apply_operator(&d, &p("t1", Family::T, 2)).is_err());
        assert!(apply_operator(&f, &d).is_err());
    }

    #[test]
    fn falling_factorials() {
        let v = vec![int(0), int(0), int(-1), int(1)];
        let f = falling_factorial(&v, &[1, 0, 0, 0], Family::T).unwrap();
        assert_eq!(f, p("t1", Family::T, 4));
        assert_eq!(falling_factorial(&v, &[0; 4], Family::T).unwrap(), Polynomial::one(Family::T, 4));
        let w = vec![int(2), rat(1, 2)];
        let g = falling_factorial(&w, &[3, 2], Family::T).unwrap();
        assert!(g.constant_term().is_zero());
        assert_eq!(g.degree(), Some(5));
        let h = falling_factorial(&w, &[2, 2], Family::T).unwrap();
        assert_eq!(h.constant_term(), int(2) * rat(1, 2) * rat(-1, 2));
    }

    #[test]
    fn substitution_and_variables() {
        let f = p("t1*t2 + t2^2", Family::T, 2);
        let imgs = vec![p("s1 + s2", Family::S, 2), p("s1", Family::S, 2)];
        assert_eq!(f.substitute(&imgs), p("2*s1^2 + s1*s2", Family::S, 2));
        let e = f.extend_vars(1);
        assert_eq!(e.nvars(), 3);
        assert_eq!(e.drop_last_var().unwrap(), f);
        assert!(p("t3", Family::T, 3).drop_last_var().is_none());
    }

    fn arb_poly(fam: Family, n: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
        let monos = Monomial::all_up_to_degree(n, deg);
        proptest::collection::vec((0..monos.len(), -4i64..5, 1i64..4), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(fam, n, ts.into_iter().map(|(i, a, b)| (monos[i].clone(), rat(a, b))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(Family::S, 3, 4), b in arb_poly(Family::S, 3, 4), c in arb_poly(Family::S, 3, 4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn operator_composition(q1 in arb_poly(Family::Ds, 2, 3), q2 in arb_poly(Family::Ds, 2, 3), f in arb_poly(Family::S, 2, 3)) {
            // Oracle: expand q term by term into single-derivative steps.
            let step = |q: &Polynomial, f: &Polynomial| {
                let mut out = Polynomial::zero(Family::S, 2);
                for (m, c) in q.terms() {
                    let mut g = f.clone();
                    for (i, &e) in m.exps().iter().enumerate() {
                        for _ in 0..e { g = g.derivative(i); }
                    }
                    out = &out + &g.scale(c);
                }
                out
            };
            let lhs = apply_operator(&(&q1 * &q2), &f).unwrap();
            prop_assert_eq!(&lhs, &apply_operator(&q1, &apply_operator(&q2, &f).unwrap()).unwrap());
            prop_assert_eq!(&lhs, &step(&q1, &step(&q2, &f)));
        }
    }
}
