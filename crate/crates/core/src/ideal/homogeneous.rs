use std::fmt;
use std::sync::OnceLock;

use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideal::MonomialIdeal;
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{Family, Polynomial};
use crate::rational::Rational;

/// Ideal generated by homogeneous polynomials, with a lazily computed
/// grevlex Gröbner basis.
#[derive(Clone, Debug)]
pub struct HomogeneousIdeal {
    family: Family,
    nvars: usize,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl HomogeneousIdeal {
    pub fn new(family: Family, nvars: usize, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::new();
        for g in gens {
            if g.family() != family {
                return Err(Error::Ring(family, g.family()));
            }
            if g.nvars() != nvars {
                return Err(Error::Dimension { expected: nvars, found: g.nvars() });
            }
            if !g.is_homogeneous() {
                return Err(Error::Argument(format!("generator {g} is not homogeneous")));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(HomogeneousIdeal { family, nvars, gens: kept, gb: OnceLock::new() })
    }

    pub fn zero(family: Family, nvars: usize) -> Self {
        HomogeneousIdeal { family, nvars, gens: vec![], gb: OnceLock::new() }
    }

    pub fn unit(family: Family, nvars: usize) -> Self {
        HomogeneousIdeal { family, nvars, gens: vec![Polynomial::one(family, nvars)], gb: OnceLock::new() }
    }

    pub fn from_monomial(ideal: &MonomialIdeal, family: Family) -> Self {
        HomogeneousIdeal { family, nvars: ideal.nvars(), gens: ideal.to_polynomials(family), gb: OnceLock::new() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced grevlex Gröbner basis, computed once.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let gens = if self.gens.is_empty() { vec![Polynomial::zero(self.family, self.nvars)] } else { self.gens.clone() };
            buchberger(&gens, &TermOrder::grevlex(self.nvars)).expect("generators share one ring")
        })
    }

    /// Reduced Gröbner basis elements; a canonical generating set.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut v = self.gb().elements().to_vec();
        v.sort_by(|a, b| {
            let order = TermOrder::grevlex(self.nvars);
            let la = a.leading_term(&order).expect("nonzero").0;
            let lb = b.leading_term(&order).expect("nonzero").0;
            crate::order::grevlex(la, lb)
        });
        v
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        f.is_zero() || (!self.gens.is_empty() && self.gb().contains(f))
    }

    pub fn contains_ideal(&self, other: &HomogeneousIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by mutual membership.
    pub fn equals(&self, other: &HomogeneousIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Leading monomial ideal of the Gröbner basis.
    pub fn leading_ideal(&self) -> MonomialIdeal {
        if self.gens.is_empty() {
            return MonomialIdeal::zero(self.nvars);
        }
        MonomialIdeal::new(self.nvars, self.gb().leading_monomials())
    }

    pub fn sum(&self, other: &HomogeneousIdeal) -> HomogeneousIdeal {
        Self::new(self.family, self.nvars, self.gens.iter().chain(&other.gens).cloned().collect()).expect("same ring")
    }

    pub fn product(&self, other: &HomogeneousIdeal) -> HomogeneousIdeal {
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect();
        Self::new(self.family, self.nvars, gens).expect("same ring")
    }

    /// `I ∩ J` by eliminating `z` from `z·I + (1 − z)·J`.
    pub fn intersect(&self, other: &HomogeneousIdeal) -> HomogeneousIdeal {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.family, self.nvars);
        }
        let n = self.nvars;
        let z = Polynomial::var(self.family, n + 1, n);
        let one_minus_z = &Polynomial::one(self.family, n + 1) - &z;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| &g.extend_vars(1) * &z).collect();
        gens.extend(other.gens.iter().map(|g| &g.extend_vars(1) * &one_minus_z));
        let gb = buchberger(&gens, &TermOrder::eliminate_last(n)).expect("same ring");
        let kept = gb.elements().iter().filter_map(|g| g.drop_last_var()).collect();
        Self::new(self.family, n, kept).expect("elimination ideal of homogeneous ideals is homogeneous")
    }

    /// `I : f` for a nonzero homogeneous `f`.
    pub fn colon(&self, f: &Polynomial) -> Result<HomogeneousIdeal> {
        if f.is_zero() {
            return Err(Error::Argument("colon by zero".into()));
        }
        if !f.is_homogeneous() || f.family() != self.family {
            return Err(Error::Argument(format!("colon divisor {f} must be homogeneous in {}", self.family)));
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(Self::unit(self.family, self.nvars));
        }
        let principal = Self::new(self.family, self.nvars, vec![f.clone()])?;
        let meet = self.intersect(&principal);
        let mut quot = Vec::new();
        for g in meet.generators() {
            let q = g.exact_div(f).ok_or_else(|| Error::Internal(format!("{f} does not divide {g}")))?;
            quot.push(q);
        }
        Self::new(self.family, self.nvars, quot)
    }

    /// Artinian test together with the least degree `D` with `I_D` full.
    pub fn is_artinian(&self) -> (bool, Option<u32>) {
        if self.is_zero() {
            return (self.nvars == 0, if self.nvars == 0 { Some(1) } else { None });
        }
        let lead = self.leading_ideal();
        if !lead.is_artinian() {
            return (false, None);
        }
        let mut top: Option<u32> = None;
        let mut d = 0;
        loop {
            let standard = Monomial::all_of_degree(self.nvars, d).into_iter().filter(|m| !lead.contains(m)).count();
            if standard == 0 {
                return (true, Some(top.map_or(0, |t| t + 1)));
            }
            top = Some(d);
            d += 1;
        }
    }

    /// Number of standard monomials of degree `d`, i.e. the codimension of `I_d`.
    pub fn codimension(&self, d: u32) -> usize {
        let lead = self.leading_ideal();
        Monomial::all_of_degree(self.nvars, d).into_iter().filter(|m| !lead.contains(m)).count()
    }

    /// Row-reduced basis of `I_m` in the basis `Monomial::all_of_degree(n, m)`,
    /// spanned by monomial multiples of the generators.
    pub fn graded_piece(&self, m: u32) -> Vec<Vec<Rational>> {
        let basis = Monomial::all_of_degree(self.nvars, m);
        let mut e = Echelon::new(basis.len());
        for g in &self.gens {
            let d = g.degree().expect("nonzero");
            if d > m {
                continue;
            }
            for mu in Monomial::all_of_degree(self.nvars, m - d) {
                if e.is_full() {
                    break;
                }
                e.insert(&g.mul_term(&mu, &Rational::one()).coefficient_vector(&basis));
            }
        }
        e.rows()
    }

    /// Image under a ring map given by the images of the variables.
    pub fn map(&self, images: &[Polynomial]) -> Result<HomogeneousIdeal> {
        let fam = images.first().map(|p| p.family()).unwrap_or(self.family);
        let n = images.first().map(|p| p.nvars()).unwrap_or(0);
        Self::new(fam, n, self.gens.iter().map(|g| g.substitute(images)).collect())
    }
}

impl fmt::Display for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.canonical_generators().iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use proptest::prelude::*;

    fn ideal(fam: Family, n: usize, gens: &[&str]) -> HomogeneousIdeal {
        HomogeneousIdeal::new(fam, n, gens.iter().map(|g| Polynomial::parse(g, fam, n).unwrap()).collect()).unwrap()
    }

    fn t(s: &str) -> Polynomial {
        Polynomial::parse(s, Family::T, 4).unwrap()
    }

    fn q_example_one() -> HomogeneousIdeal {
        let at = [t("t1 + t2 + t3 + t4"), t("t2 + 2*t3 + 3*t4")];
        let mut gens = Vec::new();
        for m in [t("t1"), t("t3")] {
            for a in &at {
                gens.push(a * &m);
            }
        }
        gens.extend([t("t1*t2"), t("t1*t4"), t("t2*t3")]);
        HomogeneousIdeal::new(Family::T, 4, gens).unwrap()
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(HomogeneousIdeal::new(Family::S, 2, vec![Polynomial::parse("s1 + s2^2", Family::S, 2).unwrap()]).is_err());
    }

    #[test]
    fn example_one_colon() {
        let q = q_example_one();
        let expected = ideal(Family::T, 4, &["t1^2", "t1*t2", "t1*t3", "t1*t4", "t3^2", "t2*t3", "t3*t4"]);
        assert!(q.equals(&expected));
        let c = q.colon(&t("t3")).unwrap();
        assert!(c.equals(&ideal(Family::T, 4, &["t1", "t2", "t3", "t4"])));
        assert_eq!(c.is_artinian(), (true, Some(1)));
        assert_eq!(q.graded_piece(2).len(), 7);
        assert!(q.colon(&Polynomial::one(Family::T, 4)).unwrap().equals(&q));
        assert!(q.colon(&Polynomial::zero(Family::T, 4)).is_err());
    }

    #[test]
    fn example_one_intersection_is_product() {
        let at = ideal(Family::T, 4, &["t1 + t2 + t3 + t4", "t2 + 2*t3 + 3*t4"]);
        let m = ideal(Family::T, 4, &["t1", "t3"]);
        assert!(at.intersect(&m).equals(&at.product(&m)));
        assert!(at.intersect(&at).equals(&at));
    }

    #[test]
    fn artinian_and_pieces() {
        let i = ideal(Family::S, 2, &["s1", "s2"]);
        assert_eq!(i.is_artinian(), (true, Some(1)));
        let j = ideal(Family::S, 2, &["s1"]);
        assert_eq!(j.is_artinian(), (false, None));
        assert_eq!(j.graded_piece(2).len(), 2);
        assert!(j.graded_piece(0).is_empty());
        let k = ideal(Family::S, 2, &["s1^2", "s2^2"]);
        assert_eq!(k.is_artinian(), (true, Some(3)));
        assert_eq!(k.graded_piece(3).len(), 4);
        assert_eq!(k.graded_piece(2).len(), 2);
        assert!(!ideal(Family::S, 2, &["s1"]).equals(&ideal(Family::S, 2, &["s1^2"])));
        let scaled = ideal(Family::S, 2, &["2*s2^2", "s1^2 - s2^2"]);
        assert!(scaled.equals(&k));
    }

    fn arb_ideal() -> impl Strategy<Value = HomogeneousIdeal> {
        let monos: Vec<Monomial> = (1..=2).flat_map(|d| Monomial::all_of_degree(3, d)).collect();
        proptest::collection::vec((0..monos.len(), 0..monos.len(), -2i64..3), 1..4).prop_map(move |gs| {
            let gens = gs
                .into_iter()
                .map(|(a, b, c)| {
                    let (ma, mb) = (&monos[a], &monos[b]);
                    let mut p = Polynomial::monomial(Family::S, ma.clone());
                    if ma.degree() == mb.degree() {
                        p.add_term(mb.clone(), crate::rational::int(c));
                    }
                    p
                })
                .filter(|p: &Polynomial| !p.is_zero())
                .collect();
            HomogeneousIdeal::new(Family::S, 3, gens).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn intersection_properties(i in arb_ideal(), j in arb_ideal()) {
            let ij = i.intersect(&j);
            prop_assert!(ij.equals(&j.intersect(&i)));
            prop_assert!(ij.contains_ideal(&i.product(&j)));
            prop_assert!(i.contains_ideal(&ij) && j.contains_ideal(&ij));
        }

        #[test]
        fn colon_properties(i in arb_ideal(), a in 0usize..3, b in 0usize..3) {
            let f = Polynomial::var(Family::S, 3, a);
            let g = Polynomial::var(Family::S, 3, b);
            let c = i.colon(&f).unwrap();
            prop_assert!(c.contains_ideal(&i));
            prop_assert!(c.colon(&g).unwrap().equals(&i.colon(&(&f * &g)).unwrap()));
            for h in c.generators() {
                prop_assert!(i.contains(&(h * &f)));
            }
        }

        #[test]
        fn artinian_witness(i in arb_ideal()) {
            if let (true, Some(d)) = i.is_artinian() {
                let full = Monomial::all_of_degree(3, d).len();
                prop_assert_eq!(i.graded_piece(d).len(), full);
                if d > 0 {
                    prop_assert!(i.graded_piece(d - 1).len() < Monomial::all_of_degree(3, d - 1).len());
                }
            }
            for d in 0..4 {
                prop_assert_eq!(i.graded_piece(d).len() + i.codimension(d), Monomial::all_of_degree(3, d).len());
            }
        }
    }
}
