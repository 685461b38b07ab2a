//! The apolarity pairing between `ℚ[∂]` and `ℚ[s]`, the star action, inverse
//! systems of homogeneous ideals, and the transport maps Φ and Ψ.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ideal::HomogeneousIdeal;
use crate::lattice::{LatticeBasis, MatrixA};
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::poly::{act, Family, Polynomial};
use crate::rational::{int, Rational};
use crate::series::TruncatedSeries;

fn check_dual(q: &Polynomial, p: &Polynomial) -> Result<()> {
    if !q.family().is_operator() || p.family() != q.family().dual() {
        return Err(Error::Ring(q.family(), p.family()));
    }
    if q.nvars() != p.nvars() {
        return Err(Error::Dimension { expected: q.nvars(), found: p.nvars() });
    }
    Ok(())
}

/// `(q, p) = (q(∂) • p)|_{s=0} = Σ_α q_α p_α α!`.
pub fn pair(q: &Polynomial, p: &Polynomial) -> Result<Rational> {
    check_dual(q, p)?;
    Ok(q.terms()
        .filter_map(|(m, c)| {
            let d = p.coeff(m);
            (!d.is_zero()).then(|| c * d * Rational::from_integer(m.factorial()))
        })
        .sum())
}

/// `m ⋆ q`: the coordinate polynomial `m` acting on `q` through `s ↦ ∂_z`.
pub fn star(m: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    check_dual(q, m)?;
    Ok(act(m, q, q.family()))
}

/// Star action of a truncated series; needs the series known to degree `deg q`.
pub fn star_series(m: &TruncatedSeries, q: &Polynomial) -> Result<Polynomial> {
    let need = q.degree().unwrap_or(0);
    if m.degree() < need {
        return Err(Error::Argument(format!("series known to degree {} but operator has degree {need}", m.degree())));
    }
    star(m.poly(), q)
}

/// Signature shared by `star` and test doubles of it.
pub type StarFn = fn(&Polynomial, &Polynomial) -> Result<Polynomial>;

/// A graded space of operators, possibly cut off at a degree.
#[derive(Clone, Debug)]
pub struct DualSpace {
    family: Family,
    nvars: usize,
    basis: Vec<Polynomial>,
    complete: bool,
    degcap: u32,
}

impl DualSpace {
    /// Space spanned by homogeneous operators; redundant elements are dropped.
    pub fn from_spanning(family: Family, nvars: usize, gens: &[Polynomial], complete: bool, degcap: u32) -> Result<Self> {
        let mut by_degree: BTreeMap<u32, (Vec<Monomial>, Echelon, Vec<Polynomial>)> = BTreeMap::new();
        for g in gens {
            if g.family() != family {
                return Err(Error::Ring(family, g.family()));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Argument(format!("{g} is not homogeneous")));
            }
            let d = g.degree().expect("nonzero");
            let slot = by_degree.entry(d).or_insert_with(|| {
                let b = Monomial::all_of_degree(nvars, d);
                let e = Echelon::new(b.len());
                (b, e, Vec::new())
            });
            if slot.1.insert(&g.coefficient_vector(&slot.0)) {
                slot.2.push(g.clone());
            }
        }
        let basis = by_degree.into_values().flat_map(|(_, _, v)| v).collect();
        Ok(DualSpace { family, nvars, basis, complete, degcap })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether the whole space is listed rather than a degree-capped slice.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn degcap(&self) -> u32 {
        self.degcap
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.basis.iter().filter_map(|b| b.degree()).max()
    }

    fn echelon(&self, d: u32) -> (Vec<Monomial>, Echelon) {
        let monos = Monomial::all_of_degree(self.nvars, d);
        let mut e = Echelon::new(monos.len());
        for b in self.basis.iter().filter(|b| b.degree() == Some(d)) {
            e.insert(&b.coefficient_vector(&monos));
        }
        (monos, e)
    }

    /// Membership of an arbitrary operator, degree by degree.
    pub fn contains(&self, q: &Polynomial) -> bool {
        let Some(top) = q.degree() else { return true };
        (0..=top).all(|d| {
            let part = q.homogeneous_part(d);
            if part.is_zero() {
                return true;
            }
            let (monos, e) = self.echelon(d);
            e.contains(&part.coefficient_vector(&monos))
        })
    }

    /// Whether both spaces agree in every degree up to `upto`.
    pub fn span_equals(&self, other: &DualSpace, upto: u32) -> bool {
        (0..=upto).all(|d| {
            let (_, a) = self.echelon(d);
            let (_, b) = other.echelon(d);
            a.rows() == b.rows()
        })
    }
}

/// `P^⊥` degree by degree up to `degcap`, from the normal forms of `P`.
///
/// In degree `d` the standard monomials `∂^β` parametrise the solutions:
/// `q = ∂^β + Σ_α NF(s^α)_β · β!/α! · ∂^α` over leading monomials `α`.
pub fn perp_of_ideal(p: &HomogeneousIdeal, degcap: u32) -> DualSpace {
    let n = p.nvars();
    let fam = p.family().dual();
    let (artinian, witness) = p.is_artinian();
    let complete = artinian && witness.is_some_and(|d| degcap + 1 >= d);
    let top = if complete { witness.unwrap_or(0).saturating_sub(1).min(degcap) } else { degcap };
    let lead = p.leading_ideal();
    let mut basis = Vec::new();
    if !p.is_unit() {
        for d in 0..=top {
            let monos = Monomial::all_of_degree(n, d);
            let (inside, standard): (Vec<Monomial>, Vec<Monomial>) = monos.into_iter().partition(|m| lead.contains(m));
            let forms: Vec<(Monomial, Polynomial)> = inside
                .into_iter()
                .map(|a| {
                    let nf = p.gb().normal_form(&Polynomial::monomial(p.family(), a.clone()));
                    (a, nf)
                })
                .collect();
            for beta in &standard {
                let mut q = Polynomial::monomial(fam, beta.clone());
                let bf = Rational::from_integer(beta.factorial());
                for (a, nf) in &forms {
                    let c = nf.coeff(beta);
                    if !c.is_zero() {
                        q.add_term(a.clone(), c * &bf / Rational::from_integer(a.factorial()));
                    }
                }
                basis.push(q);
            }
        }
    }
    DualSpace { family: fam, nvars: n, basis, complete, degcap }
}

/// Homogeneous ideal of coordinate polynomials pairing to zero with `q`.
pub fn annihilator_of_space(q: &DualSpace) -> Result<HomogeneousIdeal> {
    let n = q.nvars;
    let coord = q.family.dual();
    let top = q.max_degree();
    for b in &q.basis {
        for j in 0..n {
            let moved = star(&Polynomial::var(coord, n, j), b)?;
            if !q.contains(&moved) {
                return Err(Error::NotClosed);
            }
        }
    }
    let Some(top) = top else {
        return Ok(HomogeneousIdeal::unit(coord, n));
    };
    let mut gens: Vec<Polynomial> = Vec::new();
    for d in 0..=top + 1 {
        let monos = Monomial::all_of_degree(n, d);
        let (_, e) = q.echelon(d);
        let weighted: Vec<Vec<Rational>> = e
            .rows()
            .into_iter()
            .map(|r| r.iter().zip(&monos).map(|(c, m)| c * Rational::from_integer(m.factorial())).collect())
            .collect();
        let ann = crate::linalg::nullspace(&weighted, monos.len());
        let current = HomogeneousIdeal::new(coord, n, gens.clone())?;
        let mut span = Echelon::new(monos.len());
        for row in current.graded_piece(d) {
            span.insert(&row);
        }
        for v in ann {
            if span.insert(&v) {
                gens.push(Polynomial::from_coefficient_vector(coord, &monos, &v, n));
            }
        }
    }
    HomogeneousIdeal::new(coord, n, gens)
}

/// Checks `m ⋆ P^⊥ = (P : m)^⊥` up to the cap, and, when `P^⊥` is complete,
/// `(m ⋆ P^⊥)^⊥ = P : m`.
pub fn check_colon_perp(p: &HomogeneousIdeal, m: &Polynomial, degcap: u32) -> Result<bool> {
    let dm = m.degree().ok_or_else(|| Error::Argument("m must be nonzero".into()))?;
    let perp = perp_of_ideal(p, degcap);
    let moved: Vec<Polynomial> = perp.basis.iter().map(|q| star(m, q)).collect::<Result<_>>()?;
    let cap = degcap.saturating_sub(dm);
    let image = DualSpace::from_spanning(perp.family, perp.nvars, &moved, perp.complete, cap)?;
    let colon = p.colon(m)?;
    let colon_perp = perp_of_ideal(&colon, cap);
    if !image.span_equals(&colon_perp, cap) {
        return Ok(false);
    }
    if perp.complete && degcap >= dm {
        let ann = annihilator_of_space(&image)?;
        return Ok(ann.equals(&colon));
    }
    Ok(true)
}

/// Φ: `t_j ↦ (Bs)_j` and Ψ: `∂_{s_k} ↦ b^{(k)}·∂_t`.
#[derive(Clone, Debug)]
pub struct TransportMaps {
    a: MatrixA,
    b: LatticeBasis,
}

impl TransportMaps {
    pub fn new(a: &MatrixA, b: &LatticeBasis) -> Self {
        TransportMaps { a: a.clone(), b: b.clone() }
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.b
    }

    pub fn phi(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.family() != Family::T {
            return Err(Error::Ring(Family::T, f.family()));
        }
        let images: Vec<Polynomial> = (0..self.b.n()).map(|j| self.b.row_form(j, Family::S)).collect();
        Ok(f.substitute(&images))
    }

    pub fn psi(&self, q: &Polynomial) -> Result<Polynomial> {
        if q.family() != Family::Ds {
            return Err(Error::Ring(Family::Ds, q.family()));
        }
        let images: Vec<Polynomial> = self
            .b
            .columns()
            .iter()
            .map(|c| Polynomial::linear(Family::Dt, &c.iter().map(|&x| int(x)).collect::<Vec<_>>(), Rational::zero()))
            .collect();
        Ok(q.substitute(&images))
    }

    pub fn phi_ideal(&self, i: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        let gens = i.generators().iter().map(|g| self.phi(g)).collect::<Result<Vec<_>>>()?;
        HomogeneousIdeal::new(Family::S, self.b.h(), gens)
    }

    /// The linear forms `(At)_i`, generators of `Ker Φ`.
    pub fn at_forms(&self) -> Vec<Polynomial> {
        self.a
            .rows()
            .iter()
            .map(|r| Polynomial::linear(Family::T, &r.iter().map(|&x| int(x)).collect::<Vec<_>>(), Rational::zero()))
            .collect()
    }

    /// `Φ⁻¹(J) = ⟨At⟩ + lift(J)` with `s_k ↦ (Ct)_k` for a left inverse `C` of `B`.
    pub fn phi_inverse(&self, j: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        let c = self.b.left_inverse();
        let lifts: Vec<Polynomial> = c.iter().map(|row| Polynomial::linear(Family::T, row, Rational::zero())).collect();
        let mut gens = self.at_forms();
        for g in j.generators() {
            gens.push(g.substitute(&lifts));
        }
        HomogeneousIdeal::new(Family::T, self.b.n(), gens)
    }
}

/// Property checks parameterised by the star implementation under test.
pub mod properties {
    use super::*;

    /// `(m ⋆ q, p) = (q, m·p)`.
    pub fn adjointness(star: StarFn, m: &Polynomial, q: &Polynomial, p: &Polynomial) -> Result<bool> {
        Ok(pair(&star(m, q)?, p)? == pair(q, &(m * p))?)
    }

    /// `q ⊥ P` by pairing against graded pieces agrees with `p_j ⋆ q = 0` for all generators.
    pub fn perp_criteria_agree(star: StarFn, ideal: &HomogeneousIdeal, q: &Polynomial) -> Result<bool> {
        let top = q.degree().unwrap_or(0);
        let by_pairing = (0..=top).all(|d| {
            let monos = Monomial::all_of_degree(ideal.nvars(), d);
            ideal.graded_piece(d).iter().all(|row| {
                let p = Polynomial::from_coefficient_vector(ideal.family(), &monos, row, ideal.nvars());
                pair(q, &p).is_ok_and(|v| v.is_zero())
            })
        });
        let mut by_star = true;
        for g in ideal.generators() {
            if !star(g, q)?.is_zero() {
                by_star = false;
            }
        }
        Ok(by_pairing == by_star)
    }

    /// Double perp on both sides for an Artinian ideal.
    pub fn double_perp(ideal: &HomogeneousIdeal) -> Result<bool> {
        let (artinian, d) = ideal.is_artinian();
        if !artinian {
            return Err(Error::Argument("ideal is not Artinian".into()));
        }
        let perp = perp_of_ideal(ideal, d.unwrap_or(0));
        let back = annihilator_of_space(&perp)?;
        let again = perp_of_ideal(&back, d.unwrap_or(0) + 1);
        Ok(back.equals(ideal) && again.span_equals(&perp, d.unwrap_or(0) + 1))
    }

    /// `P^⊥` computed by nullspaces of pairing matrices against `graded_piece`.
    pub fn brute_force_perp(ideal: &HomogeneousIdeal, degcap: u32) -> Vec<Polynomial> {
        let n = ideal.nvars();
        let fam = ideal.family().dual();
        let mut out = Vec::new();
        for d in 0..=degcap {
            let monos = Monomial::all_of_degree(n, d);
            let gram: Vec<Vec<Rational>> = ideal
                .graded_piece(d)
                .into_iter()
                .map(|r| r.iter().zip(&monos).map(|(c, m)| c * Rational::from_integer(m.factorial())).collect())
                .collect();
            for v in crate::linalg::nullspace(&gram, monos.len()) {
                out.push(Polynomial::from_coefficient_vector(fam, &monos, &v, n));
            }
        }
        out
    }

    /// The two perp computations agree.
    pub fn perp_matches_oracle(ideal: &HomogeneousIdeal, degcap: u32) -> Result<bool> {
        let fast = perp_of_ideal(ideal, degcap);
        let slow = DualSpace::from_spanning(fast.family(), fast.nvars(), &brute_force_perp(ideal, degcap), fast.is_complete(), degcap)?;
        Ok(fast.span_equals(&slow, degcap) && fast.dim() == slow.dim())
    }

    pub fn unit_pairing(m: &Monomial) -> Rational {
        Rational::from_integer(m.factorial())
    }
}

#[cfg(test)]
mod tests {
    use super::properties::*;
    use super::*;
    use crate::lattice::set_basis;
    use crate::rational::int;
    use proptest::prelude::*;

    fn ds(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, Family::Ds, n).unwrap()
    }

    fn s(x: &str, n: usize) -> Polynomial {
        Polynomial::parse(x, Family::S, n).unwrap()
    }

    fn ideal(fam: Family, n: usize, gens: &[&str]) -> HomogeneousIdeal {
        HomogeneousIdeal::new(fam, n, gens.iter().map(|g| Polynomial::parse(g, fam, n).unwrap()).collect()).unwrap()
    }

    fn flipped_star(m: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        Ok(-&star(m, q)?)
    }

    #[test]
    fn pairing_values() {
        assert_eq!(pair(&ds("ds1*ds2", 2), &s("s1*s2", 2)).unwrap(), int(1));
        assert_eq!(pair(&ds("ds1^2", 2), &s("s1^2", 2)).unwrap(), int(2));
        assert_eq!(pair(&ds("1", 2), &s("s1", 2)).unwrap(), int(0));
        assert!(pair(&s("s1", 2), &ds("ds1", 2)).is_err());
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        for d in 0..4 {
            let monos = Monomial::all_of_degree(3, d);
            for a in &monos {
                for b in &monos {
                    let v = pair(&Polynomial::monomial(Family::Ds, a.clone()), &Polynomial::monomial(Family::S, b.clone())).unwrap();
                    assert_eq!(v, if a == b { unit_pairing(a) } else { int(0) });
                }
            }
        }
    }

    #[test]
    fn star_values() {
        let q = ds("ds1^2*ds2 + 3*ds2", 2);
        assert_eq!(star(&Polynomial::one(Family::S, 2), &q).unwrap(), q);
        assert_eq!(star(&s("s1", 2), &q).unwrap(), ds("2*ds1*ds2", 2));
        assert!(star(&s("s1", 2), &ds("ds2", 2)).unwrap().is_zero());
    }

    #[test]
    fn perps() {
        let p = perp_of_ideal(&ideal(Family::T, 4, &["t1", "t2", "t3", "t4"]), 5);
        assert!(p.is_complete());
        assert_eq!(p.basis(), &[Polynomial::one(Family::Dt, 4)]);
        let p = perp_of_ideal(&ideal(Family::S, 2, &["s1^2", "s1*s2", "s2^2"]), 5);
        assert!(p.is_complete());
        assert_eq!(p.dim(), 3);
        for q in ["1", "ds1", "ds2"] {
            assert!(p.contains(&ds(q, 2)));
        }
        let p = perp_of_ideal(&ideal(Family::S, 2, &["s1"]), 3);
        assert!(!p.is_complete());
        assert_eq!(p.basis(), &[ds("1", 2), ds("ds2", 2), ds("ds2^2", 2), ds("ds2^3", 2)]);
    }

    #[test]
    fn annihilators() {
        let one = DualSpace::from_spanning(Family::Ds, 3, &[ds("1", 3)], true, 0).unwrap();
        assert!(annihilator_of_space(&one).unwrap().equals(&ideal(Family::S, 3, &["s1", "s2", "s3"])));
        let ci = DualSpace::from_spanning(Family::Ds, 2, &[ds("1", 2), ds("ds1", 2), ds("ds2", 2), ds("ds1*ds2", 2)], true, 2).unwrap();
        assert!(annihilator_of_space(&ci).unwrap().equals(&ideal(Family::S, 2, &["s1^2", "s2^2"])));
        let open = DualSpace::from_spanning(Family::Ds, 2, &[ds("ds1*ds2", 2)], true, 2).unwrap();
        assert_eq!(annihilator_of_space(&open).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn transport_example_one() {
        let a = MatrixA::new(vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        let b = set_basis(&a, vec![vec![-1, 1, 1, -1], vec![1, 0, -3, 2]]).unwrap();
        let tm = TransportMaps::new(&a, &b);
        let t = |x: &str| Polynomial::parse(x, Family::T, 4).unwrap();
        assert_eq!(tm.phi(&t("t2")).unwrap(), s("s1", 2));
        assert_eq!(tm.phi(&t("t3")).unwrap(), s("s1 - 3*s2", 2));
        for f in tm.at_forms() {
            assert!(tm.phi(&f).unwrap().is_zero());
        }
        let q = ds("ds1^2 - ds2 + 2", 2);
        let image = tm.psi(&q).unwrap();
        for f in tm.at_forms() {
            assert!(star(&f, &image).unwrap().is_zero());
        }
        let j = ideal(Family::S, 2, &["s1", "s2"]);
        let pre = tm.phi_inverse(&j).unwrap();
        assert!(pre.equals(&ideal(Family::T, 4, &["t1", "t2", "t3", "t4"])));
        assert!(tm.phi_ideal(&pre).unwrap().equals(&j));
    }

    #[test]
    fn colon_perp_small() {
        let p = ideal(Family::S, 2, &["s1^3", "s1*s2", "s2^2"]);
        assert!(check_colon_perp(&p, &Polynomial::one(Family::S, 2), 4).unwrap());
        assert!(check_colon_perp(&p, &s("s1", 2), 4).unwrap());
        assert!(check_colon_perp(&p, &s("s1 + s2", 2), 4).unwrap());
    }

    #[test]
    fn fault_injection_is_detected() {
        let (m, q, p) = (s("s1", 2), ds("ds1^2", 2), s("s1", 2));
        assert!(adjointness(star, &m, &q, &p).unwrap());
        assert!(!adjointness(flipped_star, &m, &q, &p).unwrap());
    }

    fn arb_poly(fam: Family, n: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
        let monos = Monomial::all_up_to_degree(n, deg);
        proptest::collection::vec((0..monos.len(), -3i64..4), 0..5)
            .prop_map(move |ts| Polynomial::from_terms(fam, n, ts.into_iter().map(|(i, c)| (monos[i].clone(), int(c)))))
    }

    fn arb_artinian(n: usize, maxdeg: u32) -> impl Strategy<Value = HomogeneousIdeal> {
        let monos: Vec<Monomial> = (1..=maxdeg).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
        (proptest::collection::vec(1..=maxdeg, n), proptest::collection::vec(0..monos.len(), 0..4)).prop_map(move |(pows, extra)| {
            let mut gens: Vec<Monomial> = (0..n).map(|i| { let mut e = vec![0; n]; e[i] = pows[i]; Monomial::new(e) }).collect();
            gens.extend(extra.iter().map(|&k| monos[k].clone()));
            HomogeneousIdeal::from_monomial(&crate::ideal::MonomialIdeal::new(n, gens), Family::S)
        })
    }

    proptest! {
        #[test]
        fn star_is_adjoint(m in arb_poly(Family::S, 2, 3), q in arb_poly(Family::Ds, 2, 3), p in arb_poly(Family::S, 2, 3)) {
            prop_assert!(adjointness(star, &m, &q, &p).unwrap());
        }

        #[test]
        fn transport_is_adjoint(f in arb_poly(Family::T, 4, 3), q in arb_poly(Family::Ds, 2, 3)) {
            let a = MatrixA::new(vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
            let b = set_basis(&a, vec![vec![-1, 1, 1, -1], vec![1, 0, -3, 2]]).unwrap();
            let tm = TransportMaps::new(&a, &b);
            prop_assert_eq!(pair(&q, &tm.phi(&f).unwrap()).unwrap(), pair(&tm.psi(&q).unwrap(), &f).unwrap());
        }

        #[test]
        fn perp_criteria(i in arb_artinian(3, 3), q in arb_poly(Family::Ds, 3, 3)) {
            prop_assert!(perp_criteria_agree(star, &i, &q).unwrap());
            for b in perp_of_ideal(&i, 3).basis() {
                for g in i.generators() {
                    prop_assert!(star(g, b).unwrap().is_zero());
                }
            }
        }

        #[test]
        fn double_perp_round_trip(i in arb_artinian(3, 4)) {
            prop_assert!(double_perp(&i).unwrap());
            prop_assert!(perp_matches_oracle(&i, 5).unwrap());
        }

        #[test]
        fn colon_perp_random(i in arb_artinian(3, 3), v in 0usize..3) {
            prop_assert!(check_colon_perp(&i, &Polynomial::var(Family::S, 3, v), 6).unwrap());
        }
    }
}
