//! Negative supports, fake exponents and the support classes of a coset `v₀ + L`.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{initial_ideal_w, toric_groebner, GroebnerBasis};
use crate::ideal::{MonomialIdeal, StandardPair};
use crate::lattice::{lattice_points, solve_affine, weight_of, AffineSolution, LatticeBasis, MatrixA};
use crate::lp::{minimize, Constraint, LpOutcome, Relation};
use crate::monomial::Monomial;
use crate::poly::{Family, Polynomial};
use crate::rational::{int, is_integer, is_negative_integer, Rational};

/// Indices where `v` is a negative integer.
pub fn nsupp(v: &[Rational]) -> Vec<usize> {
    (0..v.len()).filter(|&i| is_negative_integer(&v[i])).collect()
}

/// Exponent vector read off a standard pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FakeExponent {
    pub v: Vec<Rational>,
    pub pairs: Vec<StandardPair>,
    /// Index of the `L`-equivalence class; equal ids differ by a lattice vector.
    pub class_id: usize,
}

/// All fake exponents plus the standard pairs that produced none.
#[derive(Clone, Debug)]
pub struct FakeExponents {
    pub gb: GroebnerBasis,
    pub initial: MonomialIdeal,
    pub pairs: Vec<StandardPair>,
    pub exponents: Vec<FakeExponent>,
    pub unsolvable: Vec<StandardPair>,
    pub ambiguous: Vec<StandardPair>,
}

/// Fake exponents of `H_A(β)` with respect to `w`.
pub fn fake_exponents(a: &MatrixA, beta: &[Rational], w: &[Rational], b: &LatticeBasis) -> Result<FakeExponents> {
    let gb = toric_groebner(a, b, w)?;
    let initial = if gb.elements().is_empty() { MonomialIdeal::zero(a.n()) } else { initial_ideal_w(&gb, w)? };
    let pairs = initial.standard_pairs();
    let mut found: BTreeMap<Vec<Rational>, Vec<StandardPair>> = BTreeMap::new();
    let mut unsolvable = Vec::new();
    let mut ambiguous = Vec::new();
    for p in &pairs {
        let fixed: Vec<Option<Rational>> =
            (0..a.n()).map(|i| if p.face.contains(&i) { None } else { Some(int(p.root.exps()[i] as i64)) }).collect();
        match solve_affine(a, beta, &fixed, &p.face)? {
            AffineSolution::Unique(v) => found.entry(v).or_default().push(p.clone()),
            AffineSolution::None => unsolvable.push(p.clone()),
            AffineSolution::Ambiguous(_) => ambiguous.push(p.clone()),
        }
    }
    let mut exponents: Vec<FakeExponent> = Vec::new();
    let mut reps: Vec<Vec<Rational>> = Vec::new();
    for (v, pairs) in found {
        let class_id = match reps.iter().position(|r| b.same_coset(r, &v)) {
            Some(k) => k,
            None => {
                reps.push(v.clone());
                reps.len() - 1
            }
        };
        exponents.push(FakeExponent { v, pairs, class_id });
    }
    Ok(FakeExponents { gb, initial, pairs, exponents, unsolvable, ambiguous })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certification {
    LpCertified,
    RadiusStable,
    Uncertified,
}

/// One negative-support set `I = nsupp(v₀ + u)` met in the lattice window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportClass {
    pub support: Vec<usize>,
    /// First lattice vector found with this negative support.
    pub witness: Vec<i64>,
    /// Whether `w·u` attains a minimum over the class.
    pub in_n: bool,
    /// Enumerated minimiser `u*` and its weight, when `in_n`.
    pub min_offset: Option<Vec<i64>>,
    pub min_weight: Option<Rational>,
    /// Lower bound from the linear relaxation of the class.
    pub lp_bound: Option<Rational>,
    pub certified: Certification,
}

impl SupportClass {
    /// `v₀ + u*`.
    pub fn min_weight_vector(&self, v0: &[Rational]) -> Option<Vec<Rational>> {
        self.min_offset.as_ref().map(|u| offset(v0, u))
    }
}

pub fn offset(v: &[Rational], u: &[i64]) -> Vec<Rational> {
    v.iter().zip(u).map(|(a, &b)| a + int(b)).collect()
}

/// Constraints `nsupp(base + B z) = I` on the integer coordinates of `base`.
fn class_constraints(base: &[Rational], b: &LatticeBasis, support: &[usize], homogeneous: bool) -> Vec<Constraint> {
    let mut out = Vec::new();
    for i in 0..base.len() {
        if !is_integer(&base[i]) {
            continue;
        }
        let coeffs: Vec<Rational> = b.row(i).into_iter().map(int).collect();
        let (rel, rhs) = if support.contains(&i) {
            (Relation::Le, if homogeneous { Rational::zero() } else { int(-1) - &base[i] })
        } else {
            (Relation::Ge, if homogeneous { Rational::zero() } else { -base[i].clone() })
        };
        out.push(Constraint { coeffs, rel, rhs });
    }
    out
}

fn weight_objective(b: &LatticeBasis, w: &[Rational]) -> Vec<Rational> {
    b.columns().iter().map(|c| weight_of(w, c)).collect()
}

/// True iff `w·u` is bounded below on the class, decided on its recession cone.
pub fn in_n(base: &[Rational], b: &LatticeBasis, w: &[Rational], support: &[usize]) -> bool {
    matches!(minimize(&weight_objective(b, w), &class_constraints(base, b, support, true)), LpOutcome::Optimal { .. })
}

/// Minimum of `w·u` over the real relaxation of the class.
pub fn class_lp_minimum(base: &[Rational], b: &LatticeBasis, w: &[Rational], support: &[usize]) -> LpOutcome {
    minimize(&weight_objective(b, w), &class_constraints(base, b, support, false))
}

#[derive(Default)]
struct Accum {
    witness: Vec<i64>,
    inner_min: Option<(i128, Vec<i64>)>,
    outer_min: Option<(i128, Vec<i64>)>,
}

/// Integer shadow of `v₀` and `w` for scanning many lattice points:
/// the integer coordinates of `v₀`, and `w` scaled to integers.
struct Scan {
    base: Vec<Option<i64>>,
    w: Vec<i128>,
    den: i128,
}

impl Scan {
    fn new(v0: &[Rational], w: &[Rational]) -> Result<Self> {
        let too_big = || Error::Argument("exponent or weight entries are too large to scan".into());
        let base = v0
            .iter()
            .map(|x| if is_integer(x) { x.numer().to_i64().ok_or_else(too_big).map(Some) } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        let den = w.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let ws = w
            .iter()
            .map(|x| (x * Rational::from_integer(den.clone())).to_integer().to_i64().map(i128::from).ok_or_else(too_big))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scan { base, w: ws, den: den.to_i64().map(i128::from).ok_or_else(too_big)? })
    }

    fn nsupp(&self, u: &[i64]) -> Vec<usize> {
        (0..u.len()).filter(|&i| self.base[i].is_some_and(|x| x + u[i] <= -1)).collect()
    }

    fn weight(&self, u: &[i64]) -> i128 {
        self.w.iter().zip(u).map(|(a, &b)| a * b as i128).sum()
    }

    fn rational(&self, x: i128) -> Rational {
        Rational::new(x.into(), self.den.into())
    }
}

/// Support classes of `v₀ + L` seen in the window of the given radius,
/// checked against a window of twice the radius.
pub fn support_classes(v0: &[Rational], b: &LatticeBasis, w: &[Rational], radius: i64) -> Result<Vec<SupportClass>> {
    if radius < 1 {
        return Err(Error::Argument("radius must be at least 1".into()));
    }
    let scan = Scan::new(v0, w)?;
    let mut acc: BTreeMap<Vec<usize>, Accum> = BTreeMap::new();
    for (z, u) in lattice_points(b, 2 * radius) {
        let inner = z.iter().all(|x| x.abs() <= radius);
        let s = scan.nsupp(&u);
        let wu = scan.weight(&u);
        let e = acc.entry(s).or_insert_with(|| Accum { witness: u.clone(), ..Default::default() });
        let better = |m: &Option<(i128, Vec<i64>)>| m.as_ref().is_none_or(|(x, _)| wu < *x);
        if inner && better(&e.inner_min) {
            e.inner_min = Some((wu, u.clone()));
        }
        if better(&e.outer_min) {
            e.outer_min = Some((wu, u));
        }
    }
    let mut classes: Vec<SupportClass> = acc
        .into_iter()
        .map(|(support, a)| {
            let bounded = in_n(v0, b, w, &support);
            if !bounded {
                return SupportClass {
                    support,
                    witness: a.witness,
                    in_n: false,
                    min_offset: None,
                    min_weight: None,
                    lp_bound: None,
                    certified: Certification::LpCertified,
                };
            }
            let lp = class_lp_minimum(v0, b, w, &support).value().cloned();
            let (outer_w, outer_u) = a.outer_min.expect("class has a member");
            let outer_w = scan.rational(outer_w);
            let certified = if lp.as_ref() == Some(&outer_w) {
                Certification::LpCertified
            } else if a.inner_min.as_ref().map(|(x, _)| scan.rational(*x)) == Some(outer_w.clone()) {
                Certification::RadiusStable
            } else {
                Certification::Uncertified
            };
            SupportClass {
                support,
                witness: a.witness,
                in_n: true,
                min_offset: Some(outer_u),
                min_weight: Some(outer_w),
                lp_bound: lp,
                certified,
            }
        })
        .collect();
    classes.sort_by(|x, y| (x.support.len(), &x.support).cmp(&(y.support.len(), &y.support)));
    Ok(classes)
}

/// Membership status of a class in `N_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NvStatus {
    In,
    Out,
    Uncertified,
}

/// Decides, for each class, whether every member has nonnegative weight relative to `v`.
///
/// `v` must lie in `v0 + L`. Classes outside `N` are `Out`.
pub fn compute_n_v(v: &[Rational], v0: &[Rational], classes: &[SupportClass], b: &LatticeBasis, w: &[Rational]) -> Result<Vec<NvStatus>> {
    let shift: Vec<i64> = v
        .iter()
        .zip(v0)
        .map(|(x, y)| {
            let d = x - y;
            if is_integer(&d) { d.numer().to_i64() } else { None }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Argument("v is not in the coset of v0".into()))?;
    if b.coordinates(&shift).is_none() {
        return Err(Error::Argument("v − v0 is not a lattice vector".into()));
    }
    let base_weight = weight_of(w, &shift);
    Ok(classes
        .iter()
        .map(|c| {
            if !c.in_n {
                return NvStatus::Out;
            }
            match class_lp_minimum(v, b, w, &c.support) {
                LpOutcome::Optimal { value, .. } if value >= Rational::zero() => NvStatus::In,
                _ => match &c.min_weight {
                    Some(m) if m - &base_weight < Rational::zero() => NvStatus::Out,
                    _ => NvStatus::Uncertified,
                },
            }
        })
        .collect())
}

/// False iff some lattice vector in the window keeps `nsupp(v)` and lowers the weight.
pub fn minimality_check(v: &[Rational], b: &LatticeBasis, w: &[Rational], radius: i64) -> bool {
    let own = nsupp(v);
    match Scan::new(v, w) {
        Ok(scan) => lattice_points(b, radius).into_iter().all(|(_, u)| scan.weight(&u) >= 0 || scan.nsupp(&u) != own),
        Err(_) => lattice_points(b, radius)
            .into_iter()
            .all(|(_, u)| weight_of(w, &u) >= Rational::zero() || nsupp(&offset(v, &u)) != own),
    }
}

/// `K = ∩ N'`, the monomial `t^{I₀\K}` and the polynomial `(Bs)^{I₀\K}`.
pub fn k_and_m(v: &[Rational], n_prime: &[Vec<usize>], b: &LatticeBasis) -> Result<(Vec<usize>, Monomial, Polynomial)> {
    let first = n_prime.first().ok_or_else(|| Error::Argument("N' must be nonempty".into()))?;
    let k: Vec<usize> = first.iter().copied().filter(|i| n_prime.iter().all(|s| s.contains(i))).collect();
    let i0 = nsupp(v);
    let rest: Vec<usize> = i0.iter().copied().filter(|i| !k.contains(i)).collect();
    let t = Monomial::from_set(v.len(), &rest);
    let s = rest.iter().fold(Polynomial::one(Family::S, b.h()), |acc, &i| &acc * &b.row_form(i, Family::S));
    Ok((k, t, s))
}
