//! Property suites over random exact inputs, run by the `selftest` verb.
//!
//! The star action is a parameter so that a deliberately broken one can be
//! shown to fail the adjointness suite.

use std::collections::BTreeMap;

use gkz_core::apolarity::properties::{adjointness, double_perp, perp_matches_oracle, perp_criteria_agree};
use gkz_core::apolarity::{check_colon_perp, perp_of_ideal, StarFn};
use gkz_core::frobenius::{p_operator, q_operator, FactoredOperator};
use gkz_core::groebner::toric_groebner;
use gkz_core::ideal::{HomogeneousIdeal, MonomialIdeal};
use gkz_core::lattice::kernel_basis;
use gkz_core::rational::{int, rat};
use gkz_core::support::{fake_exponents, minimality_check, nsupp};
use gkz_core::{Family, Monomial, Polynomial, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::config::ProblemConfig;
use crate::pipeline::exponent_data;
use crate::random::{generic_instance, homogeneous_matrix, integer_weight, parameter, stream};
use crate::report::{PropertyEntry, SelftestReport};

pub const FIXTURES: [(&str, &str); 2] =
    [("ex71", include_str!("../fixtures/ex71.toml")), ("ex72", include_str!("../fixtures/ex72.toml"))];

/// Number of random cases per suite.
#[derive(Clone, Debug)]
pub struct SelftestSizes {
    pub duality: usize,
    pub oracle_ideals: usize,
    pub operator_families: usize,
    pub minimality_instances: usize,
    pub toric_instances: usize,
}

impl Default for SelftestSizes {
    fn default() -> Self {
        SelftestSizes { duality: 500, oracle_ideals: 60, operator_families: 100, minimality_instances: 200, toric_instances: 50 }
    }
}

/// Outcome of one suite.
#[derive(Default, Debug)]
pub struct Tally {
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl Tally {
    fn record(&mut self, outcome: gkz_core::Result<bool>, describe: impl FnOnce() -> String) {
        self.checks += 1;
        let ok = match outcome {
            Ok(b) => b,
            Err(e) => {
                if self.counterexample.is_none() {
                    self.counterexample = Some(format!("{}: {e}", describe()));
                }
                self.failures += 1;
                return;
            }
        };
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    pub fn entry(self, name: &str) -> PropertyEntry {
        PropertyEntry { name: name.into(), checks: self.checks, failures: self.failures, counterexample: self.counterexample }
    }
}

pub fn random_poly(rng: &mut impl Rng, fam: Family, n: usize, deg: u32) -> Polynomial {
    let monos = Monomial::all_up_to_degree(n, deg);
    let k = rng.gen_range(0..5);
    Polynomial::from_terms(fam, n, (0..k).map(|_| (monos.choose(rng).expect("nonempty").clone(), int(rng.gen_range(-3..4)))))
}

fn random_form(rng: &mut impl Rng, fam: Family, n: usize, deg: u32) -> Polynomial {
    let monos = Monomial::all_of_degree(n, deg);
    let k = rng.gen_range(1..=3);
    Polynomial::from_terms(fam, n, (0..k).map(|_| (monos.choose(rng).expect("nonempty").clone(), int(rng.gen_range(1..4)))))
}

fn pure_powers(rng: &mut impl Rng, n: usize, maxdeg: u32) -> Vec<Monomial> {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = rng.gen_range(1..=maxdeg);
            Monomial::new(e)
        })
        .collect()
}

/// Artinian monomial ideal in at most 3 variables generated in degree at most `maxdeg`.
pub fn random_artinian_monomial(rng: &mut impl Rng, maxdeg: u32) -> HomogeneousIdeal {
    let n = rng.gen_range(1..=3);
    let mut gens = pure_powers(rng, n, maxdeg);
    let pool: Vec<Monomial> = (1..=maxdeg).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
    for _ in 0..rng.gen_range(0..4) {
        gens.push(pool.choose(rng).expect("nonempty").clone());
    }
    HomogeneousIdeal::from_monomial(&MonomialIdeal::new(n, gens), Family::S)
}

/// Artinian ideal: pure powers plus a few random forms.
pub fn random_artinian(rng: &mut impl Rng, maxdeg: u32) -> HomogeneousIdeal {
    let n = rng.gen_range(1..=3);
    let mut gens: Vec<Polynomial> = pure_powers(rng, n, maxdeg).into_iter().map(|m| Polynomial::monomial(Family::S, m)).collect();
    for _ in 0..rng.gen_range(0..3) {
        let d = rng.gen_range(1..=maxdeg);
        gens.push(random_form(rng, Family::S, n, d));
    }
    HomogeneousIdeal::new(Family::S, n, gens).expect("forms are homogeneous")
}

fn par_tally(count: usize, seed: u64, salt: usize, f: impl Fn(&mut rand_chacha::ChaCha8Rng, &mut Tally) + Sync) -> Tally {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, salt * 1_000_000 + i);
            let mut t = Tally::default();
            f(&mut rng, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

pub fn suite_adjointness(star: StarFn, seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 1, |rng, t| {
        let n = rng.gen_range(1..=3);
        let m = random_poly(rng, Family::S, n, 3);
        let q = random_poly(rng, Family::Ds, n, 4);
        let p = random_poly(rng, Family::S, n, 3);
        t.record(adjointness(star, &m, &q, &p), || format!("m = {m}, q = {q}, p = {p}"));
    })
}

pub fn suite_perp_criteria(star: StarFn, seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 2, |rng, t| {
        let i = random_artinian(rng, 3);
        let n = i.nvars();
        let q = if rng.gen_bool(0.5) {
            let perp = perp_of_ideal(&i, 4);
            perp.basis().iter().fold(Polynomial::zero(Family::Ds, n), |acc, b| &acc + &b.scale(&int(rng.gen_range(-2..3))))
        } else {
            random_poly(rng, Family::Ds, n, 4)
        };
        t.record(perp_criteria_agree(star, &i, &q), || format!("ideal {i}, q = {q}"));
    })
}

pub fn suite_double_perp(seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 3, |rng, t| {
        let i = random_artinian(rng, 4);
        t.record(double_perp(&i), || format!("ideal {i}"));
    })
}

pub fn suite_colon_perp(seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 4, |rng, t| {
        let i = random_artinian(rng, 3);
        let n = i.nvars();
        let d = rng.gen_range(1..=2);
        let m = random_form(rng, Family::S, n, d);
        let cap = i.is_artinian().1.unwrap_or(0) + 2;
        t.record(check_colon_perp(&i, &m, cap), || format!("ideal {i}, m = {m}"));
    })
}

pub fn suite_perp_oracle(seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 5, |rng, t| {
        let i = random_artinian_monomial(rng, 4);
        let cap = i.is_artinian().1.unwrap_or(0);
        t.record(perp_matches_oracle(&i, cap), || format!("ideal {i}"));
        t.record(double_perp(&i), || format!("ideal {i}"));
    })
}

/// Operator checks on one family of vectors in a common coset.
#[derive(Default)]
pub struct OperatorTallies {
    pub disjoint: Tally,
    pub monomial_part: Tally,
    pub q_factorization: Tally,
    pub cross: Tally,
}

impl OperatorTallies {
    fn merge(self, o: OperatorTallies) -> OperatorTallies {
        OperatorTallies {
            disjoint: self.disjoint.merge(o.disjoint),
            monomial_part: self.monomial_part.merge(o.monomial_part),
            q_factorization: self.q_factorization.merge(o.q_factorization),
            cross: self.cross.merge(o.cross),
        }
    }
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

const EXPAND_LIMIT: usize = 10;

fn product_factors(a: &FactoredOperator, b: &FactoredOperator) -> Vec<(usize, Rational)> {
    let mut f: Vec<(usize, Rational)> = a.factors().iter().chain(b.factors()).cloned().collect();
    f.sort();
    f
}

pub fn check_family(vectors: &[Vec<Rational>], t: &mut OperatorTallies) {
    let n = vectors[0].len();
    let supports: Vec<Vec<usize>> = vectors.iter().map(|v| nsupp(v)).collect();
    let k: Vec<usize> = (0..n).filter(|j| supports.iter().all(|s| s.contains(j))).collect();
    let qs: Vec<_> = (0..vectors.len()).map(|i| q_operator(i, vectors)).collect();
    for (i, vi) in vectors.iter().enumerate() {
        match &qs[i] {
            Ok(q) => {
                let bare: Vec<usize> = q.factors().iter().filter(|(_, c)| c.is_zero()).map(|(j, _)| *j).collect();
                let want: Vec<usize> = supports[i].iter().copied().filter(|j| !k.contains(j)).collect();
                let mut dedup = bare.clone();
                dedup.dedup();
                t.q_factorization.record(Ok(bare == dedup && bare == want && q.monomial_part() == want), || {
                    format!("q_{i} over {}", vectors.iter().map(|v| show(v)).collect::<Vec<_>>().join(" "))
                });
            }
            Err(e) => t.q_factorization.record(Err(e.clone()), || format!("q_{i} at {}", show(vi))),
        }
        for (j, vj) in vectors.iter().enumerate() {
            if i == j {
                continue;
            }
            let fwd = p_operator(vj, vi);
            let back = p_operator(vi, vj);
            let (fwd, back) = match (fwd, back) {
                (Ok(f), Ok(b)) => (f, b),
                (Err(e), _) | (_, Err(e)) => {
                    t.disjoint.record(Err(e), || format!("{} and {}", show(vi), show(vj)));
                    continue;
                }
            };
            t.disjoint.record(Ok(fwd.is_coprime_to(&back)), || format!("p between {} and {}", show(vi), show(vj)));
            let want: Vec<usize> = supports[j].iter().copied().filter(|x| !supports[i].contains(x)).collect();
            t.monomial_part.record(Ok(fwd.monomial_part() == want), || format!("p from {} to {}", show(vi), show(vj)));
            if let (Ok(qi), Ok(qj)) = (&qs[i], &qs[j]) {
                // p_{j←i}·q_i = p_{i←j}·q_j. Both sides are products of the irreducible
                // factors ∂_ν + c, so equal factor multisets is the identity; small cases
                // are also expanded.
                let lhs = product_factors(&fwd, qi);
                let rhs = product_factors(&back, qj);
                let mut ok = lhs == rhs;
                if lhs.len() <= EXPAND_LIMIT && rhs.len() <= EXPAND_LIMIT {
                    ok &= &fwd.to_polynomial() * &qi.to_polynomial() == &back.to_polynomial() * &qj.to_polynomial();
                }
                t.cross.record(Ok(ok), || format!("cross identity for {} and {}", show(vi), show(vj)));
            }
        }
    }
}

fn random_family(rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let n = rng.gen_range(2..=5);
    let base: Vec<Rational> = (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => rat(rng.gen_range(-5..5), rng.gen_range(2..=3)),
            _ => int(rng.gen_range(-3..3)),
        })
        .collect();
    let k = rng.gen_range(2..=4);
    (0..k).map(|_| base.iter().map(|x| x + int(rng.gen_range(-3..=3))).collect()).collect()
}

/// Minimal-weight vectors of `N_v` at every exponent of the fixtures.
pub fn fixture_families() -> Vec<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for (_, text) in FIXTURES {
        let p = ProblemConfig::parse(text).and_then(|c| c.resolve()).expect("fixtures are valid");
        let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b).expect("fixtures are generic");
        for e in &fe.exponents {
            let data = exponent_data(&p, &e.v).expect("support analysis");
            let vecs: Vec<Vec<Rational>> = data
                .classes
                .iter()
                .zip(&data.status)
                .filter(|(_, s)| **s == gkz_core::support::NvStatus::In)
                .filter_map(|(c, _)| c.min_weight_vector(&e.v))
                .collect();
            if vecs.len() > 1 {
                out.push(vecs);
            }
        }
    }
    out
}

pub fn suite_operators(seed: u64, random_families: usize, fixtures: &[Vec<Vec<Rational>>]) -> OperatorTallies {
    let mut t = OperatorTallies::default();
    for f in fixtures {
        check_family(f, &mut t);
    }
    (0..random_families)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, 6_000_000 + i);
            let mut t = OperatorTallies::default();
            check_family(&random_family(&mut rng), &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(t, OperatorTallies::merge)
}

/// Every fake exponent passes the minimality check at radius 8 and at 16.
pub fn suite_minimality(seed: u64, count: usize) -> Tally {
    let mut t = Tally::default();
    for (name, text) in FIXTURES {
        let p = ProblemConfig::parse(text).and_then(|c| c.resolve()).expect("fixtures are valid");
        let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b).expect("fixtures are generic");
        for e in &fe.exponents {
            let ok = minimality_check(&e.v, &p.b, &p.w, 8) && minimality_check(&e.v, &p.b, &p.w, 16);
            t.record(Ok(ok), || format!("{name} exponent {}", show(&e.v)));
        }
    }
    let random = par_tally(count, seed, 7, |rng, t| {
        let d = rng.gen_range(1..=3);
        // Lattice rank at most 2 keeps the radius-16 scan small.
        let h = rng.gen_range(1..=2);
        let Some((a, w)) = generic_instance(rng, d, d + h, 2) else { return };
        let beta = parameter(rng, d, 3);
        let b = kernel_basis(&a).expect("full rank");
        let wr: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
        match fake_exponents(&a, &beta, &wr, &b) {
            Ok(fe) => {
                for e in &fe.exponents {
                    let ok = minimality_check(&e.v, &b, &wr, 8) && minimality_check(&e.v, &b, &wr, 16);
                    t.record(Ok(ok), || format!("A = {:?}, w = {w:?}, v = {}", a.rows(), show(&e.v)));
                }
            }
            Err(e) => t.record(Err(e), || format!("A = {:?}, w = {w:?}", a.rows())),
        }
    });
    t.merge(random)
}

/// Every A-balanced binomial of degree at most 5 reduces to zero, and the basis is A-balanced.
pub fn suite_toric(seed: u64, count: usize) -> Tally {
    par_tally(count, seed, 8, |rng, t| {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(d + 1..=6);
        let a = homogeneous_matrix(rng, d, n, 2);
        let b = kernel_basis(&a).expect("full rank");
        let mut gb = None;
        for _ in 0..8 {
            let w: Vec<Rational> = integer_weight(rng, n).into_iter().map(int).collect();
            if let Ok(g) = toric_groebner(&a, &b, &w) {
                gb = Some(g);
                break;
            }
        }
        let Some(gb) = gb else { return };
        for g in gb.elements() {
            let terms: Vec<(&Monomial, &Rational)> = g.terms().collect();
            let balanced = terms.len() == 2 && (terms[0].1 + terms[1].1).is_zero() && {
                let e = |m: &Monomial| a.apply(&m.exps().iter().map(|&x| x as i64).collect::<Vec<_>>());
                e(terms[0].0) == e(terms[1].0)
            };
            t.record(Ok(balanced), || format!("A = {:?}: basis element {g} is not balanced", a.rows()));
        }
        let mut fibres: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for m in Monomial::all_up_to_degree(n, 5) {
            fibres.entry(a.apply(&m.exps().iter().map(|&x| x as i64).collect::<Vec<_>>())).or_default().push(m);
        }
        // Normal forms are linear, so u - v reduces to zero exactly when u and v share one.
        let mut all = true;
        let mut bad = None;
        for ms in fibres.values() {
            let nf = |m: &Monomial| gb.normal_form(&Polynomial::monomial(Family::Dx, m.clone()));
            let first = nf(&ms[0]);
            for v in &ms[1..] {
                if nf(v) != first {
                    all = false;
                    bad.get_or_insert(&Polynomial::monomial(Family::Dx, ms[0].clone()) - &Polynomial::monomial(Family::Dx, v.clone()));
                }
            }
        }
        t.record(Ok(all), || format!("A = {:?}: {} does not reduce to zero", a.rows(), bad.map(|f| f.to_string()).unwrap_or_default()));
    })
}

pub fn run_selftest(star: StarFn, seed: u64, sizes: &SelftestSizes) -> SelftestReport {
    let ops = suite_operators(seed, sizes.operator_families, &fixture_families());
    let properties = vec![
        suite_adjointness(star, seed, sizes.duality).entry("star action is adjoint to multiplication"),
        suite_perp_criteria(star, seed, sizes.duality).entry("perp by pairing equals perp by star annihilation"),
        suite_double_perp(seed, sizes.duality).entry("double perp of an Artinian ideal"),
        suite_colon_perp(seed, sizes.duality).entry("star image of a perp is the perp of the colon"),
        suite_perp_oracle(seed, sizes.oracle_ideals).entry("perp matches the graded nullspace oracle"),
        ops.disjoint.entry("opposite p operators share no factor"),
        ops.monomial_part.entry("monomial part of p operators"),
        ops.q_factorization.entry("q operators factor as unit times monomial"),
        ops.cross.entry("cross identity between p and q operators"),
        suite_minimality(seed, sizes.minimality_instances).entry("fake exponents are minimal weight vectors"),
        suite_toric(seed, sizes.toric_instances).entry("toric basis against balanced binomials"),
    ];
    let all_passed = properties.iter().all(|p| p.failures == 0);
    SelftestReport { seed, properties, all_passed }
}

/// A star action with its sign flipped, for fault-injection checks.
pub fn flipped_star(m: &Polynomial, q: &Polynomial) -> gkz_core::Result<Polynomial> {
    Ok(-&gkz_core::apolarity::star(m, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gkz_core::apolarity::star;

    fn tiny() -> SelftestSizes {
        SelftestSizes { duality: 20, oracle_ideals: 10, operator_families: 10, minimality_instances: 5, toric_instances: 3 }
    }

    #[test]
    fn small_run_passes() {
        let r = run_selftest(star, 3, &tiny());
        for p in &r.properties {
            assert_eq!(p.failures, 0, "{}: {:?}", p.name, p.counterexample);
            assert!(p.checks > 0, "{}", p.name);
        }
        assert!(r.all_passed);
    }

    #[test]
    fn flipped_star_is_caught() {
        let t = suite_adjointness(flipped_star, 3, 40);
        assert!(t.failures > 0);
        assert!(t.counterexample.is_some());
        assert_eq!(suite_adjointness(star, 3, 40).failures, 0);
    }

    #[test]
    fn broken_family_is_caught() {
        let mut t = OperatorTallies::default();
        // Differences that are not integers are rejected, not silently accepted.
        check_family(&[vec![rat(1, 2), int(0)], vec![int(0), int(0)]], &mut t);
        assert!(t.disjoint.failures > 0);
    }
}
