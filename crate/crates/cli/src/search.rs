//! Random sweep for instances where `Φ(Q(t):m) ≠ P:m`, that is, where
//! L-perturbation misses series found by the extended method.

use gkz_core::frobenius::sufficiency_check;
use gkz_core::support::{fake_exponents, nsupp};
use gkz_core::Error;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::pipeline::{exponent_data, rat_strings, NPrime};
use crate::random::{generic_instance, instance_config, parameter, stream};
use crate::report::{Counterexample, SearchBounds, SearchReport, SkipEntry};

enum Outcome {
    Checked { exponents: usize, counterexamples: Vec<Counterexample> },
    Skipped(SkipEntry),
}

fn skip(index: usize, e: CliError) -> Outcome {
    let internal = e.exit_code() == 2;
    Outcome::Skipped(SkipEntry { index, reason: e.to_string(), internal })
}

fn instance(seed: u64, index: usize, bounds: &SearchBounds) -> Outcome {
    let mut rng = stream(seed, index);
    let d = rng.gen_range(bounds.d_min..=bounds.d_max);
    let n = rng.gen_range(d + 1..=bounds.n_max.max(d + 1));
    let Some((a, w)) = generic_instance(&mut rng, d, n, bounds.entry_max) else {
        return Outcome::Skipped(SkipEntry { index, reason: "no generic weight found".into(), internal: false });
    };
    let beta = parameter(&mut rng, d, bounds.beta_max);
    let cfg = instance_config(&a, &beta, &w, bounds.radius.max(1));
    match check(&cfg, index) {
        Ok(o) => o,
        Err(e) => skip(index, e),
    }
}

fn check(cfg: &crate::ProblemConfig, index: usize) -> CliResult<Outcome> {
    let p = cfg.resolve()?;
    let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b)?;
    let mut exponents = 0;
    let mut counterexamples = Vec::new();
    for e in &fe.exponents {
        let data = exponent_data(&p, &e.v)?;
        if !data.n_v().contains(&nsupp(&e.v)) {
            continue;
        }
        let c = data.choice(&NPrime::Nv)?;
        let rep = sufficiency_check(&p.a, &p.b, &c, &c)?;
        exponents += 1;
        if !rep.phi_matches {
            let mut found = cfg.clone();
            found.exponent = Some(rat_strings(&e.v));
            counterexamples.push(Counterexample { index, v: rat_strings(&e.v), config: found.to_toml() });
        }
    }
    Ok(Outcome::Checked { exponents, counterexamples })
}

pub fn run_search(seed: u64, bounds: &SearchBounds) -> CliResult<SearchReport> {
    if bounds.d_min == 0 || bounds.d_min > bounds.d_max || bounds.n_max <= bounds.d_min {
        return Err(Error::Argument("search bounds need 1 ≤ d_min ≤ d_max and n_max > d_min".into()).into());
    }
    let outcomes: Vec<Outcome> = (0..bounds.count).into_par_iter().map(|i| instance(seed, i, bounds)).collect();
    let mut exponents_checked = 0;
    let mut skipped = Vec::new();
    let mut counterexamples = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Checked { exponents, counterexamples: c } => {
                exponents_checked += exponents;
                counterexamples.extend(c);
            }
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    let summary = if counterexamples.is_empty() {
        format!("no counterexample among {} instances", bounds.count)
    } else {
        format!("{} counterexamples among {} instances", counterexamples.len(), bounds.count)
    };
    Ok(SearchReport { seed, bounds: bounds.clone(), instances: bounds.count, exponents_checked, skipped, counterexamples, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Report;

    fn small(count: usize) -> SearchBounds {
        SearchBounds { d_min: 2, d_max: 2, n_max: 4, entry_max: 3, beta_max: 2, radius: 4, count }
    }

    #[test]
    fn empty_sweep() {
        let r = run_search(1, &small(0)).unwrap();
        assert_eq!(r.instances, 0);
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.summary, "no counterexample among 0 instances");
    }

    #[test]
    fn same_seed_same_report() {
        let a = Report::Search(run_search(5, &small(6)).unwrap()).to_json();
        let b = Report::Search(run_search(5, &small(6)).unwrap()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn example_one_shape() {
        let cfg = crate::ProblemConfig::parse(include_str!("../fixtures/ex71.toml")).unwrap();
        match check(&cfg, 0).unwrap() {
            Outcome::Checked { exponents, counterexamples } => {
                assert_eq!(exponents, 3);
                assert!(counterexamples.is_empty());
            }
            Outcome::Skipped(s) => panic!("{}", s.reason),
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        let mut b = small(1);
        b.d_min = 3;
        assert!(run_search(0, &b).is_err());
    }
}
