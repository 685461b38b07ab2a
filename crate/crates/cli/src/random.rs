//! Seeded generators for random problem instances.

use gkz_core::groebner::toric_groebner;
use gkz_core::lattice::{kernel_basis, MatrixA};
use gkz_core::rational::{int, rat};
use gkz_core::{Error, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ProblemConfig;

/// Independent stream for item `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Full-rank `d × n` matrix whose first row is all ones, so it is homogeneous.
pub fn homogeneous_matrix(rng: &mut impl Rng, d: usize, n: usize, entry_max: i64) -> MatrixA {
    loop {
        let mut rows = vec![vec![1; n]];
        for _ in 1..d {
            rows.push((0..n).map(|_| rng.gen_range(-entry_max..=entry_max)).collect());
        }
        if let Ok(a) = MatrixA::new(rows) {
            return a;
        }
    }
}

pub fn integer_weight(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..=10_000)).collect()
}

/// Integers and halves in `[-max, max]`.
pub fn parameter(rng: &mut impl Rng, d: usize, max: i64) -> Vec<Rational> {
    (0..d)
        .map(|_| {
            let den = rng.gen_range(1..=2);
            rat(rng.gen_range(-max * den..=max * den), den)
        })
        .collect()
}

/// A homogeneous matrix with a weight that is generic for its toric ideal.
pub fn generic_instance(rng: &mut impl Rng, d: usize, n: usize, entry_max: i64) -> Option<(MatrixA, Vec<i64>)> {
    let a = homogeneous_matrix(rng, d, n, entry_max);
    let b = kernel_basis(&a).ok()?;
    for _ in 0..8 {
        let w = integer_weight(rng, n);
        let wr: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
        match toric_groebner(&a, &b, &wr) {
            Ok(_) => return Some((a, w)),
            Err(Error::WeightNotGeneric { .. }) => continue,
            Err(_) => return None,
        }
    }
    None
}

pub fn instance_config(a: &MatrixA, beta: &[Rational], w: &[i64], radius: i64) -> ProblemConfig {
    ProblemConfig {
        a: a.rows().to_vec(),
        beta: beta.iter().map(|x| x.to_string()).collect(),
        w: w.iter().map(|x| x.to_string()).collect(),
        basis: kernel_basis(a).ok().map(|b| b.columns().to_vec()),
        radius,
        weight_cap: "8".into(),
        degree_cap: 8,
        exponent: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gkz_core::lattice::check_homogeneous;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| stream(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| stream(7, 3).gen()).collect();
        assert_eq!(a, b);
        let mut s3 = stream(7, 3);
        let mut s4 = stream(7, 4);
        assert_ne!((s3.gen::<u64>(), s3.gen::<u64>()), (s4.gen::<u64>(), s4.gen::<u64>()));
    }

    #[test]
    fn matrices_are_homogeneous() {
        let mut rng = stream(1, 0);
        for _ in 0..20 {
            let a = homogeneous_matrix(&mut rng, 3, 5, 2);
            assert!(check_homogeneous(&a));
            assert_eq!(a.d(), 3);
        }
    }

    #[test]
    fn config_round_trips() {
        let mut rng = stream(2, 0);
        let (a, w) = generic_instance(&mut rng, 2, 4, 3).unwrap();
        let beta = parameter(&mut rng, 2, 3);
        let c = instance_config(&a, &beta, &w, 4);
        assert_eq!(ProblemConfig::parse(&c.to_toml()).unwrap(), c);
        c.resolve().unwrap();
    }
}
