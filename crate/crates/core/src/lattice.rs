//! Integer kernels, lattice bases, affine solving and lattice enumeration.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{int, is_integer, Rational};

/// Full-row-rank integer matrix with columns `a_1, …, a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixA {
    rows: Vec<Vec<i64>>,
}

impl MatrixA {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, found: r.len() });
        }
        let a = MatrixA { rows };
        let rk = linalg::rank(&a.rational(), n);
        if rk != d || n < d {
            return Err(Error::Rank { rank: rk, expected: d });
        }
        Ok(a)
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn rational(&self) -> Matrix {
        self.rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn apply_rational(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.rational(), v)
    }
}

/// True iff some rational combination of the rows is the all-ones vector.
pub fn check_homogeneous(a: &MatrixA) -> bool {
    let n = a.n();
    let d = a.d();
    let at: Matrix = (0..n).map(|j| (0..d).map(|i| int(a.rows[i][j])).collect()).collect();
    linalg::solve(&at, &vec![int(1); n], d).is_some()
}

/// ℤ-basis of `Ker_ℤ A`, stored as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    n: usize,
    cols: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.cols
    }

    /// Row `i` of `B`, i.e. the coefficients of `(Bs)_i`.
    pub fn row(&self, i: usize) -> Vec<i64> {
        self.cols.iter().map(|c| c[i]).collect()
    }

    /// The linear form `(Bs)_i = Σ_k b^{(k)}_i s_k`.
    pub fn row_form(&self, i: usize, family: crate::poly::Family) -> crate::poly::Polynomial {
        let coeffs: Vec<Rational> = self.row(i).into_iter().map(int).collect();
        crate::poly::Polynomial::linear(family, &coeffs, Rational::zero())
    }

    /// `B·z`.
    pub fn combine(&self, z: &[i64]) -> Vec<i64> {
        let mut u = vec![0i64; self.n];
        for (c, &k) in self.cols.iter().zip(z) {
            if k != 0 {
                for (x, &y) in u.iter_mut().zip(c) {
                    *x += k * y;
                }
            }
        }
        u
    }

    fn rational_columns(&self) -> Matrix {
        (0..self.n).map(|i| self.cols.iter().map(|c| int(c[i])).collect()).collect()
    }

    /// Rational coordinates of `u` in this basis, if `u` is in the real span.
    pub fn rational_coordinates(&self, u: &[Rational]) -> Option<Vec<Rational>> {
        let (z, _) = linalg::solve(&self.rational_columns(), u, self.h())?;
        Some(z)
    }

    /// Integer coordinates of `u`, if `u` lies in the lattice.
    pub fn coordinates(&self, u: &[i64]) -> Option<Vec<i64>> {
        let uq: Vec<Rational> = u.iter().map(|&x| int(x)).collect();
        let z = self.rational_coordinates(&uq)?;
        z.iter().map(|q| if is_integer(q) { q.numer().to_i64() } else { None }).collect()
    }

    /// Whether `v − v'` lies in the lattice.
    pub fn same_coset(&self, v: &[Rational], w: &[Rational]) -> bool {
        let diff: Option<Vec<i64>> =
            v.iter().zip(w).map(|(a, b)| { let d = a - b; if is_integer(&d) { d.numer().to_i64() } else { None } }).collect();
        diff.and_then(|d| self.coordinates(&d)).is_some()
    }

    /// Rational matrix `C` with `C·B = I_h`.
    pub fn left_inverse(&self) -> Matrix {
        let b = self.rational_columns();
        let h = self.h();
        let bt: Matrix = (0..h).map(|k| (0..self.n).map(|i| b[i][k].clone()).collect()).collect();
        // Rows of C solve Bᵀ cᵀ = e_k.
        (0..h)
            .map(|k| {
                let mut e = vec![Rational::zero(); h];
                e[k] = int(1);
                linalg::solve(&bt, &e, self.n).expect("columns independent").0
            })
            .collect()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 { (-a, -1, 0) } else { (a, 1, 0) }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// ℤ-basis of the integer kernel by unimodular column reduction.
pub fn kernel_basis(a: &MatrixA) -> Result<LatticeBasis> {
    let d = a.d();
    let n = a.n();
    // Columns of [A; I]; column operations keep the lower block unimodular.
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut c: Vec<i128> = (0..d).map(|i| a.rows[i][j] as i128).collect();
            c.extend((0..n).map(|k| (k == j) as i128));
            c
        })
        .collect();
    let mut k = 0;
    for r in 0..d {
        for j in k + 1..n {
            let (x, y) = (cols[k][r], cols[j][r]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (p, q) = (x / g, y / g);
            let ck = cols[k].clone();
            let cj = cols[j].clone();
            cols[k] = ck.iter().zip(&cj).map(|(a, b)| s * a + t * b).collect();
            cols[j] = ck.iter().zip(&cj).map(|(a, b)| -q * a + p * b).collect();
        }
        if cols[k][r] != 0 {
            k += 1;
        }
    }
    if k != d {
        return Err(Error::Rank { rank: k, expected: d });
    }
    let basis: Vec<Vec<i128>> = cols[d..].iter().map(|c| c[d..].to_vec()).collect();
    let basis = lll_reduce(basis)
        .into_iter()
        .map(|c| c.into_iter().map(|x| i64::try_from(x).expect("kernel entry overflow")).collect())
        .collect();
    Ok(LatticeBasis { n, cols: basis })
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// LLL reduction with `δ = 3/4` in exact arithmetic. Short bases keep the
/// saturation behind the toric ideal cheap.
fn lll_reduce(mut b: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let k = b.len();
    let delta = Rational::new(3.into(), 4.into());
    let gram_schmidt = |b: &[Vec<i128>]| {
        let mut star: Vec<Vec<Rational>> = Vec::with_capacity(b.len());
        let mut mu = vec![vec![Rational::zero(); b.len()]; b.len()];
        for i in 0..b.len() {
            let bi: Vec<Rational> = b[i].iter().map(|&x| Rational::from_integer(x.into())).collect();
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dot(&bi, &star[j]) / dot(&star[j], &star[j]);
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            star.push(v);
        }
        (star, mu)
    };
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            let (_, mu) = gram_schmidt(&b);
            let r = mu[i][j].round().to_integer().to_i128().expect("small multiplier");
            if r != 0 {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= r * y;
                }
            }
        }
        let (star, mu) = gram_schmidt(&b);
        let lhs = dot(&star[i], &star[i]);
        let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * dot(&star[i - 1], &star[i - 1]);
        if lhs >= rhs {
            i += 1;
        } else {
            b.swap(i, i - 1);
            i = (i - 1).max(1);
        }
    }
    b
}

/// Validates a user basis: in the kernel, independent, and of index one.
pub fn set_basis(a: &MatrixA, cols: Vec<Vec<i64>>) -> Result<LatticeBasis> {
    let n = a.n();
    let h = n - a.d();
    if cols.len() != h {
        return Err(Error::Dimension { expected: h, found: cols.len() });
    }
    for c in &cols {
        if c.len() != n {
            return Err(Error::Dimension { expected: n, found: c.len() });
        }
        if a.apply(c).iter().any(|&x| x != 0) {
            return Err(Error::NotInKernel);
        }
    }
    let kernel = kernel_basis(a)?;
    let t: Matrix = cols
        .iter()
        .map(|c| kernel.coordinates(c).expect("kernel vectors have integer coordinates").into_iter().map(int).collect())
        .collect();
    let det = linalg::determinant(&t);
    if det.is_zero() {
        return Err(Error::Rank { rank: linalg::rank(&t, h), expected: h });
    }
    if det != int(1) && det != int(-1) {
        return Err(Error::Sublattice(num_traits::Signed::abs(&det).to_string()));
    }
    Ok(LatticeBasis { n, cols })
}

/// Outcome of solving `A·v = β` with prescribed coordinates off a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    None,
    Unique(Vec<Rational>),
    Ambiguous(Vec<Rational>),
}

/// Solves `A·v = β` with `v_i = fixed[i]` off `free`.
pub fn solve_affine(a: &MatrixA, beta: &[Rational], fixed: &[Option<Rational>], free: &[usize]) -> Result<AffineSolution> {
    let n = a.n();
    if beta.len() != a.d() {
        return Err(Error::Dimension { expected: a.d(), found: beta.len() });
    }
    if fixed.len() != n {
        return Err(Error::Dimension { expected: n, found: fixed.len() });
    }
    for i in 0..n {
        if fixed[i].is_some() == free.contains(&i) {
            return Err(Error::Argument(format!("index {} must be either fixed or free", i + 1)));
        }
    }
    let rhs: Vec<Rational> = (0..a.d())
        .map(|r| {
            let known: Rational = (0..n).filter_map(|j| fixed[j].as_ref().map(|f| f * int(a.rows[r][j]))).sum();
            &beta[r] - known
        })
        .collect();
    let m: Matrix = a.rows.iter().map(|row| free.iter().map(|&j| int(row[j])).collect()).collect();
    let Some((x, ns)) = linalg::solve(&m, &rhs, free.len()) else {
        return Ok(AffineSolution::None);
    };
    let mut v: Vec<Rational> = fixed.iter().map(|f| f.clone().unwrap_or_else(Rational::zero)).collect();
    for (k, &j) in free.iter().enumerate() {
        v[j] = x[k].clone();
    }
    Ok(if ns.is_empty() { AffineSolution::Unique(v) } else { AffineSolution::Ambiguous(v) })
}

/// Lattice points `B·z` with `‖z‖_∞ ≤ radius`, in lexicographic order of `z`.
pub fn lattice_points(b: &LatticeBasis, radius: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let h = b.h();
    let mut out = Vec::new();
    let mut z = vec![-radius; h];
    loop {
        out.push((z.clone(), b.combine(&z)));
        let mut k = h;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if z[k] < radius {
                z[k] += 1;
                for x in z.iter_mut().skip(k + 1) {
                    *x = -radius;
                }
                break;
            }
        }
    }
}

/// `w·u` for an integer vector.
pub fn weight_of(w: &[Rational], u: &[i64]) -> Rational {
    w.iter().zip(u).map(|(a, &b)| a * int(b)).sum()
}

/// Lattice window filtered by `w·u ≤ weight_cap`.
pub fn enumerate_lattice(b: &LatticeBasis, radius: i64, weight_cap: Option<&Rational>, w: &[Rational]) -> Vec<Vec<i64>> {
    lattice_points(b, radius)
        .into_iter()
        .map(|(_, u)| u)
        .filter(|u| weight_cap.is_none_or(|cap| &weight_of(w, u) <= cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn ex71() -> MatrixA {
        MatrixA::new(vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap()
    }

    fn ex72() -> MatrixA {
        MatrixA::new(vec![vec![1, 1, 1, 1, 1, 1], vec![0, 1, 1, 0, -1, -1], vec![-1, -1, 0, 1, 1, 0]]).unwrap()
    }

    #[test]
    fn homogeneity() {
        assert!(check_homogeneous(&ex71()));
        assert!(!check_homogeneous(&MatrixA::new(vec![vec![1, 2]]).unwrap()));
        assert!(check_homogeneous(&MatrixA::new(vec![vec![1, 0], vec![0, 1]]).unwrap()));
    }

    #[test]
    fn small_kernels() {
        let k = kernel_basis(&MatrixA::new(vec![vec![1, 1]]).unwrap()).unwrap();
        assert!(k.columns() == [vec![1, -1]] || k.columns() == [vec![-1, 1]]);
        let k = kernel_basis(&ex71()).unwrap();
        assert_eq!(k.h(), 2);
        for g in [vec![-1, 1, 1, -1], vec![1, 0, -3, 2]] {
            assert!(k.coordinates(&g).is_some());
        }
        let k = kernel_basis(&ex72()).unwrap();
        assert_eq!(k.h(), 3);
        for g in [vec![1, -2, 2, -1, 0, 0], vec![0, 1, -2, 2, -1, 0], vec![0, 0, 1, -2, 2, -1]] {
            assert!(k.coordinates(&g).is_some());
        }
    }

    #[test]
    fn user_bases() {
        let b = set_basis(&ex71(), vec![vec![-1, 1, 1, -1], vec![1, 0, -3, 2]]).unwrap();
        assert_eq!(b.row(2), vec![1, -3]);
        let doubled = set_basis(&ex71(), vec![vec![-2, 2, 2, -2], vec![1, 0, -3, 2]]);
        assert_eq!(doubled, Err(Error::Sublattice("2".into())));
        assert_eq!(set_basis(&ex71(), vec![vec![1, 0, 0, 0], vec![1, 0, -3, 2]]), Err(Error::NotInKernel));
        assert!(set_basis(&ex72(), vec![vec![1, -2, 2, -1, 0, 0], vec![0, 1, -2, 2, -1, 0], vec![0, 0, 1, -2, 2, -1]]).is_ok());
    }

    #[test]
    fn affine_solutions() {
        let a = ex71();
        let beta = vec![int(0), int(1)];
        let s = solve_affine(&a, &beta, &[Some(int(0)), Some(int(0)), None, None], &[2, 3]).unwrap();
        assert_eq!(s, AffineSolution::Unique(vec![int(0), int(0), int(-1), int(1)]));
        let s = solve_affine(&a, &beta, &[None, Some(int(0)), None, Some(int(0))], &[0, 2]).unwrap();
        assert_eq!(s, AffineSolution::Unique(vec![rat(-1, 2), int(0), rat(1, 2), int(0)]));
        let fixed: Vec<_> = [1, 0, 0, 0].iter().map(|&x| Some(int(x))).collect();
        assert_eq!(solve_affine(&a, &beta, &fixed, &[]).unwrap(), AffineSolution::None);
        let s = solve_affine(&a, &beta, &[None, None, None, Some(int(0))], &[0, 1, 2]).unwrap();
        assert!(matches!(s, AffineSolution::Ambiguous(_)));
    }

    #[test]
    fn enumeration_window() {
        let b = set_basis(&ex71(), vec![vec![-1, 1, 1, -1], vec![1, 0, -3, 2]]).unwrap();
        let w = vec![int(1), int(3), int(0), int(0)];
        assert_eq!(enumerate_lattice(&b, 0, None, &w), vec![vec![0, 0, 0, 0]]);
        let one = enumerate_lattice(&b, 1, None, &w);
        assert_eq!(one.len(), 9);
        for g in [vec![-1, 1, 1, -1], vec![1, 0, -3, 2], vec![0, 1, -2, 1]] {
            assert!(one.contains(&g));
        }
        let three = enumerate_lattice(&b, 3, None, &w);
        assert_eq!(three.len(), 49);
        let set: HashSet<_> = three.iter().cloned().collect();
        assert_eq!(set.len(), 49);
        assert!(three.iter().all(|u| set.contains(&u.iter().map(|x| -x).collect::<Vec<_>>())));
        let capped = enumerate_lattice(&b, 3, Some(&int(0)), &w);
        assert!(capped.iter().all(|u| weight_of(&w, u) <= int(0)));
    }

    fn random_full_rank(rng: &mut ChaCha8Rng) -> MatrixA {
        loop {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(d..=6);
            let rows = (0..d).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            if let Ok(a) = MatrixA::new(rows) {
                return a;
            }
        }
    }

    #[test]
    fn kernel_basis_is_reduced() {
        let a = MatrixA::new(vec![vec![1, 1, 1, 1, 1, 1], vec![1, 0, 2, -1, 0, 0], vec![-2, 2, -1, -2, -1, -2]]).unwrap();
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.h(), 3);
        assert!(k.columns().iter().flatten().all(|x| x.abs() <= 3), "{:?}", k.columns());
        for c in k.columns() {
            assert!(a.apply(c).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn random_kernels_are_saturated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let a = random_full_rank(&mut rng);
            let k = kernel_basis(&a).unwrap();
            assert_eq!(k.h(), a.n() - a.d());
            for c in k.columns() {
                assert!(a.apply(c).iter().all(|&x| x == 0));
            }
            // Every small kernel vector has integer coordinates.
            let n = a.n();
            let mut found = 0;
            for _ in 0..400 {
                let u: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
                if a.apply(&u).iter().all(|&x| x == 0) {
                    found += 1;
                    assert!(k.coordinates(&u).is_some(), "{u:?} not in span of {:?}", k.columns());
                }
            }
            // Rational kernel vectors scaled to primitive integers must also be reached.
            let ns = linalg::nullspace(&a.rational(), n);
            for v in ns {
                let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
                let u: Vec<i64> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer().to_i64().unwrap()).collect();
                let g = u.iter().fold(0i64, |acc, &x| num_integer::Integer::gcd(&acc, &x));
                let prim: Vec<i64> = u.iter().map(|x| x / g).collect();
                assert!(k.coordinates(&prim).is_some());
            }
            let _ = found;
        }
    }

    #[test]
    fn left_inverse_works() {
        let b = set_basis(&ex72(), vec![vec![1, -2, 2, -1, 0, 0], vec![0, 1, -2, 2, -1, 0], vec![0, 0, 1, -2, 2, -1]]).unwrap();
        let c = b.left_inverse();
        for k in 0..3 {
            for l in 0..3 {
                let v: Rational = (0..6).map(|i| &c[k][i] * int(b.columns()[l][i])).sum();
                assert_eq!(v, int((k == l) as i64));
            }
        }
    }
}
