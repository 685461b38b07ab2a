//! Dense exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Row-major rational matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon basis of a growing row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of the vectors orthogonal (dot product) to every stored row.
    pub fn orthogonal_complement(&self) -> Matrix {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (p, row) in &self.rows {
                v[*p] = -row[free].clone();
            }
            out.push(v);
        }
        out
    }
}

pub fn rref(m: &Matrix, ncols: usize) -> Echelon {
    let mut e = Echelon::new(ncols);
    for row in m {
        e.insert(row);
    }
    e
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    rref(m, ncols).rank()
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace(m: &Matrix, ncols: usize) -> Matrix {
    rref(m, ncols).orthogonal_complement()
}

/// One solution of `m·x = b` together with a nullspace basis, or `None`.
pub fn solve(m: &Matrix, b: &[Rational], ncols: usize) -> Option<(Vec<Rational>, Matrix)> {
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(&aug, ncols + 1);
    if e.pivots().contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (p, row) in &e.rows {
        x[*p] = row[ncols].clone();
    }
    Some((x, nullspace(m, ncols)))
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    det
}

pub fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
