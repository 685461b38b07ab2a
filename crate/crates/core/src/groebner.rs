//! Buchberger's algorithm, normal forms and toric ideals.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lattice::{check_homogeneous, LatticeBasis, MatrixA};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{Family, Polynomial};
use crate::rational::Rational;

/// Terms sorted in descending order.
type Terms = Vec<(Monomial, Rational)>;

fn to_terms(p: &Polynomial, order: &TermOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_terms(t: &Terms, family: Family, nvars: usize) -> Polynomial {
    Polynomial::from_terms(family, nvars, t.iter().cloned())
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `f − c·m·g`, both inputs sorted descending.
fn sub_multiple(f: &[(Monomial, Rational)], g: &[(Monomial, Rational)], m: &Monomial, c: &Rational, order: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted: Vec<(Monomial, Rational)> = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).collect();
    while i < f.len() || j < shifted.len() {
        let ord = if i == f.len() {
            Ordering::Less
        } else if j == shifted.len() {
            Ordering::Greater
        } else {
            order.cmp(&f[i].0, &shifted[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &f[i].1 - &shifted[j].1;
                if !v.is_zero() {
                    out.push((f[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by monic `basis`.
fn reduce(mut f: Terms, basis: &[Terms], order: &TermOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut pos = 0;
    while pos < f.len() {
        let (lm, lc) = (&f[pos].0, &f[pos].1);
        let divisor = basis.iter().find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = lm.div(&g[0].0).expect("divides");
                let c = lc.clone();
                f = sub_multiple(&f[pos..], g, &q, &c, order);
                pos = 0;
            }
            None => {
                rem.push(f[pos].clone());
                pos += 1;
            }
        }
    }
    rem
}

/// Reduced Gröbner basis with respect to a term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: TermOrder,
    reduced: bool,
    family: Family,
    nvars: usize,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_term(&self.order).expect("nonzero").0.clone()).collect()
    }

    fn sorted(&self) -> Vec<Terms> {
        self.elements.iter().map(|g| to_terms(g, &self.order)).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let r = reduce(to_terms(f, &self.order), &self.sorted(), &self.order);
        from_terms(&r, f.family(), f.nvars())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(f)
}

fn spoly(f: &Terms, g: &Terms, order: &TermOrder) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0).expect("lcm");
    let mg = l.div(&g[0].0).expect("lcm");
    let ff: Terms = f.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_multiple(&ff, g, &mg, &Rational::one(), order)
}

/// Reduced Gröbner basis of `⟨gens⟩`, selecting pairs with the smallest lcm first.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| Error::Argument("no generators".into()))?;
    let (family, nvars) = (first.family(), first.nvars());
    if nvars != order.nvars() {
        return Err(Error::Dimension { expected: order.nvars(), found: nvars });
    }
    for g in gens {
        if g.family() != family {
            return Err(Error::Ring(family, g.family()));
        }
        if g.nvars() != nvars {
            return Err(Error::Dimension { expected: nvars, found: g.nvars() });
        }
    }
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens {
        let mut t = reduce(to_terms(g, order), &basis, order);
        if !t.is_empty() {
            make_monic(&mut t);
            basis.push(t);
        }
    }
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j, basis[i][0].0.lcm(&basis[j][0].0)));
        }
    }
    let pending = |pairs: &[(usize, usize, Monomial)], a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pairs.iter().any(|(i, j, _)| *i == a && *j == b)
    };
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                order.cmp(&pairs[x].2, &pairs[y].2).then_with(|| (pairs[x].1, pairs[x].0).cmp(&(pairs[y].1, pairs[y].0)))
            })
            .expect("nonempty");
        let (i, j, l) = pairs.swap_remove(best);
        if basis[i][0].0.is_coprime(&basis[j][0].0) {
            continue;
        }
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && basis[k][0].0.divides(&l) && !pending(&pairs, i, k) && !pending(&pairs, j, k));
        if chain {
            continue;
        }
        let mut r = reduce(spoly(&basis[i], &basis[j], order), &basis, order);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        let k = basis.len();
        for (a, g) in basis.iter().enumerate() {
            pairs.push((a, k, g[0].0.lcm(&r[0].0)));
        }
        basis.push(r);
    }
    let elements = interreduce(basis, order);
    Ok(GroebnerBasis {
        elements: elements.iter().map(|t| from_terms(t, family, nvars)).collect(),
        order: order.clone(),
        reduced: true,
        family,
        nvars,
    })
}

fn interreduce(basis: Vec<Terms>, order: &TermOrder) -> Vec<Terms> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            o != k && h[0].0.divides(lm) && (h[0].0 != *lm || o < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Terms> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, t)| t.clone()).collect();
        let mut head = vec![minimal[k][0].clone()];
        let tail = reduce(minimal[k][1..].to_vec(), &others, order);
        head.extend(tail);
        make_monic(&mut head);
        out.push(head);
    }
    out.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    out
}

/// Binomial generators of a toric ideal in the `∂_x` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialIdeal {
    generators: Vec<Polynomial>,
    nvars: usize,
}

impl BinomialIdeal {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// Binomial `∂^{u₊} − ∂^{u₋}` for an integer vector `u`.
pub fn lattice_binomial(u: &[i64], family: Family) -> Polynomial {
    let plus = Monomial::new(u.iter().map(|&x| x.max(0) as u32).collect());
    let minus = Monomial::new(u.iter().map(|&x| (-x).max(0) as u32).collect());
    let mut p = Polynomial::monomial(family, plus);
    p.add_term(minus, -Rational::one());
    p
}

/// Toric ideal `I_A`, from the lattice-basis ideal saturated by `∂_1⋯∂_n`.
pub fn toric_ideal(a: &MatrixA, b: &LatticeBasis) -> Result<BinomialIdeal> {
    if !check_homogeneous(a) {
        return Err(Error::NotHomogeneous);
    }
    let n = a.n();
    if b.h() == 0 {
        return Ok(BinomialIdeal { generators: vec![], nvars: n });
    }
    let mut gens: Vec<Polynomial> = b.columns().iter().map(|c| lattice_binomial(c, Family::Dx).extend_vars(1)).collect();
    let mut sat = Polynomial::monomial(Family::Dx, Monomial::new(vec![1; n + 1]));
    sat.add_term(Monomial::one(n + 1), -Rational::one());
    gens.push(sat);
    let gb = buchberger(&gens, &TermOrder::eliminate_last(n))?;
    let generators: Vec<Polynomial> = gb.elements().iter().filter_map(|g| g.drop_last_var()).collect();
    Ok(BinomialIdeal { generators, nvars: n })
}

/// Reduced Gröbner basis of `I_A` for the order refined from `w`.
pub fn toric_groebner(a: &MatrixA, b: &LatticeBasis, w: &[Rational]) -> Result<GroebnerBasis> {
    if w.len() != a.n() {
        return Err(Error::Dimension { expected: a.n(), found: w.len() });
    }
    let ideal = toric_ideal(a, b)?;
    let order = TermOrder::new(w.to_vec());
    if ideal.generators.is_empty() {
        return Ok(GroebnerBasis { elements: vec![], order, reduced: true, family: Family::Dx, nvars: a.n() });
    }
    buchberger(&ideal.generators, &order)
}

/// Ideal generated by the `w`-leading forms, which must all be monomials.
pub fn initial_ideal_w(gb: &GroebnerBasis, w: &[Rational]) -> Result<MonomialIdeal> {
    if w.len() != gb.nvars {
        return Err(Error::Dimension { expected: gb.nvars, found: w.len() });
    }
    let order = TermOrder::new(w.to_vec());
    let mut lead = Vec::new();
    for g in &gb.elements {
        let top = g.terms().map(|(m, _)| order.scaled_weight(m)).max().expect("nonzero");
        let tied: Vec<&Monomial> = g.terms().filter(|(m, _)| order.scaled_weight(m) == top).map(|(m, _)| m).collect();
        if tied.len() > 1 {
            return Err(Error::WeightNotGeneric {
                element: g.to_string(),
                terms: tied.iter().map(|m| Polynomial::monomial(g.family(), (*m).clone()).to_string()).collect(),
            });
        }
        lead.push(tied[0].clone());
    }
    Ok(MonomialIdeal::new(gb.nvars, lead))
}
