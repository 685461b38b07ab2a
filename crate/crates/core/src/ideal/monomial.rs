use std::fmt;

use crate::monomial::Monomial;
use crate::order::grevlex;
use crate::poly::{Family, Polynomial};

/// Monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal, keeping only minimal generators.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut gens = gens;
        gens.sort_by(grevlex);
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in gens {
            assert_eq!(g.nvars(), nvars, "monomial length");
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { nvars, gens: minimal }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![] }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// Ideal of squarefree monomials `∏_{i∈S} v_i` over the given sets.
    pub fn from_sets(nvars: usize, sets: &[Vec<usize>]) -> Self {
        Self::new(nvars, sets.iter().map(|s| Monomial::from_set(nvars, s)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators, ascending in grevlex.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `I : f`, generated by `g / gcd(g, f)`.
    pub fn colon(&self, f: &Monomial) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().map(|g| g.cancel(f)).collect())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect())
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))).collect())
    }

    /// True iff a pure power of every variable lies in the ideal.
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars).all(|i| self.gens.iter().any(|g| g.support().iter().all(|&j| j == i)))
    }

    pub fn to_polynomials(&self, family: Family) -> Vec<Polynomial> {
        self.gens.iter().map(|g| Polynomial::monomial(family, g.clone())).collect()
    }

    /// Whether `a + ℕ^σ` avoids the ideal.
    fn admissible(&self, root: &Monomial, face: &[usize]) -> bool {
        !self.gens.iter().any(|g| g.exps().iter().zip(root.exps()).enumerate().all(|(i, (ge, re))| face.contains(&i) || ge <= re))
    }

    /// Standard pair decomposition of the complement of the ideal.
    pub fn standard_pairs(&self) -> Vec<StandardPair> {
        let n = self.nvars;
        let bound: Vec<u32> = (0..n).map(|i| self.gens.iter().map(|g| g.exps()[i]).max().unwrap_or(0)).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let face: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let off: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
            let mut root = vec![0u32; n];
            let mut done = false;
            while !done {
                let a = Monomial::new(root.clone());
                if self.admissible(&a, &face) {
                    let maximal = off.iter().all(|&j| {
                        let mut b = root.clone();
                        b[j] = 0;
                        let mut wider = face.clone();
                        wider.push(j);
                        wider.sort_unstable();
                        !self.admissible(&Monomial::new(b), &wider)
                    });
                    if maximal {
                        out.push(StandardPair { root: a, face: face.clone() });
                    }
                }
                // Odometer over roots with entries below the bound on `off`.
                done = true;
                for k in (0..off.len()).rev() {
                    let i = off[k];
                    if root[i] + 1 < bound[i] {
                        root[i] += 1;
                        for &j in &off[k + 1..] {
                            root[j] = 0;
                        }
                        done = false;
                        break;
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| Polynomial::monomial(Family::Dx, g.clone()).to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Pair `(a, σ)` standing for the monomials `a + ℕ^σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardPair {
    pub root: Monomial,
    pub face: Vec<usize>,
}

impl StandardPair {
    pub fn contains(&self, m: &Monomial) -> bool {
        m.exps().iter().zip(self.root.exps()).enumerate().all(|(i, (e, r))| if self.face.contains(&i) { true } else { e == r })
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .root
            .exps()
            .iter()
            .enumerate()
            .map(|(i, e)| if self.face.contains(&i) { "*".to_string() } else { e.to_string() })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn pairs_text(i: &MonomialIdeal) -> Vec<String> {
        let mut v: Vec<String> = i.standard_pairs().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn single_variable() {
        let i = MonomialIdeal::new(1, vec![m(&[2])]);
        assert_eq!(pairs_text(&i), vec!["(0)", "(1)"]);
    }

    #[test]
    fn example_one_pairs() {
        let i = MonomialIdeal::new(4, vec![m(&[0, 1, 1, 0]), m(&[1, 0, 0, 2]), m(&[0, 2, 0, 0]), m(&[0, 1, 0, 1])]);
        let mut want = vec!["(0,0,*,*)", "(*,0,*,0)", "(*,0,*,1)", "(*,1,0,0)"];
        want.sort();
        assert_eq!(pairs_text(&i), want);
    }

    #[test]
    fn colon_and_minimality() {
        let i = MonomialIdeal::new(3, vec![m(&[1, 1, 0]), m(&[2, 1, 0]), m(&[0, 0, 2])]);
        assert_eq!(i.generators().len(), 2);
        assert_eq!(i.colon(&Monomial::one(3)), i);
        assert_eq!(i.colon(&m(&[1, 0, 0])), MonomialIdeal::new(3, vec![m(&[0, 1, 0]), m(&[0, 0, 2])]));
        assert!(i.colon(&m(&[1, 1, 0])).is_unit());
        assert!(!i.is_artinian());
        assert!(MonomialIdeal::new(2, vec![m(&[3, 0]), m(&[1, 1]), m(&[0, 2])]).is_artinian());
    }

    fn arb_ideal(n: usize, maxdeg: u32) -> impl Strategy<Value = MonomialIdeal> {
        let monos: Vec<Monomial> = (1..=maxdeg).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
        proptest::collection::vec(0..monos.len(), 1..5).prop_map(move |ix| MonomialIdeal::new(n, ix.iter().map(|&i| monos[i].clone()).collect()))
    }

    proptest! {
        #[test]
        fn standard_pairs_cover_standard_monomials(i in arb_ideal(3, 3)) {
            let pairs = i.standard_pairs();
            let maxdeg = i.generators().iter().map(|g| g.degree()).max().unwrap_or(0) + 2;
            for mono in Monomial::all_up_to_degree(3, maxdeg) {
                let covered = pairs.iter().any(|p| p.contains(&mono));
                prop_assert_eq!(covered, !i.contains(&mono), "monomial {}", mono);
            }
            for p in &pairs {
                prop_assert!(p.root.support().iter().all(|j| !p.face.contains(j)));
            }
        }

        #[test]
        fn colon_composes(i in arb_ideal(3, 3), a in arb_ideal(3, 2), b in arb_ideal(3, 2)) {
            let f = &a.generators()[0];
            let g = &b.generators()[0];
            prop_assert_eq!(i.colon(f).colon(g), i.colon(&f.mul(g)));
            prop_assert!(i.colon(f).contains_ideal(&i));
        }

        #[test]
        fn intersection_laws(i in arb_ideal(3, 3), j in arb_ideal(3, 3), k in arb_ideal(3, 3)) {
            prop_assert_eq!(i.intersect(&j), j.intersect(&i));
            prop_assert_eq!(i.intersect(&j).intersect(&k), i.intersect(&j.intersect(&k)));
            prop_assert!(i.intersect(&j).contains_ideal(&i.product(&j)));
            for mono in Monomial::all_up_to_degree(3, 5) {
                prop_assert_eq!(i.intersect(&j).contains(&mono), i.contains(&mono) && j.contains(&mono));
            }
        }

        #[test]
        fn nested_support_colon(sets in proptest::collection::vec(proptest::collection::btree_set(0usize..6, 1..5), 2..6)) {
            // ⟨∂^{I_j\K} : j ≠ i⟩ : ∂^{I_i\K} equals ⟨∂^{I_j \ I_i} : j ≠ i⟩.
            let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
            let k: Vec<usize> = (0..6).filter(|x| sets.iter().all(|s| s.contains(x))).collect();
            let minus = |a: &Vec<usize>, b: &[usize]| -> Vec<usize> { a.iter().copied().filter(|x| !b.contains(x)).collect() };
            let i0 = &sets[0];
            let lhs = MonomialIdeal::from_sets(6, &sets[1..].iter().map(|s| minus(s, &k)).collect::<Vec<_>>())
                .colon(&Monomial::from_set(6, &minus(i0, &k)));
            let rhs = MonomialIdeal::from_sets(6, &sets[1..].iter().map(|s| minus(s, i0)).collect::<Vec<_>>());
            for mono in Monomial::all_up_to_degree(6, 3) {
                prop_assert_eq!(lhs.contains(&mono), rhs.contains(&mono));
            }
        }
    }
}
