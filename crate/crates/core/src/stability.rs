//! Stability index, residue image sets, the stable monoid and `M_e^(s)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::monoid::{green::relative_green, Morphism, OrderedMonoid, Preorder};

/// Stability data of a morphism `h : A* → M` for a fixed stability index `s`.
///
/// Residues are 0-based here: `R_r` is the image of the words whose length is
/// `r` modulo `s`.
#[derive(Clone, Debug)]
pub struct StabilityInfo {
    s: usize,
    residue_sets: Vec<FixedBitSet>,
    stable: FixedBitSet,
    /// Image of `A^s`; generates the stable monoid.
    x_s: FixedBitSet,
    letters: Vec<usize>,
    size: usize,
    preperiod: usize,
    period: usize,
    /// `E[a·s + r] = R_r · h(a) · R_{-(r+1)}`, filled on demand.
    contexts: Vec<OnceLock<FixedBitSet>>,
}

fn set_product(m: &OrderedMonoid, xs: &FixedBitSet, ys: &[usize]) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(m.size());
    for x in xs.ones() {
        for &y in ys {
            out.insert(m.mul(x, y));
        }
    }
    out
}

fn singleton(n: usize, x: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(x);
    s
}

/// Preperiod and period of the sequence `X_k = h(A^k)`, `k ≥ 1`.
fn power_sequence(m: &OrderedMonoid, letters: &[usize]) -> (usize, usize) {
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut x = set_product(m, &singleton(m.size(), m.identity()), letters);
    let mut k = 1;
    loop {
        if let Some(&j) = seen.get(&x) {
            return (j, k - j);
        }
        let next = set_product(m, &x, letters);
        seen.insert(x, k);
        x = next;
        k += 1;
    }
}

impl StabilityInfo {
    /// Smallest stability index: the least multiple of the period of
    /// `(X_k)` that is at least its preperiod.
    pub fn new(h: &Morphism) -> Self {
        let letters = distinct_letters(h);
        let (t, p) = power_sequence(h.monoid(), &letters);
        let s = t.div_ceil(p).max(1) * p;
        Self::build(h, s, t, p)
    }

    /// Stability data for a given index, which must satisfy `X_s = X_{2s}`.
    pub fn with_index(h: &Morphism, s: usize) -> Result<Self> {
        let letters = distinct_letters(h);
        let (t, p) = power_sequence(h.monoid(), &letters);
        if s == 0 || s < t || !s.is_multiple_of(p) {
            return Err(Error::NotStabilityIndex(s));
        }
        Ok(Self::build(h, s, t, p))
    }

    fn build(h: &Morphism, s: usize, preperiod: usize, period: usize) -> Self {
        let m = h.monoid();
        let n = m.size();
        let letters = distinct_letters(h);
        let mut xs = vec![singleton(n, m.identity())];
        for k in 1..2 * s {
            let next = set_product(m, &xs[k - 1], &letters);
            xs.push(next);
        }
        let residue_sets: Vec<FixedBitSet> = (0..s)
            .map(|r| {
                let mut u = xs[r].clone();
                u.union_with(&xs[r + s]);
                u
            })
            .collect();
        let stable = residue_sets[0].clone();
        let x_s = xs[s].clone();
        let contexts = (0..h.alphabet().len() * s)
            .map(|_| OnceLock::new())
            .collect();
        StabilityInfo {
            s,
            residue_sets,
            stable,
            x_s,
            letters: h.letter_map().to_vec(),
            size: n,
            preperiod,
            period,
            contexts,
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `R_r` for `0 ≤ r < s`.
    pub fn residue_set(&self, r: usize) -> &FixedBitSet {
        &self.residue_sets[r]
    }

    pub fn residue_sets(&self) -> &[FixedBitSet] {
        &self.residue_sets
    }

    /// The stable monoid `S = h((A^s)*)` as a subset of `M`.
    pub fn stable(&self) -> &FixedBitSet {
        &self.stable
    }

    pub fn stable_size(&self) -> usize {
        self.stable.count_ones(..)
    }

    /// `h(A^s)`.
    pub fn image_of_power(&self) -> &FixedBitSet {
        &self.x_s
    }

    pub(crate) fn monoid_size(&self) -> usize {
        self.size
    }

    /// Preperiod and period of `k ↦ h(A^k)`; the stability indices are the
    /// multiples of the period not below the preperiod.
    pub fn periodicity(&self) -> (usize, usize) {
        (self.preperiod, self.period)
    }

    /// The stable monoid as a monoid of its own, with the embedding into `M`.
    pub fn stable_monoid(&self, m: &OrderedMonoid) -> (OrderedMonoid, Vec<usize>) {
        let gens: Vec<usize> = self.x_s.ones().collect();
        m.restrict(&self.stable, &gens)
    }

    /// Elements `x·h(a)·y` with `x ∈ R_r` and `y ∈ R_{-(r+1) mod s}`.
    fn contexts(&self, m: &OrderedMonoid, a: usize, r: usize) -> &FixedBitSet {
        self.contexts[a * self.s + r].get_or_init(|| {
            let q = (2 * self.s - r - 1) % self.s;
            let ha = self.letters[a];
            let right: Vec<usize> = self.residue_sets[q].ones().collect();
            let mut left = FixedBitSet::with_capacity(m.size());
            for x in self.residue_sets[r].ones() {
                left.insert(m.mul(x, ha));
            }
            set_product(m, &left, &right)
        })
    }

    /// Whether letter `a` can occur at a position with `r` letters before it
    /// (mod s) in a word mapping to `e`.
    pub fn admissible(&self, m: &OrderedMonoid, a: usize, r: usize, e: usize) -> bool {
        self.contexts(m, a, r).contains(e)
    }

    /// `M_e^(s)` computed inside `m`, which must be the monoid this data was
    /// built from.
    pub(crate) fn me_s_in(&self, m: &OrderedMonoid, e: usize) -> Result<FixedBitSet> {
        if !m.is_idempotent(e) {
            return Err(Error::NotIdempotent(m.label(e).to_string()));
        }
        let n = m.size();
        let s = self.s;
        let steps: Vec<Vec<usize>> = (0..s)
            .map(|r| {
                (0..self.letters.len())
                    .filter(|&a| self.admissible(m, a, r, e))
                    .collect()
            })
            .collect();
        let mut seen = vec![FixedBitSet::with_capacity(n); s];
        seen[0].insert(m.identity());
        let mut stack = vec![(0usize, m.identity())];
        while let Some((r, x)) = stack.pop() {
            let r2 = (r + 1) % s;
            for &a in &steps[r] {
                let y = m.mul(x, self.letters[a]);
                if !seen[r2].put(y) {
                    stack.push((r2, y));
                }
            }
        }
        Ok(seen.swap_remove(0))
    }
}

fn distinct_letters(h: &Morphism) -> Vec<usize> {
    let mut v = h.letter_map().to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Smallest stability index of `h` with its residue data.
pub fn stability_index(h: &Morphism) -> StabilityInfo {
    StabilityInfo::new(h)
}

/// `M_e^(s)`: images of words of length divisible by `s` whose letters all
/// admit contexts of matching length residues mapping to `e`.
pub fn me_s(h: &Morphism, info: &StabilityInfo, e: usize) -> Result<FixedBitSet> {
    info.me_s_in(h.monoid(), e)
}

/// Stable Green relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableRelation {
    /// `xS ⊆ yS`
    Rs,
    /// `Sx ⊆ Sy`
    Ls,
    /// `SxS ⊆ SyS`
    Js,
}

pub fn stable_green_preorder(h: &Morphism, info: &StabilityInfo, rel: StableRelation) -> Preorder {
    let g = relative_green(h.monoid(), info.stable());
    match rel {
        StableRelation::Rs => g.r,
        StableRelation::Ls => g.l,
        StableRelation::Js => g.j,
    }
}

/// Whether every class of `R^s` (or `L^s`) is a singleton.
pub fn is_stable_trivial(h: &Morphism, info: &StabilityInfo, rel: StableRelation) -> bool {
    stable_green_preorder(h, info, rel).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, words_up_to};
    use crate::monoid::{green_classes, syntactic_morphism};

    fn synt(re: &str, al: &str) -> Morphism {
        let al: Vec<String> = al.chars().map(|c| c.to_string()).collect();
        syntactic_morphism(&parse_regex(re, Some(&al)).unwrap(), 1000).unwrap()
    }

    fn elems(h: &Morphism, s: &FixedBitSet) -> Vec<String> {
        let mut v: Vec<String> = s.ones().map(|x| h.repr_text(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn even_length() {
        let h = synt("((a|b)(a|b))*", "ab");
        let info = stability_index(&h);
        assert_eq!(info.s(), 2);
        assert_eq!(info.stable_size(), 1);
        let rs = stable_green_preorder(&h, &info, StableRelation::Rs);
        assert!(rs.is_trivial());
        assert!(is_stable_trivial(&h, &info, StableRelation::Ls));
    }

    #[test]
    fn even_number_of_a() {
        let h = synt("(b*ab*a)*b*", "ab");
        let info = stability_index(&h);
        assert_eq!(info.s(), 1);
        assert_eq!(info.stable_size(), 2);
        assert!(!is_stable_trivial(&h, &info, StableRelation::Rs));
        let e = h.monoid().identity();
        let mes = me_s(&h, &info, e).unwrap();
        assert_eq!(mes.count_ones(..), 2);
    }

    #[test]
    fn universal_language() {
        let h = synt("(a|b)*", "ab");
        let info = stability_index(&h);
        assert_eq!((info.s(), info.stable_size()), (1, 1));
    }

    #[test]
    fn bc_star() {
        let h = synt("(bc)*", "bc");
        let info = stability_index(&h);
        assert_eq!(info.s(), 2);
        assert_eq!(elems(&h, info.stable()), ["bb", "bc", "cb", "ε"]);
        assert_eq!(elems(&h, info.residue_set(1)), ["b", "bb", "c"]);
        let m = h.monoid();
        let bc = h.image(&[0, 1]);
        assert!(info.admissible(m, 0, 0, bc) && !info.admissible(m, 0, 1, bc));
        assert!(info.admissible(m, 1, 1, bc) && !info.admissible(m, 1, 0, bc));
        let mes = me_s(&h, &info, bc).unwrap();
        assert_eq!(elems(&h, &mes), ["bc", "ε"]);
        for x in mes.ones() {
            assert_eq!(m.mul(m.mul(bc, x), bc), bc);
        }
        let rs = stable_green_preorder(&h, &info, StableRelation::Rs);
        let cb = h.image(&[1, 0]);
        assert_eq!(rs.classes[rs.class_of[bc]], vec![bc]);
        assert_eq!(rs.classes[rs.class_of[cb]], vec![cb]);
        for x in 0..m.size() {
            assert_eq!(rs.leq(x, m.identity()), info.stable().contains(x));
        }
    }

    #[test]
    fn full_stable_monoid_gives_green() {
        let h = synt("(a|b)*aa(a|b)*", "ab");
        let info = stability_index(&h);
        assert_eq!(info.stable_size(), h.monoid().size());
        let g = green_classes(h.monoid());
        assert_eq!(stable_green_preorder(&h, &info, StableRelation::Rs), g.r);
        assert_eq!(stable_green_preorder(&h, &info, StableRelation::Ls), g.l);
        assert_eq!(stable_green_preorder(&h, &info, StableRelation::Js), g.j);
    }

    #[test]
    fn residue_sets_by_enumeration() {
        for (re, al) in [
            ("(bc)*", "bc"),
            ("((a|b)(a|b)(a|b))*a", "ab"),
            ("(ab|b)*", "ab"),
        ] {
            let h = synt(re, al);
            let info = stability_index(&h);
            let s = info.s();
            let mut brute = vec![FixedBitSet::with_capacity(h.monoid().size()); s];
            for w in words_up_to(al.len(), 3 * s + 2) {
                brute[w.len() % s].insert(h.image(&w));
            }
            assert_eq!(info.residue_sets(), &brute[..], "{re}");
        }
    }

    #[test]
    fn index_validation() {
        let h = synt("(bc)*", "bc");
        assert!(StabilityInfo::with_index(&h, 4).is_ok());
        assert_eq!(
            StabilityInfo::with_index(&h, 3).err(),
            Some(Error::NotStabilityIndex(3))
        );
        let info4 = StabilityInfo::with_index(&h, 4).unwrap();
        let info2 = stability_index(&h);
        assert_eq!(info4.stable(), info2.stable());
        let bc = h.image(&[0, 1]);
        assert_eq!(me_s(&h, &info4, bc).unwrap(), me_s(&h, &info2, bc).unwrap());
    }

    #[test]
    fn no_admissible_letters_gives_identity() {
        // No letter is a unit, so none has a context mapping to the identity.
        let h = synt("(a|b)*aa(a|b)*", "ab");
        let info = stability_index(&h);
        let mes = me_s(&h, &info, h.monoid().identity()).unwrap();
        assert_eq!(mes.ones().collect::<Vec<_>>(), vec![h.monoid().identity()]);
    }
}
