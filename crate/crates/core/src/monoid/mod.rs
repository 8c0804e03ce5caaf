//! Finite ordered monoids, recognizing morphisms and the classical local
//! conditions.

mod conditions;
mod export;
pub(crate) mod generate;
pub(crate) mod green;
mod order;

use std::hash::Hash;

use fixedbitset::FixedBitSet;

use crate::automata::{format_word, Dfa, Word};
use crate::error::{Error, Result};

pub use conditions::{
    is_aperiodic, local_condition, me_submonoid, omega_power, LocalWitness, Mode, Selector,
};
pub use export::{monoid_to_json, MonoidDoc};
pub use green::{green_classes, GreenClasses, Preorder};
pub use order::syntactic_order;

/// A finite monoid given by its multiplication table, optionally with a
/// compatible partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMonoid {
    size: usize,
    identity: usize,
    table: Vec<u32>,
    /// `up[x]` holds every `y` with `x ≤ y`.
    up: Option<Vec<FixedBitSet>>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl OrderedMonoid {
    /// Builds a monoid from a row-major table. `generators` must generate the
    /// monoid; pass every element when no smaller set is known.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Vec<String>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let size = table.len();
        if size == 0 || identity >= size || labels.len() != size {
            return Err(Error::semantic("malformed monoid table"));
        }
        let mut flat = Vec::with_capacity(size * size);
        for row in &table {
            if row.len() != size || row.iter().any(|&z| z >= size) {
                return Err(Error::semantic("malformed monoid table"));
            }
            flat.extend(row.iter().map(|&z| z as u32));
        }
        let m = OrderedMonoid {
            size,
            identity,
            table: flat,
            up: None,
            labels,
            generators,
        };
        if (0..size).any(|x| m.mul(identity, x) != x || m.mul(x, identity) != x) {
            return Err(Error::semantic("identity is not neutral"));
        }
        if m.generated(&m.generators) != m.all() {
            return Err(Error::semantic("generators do not generate the monoid"));
        }
        if !m.is_associative() {
            return Err(Error::semantic("multiplication is not associative"));
        }
        Ok(m)
    }

    pub(crate) fn from_flat(
        size: usize,
        identity: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(table.len(), size * size);
        OrderedMonoid {
            size,
            identity,
            table,
            up: None,
            labels,
            generators,
        }
    }

    /// Attaches an order given as the list of pairs `(x, y)` with `x ≤ y`;
    /// the reflexive-transitive closure is taken. Fails unless the result is a
    /// partial order compatible with multiplication.
    pub fn with_order_pairs(self, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(self.size); self.size];
        for (x, row) in up.iter_mut().enumerate() {
            row.insert(x);
        }
        for &(x, y) in pairs {
            if x >= self.size || y >= self.size {
                return Err(Error::semantic("order pair out of range"));
            }
            up[x].insert(y);
        }
        // Warshall closure on rows.
        for k in 0..self.size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        self.with_order(up)
    }

    pub(crate) fn with_order(mut self, up: Vec<FixedBitSet>) -> Result<Self> {
        self.up = Some(up);
        if !self.is_partial_order() {
            return Err(Error::semantic("order is not antisymmetric"));
        }
        if !self.is_compatible() {
            return Err(Error::semantic(
                "order is not compatible with multiplication",
            ));
        }
        Ok(self)
    }

    pub(crate) fn with_order_unchecked(mut self, up: Vec<FixedBitSet>) -> Self {
        self.up = Some(up);
        self
    }

    /// Discards the order.
    pub fn unordered(mut self) -> Self {
        self.up = None;
        self
    }

    /// The same monoid with the reversed order.
    pub fn dual(&self) -> Self {
        let mut d = self.clone();
        if let Some(up) = &self.up {
            let mut down = vec![FixedBitSet::with_capacity(self.size); self.size];
            for (x, row) in up.iter().enumerate() {
                for y in row.ones() {
                    down[y].insert(x);
                }
            }
            d.up = Some(down);
        }
        d
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn product(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn has_order(&self) -> bool {
        self.up.is_some()
    }

    /// `x ≤ y`. Without an attached order this is equality.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.up {
            Some(up) => up[x].contains(y),
            None => x == y,
        }
    }

    /// All pairs `(x, y)` with `x ≤ y` and `x ≠ y`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if let Some(up) = &self.up {
            for (x, row) in up.iter().enumerate() {
                out.extend(row.ones().filter(|&y| y != x).map(|y| (x, y)));
            }
        }
        out
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_idempotent(x)).collect()
    }

    pub(crate) fn all(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size);
        s.insert_range(..);
        s
    }

    /// The submonoid generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert(self.identity);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// Light's test: `(x·g)·y = x·(g·y)` for every generator `g`. Exact as
    /// long as the generators generate the monoid.
    pub fn is_associative(&self) -> bool {
        (0..self.size).all(|x| {
            self.generators.iter().all(|&g| {
                let xg = self.mul(x, g);
                (0..self.size).all(|y| self.mul(xg, y) == self.mul(x, self.mul(g, y)))
            })
        })
    }

    pub fn is_partial_order(&self) -> bool {
        let Some(up) = &self.up else { return true };
        for x in 0..self.size {
            if !up[x].contains(x) {
                return false;
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return false;
                }
                if !up[y].is_subset(&up[x]) {
                    return false;
                }
            }
        }
        true
    }

    /// `x ≤ y ⇒ pxq ≤ pyq`; checking `px ≤ py` and `xq ≤ yq` for generators
    /// suffices.
    pub fn is_compatible(&self) -> bool {
        let Some(up) = &self.up else { return true };
        for x in 0..self.size {
            for y in up[x].ones() {
                for &g in &self.generators {
                    if !self.leq(self.mul(g, x), self.mul(g, y))
                        || !self.leq(self.mul(x, g), self.mul(y, g))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The submonoid on `subset` as a monoid of its own, with the given
    /// generators. Returns the monoid and the embedding into `self`.
    pub fn restrict(
        &self,
        subset: &FixedBitSet,
        generators: &[usize],
    ) -> (OrderedMonoid, Vec<usize>) {
        let embed: Vec<usize> = subset.ones().collect();
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let k = embed.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &embed {
            for &y in &embed {
                let z = local[self.mul(x, y)];
                assert!(z != usize::MAX, "subset is not closed");
                table.push(z as u32);
            }
        }
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let gens = generators.iter().map(|&g| local[g]).collect();
        let mut sub = OrderedMonoid::from_flat(k, local[self.identity], table, labels, gens);
        if let Some(up) = &self.up {
            let rows = embed
                .iter()
                .map(|&x| {
                    let mut r = FixedBitSet::with_capacity(k);
                    for y in up[x].ones() {
                        if local[y] != usize::MAX {
                            r.insert(local[y]);
                        }
                    }
                    r
                })
                .collect();
            sub.up = Some(rows);
        }
        (sub, embed)
    }
}

/// A morphism `h : A* → M` given by letter images, together with an accepting
/// subset and shortlex representative words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    monoid: OrderedMonoid,
    alphabet: Vec<String>,
    letter_map: Vec<usize>,
    accepting: FixedBitSet,
    repr: Vec<Word>,
}

impl Morphism {
    /// Generates the image monoid of `letter ↦ images[letter]` inside an
    /// ambient monoid given by `identity` and `mul`.
    pub fn generate<T, F, P>(
        alphabet: Vec<String>,
        identity: T,
        images: &[T],
        mul: F,
        accept: P,
        cap: usize,
    ) -> Result<(Morphism, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        P: Fn(&T) -> bool,
    {
        assert_eq!(alphabet.len(), images.len());
        let g = generate::generate(identity, images, mul, cap)?;
        let size = g.elems.len();
        let table = g.table();
        let repr = g.spellings();
        let labels = repr.iter().map(|w| format_word(&alphabet, w)).collect();
        let mut gens: Vec<usize> = g.gen_index.clone();
        gens.sort_unstable();
        gens.dedup();
        let monoid = OrderedMonoid::from_flat(size, 0, table, labels, gens);
        let mut accepting = FixedBitSet::with_capacity(size);
        for (i, x) in g.elems.iter().enumerate() {
            accepting.set(i, accept(x));
        }
        let letter_map = g.gen_index.clone();
        Ok((
            Morphism {
                monoid,
                alphabet,
                letter_map,
                accepting,
                repr,
            },
            g.elems,
        ))
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_image(&self, a: usize) -> usize {
        self.letter_map[a]
    }

    pub fn letter_map(&self) -> &[usize] {
        &self.letter_map
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting.contains(x)
    }

    pub fn accepting(&self) -> &FixedBitSet {
        &self.accepting
    }

    pub fn repr(&self, x: usize) -> &Word {
        &self.repr[x]
    }

    /// Representative word of `x`, rendered.
    pub fn repr_text(&self, x: usize) -> String {
        format_word(&self.alphabet, &self.repr[x])
    }

    pub fn image(&self, word: &[usize]) -> usize {
        word.iter().fold(self.monoid.identity, |acc, &a| {
            self.monoid.mul(acc, self.letter_map[a])
        })
    }

    /// Replaces the monoid by one with the same table and a new order.
    pub(crate) fn with_monoid(mut self, monoid: OrderedMonoid) -> Self {
        debug_assert_eq!(monoid.size, self.monoid.size);
        self.monoid = monoid;
        self
    }

    /// The automaton for `h⁻¹(↓h(L))`: states are elements, letters act on
    /// the right, and an element is final when it lies below an accepting one.
    pub fn to_dfa(&self) -> Dfa {
        let m = &self.monoid;
        let finals = (0..m.size)
            .map(|x| self.accepting.ones().any(|y| m.leq(x, y)))
            .collect();
        let delta = (0..m.size)
            .map(|x| self.letter_map.iter().map(|&g| m.mul(x, g)).collect())
            .collect();
        Dfa::from_table(self.alphabet.clone(), m.identity, finals, delta)
    }

    /// The same morphism onto the monoid with reversed order and the
    /// complementary accepting set.
    pub fn complement(&self) -> Morphism {
        let mut c = self.clone();
        c.monoid = self.monoid.dual();
        c.accepting.toggle_range(..);
        c
    }
}

/// Transition monoid of the minimal automaton of `L(d)`, which is the
/// syntactic monoid of the language. The order is not attached.
pub fn transition_monoid(d: &Dfa, cap: usize) -> Result<Morphism> {
    let d = d.minimize();
    let n = d.num_states();
    let identity: Vec<u32> = (0..n as u32).collect();
    let images: Vec<Vec<u32>> = (0..d.alphabet().len())
        .map(|a| (0..n).map(|q| d.step(q, a) as u32).collect())
        .collect();
    let init = d.initial();
    let (m, _) = Morphism::generate(
        d.alphabet().to_vec(),
        identity,
        &images,
        |x: &Vec<u32>, a: &Vec<u32>| x.iter().map(|&q| a[q as usize]).collect(),
        |x: &Vec<u32>| d.is_final(x[init] as usize),
        cap,
    )?;
    Ok(m)
}

/// The syntactic morphism of `L(d)` with the syntactic order attached.
pub fn syntactic_morphism(d: &Dfa, cap: usize) -> Result<Morphism> {
    let m = transition_monoid(d, cap)?;
    let ordered = syntactic_order(&m)?;
    Ok(m.with_monoid(ordered))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, words_up_to};

    pub(crate) fn synt(re: &str) -> Morphism {
        syntactic_morphism(&parse_regex(re, None).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn aa_star_is_cyclic_of_order_two() {
        let m = synt("(aa)*");
        assert_eq!(m.monoid().size(), 2);
        let g = m.letter_image(0);
        assert_eq!(m.monoid().mul(g, g), m.monoid().identity());
        assert!(m.is_accepting(m.monoid().identity()));
        assert_eq!(m.accepting().count_ones(..), 1);
    }

    #[test]
    fn universal_language_has_trivial_monoid() {
        let m = synt("(a|b)*");
        assert_eq!(m.monoid().size(), 1);
        assert!(m.is_accepting(0));
    }

    #[test]
    fn contains_aa_monoid_matches_syntactic_classes() {
        let d = parse_regex("(a|b)*aa(a|b)*", None).unwrap();
        let m = syntactic_morphism(&d, 10_000).unwrap();
        assert_eq!(m.monoid().size(), 6);
        // Brute-force syntactic classes over words up to length 4 with
        // contexts up to length 3.
        let words = words_up_to(2, 4);
        let ctx = words_up_to(2, 3);
        let mut sigs: Vec<Vec<bool>> = words
            .iter()
            .map(|u| {
                let mut s = Vec::new();
                for p in &ctx {
                    for q in &ctx {
                        s.push(d.accepts(&[p.as_slice(), u, q].concat()));
                    }
                }
                s
            })
            .collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 6);
        let img = |w: &str| m.image(&d.parse_word(w).unwrap());
        assert_eq!(img("aba"), img("a"));
        assert_eq!(img("bab"), img("b"));
        let zero = img("aa");
        for x in 0..6 {
            assert_eq!(m.monoid().mul(zero, x), zero);
            assert_eq!(m.monoid().mul(x, zero), zero);
        }
        let labels: Vec<&str> = (0..6).map(|x| m.monoid().label(x)).collect();
        assert_eq!(labels, ["ε", "a", "b", "aa", "ab", "ba"]);
    }

    #[test]
    fn recognition_rebuilds_language() {
        for re in ["(aa)*", "(a|b)*aa(a|b)*", "(bc)*", "(ab|ba)*a", "()"] {
            let d = parse_regex(re, Some(&["a".into(), "b".into(), "c".into()])).unwrap();
            let m = syntactic_morphism(&d, 10_000).unwrap();
            assert!(m.to_dfa().equivalent(&d).unwrap(), "{re}");
        }
    }

    #[test]
    fn restriction_and_dual() {
        let m = synt("(a|b)*aa(a|b)*");
        let mo = m.monoid();
        let zero = m.image(&[0, 0]);
        let mut sub = FixedBitSet::with_capacity(mo.size());
        sub.insert(mo.identity());
        sub.insert(zero);
        let (r, embed) = mo.restrict(&sub, &[zero]);
        assert_eq!(r.size(), 2);
        assert_eq!(embed, vec![0, zero]);
        assert!(r.is_associative());
        let d = mo.dual();
        for x in 0..mo.size() {
            for y in 0..mo.size() {
                assert_eq!(mo.leq(x, y), d.leq(y, x));
            }
        }
    }

    #[test]
    fn table_validation() {
        let z2 = vec![vec![0, 1], vec![1, 0]];
        let m = OrderedMonoid::from_table(z2, 0, vec!["1".into(), "g".into()], vec![1]).unwrap();
        assert!(m.clone().with_order_pairs(&[(0, 1)]).is_err());
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(OrderedMonoid::from_table(bad, 1, vec!["1".into(), "g".into()], vec![0]).is_err());
        assert_eq!(m.generated(&[]).count_ones(..), 1);
    }
}
