use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::monoid::OrderedMonoid;

/// A preorder given by principal ideals: `ideal[y]` is the set of every `x`
/// with `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    pub ideals: Vec<FixedBitSet>,
    /// Equivalence classes in order of their least element.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Preorder {
    pub(crate) fn from_ideals(ideals: Vec<FixedBitSet>) -> Self {
        let mut ids: HashMap<&FixedBitSet, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(ideals.len());
        for (x, ideal) in ideals.iter().enumerate() {
            let len = classes.len();
            let c = *ids.entry(ideal).or_insert(len);
            if c == len {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        Preorder {
            ideals,
            classes,
            class_of,
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.ideals[y].contains(x)
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// `x < y`: below and not equivalent.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.equiv(x, y)
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Number of classes with more than one element.
    pub fn nontrivial_classes(&self) -> usize {
        self.classes.iter().filter(|c| c.len() > 1).count()
    }
}

/// Green's preorders and classes.
#[derive(Clone, Debug)]
pub struct GreenClasses {
    pub r: Preorder,
    pub l: Preorder,
    pub j: Preorder,
    /// `H = R ∩ L`; its ideals are the intersections of the R- and L-ideals.
    pub h: Preorder,
}

/// Green's relations of `m` relative to a submonoid `sub` (all of `m` for the
/// ordinary relations): `x ≤_R y` iff `x ∈ y·sub`, `x ≤_L y` iff
/// `x ∈ sub·y`, `x ≤_J y` iff `x ∈ sub·y·sub`.
pub(crate) fn relative_green(m: &OrderedMonoid, sub: &FixedBitSet) -> GreenClasses {
    let n = m.size();
    let elems: Vec<usize> = sub.ones().collect();
    let mut r = vec![FixedBitSet::with_capacity(n); n];
    let mut l = vec![FixedBitSet::with_capacity(n); n];
    for y in 0..n {
        for &z in &elems {
            r[y].insert(m.mul(y, z));
            l[y].insert(m.mul(z, y));
        }
    }
    let mut j = vec![FixedBitSet::with_capacity(n); n];
    for y in 0..n {
        for z in r[y].ones() {
            j[y].union_with(&l[z]);
        }
    }
    let h: Vec<FixedBitSet> = (0..n)
        .map(|y| {
            let mut s = r[y].clone();
            s.intersect_with(&l[y]);
            s
        })
        .collect();
    let r = Preorder::from_ideals(r);
    let l = Preorder::from_ideals(l);
    GreenClasses {
        r,
        l,
        j: Preorder::from_ideals(j),
        h: Preorder::from_ideals(h),
    }
}

/// Green's relations of the monoid.
pub fn green_classes(m: &OrderedMonoid) -> GreenClasses {
    relative_green(m, &m.all())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;
    use crate::monoid::syntactic_morphism;

    #[test]
    fn a_and_ab_are_r_equivalent() {
        let h =
            syntactic_morphism(&parse_regex("(a|b)*(aa|bb)(a|b)*", None).unwrap(), 100).unwrap();
        let g = green_classes(h.monoid());
        let a = h.image(&[0]);
        let ab = h.image(&[0, 1]);
        assert!(g.r.equiv(a, ab));
        let zero = h.image(&[0, 0]);
        let mut expected = FixedBitSet::with_capacity(h.monoid().size());
        for x in [a, ab, zero] {
            expected.insert(x);
        }
        assert_eq!(g.r.ideals[a], expected);
    }

    #[test]
    fn group_is_one_class() {
        let h = syntactic_morphism(&parse_regex("(aaa)*", None).unwrap(), 100).unwrap();
        let g = green_classes(h.monoid());
        for p in [&g.r, &g.l, &g.j, &g.h] {
            assert_eq!(p.classes.len(), 1);
        }
    }

    #[test]
    fn preorder_laws() {
        for re in ["(a|b)*aa(a|b)*", "(bc)*", "(ab)*a|b"] {
            let h = syntactic_morphism(&parse_regex(re, None).unwrap(), 100).unwrap();
            let m = h.monoid();
            let g = green_classes(m);
            let n = m.size();
            for p in [&g.r, &g.l, &g.j] {
                for x in 0..n {
                    assert!(p.leq(x, x));
                    for y in 0..n {
                        for z in 0..n {
                            if p.leq(x, y) && p.leq(y, z) {
                                assert!(p.leq(x, z));
                            }
                        }
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(g.h.equiv(x, y), g.r.equiv(x, y) && g.l.equiv(x, y));
                    if g.r.leq(x, y) || g.l.leq(x, y) {
                        assert!(g.j.leq(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_monoid_classes() {
        let h = syntactic_morphism(&parse_regex("a*", None).unwrap(), 100).unwrap();
        let g = green_classes(h.monoid());
        assert_eq!(g.j.classes, vec![vec![0]]);
    }
}
