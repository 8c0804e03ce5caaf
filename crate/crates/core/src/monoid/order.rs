use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::monoid::{Morphism, OrderedMonoid};

/// The syntactic order of the accepting set: `x ≤ y` iff every context
/// `p·_·q` sending `y` into the accepting set also sends `x` there.
///
/// Computed as the complement of the least set of "bad" pairs containing
/// `{(x, y) : y accepting, x not}` and closed under taking left and right
/// preimages by letter images. Fails if two distinct elements become
/// indistinguishable, which means the morphism was not syntactic.
pub fn syntactic_order(h: &Morphism) -> Result<OrderedMonoid> {
    let mo = h.monoid();
    let m = mo.size();
    let mut letters = h.letter_map().to_vec();
    letters.sort_unstable();
    letters.dedup();
    // pre_left[g][u] = {x : g·x = u}, pre_right[g][u] = {x : x·g = u}.
    let mut pre_left = vec![vec![Vec::new(); m]; letters.len()];
    let mut pre_right = vec![vec![Vec::new(); m]; letters.len()];
    for (gi, &g) in letters.iter().enumerate() {
        for x in 0..m {
            pre_left[gi][mo.mul(g, x)].push(x as u32);
            pre_right[gi][mo.mul(x, g)].push(x as u32);
        }
    }
    let mut bad = vec![FixedBitSet::with_capacity(m); m];
    let mut work: Vec<(u32, u32)> = Vec::new();
    for x in 0..m {
        if h.is_accepting(x) {
            continue;
        }
        for y in h.accepting().ones() {
            bad[x].insert(y);
            work.push((x as u32, y as u32));
        }
    }
    while let Some((u, v)) = work.pop() {
        for pre in [&pre_left, &pre_right] {
            for table in pre.iter() {
                for &x in &table[u as usize] {
                    for &y in &table[v as usize] {
                        if !bad[x as usize].put(y as usize) {
                            work.push((x, y));
                        }
                    }
                }
            }
        }
    }
    let up: Vec<FixedBitSet> = bad
        .into_iter()
        .map(|mut row| {
            row.toggle_range(..);
            row
        })
        .collect();
    for x in 0..m {
        for y in up[x].ones() {
            if y != x && up[y].contains(x) {
                return Err(Error::NotSyntactic(h.repr_text(x), h.repr_text(y)));
            }
        }
    }
    Ok(mo.clone().with_order_unchecked(up))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;
    use crate::monoid::{syntactic_morphism, transition_monoid};

    /// Definitional check: quantify contexts over all elements.
    fn brute(h: &Morphism, x: usize, y: usize) -> bool {
        let mo = h.monoid();
        (0..mo.size()).all(|p| {
            (0..mo.size()).all(|q| {
                !h.is_accepting(mo.mul(mo.mul(p, y), q)) || h.is_accepting(mo.mul(mo.mul(p, x), q))
            })
        })
    }

    #[test]
    fn matches_definition() {
        for re in [
            "(a|b)*(aa|bb)(a|b)*",
            "(bc)*",
            "((a|b)(a|b))*(aa|bb)(a|b)*",
            "a(a|b)*b|b",
            "()",
        ] {
            let d = parse_regex(re, Some(&["a".into(), "b".into(), "c".into()])).unwrap();
            let h = syntactic_morphism(&d, 10_000).unwrap();
            let mo = h.monoid();
            for x in 0..mo.size() {
                for y in 0..mo.size() {
                    assert_eq!(mo.leq(x, y), brute(&h, x, y), "{re}: {x} {y}");
                }
            }
            assert!(mo.is_partial_order() && mo.is_compatible());
        }
    }

    #[test]
    fn zero_placement() {
        let h =
            syntactic_morphism(&parse_regex("(a|b)*(aa|bb)(a|b)*", None).unwrap(), 100).unwrap();
        let zero = h.image(&[0, 0]);
        assert!((0..h.monoid().size()).all(|x| h.monoid().leq(zero, x)));
        let h = syntactic_morphism(&parse_regex("(bc)*", None).unwrap(), 100).unwrap();
        let zero = h.image(&[0, 0]);
        assert!((0..h.monoid().size()).all(|x| h.monoid().leq(x, zero)));
    }

    #[test]
    fn trivial_monoid_order() {
        let h = syntactic_morphism(&parse_regex("a*", None).unwrap(), 100).unwrap();
        assert_eq!(h.monoid().size(), 1);
        assert!(h.monoid().leq(0, 0));
        assert!(h.monoid().order_pairs().is_empty());
    }

    #[test]
    fn non_syntactic_accepting_set_is_rejected() {
        // Transition monoid of (aa)* but accepting everything: 1 and a merge.
        let mut h = transition_monoid(&parse_regex("(aa)*", None).unwrap(), 100).unwrap();
        h.accepting.insert_range(..);
        assert!(matches!(syntactic_order(&h), Err(Error::NotSyntactic(..))));
    }
}
