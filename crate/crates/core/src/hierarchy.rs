//! The congruences `~K` and `~D` and the ladder of classes `W_m`, `V_m`
//! obtained by alternating quotients.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monoid::{green_classes, Morphism};
use crate::stability::{is_stable_trivial, StabilityInfo, StableRelation};

/// Which congruence to quotient by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x ~K y` iff for every idempotent `e`: `ex = ey`, or both `ex` and
    /// `ey` lie strictly R-below `e`.
    K,
    /// The mirror: right multiplication and L.
    D,
}

/// A quotient of a morphism's monoid by a congruence.
#[derive(Clone, Debug)]
pub struct CongruenceQuotient {
    /// Partition of the source elements.
    pub classes: Vec<Vec<usize>>,
    /// Source element to quotient element.
    pub projection: Vec<usize>,
    /// The composed morphism `π ∘ h`.
    pub quotient: Morphism,
}

/// Key identifying the `~K` (or `~D`) class of each element.
fn keys(h: &Morphism, side: Side) -> Vec<Vec<Option<usize>>> {
    let m = h.monoid();
    let g = green_classes(m);
    let idem = m.idempotents();
    (0..m.size())
        .map(|x| {
            idem.iter()
                .map(|&e| {
                    let (y, rel) = match side {
                        Side::K => (m.mul(e, x), &g.r),
                        Side::D => (m.mul(x, e), &g.l),
                    };
                    rel.equiv(y, e).then_some(y)
                })
                .collect()
        })
        .collect()
}

/// Quotient by `~K` or `~D`, composed with `h`.
pub fn sim_quotient(h: &Morphism, side: Side) -> Result<CongruenceQuotient> {
    let m = h.monoid();
    let keys = keys(h, side);
    let mut ids: HashMap<&Vec<Option<usize>>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(m.size());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (x, k) in keys.iter().enumerate() {
        let len = ids.len();
        let c = *ids.entry(k).or_insert(len);
        if c == len {
            classes.push(Vec::new());
        }
        classes[c].push(x);
        class_of.push(c);
    }
    let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    // Comparing each element with its class representative under generator
    // multiplication is enough.
    for x in 0..m.size() {
        let y = rep[class_of[x]];
        for &g in m.generators() {
            if class_of[m.mul(x, g)] != class_of[m.mul(y, g)]
                || class_of[m.mul(g, x)] != class_of[m.mul(g, y)]
            {
                return Err(Error::Internal(format!(
                    "{side:?} relation is not a congruence at {}",
                    h.repr_text(x)
                )));
            }
        }
    }
    let images: Vec<usize> = h.letter_map().iter().map(|&x| class_of[x]).collect();
    let (quotient, elems) = Morphism::generate(
        h.alphabet().to_vec(),
        class_of[m.identity()],
        &images,
        |&x, &y| class_of[m.mul(rep[x], rep[y])],
        |&c| classes[c].iter().any(|&x| h.is_accepting(x)),
        m.size(),
    )?;
    let mut local = vec![0; classes.len()];
    for (i, &c) in elems.iter().enumerate() {
        local[c] = i;
    }
    let projection = class_of.iter().map(|&c| local[c]).collect();
    Ok(CongruenceQuotient {
        classes,
        projection,
        quotient,
    })
}

/// Least levels `m ≥ 2` with `h ∈ W_m` and `h ∈ V_m`, searched up to `max_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WvLevel {
    pub w: Option<usize>,
    pub v: Option<usize>,
}

fn ladder(h: &Morphism, max_m: usize, first: StableRelation) -> Result<Option<usize>> {
    let mut cur = h.clone();
    let mut test = first;
    for level in 2..=max_m {
        let info = StabilityInfo::new(&cur);
        if is_stable_trivial(&cur, &info, test) {
            return Ok(Some(level));
        }
        // W_{m+1} = K ⓜ V_m and V_{m+1} = D ⓜ W_m.
        let side = match test {
            StableRelation::Rs => Side::K,
            _ => Side::D,
        };
        cur = sim_quotient(&cur, side)?.quotient;
        test = match test {
            StableRelation::Rs => StableRelation::Ls,
            _ => StableRelation::Rs,
        };
    }
    Ok(None)
}

/// Levels on the `W` side (stable-R-trivial base) and the `V` side
/// (stable-L-trivial base).
pub fn wv_level(h: &Morphism, max_m: usize) -> Result<WvLevel> {
    if max_m < 2 {
        return Err(Error::semantic("levels start at 2"));
    }
    Ok(WvLevel {
        w: ladder(h, max_m, StableRelation::Rs)?,
        v: ladder(h, max_m, StableRelation::Ls)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;
    use crate::monoid::syntactic_morphism;

    fn synt(re: &str, al: &str) -> Morphism {
        let al: Vec<String> = al.chars().map(|c| c.to_string()).collect();
        syntactic_morphism(&parse_regex(re, Some(&al)).unwrap(), 1000).unwrap()
    }

    /// Definitional `~K` on a pair.
    fn sim_k(h: &Morphism, x: usize, y: usize) -> bool {
        let m = h.monoid();
        let g = green_classes(m);
        m.idempotents().into_iter().all(|e| {
            let (ex, ey) = (m.mul(e, x), m.mul(e, y));
            ex == ey || (g.r.lt(ex, e) && g.r.lt(ey, e))
        })
    }

    #[test]
    fn group_quotient_is_identity() {
        let h = synt("(aa)*", "a");
        let q = sim_quotient(&h, Side::K).unwrap();
        assert_eq!(q.quotient.monoid().size(), 2);
        assert_eq!(q.classes.len(), 2);
    }

    #[test]
    fn contains_aa_matches_definition() {
        let h = synt("(a|b)*aa(a|b)*", "ab");
        // 1, b, ab, ba and the zero
        assert_eq!(h.monoid().idempotents().len(), 5);
        let q = sim_quotient(&h, Side::K).unwrap();
        let n = h.monoid().size();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    q.projection[x] == q.projection[y],
                    sim_k(&h, x, y),
                    "{x} {y}"
                );
            }
        }
        // projection is a surjective homomorphism
        let qm = q.quotient.monoid();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    q.projection[h.monoid().mul(x, y)],
                    qm.mul(q.projection[x], q.projection[y])
                );
            }
        }
        assert!(q.quotient.monoid().size() <= n);
    }

    #[test]
    fn trivial_quotient() {
        let h = synt("a*", "a");
        let q = sim_quotient(&h, Side::D).unwrap();
        assert_eq!(q.quotient.monoid().size(), 1);
        assert_eq!(
            wv_level(&h, 2).unwrap(),
            WvLevel {
                w: Some(2),
                v: Some(2)
            }
        );
    }

    #[test]
    fn even_length_is_level_two() {
        let h = synt("((a|b)(a|b))*", "ab");
        assert_eq!(
            wv_level(&h, 2).unwrap(),
            WvLevel {
                w: Some(2),
                v: Some(2)
            }
        );
    }

    #[test]
    fn group_never_reaches_a_level() {
        let h = synt("(b*ab*a)*b*", "ab");
        assert_eq!(wv_level(&h, 8).unwrap(), WvLevel { w: None, v: None });
    }

    #[test]
    fn bc_star_reaches_a_level() {
        let h = synt("(bc)*", "bc");
        let lv = wv_level(&h, 6).unwrap();
        assert!(lv.w.is_some() && lv.v.is_some());
    }
}
