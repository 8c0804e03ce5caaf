use std::collections::{BTreeSet, HashSet};

use fragcheck::automata::{decorate, decorated_alphabet, is_well_formed, tau, words_up_to};
use fragcheck::crosscheck::check_instance;
use fragcheck::monoid::syntactic_morphism;
use fragcheck::{
    compile_formula, eval_expr, eval_formula, expr_to_formula, transition_monoid, validate, Dfa,
    Formula, LangExpr,
};
use proptest::prelude::*;

fn letters(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect()
}

fn arb_dfa(max_states: usize, max_letters: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states, 1..=max_letters).prop_flat_map(|(q, k)| {
        (
            prop::collection::vec(prop::collection::vec(0..q, k), q),
            prop::collection::vec(any::<bool>(), q),
        )
            .prop_map(move |(delta, finals)| {
                let states = (0..q).map(|i| format!("q{i}")).collect();
                Dfa::new(letters(k), states, 0, finals, delta).unwrap()
            })
    })
}

/// Distinct state transformations of all words, by breadth-first closure.
fn transformation_count(d: &Dfa) -> usize {
    let q = d.num_states();
    let id: Vec<usize> = (0..q).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for a in 0..d.alphabet().len() {
                let g: Vec<usize> = f.iter().map(|&p| d.step(p, a)).collect();
                if seen.insert(g.clone()) {
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    seen.len()
}

const VARS: [&str; 2] = ["x", "y"];

fn arb_open_formula() -> impl Strategy<Value = Formula> {
    let v = || prop::sample::select(&VARS[..]);
    let leaf = prop_oneof![
        (v(), prop::sample::select(&["a", "b"][..])).prop_map(|(x, a)| Formula::lab(x, a)),
        (v(), v()).prop_map(|(x, y)| Formula::lt(x, y)),
        (v(), v()).prop_map(|(x, y)| Formula::eq(x, y)),
        (v(), 1..=3usize)
            .prop_flat_map(|(x, n)| (1..=n).prop_map(move |i| Formula::modulo(x, n, i))),
        (1..=2usize).prop_flat_map(|n| (1..=n).prop_map(move |i| Formula::len(n, i))),
    ];
    leaf.prop_recursive(3, 16, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (v(), inner.clone()).prop_map(|(x, f)| Formula::exists(x, f)),
            (v(), inner).prop_map(|(x, f)| Formula::forall(x, f)),
        ]
    })
}

/// Closes a formula over `x` and `y` with the given outer quantifiers.
fn arb_sentence() -> impl Strategy<Value = Formula> {
    (arb_open_formula(), any::<bool>(), any::<bool>()).prop_map(|(f, ex, ey)| {
        let q = |e: bool, v: &str, f: Formula| {
            if e {
                Formula::exists(v, f)
            } else {
                Formula::forall(v, f)
            }
        };
        q(ex, "x", q(ey, "y", f))
    })
}

fn arb_expr() -> impl Strategy<Value = LangExpr> {
    let set = prop::sample::select(vec![vec!["a"], vec!["b"], vec!["a", "b"]]);
    let leaf = prop::collection::vec(set, 1..=2).prop_map(|sets| {
        let sets: Vec<&[&str]> = sets.iter().map(|s| s.as_slice()).collect();
        LangExpr::base(&sets)
    });
    leaf.prop_recursive(2, 6, 2, |inner| {
        let letter = prop::sample::select(&["a", "b"][..]);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| LangExpr::union(a, b)),
            (1..=2usize, inner.clone(), letter.clone(), inner.clone())
                .prop_map(|(n, l, a, r)| LangExpr::dprod(n, l, a, r)),
            (1..=2usize, inner.clone(), letter, inner)
                .prop_map(|(n, l, a, r)| LangExpr::cprod(n, l, a, r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_is_idempotent_and_preserves_language(d in arb_dfa(5, 3)) {
        let m = d.minimize();
        prop_assert!(m.equivalent(&d).unwrap());
        prop_assert_eq!(m.minimize().num_states(), m.num_states());
        prop_assert!(m.num_states() <= d.num_states() + 1);
    }

    #[test]
    fn decoration_tracks_membership(d in arb_dfa(4, 2), n in 1..=3usize) {
        let dec = decorate(&d, n).unwrap();
        for w in words_up_to(d.alphabet().len(), 6) {
            prop_assert_eq!(d.accepts(&w), dec.accepts(&tau(&w, 0, n)));
        }
        for w in words_up_to(dec.alphabet().len(), 4) {
            if dec.accepts(&w) {
                prop_assert!(is_well_formed(&w, n));
                if let Some(&first) = w.first() {
                    prop_assert_eq!(first % n, 0, "first residue is 1");
                }
            }
        }
    }

    #[test]
    fn decorated_alphabet_matches_enumeration(d in arb_dfa(3, 2), n in 1..=2usize) {
        let d = d.minimize();
        let bound = d.num_states() * n + n;
        let mut seen = BTreeSet::new();
        for w in words_up_to(d.alphabet().len(), bound) {
            if d.accepts(&w) {
                for (k, &a) in w.iter().enumerate() {
                    seen.insert(format!("{}@{}", d.alphabet()[a], k % n + 1));
                }
            }
        }
        let got: BTreeSet<String> = decorated_alphabet(&d, n).iter().map(|l| l.to_string()).collect();
        prop_assert_eq!(got, seen);
    }

    #[test]
    fn transition_monoid_counts_transformations(d in arb_dfa(4, 3)) {
        let d = d.minimize();
        let m = transition_monoid(&d, 10_000).unwrap();
        prop_assert_eq!(m.monoid().size(), transformation_count(&d));
        prop_assert!(m.monoid().is_associative());
    }

    #[test]
    fn syntactic_order_respects_short_contexts(d in arb_dfa(4, 2)) {
        let h = syntactic_morphism(&d, 10_000).unwrap();
        let m = h.monoid();
        let contexts = words_up_to(d.alphabet().len(), 3);
        for x in 0..m.size() {
            for y in 0..m.size() {
                if !m.leq(x, y) {
                    continue;
                }
                let (u, v) = (h.repr(x), h.repr(y));
                for p in &contexts {
                    for q in &contexts {
                        let wrap = |mid: &[usize]| [p.as_slice(), mid, q.as_slice()].concat();
                        prop_assert!(!d.accepts(&wrap(v)) || d.accepts(&wrap(u)));
                    }
                }
            }
        }
        prop_assert!(h.to_dfa().equivalent(&d).unwrap());
    }

    #[test]
    fn random_automata_satisfy_every_invariant(d in arb_dfa(4, 3)) {
        let r = check_instance(0, &d.minimize(), 2000).unwrap();
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiler_agrees_with_evaluator(f in arb_sentence()) {
        let a = letters(2);
        let d = compile_formula(&f, &a).unwrap();
        for w in words_up_to(2, 6) {
            prop_assert_eq!(d.accepts(&w), eval_formula(&f, &a, &w).unwrap(), "{} on {:?}", f, w);
        }
    }

    #[test]
    fn compiler_is_a_boolean_homomorphism(f in arb_sentence(), g in arb_sentence()) {
        let a = letters(2);
        let (cf, cg) = (compile_formula(&f, &a).unwrap(), compile_formula(&g, &a).unwrap());
        let not_f = compile_formula(&f.clone().not(), &a).unwrap();
        prop_assert!(not_f.equivalent(&cf.complement()).unwrap());
        let both = compile_formula(&f.and(g), &a).unwrap();
        prop_assert!(both.equivalent(&cf.intersect(&cg).unwrap()).unwrap());
    }
}

proptest! {
    // About one generated expression in ten is valid.
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valid_expressions_round_trip(e in arb_expr()) {
        let a = letters(2);
        if validate(&e, &a).is_empty() {
            let d = eval_expr(&e, &a).unwrap();
            let f = expr_to_formula(&e, &a).unwrap();
            prop_assert!(compile_formula(&f, &a).unwrap().equivalent(&d).unwrap(), "{}", e);
        } else {
            prop_assert!(expr_to_formula(&e, &a).is_err());
        }
    }
}
