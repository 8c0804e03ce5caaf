//! Seeded random corpora and the cross-module invariants checked on them.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automata::{format_word, residue, words_up_to, Dfa};
use crate::error::Result;
use crate::fragments::{
    build_mod_witness, verify_vmod_implication, Analysis, DecoratedHom, Fragment,
};
use crate::hierarchy::{sim_quotient, wv_level, Side};
use crate::monoid::{
    green_classes, local_condition, me_submonoid, syntactic_morphism, transition_monoid, Mode,
    Morphism, OrderedMonoid, Selector,
};
use crate::stability::{me_s, stable_green_preorder, StabilityInfo, StableRelation};
use crate::wreath::{
    lift_decorated_hom, offset_product, project_hom, wreath_implication, WreathElem, WreathHom,
};

/// Parameters of a random corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub count: usize,
    pub max_states: usize,
    pub max_letters: usize,
    /// Instances whose syntactic monoid exceeds this are discarded.
    pub cap: usize,
    pub seed: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            count: 200,
            max_states: 5,
            max_letters: 3,
            cap: 2000,
            seed: 0,
        }
    }
}

/// A complete DFA with uniform transitions and a uniform final set among the
/// subsets that are neither empty nor full (any subset for one state).
pub fn random_dfa(rng: &mut impl Rng, states: usize, letters: usize) -> Dfa {
    let alphabet: Vec<String> = (0..letters)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let delta = (0..states)
        .map(|_| (0..letters).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let mask: u64 = if states == 1 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(1..(1u64 << states) - 1)
    };
    let finals = (0..states).map(|q| mask >> q & 1 == 1).collect();
    Dfa::from_table(alphabet, 0, finals, delta)
}

/// Minimal DFAs drawn from the seeded stream, skipping those whose monoid
/// exceeds the cap. The stream depends only on the parameters.
pub fn corpus(params: &CorpusParams) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    while out.len() < params.count {
        let states = rng.gen_range(1..=params.max_states);
        let letters = rng.gen_range(1..=params.max_letters);
        let d = random_dfa(&mut rng, states, letters).minimize();
        if transition_monoid(&d, params.cap).is_ok() {
            out.push(d);
        }
    }
    out
}

/// The invariants checked on each instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The report's built-in identities between verdicts.
    Report,
    /// Stable monoid in DA iff `e·M_e^(s)·e = e`.
    QdaEquivalence,
    /// Each `[<]` fragment is contained in its modular counterpart, and
    /// related inclusions.
    Monotonicity,
    /// Σ₂ of a language is Π₂ of its complement.
    ComplementDuality,
    /// Verdicts are unchanged under the indices `2s` and `3s`.
    IndexInvariance,
    /// The ordered witness monoid for Σ₂ with modular predicates.
    Witness,
    /// `x·y R x` with `y` stable implies `x·y R^s x`; mirrored for L.
    StableLift,
    /// Under `e·M_e^(s)·e = e`, elements stably J-equivalent to an
    /// idempotent are idempotent.
    RegularIdempotent,
    /// Quotients keep the stability index and `e·M_e^(s)·e = e`.
    QuotientStability,
    /// Trivial regular `R^s` (`L^s`) classes force `R^s` (`L^s`) triviality.
    RegularClasses,
    /// Under `e·M_e^(s)·e = e`, both sides of the ladder reach a level.
    Hierarchy,
    /// Recognition, order compatibility, Green preorder laws, `M_e^(s) ⊆ M_e`
    /// and `eq ⟺ leq ∧ geq` for the local conditions.
    Algebra,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Report,
        Check::QdaEquivalence,
        Check::Monotonicity,
        Check::ComplementDuality,
        Check::IndexInvariance,
        Check::Witness,
        Check::StableLift,
        Check::RegularIdempotent,
        Check::QuotientStability,
        Check::RegularClasses,
        Check::Hierarchy,
        Check::Algebra,
    ];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

/// Outcome for one corpus instance.
#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub index: usize,
    pub dfa: Dfa,
    pub monoid_size: usize,
    pub stability_index: usize,
    pub sigma2_mod: bool,
    pub fo2_mod: bool,
    pub violations: Vec<Violation>,
}

struct Collector(Vec<Violation>);

impl Collector {
    fn fail(&mut self, check: Check, detail: impl Into<String>) {
        self.0.push(Violation {
            check,
            detail: detail.into(),
        });
    }

    fn ensure(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(check, detail());
        }
    }
}

fn verdicts(a: &Analysis) -> Result<Vec<bool>> {
    Fragment::ALL
        .iter()
        .map(|&f| Ok(a.evaluate(f)?.is_none()))
        .collect()
}

/// Runs every invariant on one minimal DFA.
pub fn check_instance(index: usize, d: &Dfa, cap: usize) -> Result<InstanceResult> {
    let a = Analysis::new(d, cap)?;
    let h = &a.morphism;
    let m = h.monoid();
    let info = &a.info;
    let s = info.s();
    let mut c = Collector(Vec::new());

    let v = verdicts(&a)?;
    let get = |f: Fragment| v[Fragment::ALL.iter().position(|&g| g == f).unwrap()];
    if let Err(e) = a.report("") {
        c.fail(Check::Report, e.to_string());
    }

    c.ensure(
        Check::QdaEquivalence,
        get(Fragment::Fo2ModQda) == get(Fragment::Fo2ModNew),
        || {
            format!(
                "stable monoid in DA: {}, local condition: {}",
                get(Fragment::Fo2ModQda),
                get(Fragment::Fo2ModNew)
            )
        },
    );

    use Fragment::*;
    for (small, large) in [
        (FoLt, FoMod),
        (Fo2Lt, Fo2ModNew),
        (Sigma2Lt, Sigma2Mod),
        (Pi2Lt, Pi2Mod),
        (Delta2Lt, Delta2Mod),
        (Sigma2Lt, FoLt),
        (Pi2Lt, FoLt),
        (Fo2Lt, Delta2Lt),
        (Delta2Lt, Fo2Lt),
        (Sigma2Mod, FoMod),
        (Pi2Mod, FoMod),
        (Fo2ModNew, FoMod),
    ] {
        c.ensure(Check::Monotonicity, !get(small) || get(large), || {
            format!("{small} holds but {large} does not")
        });
    }

    let comp = Analysis::from_morphism(h.complement());
    let cv = verdicts(&comp)?;
    let cget = |f: Fragment| cv[Fragment::ALL.iter().position(|&g| g == f).unwrap()];
    for (f, g) in [
        (Sigma2Lt, Pi2Lt),
        (Sigma2Mod, Pi2Mod),
        (Fo2ModNew, Fo2ModNew),
        (FoMod, FoMod),
    ] {
        c.ensure(Check::ComplementDuality, get(f) == cget(g), || {
            format!("{f} = {} but {g} of the complement = {}", get(f), cget(g))
        });
    }
    let direct = Analysis::new(&d.complement(), cap)?;
    c.ensure(Check::ComplementDuality, verdicts(&direct)? == cv, || {
        "complement automaton and dual morphism disagree".into()
    });

    for k in [2, 3] {
        let other = a.with_index(k * s)?;
        let ov = verdicts(&other)?;
        c.ensure(Check::IndexInvariance, ov == v, || {
            let diff: Vec<String> = Fragment::ALL
                .iter()
                .zip(ov.iter().zip(&v))
                .filter(|(_, (x, y))| x != y)
                .map(|(f, _)| f.to_string())
                .collect();
            format!("index {}: {} changed", k * s, diff.join(", "))
        });
        c.ensure(
            Check::IndexInvariance,
            other.info.stable() == info.stable(),
            || format!("stable monoid changed at index {}", k * s),
        );
    }

    algebra_checks(d, &a, &mut c)?;
    witness_checks(&a, get(Sigma2Mod), &mut c);
    green_checks(&a, get(Fo2ModNew), &mut c)?;

    Ok(InstanceResult {
        index,
        dfa: d.clone(),
        monoid_size: m.size(),
        stability_index: s,
        sigma2_mod: get(Sigma2Mod),
        fo2_mod: get(Fo2ModNew),
        violations: c.0,
    })
}

fn algebra_checks(d: &Dfa, a: &Analysis, c: &mut Collector) -> Result<()> {
    let (h, info) = (&a.morphism, &a.info);
    let m = h.monoid();
    c.ensure(Check::Algebra, h.to_dfa().equivalent(d)?, || {
        "downward closure of the accepting set does not recognize the language".into()
    });
    c.ensure(
        Check::Algebra,
        m.is_compatible() && m.is_partial_order(),
        || "syntactic order is not a compatible partial order".into(),
    );

    let g = green_classes(m);
    for (p, name) in [(&g.r, "R"), (&g.l, "L"), (&g.j, "J"), (&g.h, "H")] {
        let reflexive = (0..m.size()).all(|x| p.leq(x, x));
        // ideals[y] holds every x ≤ y
        let transitive = p
            .ideals
            .iter()
            .all(|down| down.ones().all(|x| p.ideals[x].is_subset(down)));
        c.ensure(Check::Algebra, reflexive && transitive, || {
            format!("{name} is not a preorder")
        });
    }
    let h_is_meet = (0..m.size())
        .all(|x| (0..m.size()).all(|y| g.h.equiv(x, y) == (g.r.equiv(x, y) && g.l.equiv(x, y))));
    c.ensure(Check::Algebra, h_is_meet, || "H differs from R ∩ L".into());

    for e in m.idempotents() {
        let me = me_submonoid(m, e)?;
        let closed = me.contains(m.identity())
            && me
                .ones()
                .all(|x| me.ones().all(|y| me.contains(m.mul(x, y))));
        c.ensure(Check::Algebra, closed, || {
            format!("M_e is not a submonoid for e = {}", h.repr_text(e))
        });
        let mes = me_s(h, info, e)?;
        c.ensure(Check::Algebra, mes.is_subset(&me), || {
            format!("M_e^(s) is not contained in M_e for e = {}", h.repr_text(e))
        });
    }

    for (name, selector) in [("M_e", Selector::Me), ("M_e^(s)", Selector::Mes(info))] {
        let holds = |mode| Ok::<bool, crate::Error>(local_condition(m, mode, selector)?.is_none());
        let (eq, leq, geq) = (holds(Mode::Eq)?, holds(Mode::Leq)?, holds(Mode::Geq)?);
        c.ensure(Check::Algebra, eq == (leq && geq), || {
            format!("{name}: eq = {eq}, leq = {leq}, geq = {geq}")
        });
    }
    Ok(())
}

fn witness_checks(a: &Analysis, sigma2_mod: bool, c: &mut Collector) {
    let (h, info) = (&a.morphism, &a.info);
    let s = info.s();
    match build_mod_witness(h, info) {
        Err(e) if sigma2_mod => c.fail(Check::Witness, format!("construction failed: {e}")),
        Err(_) => {}
        Ok(_) if !sigma2_mod => c.fail(Check::Witness, "built without its hypothesis"),
        Ok(w) => {
            let n = w.monoid();
            let bound = s * s * h.monoid().size() + 2;
            c.ensure(Check::Witness, n.size() <= bound, || {
                format!("|N| = {} exceeds {bound}", n.size())
            });
            match local_condition(n, Mode::Leq, Selector::Me) {
                Ok(None) => {}
                Ok(Some(x)) => c.fail(
                    Check::Witness,
                    format!(
                        "f·N_f·f ≤ f fails at f = {}, x = {}",
                        n.label(x.e),
                        n.label(x.x)
                    ),
                ),
                Err(e) => c.fail(Check::Witness, e.to_string()),
            }
            if let Some(cx) = verify_vmod_implication(h, &w.g, s, 2 * s + 2) {
                c.fail(
                    Check::Witness,
                    format!(
                        "implication fails for u = {}, v = {}",
                        format_word(h.alphabet(), &cx.u),
                        format_word(h.alphabet(), &cx.v)
                    ),
                );
            }
        }
    }
}

fn green_checks(a: &Analysis, local_eq: bool, c: &mut Collector) -> Result<()> {
    let (h, info) = (&a.morphism, &a.info);
    let m = h.monoid();
    let s = info.s();
    let g = green_classes(m);
    let rs = stable_green_preorder(h, info, StableRelation::Rs);
    let ls = stable_green_preorder(h, info, StableRelation::Ls);
    let js = stable_green_preorder(h, info, StableRelation::Js);

    for x in 0..m.size() {
        for y in info.stable().ones() {
            let (xy, yx) = (m.mul(x, y), m.mul(y, x));
            c.ensure(
                Check::StableLift,
                !g.r.equiv(xy, x) || rs.equiv(xy, x),
                || format!("{}·{} R but not R^s", h.repr_text(x), h.repr_text(y)),
            );
            c.ensure(
                Check::StableLift,
                !g.l.equiv(yx, x) || ls.equiv(yx, x),
                || format!("{}·{} L but not L^s", h.repr_text(y), h.repr_text(x)),
            );
        }
    }

    let idem = m.idempotents();
    if local_eq {
        for &e in &idem {
            for x in 0..m.size() {
                c.ensure(
                    Check::RegularIdempotent,
                    !js.equiv(x, e) || m.is_idempotent(x),
                    || {
                        format!(
                            "{} J^s {} but is not idempotent",
                            h.repr_text(x),
                            h.repr_text(e)
                        )
                    },
                );
            }
        }
    }

    for side in [Side::K, Side::D] {
        let q = sim_quotient(h, side)?.quotient;
        c.ensure(
            Check::QuotientStability,
            q.monoid().size() <= m.size(),
            || format!("{side:?} quotient is larger than the monoid"),
        );
        match StabilityInfo::with_index(&q, s) {
            Err(_) => c.fail(
                Check::QuotientStability,
                format!("{s} is no index of the {side:?} quotient"),
            ),
            Ok(qi) => {
                if local_eq {
                    let w = local_condition(q.monoid(), Mode::Eq, Selector::Mes(&qi))?;
                    c.ensure(Check::QuotientStability, w.is_none(), || {
                        format!("{side:?} quotient loses e·M_e^(s)·e = e")
                    });
                }
            }
        }
    }

    for (rel, name) in [(&rs, "R^s"), (&ls, "L^s")] {
        let regular_trivial = rel
            .classes
            .iter()
            .all(|cl| cl.len() == 1 || !cl.iter().any(|&x| m.is_idempotent(x)));
        c.ensure(
            Check::RegularClasses,
            !regular_trivial || rel.is_trivial(),
            || format!("regular {name} classes are trivial but {name} is not"),
        );
    }

    if local_eq {
        let bound = rs.nontrivial_classes() + ls.nontrivial_classes() + 2;
        let lv = wv_level(h, bound)?;
        c.ensure(Check::Hierarchy, lv.w.is_some() && lv.v.is_some(), || {
            format!("levels {:?}/{:?} within {bound}", lv.w, lv.v)
        });
    }
    Ok(())
}

/// Checks every instance, in parallel over `threads` workers. Results are
/// ordered by instance index.
pub fn check_all(dfas: &[Dfa], cap: usize, threads: usize) -> Vec<Result<InstanceResult>> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<InstanceResult>>>> =
        Mutex::new((0..dfas.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= dfas.len() {
                    break;
                }
                let r = check_instance(i, &dfas[i], cap);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every instance checked"))
        .collect()
}

fn table_monoid(
    table: Vec<Vec<usize>>,
    labels: &[&str],
    gens: Vec<usize>,
    order: &[(usize, usize)],
) -> OrderedMonoid {
    OrderedMonoid::from_table(
        table,
        0,
        labels.iter().map(|s| s.to_string()).collect(),
        gens,
    )
    .and_then(|m| m.with_order_pairs(order))
    .expect("catalog monoid is valid")
}

fn cyclic(k: usize) -> OrderedMonoid {
    let table = (0..k)
        .map(|x| (0..k).map(|y| (x + y) % k).collect())
        .collect();
    let labels: Vec<String> = (0..k).map(|x| x.to_string()).collect();
    let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
    table_monoid(table, &labels, vec![1 % k], &[])
}

/// Ordered monoids with at most four elements.
pub fn small_ordered_monoids() -> Vec<(&'static str, OrderedMonoid)> {
    let u1 = vec![vec![0, 1], vec![1, 1]];
    vec![
        ("trivial", table_monoid(vec![vec![0]], &["1"], vec![], &[])),
        ("U1", table_monoid(u1.clone(), &["1", "0"], vec![1], &[])),
        (
            "U1 0<1",
            table_monoid(u1.clone(), &["1", "0"], vec![1], &[(1, 0)]),
        ),
        ("U1 1<0", table_monoid(u1, &["1", "0"], vec![1], &[(0, 1)])),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        (
            "nil3",
            table_monoid(
                vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
                &["1", "a", "0"],
                vec![1],
                &[(2, 0), (2, 1)],
            ),
        ),
        (
            "right-zero",
            table_monoid(
                vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]],
                &["1", "a", "b"],
                vec![1, 2],
                &[],
            ),
        ),
        (
            "left-zero",
            table_monoid(
                vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
                &["1", "a", "b"],
                vec![1, 2],
                &[(1, 2)],
            ),
        ),
        (
            "semilattice",
            table_monoid(
                vec![
                    vec![0, 1, 2, 3],
                    vec![1, 1, 3, 3],
                    vec![2, 3, 2, 3],
                    vec![3, 3, 3, 3],
                ],
                &["1", "a", "b", "0"],
                vec![1, 2],
                &[(3, 0), (3, 1), (3, 2)],
            ),
        ),
        (
            "Z2xU1",
            table_monoid(
                (0..4)
                    .map(|x: usize| {
                        (0..4)
                            .map(|y: usize| ((x / 2 + y / 2) % 2) * 2 + ((x % 2) | (y % 2)))
                            .collect()
                    })
                    .collect(),
                &["1", "0", "g", "g0"],
                vec![1, 2],
                &[],
            ),
        ),
    ]
}

/// One instance for the two translations between decorated morphisms and
/// morphisms into the wreath product.
#[derive(Clone, Debug)]
pub struct WreathTriple {
    pub name: String,
    pub n: usize,
    /// Decorated morphism for the lifting direction.
    pub g: DecoratedHom,
    /// Syntactic morphism of a language recognized through `g`.
    pub h: Morphism,
    /// Morphism into the wreath product for the projecting direction.
    pub hhat: WreathHom,
    pub d: usize,
    /// Syntactic morphism of a language recognized through `hhat`.
    pub h2: Morphism,
}

/// Outcome of [`check_wreath_triple`]; the booleans record which
/// implications held, so that a suite can show both outcomes occur.
#[derive(Clone, Debug, Default)]
pub struct WreathTripleResult {
    pub vmod_holds: bool,
    pub wreath_holds: bool,
    pub violations: Vec<String>,
}

fn syntactic_of<T, F>(
    alphabet: &[String],
    identity: T,
    images: &[T],
    mul: F,
    accept: impl Fn(&T) -> bool,
) -> Result<Morphism>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let (m, _) = Morphism::generate(alphabet.to_vec(), identity, images, mul, accept, 10_000)?;
    syntactic_morphism(&m.to_dfa(), 10_000)
}

/// Syntactic morphism of `{u : top ≤ g(τ_n(u))}`.
fn decorated_language(g: &DecoratedHom, top: usize) -> Result<Morphism> {
    let (n, size) = (g.n, g.target.size());
    let state = |r: usize, v: usize| r * size + v;
    let mut delta = vec![Vec::new(); n * size];
    let mut finals = vec![false; n * size];
    for r in 0..n {
        let i = residue(r as i64 + 1, n);
        for v in 0..size {
            finals[state(r, v)] = g.target.leq(top, v);
            delta[state(r, v)] = (0..g.alphabet.len())
                .map(|a| state((r + 1) % n, g.target.mul(v, g.letter(a, i))))
                .collect();
        }
    }
    let d = Dfa::from_table(
        g.alphabet.clone(),
        state(0, g.target.identity()),
        finals,
        delta,
    );
    syntactic_morphism(&d, 10_000)
}

/// Seeded triples over [`small_ordered_monoids`] and `n ∈ {1, 2, 3}`.
pub fn wreath_triples(seed: u64, count: usize) -> Result<Vec<WreathTriple>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let catalog = small_ordered_monoids();
    let alphabet: Vec<String> = vec!["a".into(), "b".into()];
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        let (name, base) = &catalog[t % catalog.len()];
        let n = 1 + (t / catalog.len() + t) % 3;
        let size = base.size();
        let images = (0..alphabet.len() * n)
            .map(|_| rng.gen_range(0..size))
            .collect();
        let g = DecoratedHom::new(n, alphabet.clone(), base.clone(), images)?;
        let h = decorated_language(&g, rng.gen_range(0..size))?;
        let d = rng.gen_range(0..n);
        let hhat = WreathHom {
            base: base.clone(),
            n,
            alphabet: alphabet.clone(),
            images: (0..alphabet.len())
                .map(|_| WreathElem {
                    f: (0..n).map(|_| rng.gen_range(0..size)).collect(),
                    k: d,
                })
                .collect(),
        };
        let top = rng.gen_range(0..size);
        let h2 = syntactic_of(
            &alphabet,
            hhat.identity(),
            &hhat.images,
            |x, y| hhat.mul(x, y),
            |x: &WreathElem| base.leq(top, x.f[0]),
        )?;
        out.push(WreathTriple {
            name: format!("{name} n={n} #{t}"),
            n,
            g,
            h,
            hhat,
            d,
            h2,
        });
    }
    Ok(out)
}

/// Whether `h(u) ≤ h(v)` for all listed `u, v` with `|u| ≡ |v| mod n` and
/// `g(τ_{j,n}(u)) ≤ g(τ_{j,n}(v))` for every offset `j`.
fn all_offsets_implication(h: &Morphism, g: &DecoratedHom, words: &[Vec<usize>]) -> bool {
    let n = g.n;
    let images: Vec<(usize, Vec<usize>, usize)> = words
        .iter()
        .map(|w| {
            (
                w.len() % n,
                (0..n).map(|j| g.image_tau(w, j)).collect(),
                h.image(w),
            )
        })
        .collect();
    images.iter().all(|(r1, g1, h1)| {
        images.iter().all(|(r2, g2, h2)| {
            r1 != r2
                || !g1.iter().zip(g2).all(|(&x, &y)| g.target.leq(x, y))
                || h.monoid().leq(*h1, *h2)
        })
    })
}

/// Checks both translations on one triple, on words up to length `2n + 2`.
pub fn check_wreath_triple(t: &WreathTriple) -> Result<WreathTripleResult> {
    let max_len = 2 * t.n + 2;
    let mut r = WreathTripleResult::default();
    let words = words_up_to(t.g.alphabet.len(), max_len);

    let lifted = lift_decorated_hom(&t.g);
    for u in &words {
        let x = lifted.image(u);
        let ok = x.k == u.len() % t.n && (0..t.n).all(|j| x.f[j] == t.g.image_tau(u, j));
        if !ok {
            r.violations
                .push(format!("{}: lift disagrees on {u:?}", t.name));
            break;
        }
    }
    r.vmod_holds = verify_vmod_implication(&t.h, &t.g, t.n, max_len).is_none();
    if r.vmod_holds && wreath_implication(&lifted, &t.h, max_len).is_some() {
        r.violations
            .push(format!("{}: lift loses the implication", t.name));
    }

    let offsets = offset_product(&t.g)?;
    let single = verify_vmod_implication(&t.h, &offsets.g, t.n, max_len).is_none();
    if single != all_offsets_implication(&t.h, &t.g, &words) {
        r.violations.push(format!(
            "{}: offset product changes the implication",
            t.name
        ));
    }

    let p = project_hom(&t.hhat, t.d)?;
    for u in &words {
        if p.functions[p.g.image_tau(u, 0)] != t.hhat.image(u).f {
            r.violations
                .push(format!("{}: projection disagrees on {u:?}", t.name));
            break;
        }
    }
    r.wreath_holds = wreath_implication(&t.hhat, &t.h2, max_len).is_none();
    if r.wreath_holds && verify_vmod_implication(&t.h2, &p.g, t.n, max_len).is_some() {
        r.violations
            .push(format!("{}: projection loses the implication", t.name));
    }
    Ok(r)
}
