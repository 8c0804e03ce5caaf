//! The ordered witness monoid over the decorated alphabet for criteria of the
//! form `e·M_e^(s)·e ≤ e`, and the exhaustive check of the implication
//! `g(τ_n(u)) ≤ g(τ_n(v)) ⇒ h(u) ≤ h(v)`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::automata::{decorated_alphabet_names, decorated_index, residue, tau, Word};
use crate::error::{Error, Result};
use crate::monoid::{local_condition, Mode, Morphism, OrderedMonoid, Selector};
use crate::stability::StabilityInfo;

/// A morphism from `(A × {1..n})*` into an ordered monoid, given by the
/// images of decorated letters indexed by `letter·n + (i − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedHom {
    pub n: usize,
    pub alphabet: Vec<String>,
    pub target: OrderedMonoid,
    pub images: Vec<usize>,
}

impl DecoratedHom {
    pub fn new(
        n: usize,
        alphabet: Vec<String>,
        target: OrderedMonoid,
        images: Vec<usize>,
    ) -> Result<Self> {
        if n == 0
            || images.len() != alphabet.len() * n
            || images.iter().any(|&x| x >= target.size())
        {
            return Err(Error::semantic("decorated morphism has the wrong shape"));
        }
        Ok(DecoratedHom {
            n,
            alphabet,
            target,
            images,
        })
    }

    /// Image of `(a, i)` with `i ∈ 1..=n`.
    pub fn letter(&self, a: usize, i: usize) -> usize {
        self.images[decorated_index(a, i, self.n)]
    }

    /// Image of a decorated word.
    pub fn image(&self, word: &[usize]) -> usize {
        word.iter().fold(self.target.identity(), |acc, &x| {
            self.target.mul(acc, self.images[x])
        })
    }

    /// `g(τ_{j,n}(w))`.
    pub fn image_tau(&self, word: &[usize], j: usize) -> usize {
        self.image(&tau(word, j, self.n))
    }

    /// The same morphism with every pair of elements related.
    pub fn with_total_order(mut self) -> Self {
        let n = self.target.size();
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        self.target = self.target.with_order_unchecked(vec![full; n]);
        self
    }
}

/// Classes of the witness monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessClass {
    Empty,
    /// Words that are not decorations `τ_{j,s}(w)`.
    Sink,
    /// Nonempty well-formed words: residues of the first and last letter
    /// (in `1..=s`) and the image of the underlying word.
    Profile {
        start: usize,
        end: usize,
        image: usize,
    },
}

/// Output of [`build_mod_witness`].
#[derive(Clone, Debug)]
pub struct ModWitness {
    pub n: usize,
    pub classes: Vec<WitnessClass>,
    pub g: DecoratedHom,
}

impl ModWitness {
    pub fn monoid(&self) -> &OrderedMonoid {
        &self.g.target
    }
}

/// Builds `(n, N, g)` with `n = s`. Fails unless `e·M_e^(s)·e ≤ e` holds for
/// every idempotent `e`.
pub fn build_mod_witness(h: &Morphism, info: &StabilityInfo) -> Result<ModWitness> {
    if let Some(w) = local_condition(h.monoid(), Mode::Leq, Selector::Mes(info))? {
        return Err(Error::Hypothesis(format!(
            "e·x·e ≤ e fails for e = {}, x = {}",
            h.repr_text(w.e),
            h.repr_text(w.x)
        )));
    }
    let w = build_mod_witness_unchecked(h, info)?;
    if !w.monoid().is_compatible() || !w.monoid().is_partial_order() {
        return Err(Error::Internal(
            "witness order is not a compatible partial order".into(),
        ));
    }
    Ok(w)
}

/// The witness construction without checking its hypothesis.
pub fn build_mod_witness_unchecked(h: &Morphism, info: &StabilityInfo) -> Result<ModWitness> {
    let s = info.s();
    let m = h.monoid();
    let k = h.alphabet().len();
    let gens: Vec<WitnessClass> = (0..k * s)
        .map(|x| {
            let (a, i) = (x / s, x % s + 1);
            WitnessClass::Profile {
                start: i,
                end: i,
                image: h.letter_image(a),
            }
        })
        .collect();
    let mul = |x: &WitnessClass, y: &WitnessClass| match (*x, *y) {
        (WitnessClass::Empty, z) | (z, WitnessClass::Empty) => z,
        (
            WitnessClass::Profile { start, end, image },
            WitnessClass::Profile {
                start: s2,
                end: e2,
                image: i2,
            },
        ) if s2 == end % s + 1 => WitnessClass::Profile {
            start,
            end: e2,
            image: m.mul(image, i2),
        },
        _ => WitnessClass::Sink,
    };
    let names = decorated_alphabet_names(h.alphabet(), s);
    let cap = s * s * m.size() + 2;
    let (gm, classes) = Morphism::generate(names, WitnessClass::Empty, &gens, mul, |_| false, cap)?;
    let size = classes.len();
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    for (x, cx) in classes.iter().enumerate() {
        for (y, cy) in classes.iter().enumerate() {
            let le = match (cx, cy) {
                _ if x == y => true,
                (WitnessClass::Sink, c) => *c != WitnessClass::Empty,
                (
                    WitnessClass::Profile { start, end, image },
                    WitnessClass::Profile {
                        start: s2,
                        end: e2,
                        image: i2,
                    },
                ) => start == s2 && end == e2 && m.leq(*image, *i2),
                _ => false,
            };
            up[x].set(y, le);
        }
    }
    let target = gm.monoid().clone().with_order_unchecked(up);
    let images = gm.letter_map().to_vec();
    Ok(ModWitness {
        n: s,
        classes,
        g: DecoratedHom::new(s, h.alphabet().to_vec(), target, images)?,
    })
}

/// A violation of `g(τ_n(u)) ≤ g(τ_n(v)) ⇒ h(u) ≤ h(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VmodCounterexample {
    pub u: Word,
    pub v: Word,
}

/// Checks the implication for all `u, v` of length at most `max_len` with
/// `|u| ≡ |v| mod n`.
pub fn verify_vmod_implication(
    h: &Morphism,
    g: &DecoratedHom,
    n: usize,
    max_len: usize,
) -> Option<VmodCounterexample> {
    assert_eq!(g.n, n, "modulus mismatch");
    let m = h.monoid();
    let k = h.alphabet().len();
    // State: (length mod n, g-image, h-image) with a shortest word.
    let mut words: HashMap<(usize, usize, usize), Word> = HashMap::new();
    let start = (0, g.target.identity(), m.identity());
    words.insert(start, Vec::new());
    let mut frontier = vec![start];
    for len in 0..max_len {
        let i = residue(len as i64 + 1, n);
        let mut next = Vec::new();
        for &(r, gx, hx) in &frontier {
            for a in 0..k {
                let t = (
                    (r + 1) % n,
                    g.target.mul(gx, g.letter(a, i)),
                    m.mul(hx, h.letter_image(a)),
                );
                if !words.contains_key(&t) {
                    let mut w = words[&(r, gx, hx)].clone();
                    w.push(a);
                    words.insert(t, w);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut states: Vec<(&(usize, usize, usize), &Word)> = words.iter().collect();
    states.sort_by(|a, b| (a.1.len(), a.1).cmp(&(b.1.len(), b.1)));
    for &(&(r1, g1, h1), u) in &states {
        for &(&(r2, g2, h2), v) in &states {
            if r1 == r2 && g.target.leq(g1, g2) && !m.leq(h1, h2) {
                return Some(VmodCounterexample {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    None
}
