//! The wreath product `N ≀ Z/nZ` and the translations between morphisms into
//! it and morphisms on the decorated alphabet.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::automata::{decorated_alphabet_names, residue, Word};
use crate::error::{Error, Result};
use crate::fragments::{DecoratedHom, VmodCounterexample};
use crate::monoid::{Morphism, OrderedMonoid};

/// Bound on `|N|ⁿ·n` for [`wreath_product`] and on generated power monoids.
pub const WREATH_CAP: usize = 4096;

/// An element `(f, k)` with `f : Z/nZ → N` stored densely over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElem {
    pub f: Vec<usize>,
    pub k: usize,
}

fn wmul(base: &OrderedMonoid, n: usize, x: &WreathElem, y: &WreathElem) -> WreathElem {
    WreathElem {
        f: (0..n)
            .map(|k| base.mul(x.f[k], y.f[(k + x.k) % n]))
            .collect(),
        k: (x.k + y.k) % n,
    }
}

fn wleq(base: &OrderedMonoid, x: &WreathElem, y: &WreathElem) -> bool {
    x.k == y.k && x.f.iter().zip(&y.f).all(|(&a, &b)| base.leq(a, b))
}

/// The full wreath product as an ordered monoid.
#[derive(Clone, Debug)]
pub struct WreathMonoid {
    base: OrderedMonoid,
    n: usize,
    monoid: OrderedMonoid,
}

impl WreathMonoid {
    pub fn base(&self) -> &OrderedMonoid {
        &self.base
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    /// Element with index `k + n·Σ f(p)·|N|^p`.
    pub fn element(&self, x: usize) -> WreathElem {
        let b = self.base.size();
        let mut rest = x / self.n;
        let f = (0..self.n)
            .map(|_| {
                let d = rest % b;
                rest /= b;
                d
            })
            .collect();
        WreathElem { f, k: x % self.n }
    }

    pub fn index(&self, x: &WreathElem) -> usize {
        let b = self.base.size();
        x.f.iter().rev().fold(0, |acc, &d| acc * b + d) * self.n + x.k
    }
}

pub fn wreath_product(base: &OrderedMonoid, n: usize) -> Result<WreathMonoid> {
    if n == 0 {
        return Err(Error::semantic("modulus must be positive"));
    }
    let b = base.size();
    let size = b
        .checked_pow(n as u32)
        .and_then(|p| p.checked_mul(n))
        .filter(|&s| s <= WREATH_CAP)
        .ok_or(Error::MonoidCap { cap: WREATH_CAP })?;
    let mut w = WreathMonoid {
        base: base.clone(),
        n,
        monoid: OrderedMonoid::from_flat(1, 0, vec![0], vec![String::new()], vec![]),
    };
    let elems: Vec<WreathElem> = (0..size).map(|x| w.element(x)).collect();
    let mut table = Vec::with_capacity(size * size);
    for x in &elems {
        for y in &elems {
            table.push(w.index(&wmul(base, n, x, y)) as u32);
        }
    }
    let identity = w.index(&WreathElem {
        f: vec![base.identity(); n],
        k: 0,
    });
    let labels = elems
        .iter()
        .map(|x| {
            let f: Vec<&str> = x.f.iter().map(|&d| base.label(d)).collect();
            format!("({};{})", f.join(","), x.k)
        })
        .collect();
    // (1, 1) and the functions that are a generator of N at 0 and 1 elsewhere.
    let mut gens = vec![w.index(&WreathElem {
        f: vec![base.identity(); n],
        k: 1 % n,
    })];
    for &g in base.generators() {
        let mut f = vec![base.identity(); n];
        f[0] = g;
        gens.push(w.index(&WreathElem { f, k: 0 }));
    }
    gens.sort_unstable();
    gens.dedup();
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            if wleq(base, x, y) {
                up[i].insert(j);
            }
        }
    }
    w.monoid = OrderedMonoid::from_flat(size, identity, table, labels, gens).with_order(up)?;
    Ok(w)
}

/// A morphism `A* → N ≀ Z/nZ` given by letter images.
#[derive(Clone, Debug)]
pub struct WreathHom {
    pub base: OrderedMonoid,
    pub n: usize,
    pub alphabet: Vec<String>,
    pub images: Vec<WreathElem>,
}

impl WreathHom {
    pub fn identity(&self) -> WreathElem {
        WreathElem {
            f: vec![self.base.identity(); self.n],
            k: 0,
        }
    }

    pub fn mul(&self, x: &WreathElem, y: &WreathElem) -> WreathElem {
        wmul(&self.base, self.n, x, y)
    }

    pub fn leq(&self, x: &WreathElem, y: &WreathElem) -> bool {
        wleq(&self.base, x, y)
    }

    pub fn image(&self, word: &[usize]) -> WreathElem {
        word.iter()
            .fold(self.identity(), |acc, &a| self.mul(&acc, &self.images[a]))
    }
}

/// `ĥ(a) = (f_a, 1)` with `f_a(k) = g(a, k + 1)`, so that the first
/// component of `ĥ(u)` at 0 is `g(τ_n(u))`.
pub fn lift_decorated_hom(g: &DecoratedHom) -> WreathHom {
    let n = g.n;
    let images = (0..g.alphabet.len())
        .map(|a| WreathElem {
            f: (0..n).map(|k| g.letter(a, k + 1)).collect(),
            k: 1 % n,
        })
        .collect();
    WreathHom {
        base: g.target.clone(),
        n,
        alphabet: g.alphabet.clone(),
        images,
    }
}

/// A decorated morphism into a submonoid of `Nⁿ` with the pointwise order.
#[derive(Clone, Debug)]
pub struct Projection {
    pub g: DecoratedHom,
    /// The tuple in `Nⁿ` of each element of `g.target`.
    pub functions: Vec<Vec<usize>>,
}

fn pointwise(
    alphabet: &[String],
    n: usize,
    base: &OrderedMonoid,
    images: Vec<Vec<usize>>,
) -> Result<Projection> {
    let width = images.first().map_or(0, Vec::len);
    let names = decorated_alphabet_names(alphabet, n);
    let (m, functions) = Morphism::generate(
        names,
        vec![base.identity(); width],
        &images,
        |x: &Vec<usize>, y: &Vec<usize>| x.iter().zip(y).map(|(&a, &b)| base.mul(a, b)).collect(),
        |_| false,
        WREATH_CAP,
    )?;
    let size = functions.len();
    let mut up = vec![FixedBitSet::with_capacity(size); size];
    for (i, x) in functions.iter().enumerate() {
        for (j, y) in functions.iter().enumerate() {
            up[i].set(j, x.iter().zip(y).all(|(&a, &b)| base.leq(a, b)));
        }
    }
    let target = m.monoid().clone().with_order(up)?;
    let g = DecoratedHom::new(n, alphabet.to_vec(), target, m.letter_map().to_vec())?;
    Ok(Projection { g, functions })
}

/// `g(a, i) = (i − 1)d · f_a` where `(j · f)(k) = f(k + j)`, into the
/// submonoid of `Nⁿ` it generates. Requires every letter to have second
/// component `d`.
pub fn project_hom(hhat: &WreathHom, d: usize) -> Result<Projection> {
    let n = hhat.n;
    if let Some(x) = hhat.images.iter().find(|x| x.k != d % n) {
        return Err(Error::semantic(format!(
            "letter image has second component {}, expected {}",
            x.k,
            d % n
        )));
    }
    let mut images = Vec::with_capacity(hhat.alphabet.len() * n);
    for x in &hhat.images {
        for i in 1..=n {
            let shift = (i - 1) * d;
            images.push((0..n).map(|k| x.f[(k + shift) % n]).collect());
        }
    }
    pointwise(&hhat.alphabet, n, &hhat.base, images)
}

/// `g' = (g_0, …, g_{n−1})` with `g_j(a, i) = g(a, i + j)`, so that
/// `g'(τ_n(u))` lists `g(τ_{j,n}(u))` for `j = 0..n`.
pub fn offset_product(g: &DecoratedHom) -> Result<Projection> {
    let n = g.n;
    let mut images = Vec::with_capacity(g.alphabet.len() * n);
    for a in 0..g.alphabet.len() {
        for i in 1..=n {
            images.push(
                (0..n)
                    .map(|j| g.letter(a, residue((i + j) as i64, n)))
                    .collect(),
            );
        }
    }
    pointwise(&g.alphabet, n, &g.target, images)
}

/// First pair `(u, v)` of words of length at most `max_len` with
/// `ĥ(u) ≤ ĥ(v)` but not `h(u) ≤ h(v)`.
pub fn wreath_implication(
    hhat: &WreathHom,
    h: &Morphism,
    max_len: usize,
) -> Option<VmodCounterexample> {
    let m = h.monoid();
    let k = h.alphabet().len();
    let mut reps: Vec<(WreathElem, usize, Word)> = Vec::new();
    let mut seen: HashSet<(WreathElem, usize)> = HashSet::new();
    let start = (hhat.identity(), m.identity());
    seen.insert(start.clone());
    reps.push((start.0.clone(), start.1, Vec::new()));
    let mut frontier = vec![(start.0, start.1, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (x, y, w) in &frontier {
            for a in 0..k {
                let t = (hhat.mul(x, &hhat.images[a]), m.mul(*y, h.letter_image(a)));
                if seen.insert(t.clone()) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    reps.push((t.0.clone(), t.1, w2.clone()));
                    next.push((t.0, t.1, w2));
                }
            }
        }
        frontier = next;
    }
    for (x, hx, u) in &reps {
        for (y, hy, v) in &reps {
            if hhat.leq(x, y) && !m.leq(*hx, *hy) {
                return Some(VmodCounterexample {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    None
}
