use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::monoid::OrderedMonoid;
use crate::stability::StabilityInfo;

/// The idempotent power of `x`.
pub fn omega_power(m: &OrderedMonoid, x: usize) -> usize {
    let mut p = x;
    loop {
        if m.is_idempotent(p) {
            return p;
        }
        p = m.mul(p, x);
    }
}

/// `None` when `x^ω = x^{ω+1}` for all `x`, otherwise the first failing `x`.
pub fn is_aperiodic(m: &OrderedMonoid) -> Option<usize> {
    (0..m.size()).find(|&x| {
        let e = omega_power(m, x);
        m.mul(e, x) != e
    })
}

/// Two-sided ideal `M·g·M`.
fn two_sided_ideal(m: &OrderedMonoid, g: usize) -> FixedBitSet {
    let n = m.size();
    let mut left = FixedBitSet::with_capacity(n);
    for x in 0..n {
        left.insert(m.mul(x, g));
    }
    let mut out = FixedBitSet::with_capacity(n);
    for z in left.ones() {
        for y in 0..n {
            out.insert(m.mul(z, y));
        }
    }
    out
}

/// Two-sided ideals of the generators, reused across idempotents.
pub(crate) struct GeneratorIdeals {
    gens: Vec<usize>,
    ideals: Vec<FixedBitSet>,
}

impl GeneratorIdeals {
    pub(crate) fn new(m: &OrderedMonoid) -> Self {
        let gens = m.generators().to_vec();
        let ideals = gens.iter().map(|&g| two_sided_ideal(m, g)).collect();
        GeneratorIdeals { gens, ideals }
    }

    /// `M_e`: generated by the generators `g` with `e ∈ MgM`. Any element
    /// `a` with `e ∈ MaM` only has factors of that kind, so these generators
    /// span the same submonoid as all such `a`.
    pub(crate) fn me(&self, m: &OrderedMonoid, e: usize) -> FixedBitSet {
        let sel: Vec<usize> = self
            .gens
            .iter()
            .zip(&self.ideals)
            .filter(|(_, ideal)| ideal.contains(e))
            .map(|(&g, _)| g)
            .collect();
        m.generated(&sel)
    }
}

/// `M_e`, the submonoid generated by every `a` with `e ∈ MaM`.
pub fn me_submonoid(m: &OrderedMonoid, e: usize) -> Result<FixedBitSet> {
    if !m.is_idempotent(e) {
        return Err(Error::NotIdempotent(m.label(e).to_string()));
    }
    Ok(GeneratorIdeals::new(m).me(m, e))
}

/// How `e·x·e` is compared with `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `exe ≤ e`
    Leq,
    /// `e ≤ exe`
    Geq,
    /// `exe = e`
    Eq,
}

/// Which submonoid `x` ranges over.
#[derive(Clone, Copy, Debug)]
pub enum Selector<'a> {
    Me,
    Mes(&'a StabilityInfo),
}

/// A failing pair: idempotent `e` and `x` in the selected submonoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWitness {
    pub e: usize,
    pub x: usize,
    pub exe: usize,
}

/// Checks `e·x·e (mode) e` for every idempotent `e` and every `x` in the
/// selected submonoid. Returns the first failure.
pub fn local_condition(
    m: &OrderedMonoid,
    mode: Mode,
    selector: Selector<'_>,
) -> Result<Option<LocalWitness>> {
    if mode != Mode::Eq && !m.has_order() {
        return Err(Error::MissingOrder);
    }
    let ideals = match selector {
        Selector::Me => Some(GeneratorIdeals::new(m)),
        Selector::Mes(info) => {
            if info.monoid_size() != m.size() {
                return Err(Error::semantic("stability data belongs to another monoid"));
            }
            None
        }
    };
    for e in m.idempotents() {
        let sub = match (&ideals, selector) {
            (Some(g), _) => g.me(m, e),
            (None, Selector::Mes(info)) => info.me_s_in(m, e)?,
            _ => unreachable!(),
        };
        for x in sub.ones() {
            let exe = m.mul(m.mul(e, x), e);
            let ok = match mode {
                Mode::Leq => m.leq(exe, e),
                Mode::Geq => m.leq(e, exe),
                Mode::Eq => exe == e,
            };
            if !ok {
                return Ok(Some(LocalWitness { e, x, exe }));
            }
        }
    }
    Ok(None)
}
