use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// The submonoid generated by `gens` inside some ambient monoid, enumerated
/// breadth first so that each element's spelling is shortlex-least.
pub(crate) struct Generated<T> {
    pub elems: Vec<T>,
    /// `parent[x] · gens[last[x]] = x`; unused for the identity at index 0.
    pub parent: Vec<usize>,
    pub last: Vec<usize>,
    /// `right[x][g]` is the index of `x · gens[g]`.
    pub right: Vec<Vec<u32>>,
    /// Index of each generator.
    pub gen_index: Vec<usize>,
}

pub(crate) fn generate<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Generated<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut ids: HashMap<T, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    ids.insert(identity, 0);
    let mut parent = vec![0];
    let mut last = vec![usize::MAX];
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (g, gen) in gens.iter().enumerate() {
            let y = mul(&elems[i], gen);
            let id = match ids.get(&y) {
                Some(&id) => id,
                None => {
                    if elems.len() >= cap {
                        return Err(Error::MonoidCap { cap });
                    }
                    let id = elems.len();
                    ids.insert(y.clone(), id);
                    elems.push(y);
                    parent.push(i);
                    last.push(g);
                    id
                }
            };
            row.push(id as u32);
        }
        right.push(row);
        i += 1;
    }
    let gen_index = (0..gens.len()).map(|g| right[0][g] as usize).collect();
    Ok(Generated {
        elems,
        parent,
        last,
        right,
        gen_index,
    })
}

impl<T> Generated<T> {
    /// Full multiplication table, row-major, computed from the right action
    /// alone: `x · y = (x · parent(y)) · last(y)`.
    pub(crate) fn table(&self) -> Vec<u32> {
        let m = self.elems.len();
        let mut t = vec![0u32; m * m];
        for x in 0..m {
            t[x * m] = x as u32;
            for y in 1..m {
                let xp = t[x * m + self.parent[y]] as usize;
                t[x * m + y] = self.right[xp][self.last[y]];
            }
        }
        t
    }

    /// Generator spelling of each element.
    pub(crate) fn spellings(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.elems.len()];
        for x in 1..self.elems.len() {
            let mut w = out[self.parent[x]].clone();
            w.push(self.last[x]);
            out[x] = w;
        }
        out
    }
}
