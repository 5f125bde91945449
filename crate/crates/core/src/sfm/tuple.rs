//! Join-irreducible poset of the lattice of left-right ordered k-tuples.

use crate::diversity::CutCollection;
use crate::lattice::ClosureDag;
use crate::poset::{Ideal, Poset};

/// Element `(block, base)` stands for the tuple whose first `block - 1`
/// coordinates are the bottom cut and whose remaining coordinates are the
/// irreducible cut of `base`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleIrreducible {
    pub block: usize,
    pub base: usize,
}

#[derive(Clone, Debug)]
pub struct TuplePoset {
    k: usize,
    base_len: usize,
    poset: Poset,
}

/// `(i, p) <= (i', p')` iff `i >= i'` and `p <= p'`, which is exactly
/// componentwise inclusion of the represented tuples.
pub fn build_tuple_poset(jl: &Poset, k: usize) -> TuplePoset {
    assert!(k >= 1, "k must be positive");
    let f = jl.len();
    let index = |block: usize, base: usize| (block - 1) * f + base;
    let mut relations = Vec::new();
    for block in 1..=k {
        for (lower, upper) in jl.covers() {
            relations.push((index(block, lower), index(block, upper)));
        }
        if block < k {
            for p in 0..f {
                relations.push((index(block + 1, p), index(block, p)));
            }
        }
    }
    let poset = Poset::new(k * f, relations).expect("product order is acyclic");
    TuplePoset { k, base_len: f, poset }
}

impl TuplePoset {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn element(&self, x: usize) -> TupleIrreducible {
        TupleIrreducible { block: x / self.base_len + 1, base: x % self.base_len }
    }

    pub fn index(&self, t: TupleIrreducible) -> usize {
        (t.block - 1) * self.base_len + t.base
    }

    /// Down-closed J(L) indicators, one per coordinate, for an ideal indicator.
    pub fn coordinate_indicators(&self, inside: &[bool]) -> Vec<Vec<bool>> {
        let f = self.base_len;
        let mut coords = Vec::with_capacity(self.k);
        let mut acc = vec![false; f];
        for block in 1..=self.k {
            for p in 0..f {
                acc[p] |= inside[(block - 1) * f + p];
            }
            coords.push(acc.clone());
        }
        coords
    }
}

/// Componentwise join of the tuples represented by the members of `a`.
pub fn ideal_to_collection(dag: &ClosureDag, tp: &TuplePoset, a: &Ideal) -> CutCollection {
    indicator_to_collection(dag, tp, &a.indicator(tp.len()))
}

pub(crate) fn indicator_to_collection(dag: &ClosureDag, tp: &TuplePoset, inside: &[bool]) -> CutCollection {
    CutCollection::new(
        tp.coordinate_indicators(inside)
            .iter()
            .map(|coord| dag.cut_from_jl_indicator(coord))
            .collect(),
    )
}
