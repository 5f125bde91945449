//! Brute-force reference solvers, ideal enumeration and instance generators.
//!
//! Mincuts here come from scanning every source side directly, never from
//! the flow or lattice machinery, so the oracles are independent references.

mod generate;
mod hardness;
mod rng;
pub mod verify;

pub use generate::{gen_random_instance, synthetic_path_graph, Model};
pub use hardness::{gen_hardness_instance, BipartiteInstance, HardnessLayout};
pub use rng::SplitMix64;

pub use crate::poset::enumerate_ideals;

use crate::diversity::Measure;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId};
use crate::lattice::MinCut;

pub const DEFAULT_IDEAL_CAP: usize = 1 << 20;
pub const DEFAULT_MULTISET_CAP: u128 = 1_000_000;
pub const DEFAULT_DISJOINT_CAP: usize = 20;
/// Largest vertex count accepted by the source-side scan.
pub const MAX_SCAN_VERTICES: usize = 26;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub ideals: usize,
    pub multisets: u128,
    pub disjoint: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { ideals: DEFAULT_IDEAL_CAP, multisets: DEFAULT_MULTISET_CAP, disjoint: DEFAULT_DISJOINT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub lambda: usize,
    pub witness: Vec<MinCut>,
    pub explored: u64,
}

/// All minimum cuts, sorted, by scanning every vertex set `S` with
/// `s ∈ S`, `t ∉ S`.
pub fn brute_force_mincuts(g: &DirectedGraph) -> Result<(usize, Vec<MinCut>)> {
    let n = g.vertex_count();
    if n > MAX_SCAN_VERTICES {
        return Err(Error::SearchSpaceTooLarge { size: 1u128 << (n - 2), cap: 1u128 << (MAX_SCAN_VERTICES - 2) });
    }
    let (s, t) = (g.source(), g.sink());
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut inside = vec![false; n];
    inside[s] = true;
    let mut best = usize::MAX;
    let mut cuts: Vec<MinCut> = Vec::new();
    for mask in 0u64..1 << free.len() {
        for (bit, &v) in free.iter().enumerate() {
            inside[v] = mask >> bit & 1 == 1;
        }
        let size = g.edges().filter(|(_, e)| inside[e.tail] && !inside[e.head]).count();
        if size > best {
            continue;
        }
        if size < best {
            best = size;
            cuts.clear();
        }
        cuts.push(MinCut::new(g.boundary(&inside)));
    }
    if best == 0 {
        return Err(Error::Disconnected);
    }
    cuts.sort();
    cuts.dedup();
    Ok((best, cuts))
}

/// `C(n + k - 1, k)`, saturating.
pub fn multiset_count(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.saturating_mul(n as u128 + i) / (i + 1);
    }
    acc
}

/// Exact optimum of `measure` over all k-multisets of mincuts.
pub fn brute_force_diverse(g: &DirectedGraph, k: usize, measure: Measure, caps: &OracleCaps) -> Result<OracleResult> {
    if k == 0 {
        return Err(Error::BadK { k, reason: "need at least one cut" });
    }
    if measure == Measure::Min && k < 2 {
        return Err(Error::BadK { k, reason: "bottleneck diversity needs at least two cuts" });
    }
    let (lambda, cuts) = brute_force_mincuts(g)?;
    let total = multiset_count(cuts.len(), k);
    if total > caps.multisets {
        return Err(Error::SearchSpaceTooLarge { size: total, cap: caps.multisets });
    }
    let count = cuts.len();
    let inter: Vec<Vec<usize>> =
        cuts.iter().map(|x| cuts.iter().map(|y| x.intersection_size(y)).collect()).collect();
    let mut uses = vec![0usize; g.edge_count()];

    let mut idx = vec![0usize; k];
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut explored = 0u64;
    loop {
        explored += 1;
        let value = match measure {
            Measure::Sum => {
                let mut v = 0;
                for a in 0..k {
                    for b in a + 1..k {
                        v += 2 * (lambda - inter[idx[a]][idx[b]]);
                    }
                }
                v
            }
            Measure::Min => {
                let mut v = usize::MAX;
                for a in 0..k {
                    for b in a + 1..k {
                        v = v.min(2 * (lambda - inter[idx[a]][idx[b]]));
                    }
                }
                v
            }
            Measure::Cov => {
                let mut distinct = 0;
                for &i in &idx {
                    for &e in cuts[i].edges() {
                        if uses[e.0] == 0 {
                            distinct += 1;
                        }
                        uses[e.0] += 1;
                    }
                }
                for &i in &idx {
                    for &e in cuts[i].edges() {
                        uses[e.0] = 0;
                    }
                }
                distinct
            }
        };
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, idx.clone()));
        }
        // next nondecreasing tuple
        let Some(pos) = (0..k).rev().find(|&p| idx[p] + 1 < count) else {
            break;
        };
        let next = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = next;
        }
    }
    let (value, witness) = best.expect("at least one multiset");
    Ok(OracleResult { value, lambda, witness: witness.into_iter().map(|i| cuts[i].clone()).collect(), explored })
}

/// Minimum over k-multisets of the largest pairwise intersection, via the
/// bottleneck optimum `d_min = 2 (λ - dhat_min)`.
pub fn brute_force_min_overlap(g: &DirectedGraph, k: usize, caps: &OracleCaps) -> Result<usize> {
    let r = brute_force_diverse(g, k, Measure::Min, caps)?;
    Ok(r.lambda - r.value / 2)
}

/// Largest family of pairwise-disjoint mincuts (branch and bound over cliques).
pub fn brute_force_max_disjoint(g: &DirectedGraph, caps: &OracleCaps) -> Result<OracleResult> {
    let (lambda, cuts) = brute_force_mincuts(g)?;
    if cuts.len() > caps.disjoint {
        return Err(Error::SearchSpaceTooLarge { size: cuts.len() as u128, cap: caps.disjoint as u128 });
    }
    let compatible: Vec<Vec<bool>> =
        cuts.iter().map(|x| cuts.iter().map(|y| x.is_disjoint(y)).collect()).collect();
    let mut search = Clique { compatible: &compatible, best: Vec::new(), current: Vec::new(), explored: 0 };
    search.expand((0..cuts.len()).collect());
    let witness: Vec<MinCut> = search.best.iter().map(|&i| cuts[i].clone()).collect();
    Ok(OracleResult { value: witness.len(), lambda, witness, explored: search.explored })
}

struct Clique<'c> {
    compatible: &'c [Vec<bool>],
    best: Vec<usize>,
    current: Vec<usize>,
    explored: u64,
}

impl Clique<'_> {
    fn expand(&mut self, candidates: Vec<usize>) {
        self.explored += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        for (i, &v) in candidates.iter().enumerate() {
            if self.current.len() + candidates.len() - i <= self.best.len() {
                return;
            }
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&w| self.compatible[v][w]).collect();
            self.current.push(v);
            self.expand(next);
            self.current.pop();
        }
    }
}

/// Edge ids of a cut, as plain integers.
pub fn cut_ids(x: &MinCut) -> Vec<usize> {
    x.edges().iter().map(|e: &EdgeId| e.0).collect()
}
