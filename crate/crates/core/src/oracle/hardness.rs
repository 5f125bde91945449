//! Reduction instances for the bottleneck (min) diversity measure, built
//! from matched bipartite graphs.

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

use super::rng::SplitMix64;

/// Bipartite graph with sides `a_0..a_{m-1}` and `b_0..b_{m-1}` that has a
/// perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteInstance {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteInstance {
    /// Validates even `m`, endpoints in range and a perfect matching.
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if m == 0 || m % 2 == 1 {
            return Err(Error::BadInstance(format!("side size must be even and positive, got {m}")));
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= m || b >= m) {
            return Err(Error::BadInstance(format!("edge ({a}, {b}) out of range for m = {m}")));
        }
        let b = BipartiteInstance { m, edges };
        if b.matching_size() < m {
            return Err(Error::BadInstance("no perfect matching".into()));
        }
        Ok(b)
    }

    /// The diagonal matching `(a_i, b_i)` plus each other pair with probability `p_num / p_den`.
    pub fn random(seed: u64, m: usize, p_num: usize, p_den: usize) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        let mut edges = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a == b || rng.chance(p_num, p_den) {
                    edges.push((a, b));
                }
            }
        }
        BipartiteInstance::new(m, edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Maximum matching size (augmenting paths).
    pub fn matching_size(&self) -> usize {
        let mut adj = vec![Vec::new(); self.m];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        let mut mate_of_b = vec![usize::MAX; self.m];
        let mut size = 0;
        for root in 0..self.m {
            let mut seen = vec![false; self.m];
            if augment(root, &adj, &mut seen, &mut mate_of_b) {
                size += 1;
            }
        }
        size
    }

    /// Whether some minimum vertex cover takes exactly `m / 2` vertices from
    /// each side. Exhaustive over all balanced subsets.
    pub fn has_balanced_minimum_cover(&self) -> bool {
        assert!(self.m <= 16, "exhaustive search is limited to m <= 16");
        let half = self.m / 2;
        let subsets: Vec<u32> = (0u32..1 << self.m).filter(|s| s.count_ones() as usize == half).collect();
        // a perfect matching forces every cover to have at least m vertices
        subsets.iter().any(|&sa| {
            subsets
                .iter()
                .any(|&sb| self.edges.iter().all(|&(a, b)| sa >> a & 1 == 1 || sb >> b & 1 == 1))
        })
    }
}

fn augment(a: usize, adj: &[Vec<usize>], seen: &mut [bool], mate_of_b: &mut [usize]) -> bool {
    for &b in &adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if mate_of_b[b] == usize::MAX || augment(mate_of_b[b], adj, seen, mate_of_b) {
            mate_of_b[b] = a;
            return true;
        }
    }
    false
}

/// Vertex layout of [`gen_hardness_instance`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HardnessLayout {
    pub m: usize,
}

impl HardnessLayout {
    pub const S: usize = 0;

    pub fn t(&self) -> usize {
        1
    }
    pub fn a(&self, i: usize) -> usize {
        2 + i
    }
    pub fn b(&self, i: usize) -> usize {
        2 + self.m + i
    }
    pub fn u(&self) -> usize {
        2 + 2 * self.m
    }
    pub fn w(&self) -> usize {
        3 + 2 * self.m
    }
    pub fn block_a(&self, i: usize) -> usize {
        4 + 2 * self.m + i
    }
    pub fn block_b(&self, i: usize) -> usize {
        4 + 2 * self.m + self.m / 2 + i
    }
    pub fn vertex_count(&self) -> usize {
        4 + 3 * self.m
    }
}

/// Builds `H`: the bipartite graph directed from `A` to `B` with `s -> A`
/// and `B -> t`, the gadget path `s -> u -> w -> t` with `a_i -> u` and
/// `w -> b_i`, and a complete bipartite block of `m/2 + m/2` vertices fed
/// from `s` and drained into `t`. Its minimum cut size is `3m/2 + 1`.
pub fn gen_hardness_instance(b: &BipartiteInstance) -> DirectedGraph {
    let m = b.m();
    let at = HardnessLayout { m };
    let s = HardnessLayout::S;
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((s, at.a(i)));
    }
    for &(x, y) in b.edges() {
        edges.push((at.a(x), at.b(y)));
    }
    for i in 0..m {
        edges.push((at.b(i), at.t()));
    }
    edges.push((s, at.u()));
    edges.push((at.u(), at.w()));
    edges.push((at.w(), at.t()));
    for i in 0..m {
        edges.push((at.a(i), at.u()));
        edges.push((at.w(), at.b(i)));
    }
    let half = m / 2;
    for i in 0..half {
        edges.push((s, at.block_a(i)));
    }
    for i in 0..half {
        for j in 0..half {
            edges.push((at.block_a(i), at.block_b(j)));
        }
    }
    for j in 0..half {
        edges.push((at.block_b(j), at.t()));
    }
    DirectedGraph::new(at.vertex_count(), s, at.t(), edges).expect("layout is in range")
}
