//! Maximum collections of pairwise-disjoint minimum s-t cuts.
//!
//! The graph is reduced to its covering paths plus, for every path vertex
//! `u` and path `p`, the furthest vertex of `p` that `u` reaches through
//! non-path edges and off-path vertices. A left-to-right sweep then
//! alternates between marking vertices that every later cut must keep on
//! the source side and cutting directly after the marked prefix of each path.

use std::fmt::Write as _;

use crate::error::Result;
use crate::flow::{max_flow_unit, path_decomposition, PathSystem};
use crate::graph::{DirectedGraph, EdgeId, VertexId};
use crate::lattice::MinCut;

#[derive(Clone, Debug)]
pub struct PathGraph {
    graph: DirectedGraph,
    paths: PathSystem,
    on_paths: Vec<Vec<(usize, usize)>>,
    reach: Vec<Vec<(usize, usize)>>,
    non_path_edges: Vec<EdgeId>,
}

pub fn build_augmented_path_graph(g: &DirectedGraph) -> Result<PathGraph> {
    let paths = path_decomposition(g, &max_flow_unit(g))?;
    let n = g.vertex_count();
    let mut on_paths = vec![Vec::new(); n];
    for p in 0..paths.len() {
        for (i, &v) in paths.vertices(p).iter().enumerate() {
            on_paths[v].push((p, i));
        }
    }
    let non_path_edges: Vec<EdgeId> = g.edges().map(|(id, _)| id).filter(|&e| !paths.is_path_edge(e)).collect();

    let mut reach: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut visited = vec![usize::MAX; n];
    let mut assigned = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for p in 0..paths.len() {
        let vertices = paths.vertices(p);
        for (pos, &v) in vertices.iter().enumerate().rev() {
            stack.push(v);
            while let Some(x) = stack.pop() {
                for &e in g.in_edges(x) {
                    if paths.is_path_edge(e) {
                        continue;
                    }
                    let u = g.edge(e).tail;
                    if u == x {
                        continue;
                    }
                    if on_paths[u].is_empty() {
                        if visited[u] != p {
                            visited[u] = p;
                            stack.push(u);
                        }
                        continue;
                    }
                    let own = on_paths[u].iter().find(|&&(q, _)| q == p).map(|&(_, i)| i);
                    if own.is_some_and(|i| i >= pos) || assigned[u] == p {
                        continue;
                    }
                    assigned[u] = p;
                    reach[u].push((p, pos));
                }
            }
        }
    }
    Ok(PathGraph { graph: g.clone(), paths, on_paths, reach, non_path_edges })
}

impl PathGraph {
    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn paths(&self) -> &PathSystem {
        &self.paths
    }

    pub fn height(&self) -> usize {
        self.paths.len()
    }

    pub fn non_path_edges(&self) -> &[EdgeId] {
        &self.non_path_edges
    }

    /// `(path, position)` pairs of the furthest vertices `v` reaches off-path,
    /// sorted by path.
    pub fn rightmost_reach(&self, v: VertexId) -> &[(usize, usize)] {
        &self.reach[v]
    }

    /// `(path, position)` of every occurrence of `v` on a covering path.
    pub fn positions(&self, v: VertexId) -> &[(usize, usize)] {
        &self.on_paths[v]
    }

    /// The augmented path graph as a plain graph on the same vertex ids,
    /// with the original id of each path edge (`None` for shortcuts).
    pub fn materialize(&self) -> (DirectedGraph, Vec<Option<EdgeId>>) {
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (id, e) in self.graph.edges() {
            if self.paths.is_path_edge(id) {
                edges.push((e.tail, e.head));
                origin.push(Some(id));
            }
        }
        for (u, entries) in self.reach.iter().enumerate() {
            for &(p, pos) in entries {
                edges.push((u, self.paths.vertices(p)[pos]));
                origin.push(None);
            }
        }
        let h = DirectedGraph::new(self.graph.vertex_count(), self.graph.source(), self.graph.sink(), edges)
            .expect("endpoints come from the original graph");
        (h, origin)
    }

    /// Path edges in black, non-path edges in gray, shortcuts dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph path_graph {\n  rankdir=LR;\n");
        for (id, e) in self.graph.edges() {
            let colour = if self.paths.is_path_edge(id) { "black" } else { "gray" };
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\", color={colour}];", e.tail, e.head, id.0);
        }
        for (u, entries) in self.reach.iter().enumerate() {
            for &(p, pos) in entries {
                let _ = writeln!(out, "  v{u} -> v{} [style=dashed, color=blue];", self.paths.vertices(p)[pos]);
            }
        }
        out.push_str("}\n");
        out
    }
}

struct SweepState<'h> {
    h: &'h PathGraph,
    marked: Vec<bool>,
    frontier: Vec<usize>,
    fresh: Vec<VertexId>,
}

impl SweepState<'_> {
    /// Marks the first `pos + 1` vertices of path `p`, closing over shared vertices.
    fn mark_prefix(&mut self, p: usize, pos: usize) {
        let mut work = vec![(p, pos)];
        while let Some((q, upto)) = work.pop() {
            let vertices = self.h.paths.vertices(q);
            while self.frontier[q] <= upto {
                let v = vertices[self.frontier[q]];
                self.frontier[q] += 1;
                if !self.marked[v] {
                    self.marked[v] = true;
                    self.fresh.push(v);
                    work.extend(self.h.on_paths[v].iter().copied().filter(|&(r, _)| r != q));
                }
            }
        }
    }
}

/// Leftmost-greedy sweep: the returned cuts are pairwise disjoint, left-right
/// ordered, start with the leftmost mincut and are as many as possible.
pub fn sweep_max_disjoint(h: &PathGraph) -> Vec<MinCut> {
    let lambda = h.height();
    let mut state = SweepState {
        h,
        marked: vec![false; h.graph.vertex_count()],
        frontier: vec![0; lambda],
        fresh: Vec::new(),
    };
    for p in 0..lambda {
        state.mark_prefix(p, 0);
    }
    let t = h.graph.sink();
    let mut found = Vec::new();
    loop {
        while !state.fresh.is_empty() {
            let mut round = std::mem::take(&mut state.fresh);
            round.sort_unstable();
            for u in round {
                for &(p, pos) in &h.reach[u] {
                    state.mark_prefix(p, pos);
                }
            }
        }
        if state.marked[t] {
            break;
        }
        let heads = state.frontier.clone();
        found.push(MinCut::new((0..lambda).map(|p| h.paths.path(p)[heads[p] - 1])));
        for (p, &pos) in heads.iter().enumerate() {
            state.mark_prefix(p, pos);
        }
    }
    found
}

pub fn max_disjoint_mincuts(g: &DirectedGraph) -> Result<Vec<MinCut>> {
    Ok(sweep_max_disjoint(&build_augmented_path_graph(g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::fixture;

    fn cut(ids: &[usize]) -> MinCut {
        MinCut::from(ids.to_vec())
    }

    #[test]
    fn cross_path_graph() {
        let h = build_augmented_path_graph(&fixture("cross").unwrap()).unwrap();
        assert_eq!(h.non_path_edges(), &[EdgeId(4)]);
        // a = 1 reaches b = 1st position of path 1
        assert_eq!(h.rightmost_reach(1), &[(1, 1)]);
        assert_eq!(sweep_max_disjoint(&h), vec![cut(&[0, 1]), cut(&[2, 3])]);
    }

    #[test]
    fn diamond_and_path2() {
        let h = build_augmented_path_graph(&fixture("diamond").unwrap()).unwrap();
        assert!(h.non_path_edges().is_empty());
        assert!((0..4).all(|v| h.rightmost_reach(v).is_empty()));
        assert_eq!(sweep_max_disjoint(&h), vec![cut(&[0, 1]), cut(&[2, 3])]);
        assert_eq!(max_disjoint_mincuts(&fixture("path2").unwrap()).unwrap(), vec![cut(&[0]), cut(&[1])]);
    }

    #[test]
    fn detour_through_off_path_vertices() {
        // paths s=0 -> 1 -> 2 -> t=5 and s -> 3 -> t, detour 1 -> 4 -> 3 off-path
        let g = DirectedGraph::new(6, 0, 5, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 5), (1, 4), (4, 3)]).unwrap();
        let h = build_augmented_path_graph(&g).unwrap();
        assert_eq!(h.rightmost_reach(1), &[(1, 1)]);
        let (aug, origin) = h.materialize();
        assert_eq!(aug.edge_count(), 6);
        assert_eq!(origin.iter().filter(|o| o.is_none()).count(), 1);
        let cuts = max_disjoint_mincuts(&g).unwrap();
        assert_eq!(cuts, vec![cut(&[0, 3]), cut(&[1, 4])]);
    }

    #[test]
    fn disconnected() {
        let g = DirectedGraph::new(2, 0, 1, [(1, 0)]).unwrap();
        assert_eq!(max_disjoint_mincuts(&g).unwrap_err(), Error::Disconnected);
    }
}
