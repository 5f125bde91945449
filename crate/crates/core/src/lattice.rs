//! The distributive lattice of minimum s-t cuts, represented by the
//! contracted residual graph of a maximum flow.
//!
//! Orientation: a residual arc `u -> w` means every source side containing
//! `u` also contains `w`. A component `B` reaching `A` is ordered `A <= B`,
//! so source sides are down-closed sets (ideals) and the lattice meet is
//! closure intersection.
//!
//! Components that contain no vertex of a covering path are never chosen
//! freely: their membership follows from residual reachability. Closures are
//! therefore sets of *active* components (those meeting a covering path).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{max_flow_unit, path_decomposition, FlowResult, PathSystem};
use crate::graph::{DirectedGraph, EdgeId, VertexId};
use crate::poset::{Ideal, Poset};
use crate::scc::tarjan_scc;

/// A minimum s-t cut as a sorted edge-id set.
///
/// `MinCut::new` only normalizes; [`ClosureDag::validate`] checks that the
/// edges really form a minimum cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinCut(Vec<EdgeId>);

impl MinCut {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        MinCut(edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn intersection_size(&self, other: &MinCut) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn is_disjoint(&self, other: &MinCut) -> bool {
        self.intersection_size(other) == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.0).collect()
    }
}

impl From<Vec<usize>> for MinCut {
    fn from(ids: Vec<usize>) -> Self {
        MinCut::new(ids.into_iter().map(EdgeId))
    }
}

/// A source side, as the sorted set of active components it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Closure(Vec<usize>);

impl Closure {
    pub fn new(comps: impl IntoIterator<Item = usize>) -> Self {
        let mut comps: Vec<usize> = comps.into_iter().collect();
        comps.sort_unstable();
        comps.dedup();
        Closure(comps)
    }

    pub fn comps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn is_subset(&self, other: &Closure) -> bool {
        self.0.iter().all(|&c| other.contains(c))
    }
}

#[derive(Clone, Debug)]
pub struct ClosureDag {
    graph: DirectedGraph,
    paths: PathSystem,
    comp_of: Vec<usize>,
    members: Vec<Vec<VertexId>>,
    dag_edges: Vec<(usize, usize)>,
    s_comp: usize,
    t_comp: usize,
    active: Vec<bool>,
    forced: Vec<bool>,
    forbidden: Vec<bool>,
    jl_comp: Vec<usize>,
    comp_to_jl: Vec<Option<usize>>,
    jl: Poset,
}

/// Builds the closure DAG from a maximum flow of `g`.
pub fn build_closure_dag(g: &DirectedGraph, f: &FlowResult) -> Result<ClosureDag> {
    let paths = path_decomposition(g, f)?;
    let flow = paths.flow();
    let n = g.vertex_count();

    let mut residual = vec![Vec::new(); n];
    for (id, e) in g.edges() {
        if e.tail == e.head {
            continue;
        }
        if flow[id.0] {
            residual[e.head].push(e.tail);
        } else {
            residual[e.tail].push(e.head);
        }
    }
    let (count, raw) = tarjan_scc(&residual);

    // renumber by smallest member vertex
    let mut rename = vec![usize::MAX; count];
    let mut next = 0;
    for v in 0..n {
        if rename[raw[v]] == usize::MAX {
            rename[raw[v]] = next;
            next += 1;
        }
    }
    let comp_of: Vec<usize> = raw.iter().map(|&r| rename[r]).collect();
    let mut members = vec![Vec::new(); count];
    for v in 0..n {
        members[comp_of[v]].push(v);
    }

    let mut dag_edges: Vec<(usize, usize)> = Vec::new();
    for (u, outs) in residual.iter().enumerate() {
        for &w in outs {
            if comp_of[u] != comp_of[w] {
                dag_edges.push((comp_of[u], comp_of[w]));
            }
        }
    }
    dag_edges.sort_unstable();
    dag_edges.dedup();
    let mut succ = vec![Vec::new(); count];
    let mut pred = vec![Vec::new(); count];
    for &(a, b) in &dag_edges {
        succ[a].push(b);
        pred[b].push(a);
    }

    let s_comp = comp_of[g.source()];
    let t_comp = comp_of[g.sink()];
    let forced = reach(&succ, s_comp);
    let forbidden = reach(&pred, t_comp);
    debug_assert!(!forced[t_comp], "maximum flow leaves t unreachable in the residual");

    let mut active = vec![false; count];
    for p in 0..paths.len() {
        for &v in paths.vertices(p) {
            active[comp_of[v]] = true;
        }
    }

    let jl_comp: Vec<usize> = (0..count).filter(|&c| active[c] && !forced[c] && !forbidden[c]).collect();
    let mut comp_to_jl = vec![None; count];
    for (q, &c) in jl_comp.iter().enumerate() {
        comp_to_jl[c] = Some(q);
    }

    // below[c] = free components reachable from c; Tarjan numbers sinks first
    let words = jl_comp.len().div_ceil(64);
    let mut by_raw: Vec<usize> = (0..count).collect();
    by_raw.sort_unstable_by_key(|&c| raw[members[c][0]]);
    let mut below = vec![vec![0u64; words]; count];
    for &c in &by_raw {
        let mut acc = vec![0u64; words];
        for &d in &succ[c] {
            if let Some(q) = comp_to_jl[d] {
                acc[q >> 6] |= 1 << (q & 63);
            }
            for (a, b) in acc.iter_mut().zip(&below[d]) {
                *a |= *b;
            }
        }
        below[c] = acc;
    }
    let mut relations = Vec::new();
    for (q, &c) in jl_comp.iter().enumerate() {
        for (w, &word) in below[c].iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let p = w * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                relations.push((p, q));
            }
        }
    }
    let jl = Poset::new(jl_comp.len(), relations).expect("condensation is acyclic");

    Ok(ClosureDag {
        graph: g.clone(),
        paths,
        comp_of,
        members,
        dag_edges,
        s_comp,
        t_comp,
        active,
        forced,
        forbidden,
        jl_comp,
        comp_to_jl,
        jl,
    })
}

fn reach(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(c) = stack.pop() {
        for &d in &adj[c] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    seen
}

impl ClosureDag {
    /// Max flow plus closure DAG in one step.
    pub fn from_graph(g: &DirectedGraph) -> Result<Self> {
        build_closure_dag(g, &max_flow_unit(g))
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn paths(&self) -> &PathSystem {
        &self.paths
    }

    pub fn lambda(&self) -> usize {
        self.paths.len()
    }

    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.comp_of[v]
    }

    pub fn members(&self, c: usize) -> &[VertexId] {
        &self.members[c]
    }

    /// Condensed residual arcs `(a, b)`: including `a` forces `b`.
    pub fn dag_edges(&self) -> &[(usize, usize)] {
        &self.dag_edges
    }

    pub fn s_comp(&self) -> usize {
        self.s_comp
    }

    pub fn t_comp(&self) -> usize {
        self.t_comp
    }

    pub fn is_active(&self, c: usize) -> bool {
        self.active[c]
    }

    /// Poset J(L) of join-irreducible cuts; element `q` is component
    /// `jl_components()[q]`.
    pub fn join_irreducibles(&self) -> &Poset {
        &self.jl
    }

    pub fn jl_components(&self) -> &[usize] {
        &self.jl_comp
    }

    pub fn jl_index(&self, c: usize) -> Option<usize> {
        self.comp_to_jl[c]
    }

    fn base_comps(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.component_count()).filter(|&c| self.active[c] && self.forced[c])
    }

    /// Checks that `edges` form a minimum cut and returns it normalized.
    pub fn validate(&self, edges: impl IntoIterator<Item = EdgeId>) -> Result<MinCut> {
        let x = MinCut::new(edges);
        self.cut_positions(&x)?;
        Ok(x)
    }

    /// Position of the cut edge on every covering path.
    pub fn cut_positions(&self, x: &MinCut) -> Result<Vec<usize>> {
        let lambda = self.lambda();
        if x.len() != lambda {
            return Err(Error::NotAMinCut(format!("{} edges, but λ = {lambda}", x.len())));
        }
        let mut pos = vec![usize::MAX; lambda];
        for &e in x.edges() {
            if e.0 >= self.graph.edge_count() {
                return Err(Error::NotAMinCut(format!("unknown edge {e}")));
            }
            let Some((p, i)) = self.paths.locate(e) else {
                return Err(Error::NotAMinCut(format!("{e} lies on no covering path")));
            };
            if pos[p] != usize::MAX {
                return Err(Error::NotAMinCut(format!("two edges on covering path {p}")));
            }
            pos[p] = i;
        }
        if !self.graph.separates(x.edges()) {
            return Err(Error::NotAMinCut("t is still reachable from s".into()));
        }
        Ok(pos)
    }

    /// The cut taking edge `pos[p]` on path `p`. Positions must come from a genuine cut.
    pub fn cut_at_positions(&self, pos: &[usize]) -> MinCut {
        MinCut::new(pos.iter().enumerate().map(|(p, &i)| self.paths.path(p)[i]))
    }

    pub fn validate_closure(&self, c: &Closure) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidClosure(msg));
        let count = self.component_count();
        for &comp in c.comps() {
            if comp >= count {
                return bad(format!("unknown component {comp}"));
            }
            if !self.active[comp] {
                return bad(format!("component {comp} meets no covering path"));
            }
            if self.forbidden[comp] {
                return bad(format!("component {comp} reaches the sink component"));
            }
        }
        if !c.contains(self.s_comp) {
            return bad("source component missing".into());
        }
        if let Some(missing) = self.base_comps().find(|&comp| !c.contains(comp)) {
            return bad(format!("component {missing} is forced by the source"));
        }
        for &comp in c.comps() {
            if let Some(q) = self.comp_to_jl[comp] {
                for &l in self.jl.lower_covers(q) {
                    let need = self.jl_comp[l];
                    if !c.contains(need) {
                        return bad(format!("component {comp} forces component {need}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn closure_to_cut(&self, c: &Closure) -> Result<MinCut> {
        self.validate_closure(c)?;
        let mut inside = vec![false; self.component_count()];
        for &comp in c.comps() {
            inside[comp] = true;
        }
        Ok(self.cut_of_components(&inside))
    }

    /// Per path, the edge leaving the last vertex whose component is inside.
    fn cut_of_components(&self, inside: &[bool]) -> MinCut {
        let pos: Vec<usize> = (0..self.lambda())
            .map(|p| {
                let vs = self.paths.vertices(p);
                let first_out = vs
                    .iter()
                    .position(|&v| !inside[self.comp_of[v]])
                    .expect("t is never inside");
                first_out - 1
            })
            .collect();
        self.cut_at_positions(&pos)
    }

    /// Cut for a J(L) member indicator. The indicator must be down-closed.
    pub fn cut_from_jl_indicator(&self, jl_inside: &[bool]) -> MinCut {
        let inside: Vec<bool> = (0..self.component_count())
            .map(|c| match self.comp_to_jl[c] {
                Some(q) => jl_inside[q],
                None => self.forced[c],
            })
            .collect();
        self.cut_of_components(&inside)
    }

    pub fn cut_from_ideal(&self, ideal: &Ideal) -> MinCut {
        self.cut_from_jl_indicator(&ideal.indicator(self.jl.len()))
    }

    pub fn closure_from_ideal(&self, ideal: &Ideal) -> Closure {
        Closure::new(self.base_comps().chain(ideal.members().iter().map(|&q| self.jl_comp[q])))
    }

    /// The J(L) ideal of a valid closure.
    pub fn ideal_of_closure(&self, c: &Closure) -> Ideal {
        self.jl
            .ideal(c.comps().iter().filter_map(|&comp| self.comp_to_jl[comp]))
            .expect("valid closures restrict to ideals")
    }

    pub fn cut_to_closure(&self, x: &MinCut) -> Result<Closure> {
        let pos = self.cut_positions(x)?;
        Ok(Closure::new(pos.iter().enumerate().flat_map(|(p, &i)| {
            self.paths.vertices(p)[..=i].iter().map(|&v| self.comp_of[v])
        })))
    }

    /// `x <= y`: every s-t path meets `x` no later than `y`.
    pub fn precedes(&self, x: &MinCut, y: &MinCut) -> Result<bool> {
        let px = self.cut_positions(x)?;
        let py = self.cut_positions(y)?;
        Ok(px.iter().zip(&py).all(|(a, b)| a <= b))
    }

    /// Leftmost cut of `x ∪ y`: the earlier edge on every path.
    pub fn meet(&self, x: &MinCut, y: &MinCut) -> Result<MinCut> {
        let px = self.cut_positions(x)?;
        let py = self.cut_positions(y)?;
        let pos: Vec<usize> = px.iter().zip(&py).map(|(a, b)| *a.min(b)).collect();
        Ok(self.cut_at_positions(&pos))
    }

    /// Rightmost cut of `x ∪ y`: the later edge on every path.
    pub fn join(&self, x: &MinCut, y: &MinCut) -> Result<MinCut> {
        let px = self.cut_positions(x)?;
        let py = self.cut_positions(y)?;
        let pos: Vec<usize> = px.iter().zip(&py).map(|(a, b)| *a.max(b)).collect();
        Ok(self.cut_at_positions(&pos))
    }

    pub fn leftmost(&self) -> MinCut {
        self.cut_from_ideal(&Ideal::empty())
    }

    pub fn rightmost(&self) -> MinCut {
        self.cut_from_jl_indicator(&vec![true; self.jl.len()])
    }

    /// Mincuts ordered by closure size, then lexicographically by component
    /// ids. Returns at most `limit` cuts and whether more exist.
    pub fn enumerate_mincuts(&self, limit: usize) -> (Vec<MinCut>, bool) {
        let mut out = Vec::new();
        let mut level: BTreeSet<Vec<usize>> = BTreeSet::new();
        level.insert(Vec::new());
        while !level.is_empty() {
            for ideal in &level {
                if out.len() == limit {
                    return (out, true);
                }
                let mut inside = vec![false; self.jl.len()];
                for &q in ideal {
                    inside[q] = true;
                }
                out.push(self.cut_from_jl_indicator(&inside));
            }
            let mut next = BTreeSet::new();
            for ideal in &level {
                let mut inside = vec![false; self.jl.len()];
                for &q in ideal {
                    inside[q] = true;
                }
                for x in 0..self.jl.len() {
                    if !inside[x] && self.jl.lower_covers(x).iter().all(|&l| inside[l]) {
                        let mut grown = ideal.clone();
                        let at = grown.partition_point(|&y| y < x);
                        grown.insert(at, x);
                        next.insert(grown);
                    }
                }
            }
            level = next;
        }
        (out, false)
    }

    /// Smallest cut whose closure contains J(L) element `q`.
    pub fn irreducible_cut(&self, q: usize) -> MinCut {
        self.cut_from_ideal(&self.jl.principal_ideal(q))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph closure_dag {\n  rankdir=LR;\n");
        for c in 0..self.component_count() {
            let label: Vec<String> = self.members[c].iter().map(|v| v.to_string()).collect();
            let shape = if c == self.s_comp || c == self.t_comp {
                "doublecircle"
            } else if self.comp_to_jl[c].is_some() {
                "circle"
            } else {
                "box"
            };
            let style = if self.active[c] { "solid" } else { "dashed" };
            let _ = writeln!(out, "  c{c} [label=\"{{{}}}\", shape={shape}, style={style}];", label.join(","));
        }
        for &(a, b) in &self.dag_edges {
            let _ = writeln!(out, "  c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }

    /// Hasse diagram of J(L), lower elements pointing up.
    pub fn jl_dot(&self) -> String {
        let mut out = String::from("digraph join_irreducibles {\n  rankdir=BT;\n");
        for (q, &c) in self.jl_comp.iter().enumerate() {
            let cut: Vec<String> = self.irreducible_cut(q).edges().iter().map(|e| e.0.to_string()).collect();
            let _ = writeln!(out, "  j{q} [label=\"c{c}: [{}]\"];", cut.join(","));
        }
        for (lower, upper) in self.jl.covers() {
            let _ = writeln!(out, "  j{lower} -> j{upper};");
        }
        out.push_str("}\n");
        out
    }
}
