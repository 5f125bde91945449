//! Unit-capacity maximum flow (Dinic) and edge-disjoint path decomposition.
//!
//! Every traversal scans adjacency in ascending edge-id order, so the flow
//! and the path system are fully determined by the graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    value: usize,
    flow: Vec<bool>,
}

impl FlowResult {
    /// Wraps an externally supplied 0/1 flow. The value is the net outflow of `s`.
    pub fn from_edges(g: &DirectedGraph, flow: Vec<bool>) -> Self {
        assert_eq!(flow.len(), g.edge_count());
        let s = g.source();
        let mut value = 0isize;
        for (id, e) in g.edges() {
            if flow[id.0] && e.tail != e.head {
                if e.tail == s {
                    value += 1;
                }
                if e.head == s {
                    value -= 1;
                }
            }
        }
        FlowResult { value: value.max(0) as usize, flow }
    }

    #[inline]
    pub fn value(&self) -> usize {
        self.value
    }

    #[inline]
    pub fn carries(&self, e: EdgeId) -> bool {
        self.flow[e.0]
    }

    pub fn edge_flows(&self) -> &[bool] {
        &self.flow
    }

    /// Checks capacity, conservation and the stated value against `g`.
    pub fn is_feasible(&self, g: &DirectedGraph) -> bool {
        if self.flow.len() != g.edge_count() {
            return false;
        }
        let mut balance = vec![0isize; g.vertex_count()];
        for (id, e) in g.edges() {
            if self.flow[id.0] {
                if e.tail == e.head {
                    return false;
                }
                balance[e.tail] += 1;
                balance[e.head] -= 1;
            }
        }
        let lambda = self.value as isize;
        (0..g.vertex_count()).all(|v| {
            if v == g.source() {
                balance[v] == lambda
            } else if v == g.sink() {
                balance[v] == -lambda
            } else {
                balance[v] == 0
            }
        })
    }
}

/// Residual network over arcs `2e` (forward) and `2e + 1` (backward).
struct Residual<'g> {
    g: &'g DirectedGraph,
    start: Vec<usize>,
    arcs: Vec<usize>,
    flow: Vec<bool>,
}

impl<'g> Residual<'g> {
    fn new(g: &'g DirectedGraph) -> Self {
        let n = g.vertex_count();
        let mut per_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (id, e) in g.edges() {
            if e.tail == e.head {
                continue;
            }
            per_vertex[e.tail].push(2 * id.0);
            per_vertex[e.head].push(2 * id.0 + 1);
        }
        let mut start = Vec::with_capacity(n + 1);
        let mut arcs = Vec::with_capacity(2 * g.edge_count());
        start.push(0);
        for mut list in per_vertex {
            list.sort_unstable_by_key(|&a| a >> 1);
            arcs.extend(list);
            start.push(arcs.len());
        }
        Residual { g, start, arcs, flow: vec![false; g.edge_count()] }
    }

    #[inline]
    fn head(&self, arc: usize) -> VertexId {
        let e = self.g.edge(EdgeId(arc >> 1));
        if arc & 1 == 0 { e.head } else { e.tail }
    }

    #[inline]
    fn open(&self, arc: usize) -> bool {
        let carried = self.flow[arc >> 1];
        if arc & 1 == 0 { !carried } else { carried }
    }

    fn levels(&self) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.g.vertex_count()];
        let mut queue = VecDeque::new();
        level[self.g.source()] = 0;
        queue.push_back(self.g.source());
        while let Some(v) = queue.pop_front() {
            for &arc in &self.arcs[self.start[v]..self.start[v + 1]] {
                let w = self.head(arc);
                if self.open(arc) && level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    /// One blocking flow on the level graph; returns the number of augmentations.
    fn blocking_flow(&mut self, level: &mut [usize]) -> usize {
        let (s, t) = (self.g.source(), self.g.sink());
        let mut cursor: Vec<usize> = self.start[..self.g.vertex_count()].to_vec();
        let mut vertices = vec![s];
        let mut path: Vec<usize> = Vec::new();
        let mut pushed = 0;
        while let Some(&v) = vertices.last() {
            if v == t {
                for &arc in &path {
                    let e = arc >> 1;
                    self.flow[e] = arc & 1 == 0;
                }
                pushed += 1;
                vertices.truncate(1);
                path.clear();
                continue;
            }
            let end = self.start[v + 1];
            let mut next = None;
            while cursor[v] < end {
                let arc = self.arcs[cursor[v]];
                let w = self.head(arc);
                if self.open(arc) && level[w] != usize::MAX && level[w] == level[v] + 1 {
                    next = Some((arc, w));
                    break;
                }
                cursor[v] += 1;
            }
            match next {
                Some((arc, w)) => {
                    vertices.push(w);
                    path.push(arc);
                }
                None => {
                    level[v] = usize::MAX;
                    vertices.pop();
                    if let Some(&parent) = vertices.last() {
                        path.pop();
                        cursor[parent] += 1;
                    }
                }
            }
        }
        pushed
    }
}

/// Maximum s-t flow with unit capacities (Dinic).
pub fn max_flow_unit(g: &DirectedGraph) -> FlowResult {
    let mut residual = Residual::new(g);
    let mut value = 0;
    loop {
        let mut level = residual.levels();
        if level[g.sink()] == usize::MAX {
            break;
        }
        value += residual.blocking_flow(&mut level);
    }
    FlowResult { value, flow: residual.flow }
}

/// Removes every flow cycle, scanning vertices and edges in ascending id order.
/// The flow value and conservation are preserved.
pub fn cancel_flow_cycles(g: &DirectedGraph, flow: &mut [bool]) {
    const FRESH: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let n = g.vertex_count();
    let mut state = vec![FRESH; n];
    let mut cursor = vec![0usize; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut via: Vec<EdgeId> = Vec::new();

    for root in 0..n {
        if state[root] != FRESH {
            continue;
        }
        state[root] = ACTIVE;
        stack.push(root);
        while let Some(&v) = stack.last() {
            let outs = g.out_edges(v);
            let mut descended = false;
            let mut cancelled = false;
            while cursor[v] < outs.len() {
                let e = outs[cursor[v]];
                cursor[v] += 1;
                if !flow[e.0] {
                    continue;
                }
                let w = g.edge(e).head;
                match state[w] {
                    FRESH => {
                        state[w] = ACTIVE;
                        stack.push(w);
                        via.push(e);
                        descended = true;
                    }
                    ACTIVE => {
                        flow[e.0] = false;
                        while *stack.last().unwrap() != w {
                            let x = stack.pop().unwrap();
                            state[x] = FRESH;
                            let back = via.pop().unwrap();
                            flow[back.0] = false;
                        }
                        cancelled = true;
                    }
                    _ => continue,
                }
                break;
            }
            if !descended && !cancelled {
                state[v] = DONE;
                stack.pop();
                via.pop();
            }
        }
    }
}

/// λ edge-disjoint s-t paths covering the (cycle-free) flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    paths: Vec<Vec<EdgeId>>,
    vertices: Vec<Vec<VertexId>>,
    edge_to_path: Vec<Option<(usize, usize)>>,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Vec<EdgeId>] {
        &self.paths
    }

    pub fn path(&self, p: usize) -> &[EdgeId] {
        &self.paths[p]
    }

    /// Vertex sequence of path `p`, from `s` to `t`.
    pub fn vertices(&self, p: usize) -> &[VertexId] {
        &self.vertices[p]
    }

    /// `(path index, position)` of a path edge.
    #[inline]
    pub fn locate(&self, e: EdgeId) -> Option<(usize, usize)> {
        self.edge_to_path.get(e.0).copied().flatten()
    }

    #[inline]
    pub fn is_path_edge(&self, e: EdgeId) -> bool {
        self.locate(e).is_some()
    }

    /// The flow induced by the paths.
    pub fn flow(&self) -> Vec<bool> {
        self.edge_to_path.iter().map(Option::is_some).collect()
    }
}

pub fn path_decomposition(g: &DirectedGraph, f: &FlowResult) -> Result<PathSystem> {
    if f.value() == 0 {
        return Err(Error::Disconnected);
    }
    let mut flow = f.edge_flows().to_vec();
    cancel_flow_cycles(g, &mut flow);

    let mut cursor = vec![0usize; g.vertex_count()];
    let mut paths = Vec::with_capacity(f.value());
    let mut vertices = Vec::with_capacity(f.value());
    let mut edge_to_path = vec![None; g.edge_count()];
    for p in 0..f.value() {
        let mut v = g.source();
        let mut edges = Vec::new();
        let mut seq = vec![v];
        while v != g.sink() {
            let outs = g.out_edges(v);
            let e = loop {
                let e = *outs
                    .get(cursor[v])
                    .expect("conservation guarantees an outgoing flow edge");
                cursor[v] += 1;
                if flow[e.0] {
                    break e;
                }
            };
            edge_to_path[e.0] = Some((p, edges.len()));
            edges.push(e);
            v = g.edge(e).head;
            seq.push(v);
        }
        paths.push(edges);
        vertices.push(seq);
    }
    Ok(PathSystem { paths, vertices, edge_to_path })
}
