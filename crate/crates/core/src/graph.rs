//! Directed multigraphs with a distinguished source and sink, plus the
//! DIMACS and JSON wire formats and the built-in named fixtures.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Dense edge identifier, `0..m` in input order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Directed multigraph with source `s` and sink `t`.
///
/// Parallel edges and self-loops are stored as given. Adjacency lists are
/// kept sorted by edge id so every traversal is deterministic.
#[derive(Clone, Debug)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<Edge>,
    source: VertexId,
    sink: VertexId,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.source == other.source
            && self.sink == other.sink
            && self.edges == other.edges
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    pub fn new(
        n: usize,
        source: VertexId,
        sink: VertexId,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let invalid = |message: String| Error::Parse { line: 0, message };
        if source >= n || sink >= n {
            return Err(invalid(format!("terminal out of range for n = {n}")));
        }
        if source == sink {
            return Err(invalid("source equals sink".into()));
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut stored = Vec::new();
        for (i, (tail, head)) in edges.into_iter().enumerate() {
            if tail >= n || head >= n {
                return Err(invalid(format!("edge ({tail}, {head}) out of range for n = {n}")));
            }
            out_adj[tail].push(EdgeId(i));
            in_adj[head].push(EdgeId(i));
            stored.push(Edge { tail, head });
        }
        Ok(DirectedGraph { n, edges: stored, source, sink, out_adj, in_adj })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn source(&self) -> VertexId {
        self.source
    }

    #[inline]
    pub fn sink(&self) -> VertexId {
        self.sink
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (EdgeId, Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, &e)| (EdgeId(i), e))
    }

    #[inline]
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    /// Vertices reachable from `s` when the edges flagged in `removed` are deleted.
    pub fn reachable_avoiding(&self, removed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.out_adj[v] {
                if removed[e.0] {
                    continue;
                }
                let w = self.edges[e.0].head;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True if deleting `cut` leaves no s-t path.
    pub fn separates(&self, cut: &[EdgeId]) -> bool {
        let mut removed = vec![false; self.edge_count()];
        for &e in cut {
            if e.0 < removed.len() {
                removed[e.0] = true;
            }
        }
        !self.reachable_avoiding(&removed)[self.sink]
    }

    /// Edges leaving the vertex set flagged in `inside`, in id order.
    pub fn boundary(&self, inside: &[bool]) -> Vec<EdgeId> {
        self.edges()
            .filter(|(_, e)| inside[e.tail] && !inside[e.head])
            .map(|(id, _)| id)
            .collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p max {} {}\n", self.n, self.edges.len());
        out.push_str(&format!("n {} s\n", self.source + 1));
        out.push_str(&format!("n {} t\n", self.sink + 1));
        for e in &self.edges {
            out.push_str(&format!("a {} {} 1\n", e.tail + 1, e.head + 1));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let wire = JsonGraph {
            n: self.n,
            s: self.source,
            t: self.sink,
            edges: self.edges.iter().map(|e| [e.tail, e.head]).collect(),
        };
        serde_json::to_string(&wire).expect("graph serializes")
    }

    pub fn serialize(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::Dimacs => self.to_dimacs(),
            GraphFormat::Json => self.to_json(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    s: usize,
    t: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    Json,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dimacs" => Ok(GraphFormat::Dimacs),
            "json" => Ok(GraphFormat::Json),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<DirectedGraph> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::Json => parse_json(text),
    }
}

fn parse_json(text: &str) -> Result<DirectedGraph> {
    let wire: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    DirectedGraph::new(wire.n, wire.s, wire.t, wire.edges.iter().map(|&[u, v]| (u, v)))
}

fn parse_dimacs(text: &str) -> Result<DirectedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut source = None;
    let mut sink = None;
    let mut arcs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        let fields: Vec<&str> = tokens.collect();
        let number = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| err(format!("expected a non-negative integer, got `{tok}`")))
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 3 || fields[0] != "max" {
                    return Err(err("expected `p max <n> <m>`".into()));
                }
                header = Some((number(fields[1])?, number(fields[2])?));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| err("node line before problem line".into()))?;
                if fields.len() != 2 {
                    return Err(err("expected `n <v> s` or `n <v> t`".into()));
                }
                let v = number(fields[0])?;
                if v == 0 || v > n {
                    return Err(err(format!("vertex {v} out of range 1..={n}")));
                }
                let slot = match fields[1] {
                    "s" => &mut source,
                    "t" => &mut sink,
                    other => return Err(err(format!("unknown terminal designator `{other}`"))),
                };
                if slot.is_some() {
                    return Err(err(format!("terminal `{}` given twice", fields[1])));
                }
                *slot = Some(v - 1);
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| err("arc line before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err("expected `a <u> <v> <cap>`".into()));
                }
                let u = number(fields[0])?;
                let v = number(fields[1])?;
                // capacity must be well-formed but is otherwise ignored
                fields[2]
                    .parse::<i64>()
                    .map_err(|_| err(format!("bad capacity `{}`", fields[2])))?;
                if u == 0 || u > n || v == 0 || v > n {
                    return Err(err(format!("arc ({u}, {v}) out of range 1..={n}")));
                }
                arcs.push((u - 1, v - 1));
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }

    let last = text.lines().count();
    let err = |message: &str| Error::Parse { line: last, message: message.into() };
    let (n, m) = header.ok_or_else(|| err("missing problem line"))?;
    let source = source.ok_or_else(|| err("missing source designator"))?;
    let sink = sink.ok_or_else(|| err("missing sink designator"))?;
    if arcs.len() != m {
        return Err(err(&format!("problem line declares {m} arcs but {} were given", arcs.len())));
    }
    if source == sink {
        return Err(err("source equals sink"));
    }
    DirectedGraph::new(n, source, sink, arcs)
}

/// Built-in named instances: `path2`, `diamond`, `cross`.
pub fn fixture(name: &str) -> Option<DirectedGraph> {
    // vertices: s = 0, then a/b or v, t last
    let (n, edges): (usize, &[(usize, usize)]) = match name {
        "path2" => (3, &[(0, 1), (1, 2)]),
        "diamond" => (4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        "cross" => (4, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)]),
        _ => return None,
    };
    Some(DirectedGraph::new(n, 0, n - 1, edges.iter().copied()).expect("fixture is valid"))
}

pub const FIXTURE_NAMES: [&str; 3] = ["path2", "diamond", "cross"];
