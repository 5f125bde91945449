//! Seeded random instances with `s = 0` and `t = n - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

use super::rng::SplitMix64;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Random spanning arborescence from `s` plus random forward edges.
    Dag,
    /// Vertices split into layers of about two, edges between consecutive layers.
    Layered,
    /// A few s-t paths covering every vertex plus arbitrary extra edges.
    PathGraph,
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dag" => Ok(Model::Dag),
            "layered" => Ok(Model::Layered),
            "path_graph" | "path-graph" => Ok(Model::PathGraph),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Dag => "dag",
            Model::Layered => "layered",
            Model::PathGraph => "path_graph",
        })
    }
}

pub fn gen_random_instance(seed: u64, n: usize, m: usize, model: Model) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::InfeasibleParams(format!("need n >= 2, got {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let edges = match model {
        Model::Dag => dag(&mut rng, n, m)?,
        Model::Layered => layered(&mut rng, n, m)?,
        Model::PathGraph => path_graph(&mut rng, n, m)?,
    };
    DirectedGraph::new(n, 0, n - 1, edges)
}

fn dag(rng: &mut SplitMix64, n: usize, m: usize) -> Result<Vec<(usize, usize)>> {
    if m < n - 1 {
        return Err(Error::InfeasibleParams(format!("dag needs m >= n - 1 = {}", n - 1)));
    }
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.below(v), v)).collect();
    while edges.len() < m {
        let u = rng.below(n - 1);
        let v = rng.range(u + 1, n - 1);
        edges.push((u, v));
    }
    rng.shuffle(&mut edges);
    Ok(edges)
}

fn layered(rng: &mut SplitMix64, n: usize, m: usize) -> Result<Vec<(usize, usize)>> {
    let inner = n - 2;
    let need = if inner == 0 { 1 } else { 2 * inner };
    if m < need {
        return Err(Error::InfeasibleParams(format!("layered needs m >= {need}")));
    }
    // layer 0 = {s}, last layer = {t}
    let width = 2;
    let count = inner.div_ceil(width);
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    for l in 0..count {
        layers.push((1 + l * width..(1 + (l + 1) * width).min(n - 1)).collect());
    }
    layers.push(vec![n - 1]);
    let mut edges = Vec::new();
    for l in 1..layers.len() - 1 {
        for &v in &layers[l] {
            let prev = &layers[l - 1];
            let next = &layers[l + 1];
            edges.push((prev[rng.below(prev.len())], v));
            edges.push((v, next[rng.below(next.len())]));
        }
    }
    while edges.len() < m {
        let l = rng.below(layers.len() - 1);
        let (from, to) = (&layers[l], &layers[l + 1]);
        edges.push((from[rng.below(from.len())], to[rng.below(to.len())]));
    }
    rng.shuffle(&mut edges);
    Ok(edges)
}

fn path_graph(rng: &mut SplitMix64, n: usize, m: usize) -> Result<Vec<(usize, usize)>> {
    let inner = n - 2;
    let h = (inner / 2).clamp(1, 3);
    let skeleton = inner + h;
    if m < skeleton {
        return Err(Error::InfeasibleParams(format!("path_graph needs m >= {skeleton}")));
    }
    let mut order: Vec<usize> = (1..n - 1).collect();
    rng.shuffle(&mut order);
    let mut edges = Vec::new();
    for p in 0..h {
        let mut prev = 0;
        for &v in order.iter().skip(p).step_by(h) {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, n - 1));
    }
    while edges.len() < m {
        let u = rng.below(n - 1);
        let v = rng.range(1, n - 1);
        if u != v {
            edges.push((u, v));
        }
    }
    rng.shuffle(&mut edges);
    Ok(edges)
}

/// `paths` s-t paths with about `edges` edges in total, each path visiting
/// fresh vertices, plus a sprinkling of forward cross edges between paths.
/// Only path edges leave `s`, so the cut size is exactly `paths`.
pub fn synthetic_path_graph(seed: u64, paths: usize, edges: usize) -> Result<DirectedGraph> {
    if paths == 0 || edges < 2 * paths {
        return Err(Error::InfeasibleParams("need paths >= 1 and edges >= 2 * paths".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let path_edges = edges * 3 / 4;
    let len = (path_edges / paths).max(2);
    let inner = len - 1;
    let n = 2 + paths * inner;
    let t = n - 1;
    let vertex = |p: usize, i: usize| 1 + p * inner + i;
    let mut list = Vec::with_capacity(edges);
    for p in 0..paths {
        list.push((0, vertex(p, 0)));
        for i in 1..inner {
            list.push((vertex(p, i - 1), vertex(p, i)));
        }
        list.push((vertex(p, inner - 1), t));
    }
    while list.len() < edges {
        let (p, q) = (rng.below(paths), rng.below(paths));
        let i = rng.below(inner);
        let j = (i + rng.below(4)).min(inner - 1);
        list.push((vertex(p, i), vertex(q, j)));
    }
    DirectedGraph::new(n, 0, t, list)
}
