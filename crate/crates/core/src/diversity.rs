//! Diversity measures over collections of minimum cuts, edge multiplicities,
//! left-right normalization and the interval view of shared edges.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::lattice::{ClosureDag, MinCut};

/// Ordered k-tuple of mincuts of one graph. Repeats are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutCollection {
    cuts: Vec<MinCut>,
}

impl CutCollection {
    pub fn new(cuts: Vec<MinCut>) -> Self {
        CutCollection { cuts }
    }

    pub fn k(&self) -> usize {
        self.cuts.len()
    }

    pub fn cuts(&self) -> &[MinCut] {
        &self.cuts
    }

    pub fn into_cuts(self) -> Vec<MinCut> {
        self.cuts
    }

    /// Cut size, taken from the first cut (0 for an empty collection).
    pub fn lambda(&self) -> usize {
        self.cuts.first().map_or(0, MinCut::len)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Sum,
    Cov,
    Min,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Sum => "sum",
            Measure::Cov => "cov",
            Measure::Min => "min",
        })
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sum" => Ok(Measure::Sum),
            "cov" => Ok(Measure::Cov),
            "min" => Ok(Measure::Min),
            other => Err(format!("unknown measure `{other}`")),
        }
    }
}

/// How many cuts of `c` contain each edge (edges of no cut are omitted).
pub fn multiplicities(c: &CutCollection) -> BTreeMap<EdgeId, usize> {
    let mut mu = BTreeMap::new();
    for x in c.cuts() {
        for &e in x.edges() {
            *mu.entry(e).or_insert(0) += 1;
        }
    }
    mu
}

fn symmetric_difference(x: &MinCut, y: &MinCut) -> usize {
    x.len() + y.len() - 2 * x.intersection_size(y)
}

pub fn d_sum(c: &CutCollection) -> usize {
    let cuts = c.cuts();
    let mut total = 0;
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            total += symmetric_difference(&cuts[i], &cuts[j]);
        }
    }
    total
}

/// Number of distinct edges used by the collection.
pub fn d_cov(c: &CutCollection) -> usize {
    multiplicities(c).len()
}

pub fn d_min(c: &CutCollection) -> Result<usize> {
    let cuts = c.cuts();
    if cuts.len() < 2 {
        return Err(Error::BadK { k: cuts.len(), reason: "bottleneck diversity needs at least two cuts" });
    }
    let mut best = usize::MAX;
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            best = best.min(symmetric_difference(&cuts[i], &cuts[j]));
        }
    }
    Ok(best)
}

/// Largest pairwise intersection over distinct positions `i < j`.
pub fn dhat_min(c: &CutCollection) -> Result<usize> {
    let cuts = c.cuts();
    if cuts.len() < 2 {
        return Err(Error::BadK { k: cuts.len(), reason: "bottleneck diversity needs at least two cuts" });
    }
    let mut worst = 0;
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            worst = worst.max(cuts[i].intersection_size(&cuts[j]));
        }
    }
    Ok(worst)
}

pub fn dhat_sum(c: &CutCollection) -> usize {
    multiplicities(c).values().map(|&m| m * (m - 1) / 2).sum()
}

pub fn dhat_cov(c: &CutCollection) -> usize {
    multiplicities(c).values().map(|&m| m - 1).sum()
}

/// `d_sum = 2 (λ C(k,2) - dhat_sum)`.
pub fn sum_from_dhat(lambda: usize, k: usize, dhat: usize) -> usize {
    2 * (lambda * (k * k.saturating_sub(1) / 2) - dhat)
}

/// `d_cov = k λ - dhat_cov`.
pub fn cov_from_dhat(lambda: usize, k: usize, dhat: usize) -> usize {
    k * lambda - dhat
}

/// Uncrosses the collection by replacing every pair `(X_i, X_j)`, `i < j`,
/// with `(X_i ∧ X_j, X_i ∨ X_j)`.
pub fn lro(dag: &ClosureDag, c: &CutCollection) -> Result<CutCollection> {
    let mut pos: Vec<Vec<usize>> = c.cuts().iter().map(|x| dag.cut_positions(x)).collect::<Result<_>>()?;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            let (left, right) = pos.split_at_mut(j);
            for (a, b) in left[i].iter_mut().zip(right[0].iter_mut()) {
                if *a > *b {
                    std::mem::swap(a, b);
                }
            }
        }
    }
    Ok(CutCollection::new(pos.iter().map(|p| dag.cut_at_positions(p)).collect()))
}

/// First out-of-order pair `(i, j)`, 0-based, if any.
pub fn order_violation(dag: &ClosureDag, c: &CutCollection) -> Result<Option<(usize, usize)>> {
    let pos: Vec<Vec<usize>> = c.cuts().iter().map(|x| dag.cut_positions(x)).collect::<Result<_>>()?;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i].iter().zip(&pos[j]).any(|(a, b)| a > b) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_left_right_ordered(dag: &ClosureDag, c: &CutCollection) -> Result<bool> {
    Ok(order_violation(dag, c)?.is_none())
}

fn require_ordered(dag: &ClosureDag, c: &CutCollection) -> Result<()> {
    match order_violation(dag, c)? {
        Some((i, j)) => Err(Error::NotLeftRightOrdered { first: i + 1, second: j + 1 }),
        None => Ok(()),
    }
}

fn componentwise(
    dag: &ClosureDag,
    a: &CutCollection,
    b: &CutCollection,
    op: fn(&ClosureDag, &MinCut, &MinCut) -> Result<MinCut>,
) -> Result<CutCollection> {
    if a.k() != b.k() {
        return Err(Error::ShapeMismatch { left: a.k(), right: b.k() });
    }
    require_ordered(dag, a)?;
    require_ordered(dag, b)?;
    let cuts = a.cuts().iter().zip(b.cuts()).map(|(x, y)| op(dag, x, y)).collect::<Result<_>>()?;
    Ok(CutCollection::new(cuts))
}

/// Componentwise join of two left-right ordered collections of equal size.
pub fn collection_join(dag: &ClosureDag, a: &CutCollection, b: &CutCollection) -> Result<CutCollection> {
    componentwise(dag, a, b, ClosureDag::join)
}

/// Componentwise meet of two left-right ordered collections of equal size.
pub fn collection_meet(dag: &ClosureDag, a: &CutCollection, b: &CutCollection) -> Result<CutCollection> {
    componentwise(dag, a, b, ClosureDag::meet)
}

/// For a left-right ordered collection, the 1-based range `(i, j)` of cuts
/// containing each used edge.
pub fn edge_intervals(dag: &ClosureDag, c: &CutCollection) -> Result<BTreeMap<EdgeId, (usize, usize)>> {
    require_ordered(dag, c)?;
    let mut seen: BTreeMap<EdgeId, (usize, usize, usize)> = BTreeMap::new();
    for (i, x) in c.cuts().iter().enumerate() {
        for &e in x.edges() {
            let entry = seen.entry(e).or_insert((i + 1, i + 1, 0));
            entry.1 = i + 1;
            entry.2 += 1;
        }
    }
    let mut out = BTreeMap::new();
    for (e, (first, last, count)) in seen {
        if last - first + 1 != count {
            // an ordered collection never leaves a gap; report the pair around it
            let gap = (first..=last).find(|&i| !c.cuts()[i - 1].contains(e)).unwrap_or(first);
            return Err(Error::NotLeftRightOrdered { first: gap - 1, second: gap });
        }
        out.insert(e, (first, last));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixture;

    fn cut(ids: &[usize]) -> MinCut {
        MinCut::from(ids.to_vec())
    }

    fn coll(cuts: &[&[usize]]) -> CutCollection {
        CutCollection::new(cuts.iter().map(|c| cut(c)).collect())
    }

    fn diamond() -> ClosureDag {
        ClosureDag::from_graph(&fixture("diamond").unwrap()).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let mu = multiplicities(&coll(&[&[0, 1], &[0, 3]]));
        assert_eq!(mu.into_iter().collect::<Vec<_>>(), vec![(EdgeId(0), 2), (EdgeId(1), 1), (EdgeId(3), 1)]);
        let mu = multiplicities(&coll(&[&[0, 1], &[0, 1], &[0, 1]]));
        assert!(mu.values().all(|&m| m == 3));
        let mu = multiplicities(&coll(&[&[0, 1], &[2, 3]]));
        assert_eq!(mu.len(), 4);
        assert!(mu.values().all(|&m| m == 1));
    }

    #[test]
    fn measure_examples() {
        let c = coll(&[&[0, 1], &[2, 3]]);
        assert_eq!((d_sum(&c), d_cov(&c), d_min(&c).unwrap()), (4, 4, 4));
        let c = coll(&[&[0, 1], &[0, 1]]);
        assert_eq!((d_sum(&c), d_cov(&c), d_min(&c).unwrap()), (0, 2, 0));
        let c = coll(&[&[0, 1], &[2, 3], &[0, 3]]);
        assert_eq!(d_sum(&c), 8);
        assert_eq!(dhat_sum(&c), 2);
        assert_eq!(sum_from_dhat(2, 3, 2), 8);
        assert_eq!(d_min(&coll(&[&[0, 1]])), Err(Error::BadK { k: 1, reason: "bottleneck diversity needs at least two cuts" }));
    }

    #[test]
    fn dhat_examples() {
        assert_eq!(dhat_sum(&coll(&[&[0, 1], &[2, 3]])), 0);
        assert_eq!(dhat_cov(&coll(&[&[0, 1], &[2, 3]])), 0);
        let triple = coll(&[&[0, 1], &[0, 1], &[0, 1]]);
        assert_eq!(dhat_sum(&triple), 6);
        assert_eq!(dhat_cov(&triple), 4);
        assert_eq!(cov_from_dhat(2, 3, 4), d_cov(&triple));
    }

    #[test]
    fn lro_examples() {
        let d = diamond();
        assert_eq!(lro(&d, &coll(&[&[0, 3], &[0, 1]])).unwrap(), coll(&[&[0, 1], &[0, 3]]));
        let ordered = coll(&[&[0, 1], &[0, 3], &[2, 3]]);
        assert_eq!(lro(&d, &ordered).unwrap(), ordered);
        assert_eq!(lro(&d, &coll(&[&[0, 3], &[1, 2]])).unwrap(), coll(&[&[0, 1], &[2, 3]]));
    }

    #[test]
    fn interval_examples() {
        let d = diamond();
        let iv = edge_intervals(&d, &coll(&[&[0, 1], &[0, 3]])).unwrap();
        assert_eq!(iv.into_iter().collect::<Vec<_>>(), vec![(EdgeId(0), (1, 2)), (EdgeId(1), (1, 1)), (EdgeId(3), (2, 2))]);
        let iv = edge_intervals(&d, &coll(&[&[0, 1], &[0, 1]])).unwrap();
        assert!(iv.values().all(|&r| r == (1, 2)));
        assert_eq!(
            edge_intervals(&d, &coll(&[&[0, 3], &[0, 1]])),
            Err(Error::NotLeftRightOrdered { first: 1, second: 2 })
        );
    }

    #[test]
    fn componentwise_checks_shape_and_order() {
        let d = diamond();
        let a = coll(&[&[0, 1], &[0, 3]]);
        let b = coll(&[&[1, 2], &[2, 3]]);
        assert_eq!(collection_join(&d, &a, &b).unwrap(), coll(&[&[1, 2], &[2, 3]]));
        assert_eq!(collection_meet(&d, &a, &b).unwrap(), coll(&[&[0, 1], &[0, 3]]));
        assert_eq!(collection_join(&d, &a, &coll(&[&[0, 1]])), Err(Error::ShapeMismatch { left: 2, right: 1 }));
        assert!(matches!(collection_meet(&d, &coll(&[&[0, 3], &[0, 1]]), &a), Err(Error::NotLeftRightOrdered { .. })));
    }
}
