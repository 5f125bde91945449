//! Exact Sum-k and Cov-k diverse mincut solvers: submodular minimization of
//! the shared-edge penalty over ideals of the tuple poset.

mod exhaustive;
mod mnp;
mod tuple;

use std::fmt;
use std::str::FromStr;

pub use tuple::{build_tuple_poset, ideal_to_collection, TupleIrreducible, TuplePoset};

use crate::diversity::{cov_from_dhat, dhat_cov, dhat_sum, sum_from_dhat, CutCollection, Measure};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::lattice::ClosureDag;
use crate::poset::Ideal;

/// Default poset size limit of the exhaustive backend.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;
/// Default major-iteration budget of the min-norm-point backend.
pub const DEFAULT_MNP_ITERATIONS: usize = 10_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Sum,
    Cov,
}

impl Objective {
    pub fn measure(self) -> Measure {
        match self {
            Objective::Sum => Measure::Sum,
            Objective::Cov => Measure::Cov,
        }
    }
}

impl TryFrom<Measure> for Objective {
    type Error = Measure;

    fn try_from(m: Measure) -> std::result::Result<Self, Measure> {
        match m {
            Measure::Sum => Ok(Objective::Sum),
            Measure::Cov => Ok(Objective::Cov),
            Measure::Min => Err(m),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.measure().fmt(f)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Enumerates every ideal; refuses posets larger than `cap`.
    Exhaustive { cap: usize },
    /// Fujishige-Wolfe minimum-norm point with an integer optimality certificate.
    MinNormPoint { max_iter: usize },
}

impl Backend {
    pub fn exhaustive() -> Self {
        Backend::Exhaustive { cap: DEFAULT_EXHAUSTIVE_CAP }
    }

    pub fn min_norm_point() -> Self {
        Backend::MinNormPoint { max_iter: DEFAULT_MNP_ITERATIONS }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exhaustive" => Ok(Backend::exhaustive()),
            "mnp" | "min_norm_point" => Ok(Backend::min_norm_point()),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// Minimize `dhat` over left-right ordered k-tuples, as a function on ideals
/// of the tuple poset.
pub struct SfmProblem<'a> {
    dag: &'a ClosureDag,
    poset: TuplePoset,
    objective: Objective,
}

impl<'a> SfmProblem<'a> {
    pub fn new(dag: &'a ClosureDag, k: usize, objective: Objective) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadK { k, reason: "need at least one cut" });
        }
        let poset = build_tuple_poset(dag.join_irreducibles(), k);
        Ok(SfmProblem { dag, poset, objective })
    }

    pub fn poset(&self) -> &TuplePoset {
        &self.poset
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn dag(&self) -> &ClosureDag {
        self.dag
    }

    pub fn collection(&self, a: &Ideal) -> CutCollection {
        ideal_to_collection(self.dag, &self.poset, a)
    }

    pub fn evaluate(&self, a: &Ideal) -> usize {
        self.evaluate_indicator(&a.indicator(self.poset.len()))
    }

    pub(crate) fn evaluate_indicator(&self, inside: &[bool]) -> usize {
        let c = tuple::indicator_to_collection(self.dag, &self.poset, inside);
        match self.objective {
            Objective::Sum => dhat_sum(&c),
            Objective::Cov => dhat_cov(&c),
        }
    }

    /// Upper bound on the evaluator over all ideals.
    pub(crate) fn value_bound(&self) -> usize {
        let (lambda, k) = (self.dag.lambda(), self.poset.k());
        match self.objective {
            Objective::Sum => lambda * (k * (k - 1) / 2),
            Objective::Cov => lambda * (k - 1),
        }
    }
}

pub fn minimize(problem: &SfmProblem<'_>, backend: Backend) -> Result<(Ideal, usize)> {
    match backend {
        Backend::Exhaustive { cap } => exhaustive::minimize(problem, cap),
        Backend::MinNormPoint { max_iter } => mnp::minimize(problem, max_iter),
    }
}

/// A k-multiset of mincuts maximizing `measure`, with its value.
pub fn solve_diverse(
    g: &DirectedGraph,
    k: usize,
    measure: Objective,
    backend: Backend,
) -> Result<(CutCollection, usize)> {
    let dag = ClosureDag::from_graph(g)?;
    solve_on_dag(&dag, k, measure, backend)
}

pub fn solve_on_dag(
    dag: &ClosureDag,
    k: usize,
    measure: Objective,
    backend: Backend,
) -> Result<(CutCollection, usize)> {
    let problem = SfmProblem::new(dag, k, measure)?;
    let (ideal, dhat) = minimize(&problem, backend)?;
    let lambda = dag.lambda();
    let value = match measure {
        Objective::Sum => sum_from_dhat(lambda, k, dhat),
        Objective::Cov => cov_from_dhat(lambda, k, dhat),
    };
    Ok((problem.collection(&ideal), value))
}
