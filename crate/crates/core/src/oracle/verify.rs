//! Seeded cross-checks of the fast solvers against the brute-force oracles.

use crate::disjoint::{build_augmented_path_graph, sweep_max_disjoint};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::lattice::ClosureDag;
use crate::diversity::{d_cov, d_sum};
use crate::poset::enumerate_ideals;
use crate::sfm::{solve_on_dag, Backend, Objective};

use super::{brute_force_diverse, brute_force_max_disjoint, brute_force_mincuts, gen_random_instance, Model, OracleCaps, SplitMix64};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub checks: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws a corpus graph: model, `n` in `2..=nmax` and `m` up to `2n`, with `λ >= 1`.
pub fn corpus_graph(seed: u64, nmax: usize) -> DirectedGraph {
    let mut rng = SplitMix64::new(seed ^ 0xD1CE_5EED);
    loop {
        let model = [Model::Dag, Model::Layered, Model::PathGraph][rng.below(3)];
        let n = rng.range(2, nmax.max(2));
        let lo = match model {
            Model::Dag => n - 1,
            Model::Layered => (2 * (n - 2)).max(1),
            Model::PathGraph => n - 2 + ((n - 2) / 2).clamp(1, 3),
        };
        let m = rng.range(lo.max(1), (2 * n).max(lo.max(1)));
        if let Ok(g) = gen_random_instance(rng.next_u64(), n, m, model) {
            if brute_force_mincuts(&g).is_ok() {
                return g;
            }
        }
    }
}

fn check(report: &mut VerifyReport, ok: bool, what: impl FnOnce() -> String) {
    report.checks += 1;
    if !ok {
        report.failures.push(what());
    }
}

/// Runs every oracle comparison on `trials` seeded graphs.
pub fn run_verification(seed: u64, trials: usize, nmax: usize, caps: &OracleCaps) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for trial in 0..trials {
        let g = corpus_graph(seed.wrapping_add(trial as u64), nmax);
        report.trials += 1;
        verify_graph(&g, trial, caps, &mut report)?;
    }
    Ok(report)
}

fn verify_graph(g: &DirectedGraph, trial: usize, caps: &OracleCaps, report: &mut VerifyReport) -> Result<()> {
    let (lambda, oracle_cuts) = brute_force_mincuts(g)?;
    let dag = ClosureDag::from_graph(g)?;
    check(report, dag.lambda() == lambda, || format!("trial {trial}: λ {} vs oracle {lambda}", dag.lambda()));

    let (mut cuts, truncated) = dag.enumerate_mincuts(usize::MAX);
    cuts.sort();
    check(report, !truncated && cuts == oracle_cuts, || format!("trial {trial}: enumerated mincuts differ from oracle"));

    let ideals = enumerate_ideals(dag.join_irreducibles(), caps.ideals)?;
    check(report, ideals.len() == oracle_cuts.len(), || {
        format!("trial {trial}: {} ideals vs {} mincuts", ideals.len(), oracle_cuts.len())
    });

    for k in [2, 3] {
        for objective in [Objective::Sum, Objective::Cov] {
            let expected = match brute_force_diverse(g, k, objective.measure(), caps) {
                Ok(r) => r.value,
                Err(Error::SearchSpaceTooLarge { .. }) => {
                    report.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            for backend in [Backend::Exhaustive { cap: 64 }, Backend::min_norm_point()] {
                match solve_on_dag(&dag, k, objective, backend) {
                    Ok((c, value)) => {
                        let measured = match objective {
                            Objective::Sum => d_sum(&c),
                            Objective::Cov => d_cov(&c),
                        };
                        check(report, value == expected && measured == expected, || {
                            format!("trial {trial}: {objective} k={k} {backend:?} gave {value} (measured {measured}), oracle {expected}")
                        });
                    }
                    Err(Error::PosetTooLarge { .. }) => report.skipped += 1,
                    Err(e) => check(report, false, || format!("trial {trial}: {objective} k={k} {backend:?} failed: {e}")),
                }
            }
        }
    }

    let h = build_augmented_path_graph(g)?;
    let sweep = sweep_max_disjoint(&h);
    let disjoint_ok = sweep.iter().enumerate().all(|(i, x)| {
        dag.validate(x.edges().iter().copied()).is_ok() && sweep[i + 1..].iter().all(|y| x.is_disjoint(y))
    });
    check(report, disjoint_ok, || format!("trial {trial}: sweep returned overlapping or invalid cuts"));
    match brute_force_max_disjoint(g, caps) {
        Ok(r) => check(report, r.value == sweep.len(), || {
            format!("trial {trial}: sweep found {} disjoint cuts, oracle {}", sweep.len(), r.value)
        }),
        Err(Error::SearchSpaceTooLarge { .. }) => report.skipped += 1,
        Err(e) => return Err(e),
    }
    Ok(())
}
