//! Fujishige-Wolfe minimum-norm point on a set extension of the ideal
//! function: `f'(S) = f(↓S) - f(∅) + K (|↓S| - |S|)` with `K` larger than
//! the range of `f`. `f'` is submodular, agrees with `f - f(∅)` on ideals and
//! exceeds the ideal minimum everywhere else.
//!
//! Every base vector `x` gives the lower bound `Σ min(x_v, 0)` on `min f'`;
//! the best ideal seen in a greedy sweep gives an upper bound. The objective
//! is integral, so a gap below 1 certifies the upper bound exactly.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::poset::{Ideal, Poset};

use super::SfmProblem;

const CERT_SLACK: f64 = 1e-6;
const WOLFE_EPS: f64 = 1e-12;

struct Extension<'p, 'a> {
    problem: &'p SfmProblem<'a>,
    poset: &'p Poset,
    penalty: i64,
    offset: i64,
}

struct Greedy {
    vertex: Vec<f64>,
    best_value: i64,
    best_ideal: Vec<bool>,
}

impl Extension<'_, '_> {
    fn ideal_value(&self, closed: &[bool]) -> i64 {
        self.problem.evaluate_indicator(closed) as i64 - self.offset
    }

    /// Greedy base vertex for the ordering by ascending `weights`.
    fn greedy(&self, weights: &[f64]) -> Greedy {
        let n = weights.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(a.cmp(&b)));
        let mut closed = vec![false; n];
        let mut closed_count = 0usize;
        let mut vertex = vec![0.0; n];
        let mut previous = 0i64;
        let mut best_value = 0i64;
        let mut best_ideal = closed.clone();
        for (taken, &v) in order.iter().enumerate() {
            if !closed[v] {
                for u in self.poset.strictly_below(v).chain(std::iter::once(v)) {
                    if !closed[u] {
                        closed[u] = true;
                        closed_count += 1;
                    }
                }
            }
            let f = self.ideal_value(&closed);
            let value = f + self.penalty * (closed_count - (taken + 1)) as i64;
            vertex[v] = (value - previous) as f64;
            previous = value;
            if f < best_value {
                best_value = f;
                best_ideal.copy_from_slice(&closed);
            }
        }
        Greedy { vertex, best_value, best_ideal }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(points: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; points[0].len()];
    for (p, &w) in points.iter().zip(weights) {
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi += w * pi;
        }
    }
    x
}

/// Weights of the minimum-norm point of the affine hull of `points`.
fn affine_minimizer(points: &[Vec<f64>]) -> Option<Vec<f64>> {
    let r = points.len();
    let gram = DMatrix::from_fn(r, r, |i, j| dot(&points[i], &points[j]) + 1.0);
    let raw = gram.lu().solve(&DVector::from_element(r, 1.0))?;
    let total: f64 = raw.iter().sum();
    if !total.is_finite() || total.abs() < f64::MIN_POSITIVE {
        return None;
    }
    Some(raw.iter().map(|a| a / total).collect())
}

pub(super) fn minimize(problem: &SfmProblem<'_>, max_iter: usize) -> Result<(Ideal, usize)> {
    let poset = problem.poset().poset();
    let n = poset.len();
    let empty = vec![false; n];
    if n == 0 {
        return Ok((Ideal::empty(), problem.evaluate_indicator(&empty)));
    }
    let ext = Extension {
        problem,
        poset,
        penalty: problem.value_bound() as i64 + 1,
        offset: problem.evaluate_indicator(&empty) as i64,
    };

    // start from a chain of ideals along a linear extension
    let mut rank = vec![0.0; n];
    for (i, &v) in poset.linear_extension().iter().enumerate() {
        rank[v] = i as f64;
    }
    let first = ext.greedy(&rank);
    let mut upper = first.best_value;
    let mut upper_ideal = first.best_ideal;
    let mut corral = vec![first.vertex];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = corral[0].clone();
    let mut certified = false;

    for _ in 0..max_iter {
        let lower: f64 = x.iter().map(|&v| v.min(0.0)).sum();
        if (upper as f64) - lower < 1.0 - CERT_SLACK {
            certified = true;
            break;
        }
        let g = ext.greedy(&x);
        if g.best_value < upper {
            upper = g.best_value;
            upper_ideal = g.best_ideal;
        }
        let xx = dot(&x, &x);
        let gap = xx - dot(&x, &g.vertex);
        let stalled = corral
            .iter()
            .any(|p| p.iter().zip(&g.vertex).all(|(a, b)| (a - b).abs() <= 1e-9));
        if gap <= WOLFE_EPS * (1.0 + xx) || stalled {
            let lower: f64 = x.iter().map(|&v| v.min(0.0)).sum();
            certified = (upper as f64) - lower < 1.0 - CERT_SLACK;
            break;
        }
        corral.push(g.vertex);
        lambda.push(0.0);

        loop {
            let Some(alpha) = affine_minimizer(&corral) else {
                // numerically dependent corral: drop the lightest older point
                let drop = (0..corral.len() - 1)
                    .min_by(|&a, &b| lambda[a].total_cmp(&lambda[b]))
                    .unwrap_or(0);
                corral.remove(drop);
                lambda.remove(drop);
                let total: f64 = lambda.iter().sum();
                lambda.iter_mut().for_each(|l| *l /= total);
                if corral.len() == 1 {
                    lambda[0] = 1.0;
                }
                x = combine(&corral, &lambda);
                if corral.len() == 1 {
                    break;
                }
                continue;
            };
            if alpha.iter().all(|&a| a > WOLFE_EPS) {
                x = combine(&corral, &alpha);
                lambda = alpha;
                break;
            }
            let mut theta: f64 = 1.0;
            for (&a, &l) in alpha.iter().zip(&lambda) {
                if a <= WOLFE_EPS {
                    let denom = l - a;
                    theta = theta.min(if denom > 0.0 { l / denom } else { 0.0 });
                }
            }
            for (l, &a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            let mut keep = lambda.iter().map(|&l| l > WOLFE_EPS).collect::<Vec<_>>();
            if keep.iter().all(|&k| k) {
                // remove the point that hit zero in the line search
                let smallest = (0..lambda.len()).min_by(|&a, &b| lambda[a].total_cmp(&lambda[b])).unwrap();
                keep[smallest] = false;
            }
            let mut i = 0;
            corral.retain(|_| {
                i += 1;
                keep[i - 1]
            });
            let mut i = 0;
            lambda.retain(|_| {
                i += 1;
                keep[i - 1]
            });
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
            x = combine(&corral, &lambda);
            if corral.len() == 1 {
                break;
            }
        }
    }
    if !certified {
        let lower: f64 = x.iter().map(|&v| v.min(0.0)).sum();
        if (upper as f64) - lower >= 1.0 - CERT_SLACK {
            return Err(Error::ConvergenceFailure { iterations: max_iter });
        }
    }

    let mut best = Ideal::from_indicator(&upper_ideal);
    let mut value = problem.evaluate(&best);
    // local sweep: no single addition or removal may improve a certified minimum
    loop {
        let neighbours = poset
            .addable(&best)
            .into_iter()
            .map(|x| best.union(&Ideal::from_indicator(&single(n, x))))
            .chain(poset.removable(&best).into_iter().map(|x| {
                let mut inside = best.indicator(n);
                inside[x] = false;
                Ideal::from_indicator(&inside)
            }));
        let improved = neighbours.map(|c| (problem.evaluate(&c), c)).filter(|(v, _)| *v < value).min();
        match improved {
            Some((v, c)) => {
                value = v;
                best = c;
            }
            None => break,
        }
    }
    Ok((best, value))
}

fn single(n: usize, x: usize) -> Vec<bool> {
    let mut inside = vec![false; n];
    inside[x] = true;
    inside
}
