//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use diverse_cuts::disjoint::{build_augmented_path_graph, max_disjoint_mincuts, sweep_max_disjoint};
use diverse_cuts::diversity::{
    collection_join, collection_meet, d_cov, d_sum, dhat_cov, dhat_sum, edge_intervals, is_left_right_ordered, lro,
    multiplicities, CutCollection,
};
use diverse_cuts::graph::fixture;
use diverse_cuts::oracle::verify::corpus_graph;
use diverse_cuts::oracle::{
    brute_force_diverse, brute_force_max_disjoint, brute_force_min_overlap, brute_force_mincuts, gen_hardness_instance,
    synthetic_path_graph, BipartiteInstance, OracleCaps, SplitMix64,
};
use diverse_cuts::sfm::{build_tuple_poset, solve_on_dag, Backend, Objective, SfmProblem};
use diverse_cuts::{enumerate_ideals, max_flow_unit, ClosureDag, DirectedGraph, EdgeId, MinCut, Poset};

// pinned thresholds
const CORPUS_SIZE: usize = 220;
const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_NMAX: usize = 8;
const CORPUS_MMAX: usize = 16;
const MIN_LATTICE_SAMPLES: usize = 1000;
const MIN_MODULARITY_PAIRS: usize = 1000;
const MIN_HARDNESS_INSTANCES: usize = 20;
const SCALING_EDGES: usize = 1_000_000;
const SCALING_HEIGHT: usize = 4;
const SCALING_BUDGET: Duration = Duration::from_secs(10);
const EXHAUSTIVE_CAP: usize = 64;
const ORACLE_CAPS: OracleCaps = OracleCaps { ideals: 1 << 20, multisets: 2_000_000, disjoint: 128 };
const CORPUS_BUDGET: Duration = Duration::from_secs(300);

struct Case {
    graph: DirectedGraph,
    dag: ClosureDag,
    lambda: usize,
    cuts: Vec<MinCut>,
}

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

fn corpus() -> Vec<Case> {
    (0..CORPUS_SIZE as u64)
        .map(|i| {
            let graph = corpus_graph(CORPUS_SEED + i, CORPUS_NMAX);
            assert!(graph.vertex_count() <= CORPUS_NMAX && graph.edge_count() <= CORPUS_MMAX);
            let (lambda, cuts) = brute_force_mincuts(&graph).expect("corpus graphs are connected");
            let dag = ClosureDag::from_graph(&graph).expect("corpus graphs are connected");
            Case { graph, dag, lambda, cuts }
        })
        .collect()
}

fn pick<'a>(rng: &mut SplitMix64, cuts: &'a [MinCut]) -> &'a MinCut {
    &cuts[rng.below(cuts.len())]
}

fn random_collection(rng: &mut SplitMix64, cuts: &[MinCut], k: usize) -> CutCollection {
    CutCollection::new((0..k).map(|_| pick(rng, cuts).clone()).collect())
}

fn meet_all(dag: &ClosureDag, cuts: &[MinCut]) -> MinCut {
    cuts.iter().skip(1).fold(cuts[0].clone(), |acc, x| dag.meet(&acc, x).unwrap())
}

fn join_all(dag: &ClosureDag, cuts: &[MinCut]) -> MinCut {
    cuts.iter().skip(1).fold(cuts[0].clone(), |acc, x| dag.join(&acc, x).unwrap())
}

fn criterion_1(corpus: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new();
    let mut compared = 0;
    for (i, case) in corpus.iter().enumerate() {
        for k in [2, 3] {
            for objective in [Objective::Sum, Objective::Cov] {
                let oracle = brute_force_diverse(&case.graph, k, objective.measure(), &ORACLE_CAPS);
                let Ok(oracle) = oracle else {
                    out.check(false, || format!("graph {i}: oracle failed for {objective} k={k}"));
                    continue;
                };
                for backend in [Backend::Exhaustive { cap: EXHAUSTIVE_CAP }, Backend::min_norm_point()] {
                    compared += 1;
                    match solve_on_dag(&case.dag, k, objective, backend) {
                        Ok((c, value)) => {
                            let measured = match objective {
                                Objective::Sum => d_sum(&c),
                                Objective::Cov => d_cov(&c),
                            };
                            let valid = c.cuts().iter().all(|x| case.dag.cut_to_closure(x).is_ok());
                            out.check(value == oracle.value && measured == value && valid, || {
                                format!("graph {i} {objective} k={k} {backend:?}: {value} vs oracle {}", oracle.value)
                            });
                        }
                        Err(e) => out.check(false, || format!("graph {i} {objective} k={k} {backend:?}: {e}")),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= CORPUS_BUDGET, || format!("took {elapsed:?}"));
    out.detail = format!("{} graphs, {compared} solver runs, {:.1?}", corpus.len(), elapsed);
    out
}

fn criterion_2(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    for (i, case) in corpus.iter().enumerate() {
        let found = max_disjoint_mincuts(&case.graph).unwrap();
        let oracle = brute_force_max_disjoint(&case.graph, &ORACLE_CAPS).unwrap();
        out.check(found.len() == oracle.value, || format!("graph {i}: {} vs oracle {}", found.len(), oracle.value));
        for (a, x) in found.iter().enumerate() {
            out.check(case.cuts.binary_search(x).is_ok(), || format!("graph {i}: invalid cut {x:?}"));
            for y in &found[a + 1..] {
                out.check(x.is_disjoint(y), || format!("graph {i}: overlapping cuts"));
            }
        }
    }
    out.detail = format!("{} graphs", corpus.len());
    out
}

/// Every simple s-t path meets `x` no later than `y`.
fn path_order(g: &DirectedGraph, x: &MinCut, y: &MinCut) -> bool {
    struct Walk<'a> {
        g: &'a DirectedGraph,
        x: &'a MinCut,
        y: &'a MinCut,
        on_path: Vec<bool>,
        ok: bool,
    }

    impl Walk<'_> {
        fn dfs(&mut self, v: usize, depth: usize, first_x: Option<usize>, first_y: Option<usize>) {
            if v == self.g.sink() {
                if let (Some(a), Some(b)) = (first_x, first_y) {
                    self.ok &= a <= b;
                }
                return;
            }
            self.on_path[v] = true;
            for &e in self.g.out_edges(v) {
                let w = self.g.edge(e).head;
                if self.on_path[w] {
                    continue;
                }
                let fx = first_x.or(self.x.contains(e).then_some(depth));
                let fy = first_y.or(self.y.contains(e).then_some(depth));
                self.dfs(w, depth + 1, fx, fy);
            }
            self.on_path[v] = false;
        }
    }

    let mut walk = Walk { g, x, y, on_path: vec![false; g.vertex_count()], ok: true };
    walk.dfs(g.source(), 0, None, None);
    walk.ok
}

fn criterion_3(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = SplitMix64::new(3);
    let mut samples = 0;
    while samples < MIN_LATTICE_SAMPLES {
        for (i, case) in corpus.iter().enumerate() {
            let d = &case.dag;
            let (x, y, z) = (pick(&mut rng, &case.cuts), pick(&mut rng, &case.cuts), pick(&mut rng, &case.cuts));
            let m = d.meet(x, y).unwrap();
            let j = d.join(x, y).unwrap();
            let is_cut = |c: &MinCut| case.cuts.binary_search(c).is_ok();
            out.check(is_cut(&m) && is_cut(&j), || format!("graph {i}: meet/join not a mincut"));
            out.check(m.intersection_size(&j) == x.intersection_size(y), || format!("graph {i}: intersection identity"));
            out.check(m == d.meet(y, x).unwrap() && j == d.join(y, x).unwrap(), || format!("graph {i}: commutativity"));
            out.check(
                d.meet(&m, z).unwrap() == d.meet(x, &d.meet(y, z).unwrap()).unwrap()
                    && d.join(&j, z).unwrap() == d.join(x, &d.join(y, z).unwrap()).unwrap(),
                || format!("graph {i}: associativity"),
            );
            out.check(
                d.meet(x, &j).unwrap() == *x && d.join(x, &m).unwrap() == *x,
                || format!("graph {i}: absorption"),
            );
            let lhs = d.meet(x, &d.join(y, z).unwrap()).unwrap();
            let rhs = d.join(&m, &d.meet(x, z).unwrap()).unwrap();
            out.check(lhs == rhs, || format!("graph {i}: distributivity"));
            let (cx, cy) = (d.cut_to_closure(x).unwrap(), d.cut_to_closure(y).unwrap());
            let inter = diverse_cuts::Closure::new(cx.comps().iter().copied().filter(|&c| cy.contains(c)));
            let union = diverse_cuts::Closure::new(cx.comps().iter().chain(cy.comps()).copied());
            out.check(
                d.closure_to_cut(&inter).unwrap() == m && d.closure_to_cut(&union).unwrap() == j,
                || format!("graph {i}: meet/join disagree with closure intersection/union"),
            );
            let pre = d.precedes(x, y).unwrap();
            out.check(pre == cx.is_subset(&cy), || format!("graph {i}: precedes vs closure inclusion"));
            out.check(pre == path_order(&case.graph, x, y), || format!("graph {i}: precedes vs path order"));
            out.check(d.closure_to_cut(&cx).unwrap() == *x, || format!("graph {i}: bijection"));
            samples += 1;
        }
    }
    out.detail = format!("{samples} random triples");
    out
}

fn lr_collection(rng: &mut SplitMix64, case: &Case, k: usize) -> CutCollection {
    lro(&case.dag, &random_collection(rng, &case.cuts, k)).unwrap()
}

fn criterion_4(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = SplitMix64::new(4);
    let mut pairs = 0;
    while pairs < MIN_MODULARITY_PAIRS {
        for (i, case) in corpus.iter().enumerate() {
            let k = rng.range(2, 4);
            let (a, b) = (lr_collection(&mut rng, case, k), lr_collection(&mut rng, case, k));
            let j = collection_join(&case.dag, &a, &b).unwrap();
            let m = collection_meet(&case.dag, &a, &b).unwrap();
            let (mu_a, mu_b, mu_j, mu_m) = (multiplicities(&a), multiplicities(&b), multiplicities(&j), multiplicities(&m));
            let get = |mu: &BTreeMap<EdgeId, usize>, e: EdgeId| mu.get(&e).copied().unwrap_or(0);
            for (e, _) in case.graph.edges() {
                out.check(get(&mu_j, e) + get(&mu_m, e) == get(&mu_a, e) + get(&mu_b, e), || {
                    format!("graph {i}: multiplicity modularity on {e}")
                });
                out.check(get(&mu_j, e).max(get(&mu_m, e)) <= get(&mu_a, e).max(get(&mu_b, e)), || {
                    format!("graph {i}: max inequality on {e}")
                });
            }
            out.check(d_cov(&j) + d_cov(&m) >= d_cov(&a) + d_cov(&b), || format!("graph {i}: edge-set inequality"));
            out.check(dhat_sum(&j) + dhat_sum(&m) <= dhat_sum(&a) + dhat_sum(&b), || format!("graph {i}: dhat_sum"));
            out.check(dhat_cov(&j) + dhat_cov(&m) <= dhat_cov(&a) + dhat_cov(&b), || format!("graph {i}: dhat_cov"));

            // the same inequality seen through ideals of the tuple poset
            if case.dag.join_irreducibles().len() * k <= 12 {
                let objective = if pairs % 2 == 0 { Objective::Sum } else { Objective::Cov };
                let problem = SfmProblem::new(&case.dag, k, objective).unwrap();
                let ideals = enumerate_ideals(problem.poset().poset(), 1 << 16).unwrap();
                let (x, y) = (&ideals[rng.below(ideals.len())], &ideals[rng.below(ideals.len())]);
                let union = x.union(y);
                let inter = x.intersection(y);
                out.check(
                    problem.evaluate(&union) + problem.evaluate(&inter) <= problem.evaluate(x) + problem.evaluate(y),
                    || format!("graph {i}: ideal submodularity"),
                );
            }
            pairs += 1;
        }
    }
    out.detail = format!("{pairs} collection pairs");
    out
}

fn criterion_5(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = SplitMix64::new(5);
    let mut runs = 0;
    for (i, case) in corpus.iter().enumerate() {
        for _ in 0..5 {
            let k = rng.range(1, 5);
            let c = random_collection(&mut rng, &case.cuts, k);
            let l = lro(&case.dag, &c).unwrap();
            out.check(is_left_right_ordered(&case.dag, &l).unwrap(), || format!("graph {i}: lro not ordered"));
            out.check(multiplicities(&l) == multiplicities(&c), || format!("graph {i}: multiplicities changed"));
            out.check(d_sum(&l) == d_sum(&c) && d_cov(&l) == d_cov(&c), || format!("graph {i}: value changed"));
            out.check(lro(&case.dag, &l).unwrap() == l, || format!("graph {i}: not idempotent"));
            match edge_intervals(&case.dag, &l) {
                Ok(iv) => {
                    let mu = multiplicities(&l);
                    out.check(
                        iv.iter().all(|(e, &(a, b))| b - a + 1 == mu[e] && (a..=b).all(|p| l.cuts()[p - 1].contains(*e))),
                        || format!("graph {i}: interval mismatch"),
                    );
                }
                Err(e) => out.check(false, || format!("graph {i}: {e}")),
            }
            runs += 1;
        }
    }
    out.detail = format!("{runs} normalizations");
    out
}

fn criterion_6(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    for (i, case) in corpus.iter().enumerate() {
        let jl = case.dag.join_irreducibles();
        for k in 1..=3 {
            let tp = build_tuple_poset(jl, k);
            out.check(tp.len() == k * jl.len(), || format!("graph {i}: |J(L*)| = {} for k={k}", tp.len()));
        }
        let ideals = enumerate_ideals(jl, ORACLE_CAPS.ideals).unwrap();
        out.check(ideals.len() == case.cuts.len(), || {
            format!("graph {i}: {} ideals vs {} mincuts", ideals.len(), case.cuts.len())
        });
        let mut via_ideals: Vec<MinCut> = ideals.iter().map(|a| case.dag.cut_from_ideal(a)).collect();
        via_ideals.sort();
        out.check(via_ideals == case.cuts, || format!("graph {i}: Birkhoff map misses cuts"));
        let (mut listed, truncated) = case.dag.enumerate_mincuts(usize::MAX);
        listed.sort();
        out.check(!truncated && listed == case.cuts, || format!("graph {i}: enumeration differs from oracle"));
        out.check(case.dag.component_count() <= case.graph.vertex_count(), || format!("graph {i}: too many components"));
        out.check(case.dag.lambda() == case.lambda, || format!("graph {i}: λ mismatch"));
    }
    let small = Poset::new(3, [(1, 2)]).unwrap();
    let small_ideals = enumerate_ideals(&small, 100).unwrap();
    out.check(small_ideals.len() == 6, || format!("poset 1 < 2 on three elements has {} ideals", small_ideals.len()));
    out.detail = format!("{} graphs, small poset {} ideals", corpus.len(), small_ideals.len());
    out
}

fn sweep_properties(out: &mut Outcome, label: &str, g: &DirectedGraph, dag: &ClosureDag, cuts: &[MinCut]) {
    let found = sweep_max_disjoint(&build_augmented_path_graph(g).unwrap());
    let k_max = brute_force_max_disjoint(g, &ORACLE_CAPS).unwrap().value;
    out.check(found.len() == k_max, || format!("{label}: size {} vs k_max {k_max}", found.len()));
    for a in 0..found.len() {
        for b in a + 1..found.len() {
            out.check(dag.precedes(&found[a], &found[b]).unwrap(), || format!("{label}: cuts out of order"));
        }
    }
    out.check(found.first() == Some(&meet_all(dag, cuts)), || format!("{label}: first cut is not the meet of all mincuts"));
    out.check(found.first() == Some(&dag.leftmost()), || format!("{label}: first cut is not the leftmost cut"));
    let right = join_all(dag, cuts);
    out.check(right == dag.rightmost(), || format!("{label}: rightmost disagrees"));
    out.check(found.last().is_some_and(|x| !x.is_disjoint(&right)), || format!("{label}: last cut misses the rightmost cut"));
}

fn criterion_7(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    for (i, case) in corpus.iter().enumerate() {
        sweep_properties(&mut out, &format!("graph {i}"), &case.graph, &case.dag, &case.cuts);
    }
    for name in ["path2", "diamond", "cross"] {
        let g = fixture(name).unwrap();
        let dag = ClosureDag::from_graph(&g).unwrap();
        let (_, cuts) = brute_force_mincuts(&g).unwrap();
        sweep_properties(&mut out, name, &g, &dag, &cuts);
    }
    out.detail = format!("{} graphs + 3 fixtures", corpus.len());
    out
}

fn criterion_8(corpus: &[Case]) -> Outcome {
    let mut out = Outcome::new();
    let mut shortcuts = 0;
    for (i, case) in corpus.iter().enumerate() {
        let (h, origin) = build_augmented_path_graph(&case.graph).unwrap().materialize();
        shortcuts += origin.iter().filter(|o| o.is_none()).count();
        let (lambda, cuts) = brute_force_mincuts(&h).unwrap();
        let mapped: Option<Vec<MinCut>> = cuts
            .iter()
            .map(|x| x.edges().iter().map(|e| origin[e.0]).collect::<Option<Vec<EdgeId>>>().map(MinCut::new))
            .collect();
        let mut mapped = mapped.unwrap_or_default();
        mapped.sort();
        out.check(lambda == case.lambda && mapped == case.cuts, || {
            format!("graph {i}: augmented graph has {} mincuts, original {}", cuts.len(), case.cuts.len())
        });
    }
    out.detail = format!("{} graphs, {shortcuts} shortcut edges", corpus.len());
    out
}

fn hardness_instances() -> Vec<BipartiteInstance> {
    let mut all = Vec::new();
    // every 2 x 2 edge set with a perfect matching
    let pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
    for mask in 0u32..16 {
        let edges: Vec<(usize, usize)> = (0..4).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
        if let Ok(b) = BipartiteInstance::new(2, edges) {
            all.push(b);
        }
    }
    for seed in 0..24 {
        let density = [(1, 6), (1, 3), (1, 2), (2, 3)][seed as usize % 4];
        all.push(BipartiteInstance::random(seed, 4, density.0, density.1).unwrap());
    }
    all
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let instances = hardness_instances();
    let (mut yes, mut no) = (0, 0);
    for (i, b) in instances.iter().enumerate() {
        let m = b.m();
        let h = gen_hardness_instance(b);
        let lambda = max_flow_unit(&h).value();
        out.check(lambda == 3 * m / 2 + 1, || format!("instance {i}: λ = {lambda}"));
        let balanced = b.has_balanced_minimum_cover();
        match brute_force_min_overlap(&h, 3, &ORACLE_CAPS) {
            Ok(overlap) => {
                out.check(balanced == (overlap <= m / 2), || {
                    format!("instance {i} (m={m}): balanced cover {balanced}, best overlap {overlap}")
                });
            }
            Err(e) => out.check(false, || format!("instance {i}: {e}")),
        }
        if balanced {
            yes += 1;
        } else {
            no += 1;
        }
    }
    out.check(instances.len() >= MIN_HARDNESS_INSTANCES, || format!("only {} instances", instances.len()));
    out.detail = format!("{} instances ({yes} with a balanced cover, {no} without)", instances.len());
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let g = synthetic_path_graph(10, SCALING_HEIGHT, SCALING_EDGES).unwrap();
    let start = Instant::now();
    let cuts = max_disjoint_mincuts(&g).unwrap();
    let elapsed = start.elapsed();
    out.check(elapsed <= SCALING_BUDGET, || format!("took {elapsed:?}"));
    out.check(!cuts.is_empty() && cuts.iter().all(|x| x.len() == SCALING_HEIGHT), || "bad cut sizes".into());
    let mut used = vec![false; g.edge_count()];
    let disjoint = cuts.iter().flat_map(|x| x.edges()).all(|e| !std::mem::replace(&mut used[e.0], true));
    out.check(disjoint, || "cuts overlap".into());
    for x in [cuts.first(), cuts.last()].into_iter().flatten() {
        out.check(g.separates(x.edges()), || "cut does not separate".into());
    }
    out.detail = format!("m = {}, λ = {SCALING_HEIGHT}, {} disjoint cuts in {elapsed:.2?}", g.edge_count(), cuts.len());
    out
}

fn main() {
    let corpus = corpus();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "sum/cov solver equals brute force", criterion_1(&corpus)),
        (2, "disjoint sweep equals brute force", criterion_2(&corpus)),
        (3, "lattice laws", criterion_3(&corpus)),
        (4, "modularity and submodularity", criterion_4(&corpus)),
        (5, "left-right normalization", criterion_5(&corpus)),
        (6, "structural counts", criterion_6(&corpus)),
        (7, "sweep order, extremes and optimality", criterion_7(&corpus)),
        (8, "augmented path graph keeps the mincut set", criterion_8(&corpus)),
        (9, "hardness reduction biconditional", criterion_9()),
        (10, "scaling smoke test", criterion_10()),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        if outcome.failures.is_empty() {
            println!("criterion {n:>2}: PASS  {name} [{}]", outcome.detail);
        } else {
            failed += 1;
            let shown: Vec<&str> = outcome.failures.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
            println!(
                "criterion {n:>2}: FAIL  {name} [{}] {} violations: {}",
                outcome.detail,
                outcome.failures.len(),
                shown.join("; ")
            );
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
