//! The release gate. Each test checks one numbered criterion and prints one
//! PASS or FAIL line; a FAIL line comes with the failing measurement.
//!
//! Absolute objective comparisons use 1e-9, cut-tree cross-checks use a
//! relative 1e-6, and hand-verified fixture values are checked exactly
//! where the construction is exact in f64.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fusion_core::dispatch::{choice_from_name, solve, SolverOptions};
use fusion_core::exact::{
    brute_force, solve_single_forbidden_detailed, solve_two_forbidden, two_color_exhaustive,
};
use fusion_core::fixtures::{fixture, fixture_path};
use fusion_core::generate::{forbidden_count, random_instance, GenSpec};
use fusion_core::ghsolver::{solve_gomory_hu, solve_gomory_hu_with, solve_single_via_gh, MergePolicy};
use fusion_core::gomoryhu::gomory_hu;
use fusion_core::graph::{min_st_cut, WeightedGraph};
use fusion_core::instance::FusionInstance;
use fusion_core::jsonio;
use fusion_core::multiway::{is_independent, multiway_greedy_forest};
use fusion_core::rng::stream;
use fusion_core::solution::{convert, is_feasible, Solution, SolutionKind};
use fusion_core::treecover::{constraint_matrix, greedy_set_cover, solve_tree_greedy, solve_tree_primal_dual};

const ABS_TOL: f64 = 1e-9;
const REL_TOL: f64 = 1e-6;

fn criterion(id: u32, what: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let verdict = body();
    let elapsed = start.elapsed();
    match verdict {
        Ok(()) if elapsed <= budget => {
            println!("criterion {id:02} ({what}): PASS in {elapsed:.2?}");
        }
        Ok(()) => {
            println!(
                "criterion {id:02} ({what}): FAIL, over budget: {elapsed:.2?} > {budget:.2?}"
            );
            panic!("criterion {id:02} exceeded its {budget:.2?} budget");
        }
        Err(msg) => {
            println!("criterion {id:02} ({what}): FAIL, {msg}");
            panic!("criterion {id:02}: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        // Comparisons stay un-negated so NaN trips the failure branch.
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

fn random_connected_graph(n: usize, extra: usize, rng: &mut ChaCha8Rng) -> WeightedGraph {
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        pairs.insert((rng.gen_range(0..v), v));
    }
    let mut budget = extra;
    let mut tries = 0;
    while budget > 0 && tries < 10_000 {
        tries += 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && pairs.insert((a.min(b), a.max(b))) {
            budget -= 1;
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(a, b)| (a, b, rng.gen_range(0.05..1.0)))
        .collect();
    WeightedGraph::from_indexed(n, edges).unwrap()
}

/// A valid instance with exactly `sets` forbidden sets, by rejection.
/// Callers must keep n comfortably above the set count; a tight combination
/// such as five sets on four vertices has no valid family at all.
fn random_valid_instance(
    n: usize,
    extra: usize,
    sets: usize,
    max_size: usize,
    rng: &mut ChaCha8Rng,
) -> FusionInstance {
    for _ in 0..100_000 {
        let g = random_connected_graph(n, extra, rng);
        let mut family = Vec::new();
        for _ in 0..sets {
            let size = rng.gen_range(2..=max_size.min(n - 1));
            let mut s = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(0..n));
            }
            family.push(s.into_iter().collect::<Vec<usize>>());
        }
        if let Ok(inst) = FusionInstance::new(g, family) {
            if inst.validate().is_valid() && inst.forbidden().len() == sets {
                return inst;
            }
        }
    }
    panic!("no valid instance with {sets} sets on {n} vertices after 100000 tries");
}

#[test]
fn criterion_01_path_fixture_separates_two_and_three_colorings() {
    criterion(1, "2-vs-3-color gap on the path fixture", Duration::from_secs(1), || {
        let inst = fixture("FIX-PATH").unwrap();
        let opt = brute_force(&inst, false).map_err(|e| e.to_string())?;
        let two = two_color_exhaustive(&inst).map_err(|e| e.to_string())?;
        ensure!((opt.cut_weight - 2.0).abs() < ABS_TOL, "brute cut {}", opt.cut_weight);
        ensure!(opt.color_count == 3, "brute used {} colors", opt.color_count);
        ensure!((two.cut_weight - 3.0).abs() < ABS_TOL, "2-color cut {}", two.cut_weight);

        let steep = fixture_path(10.0).unwrap();
        let opt10 = brute_force(&steep, false).map_err(|e| e.to_string())?;
        let two10 = two_color_exhaustive(&steep).map_err(|e| e.to_string())?;
        ensure!((opt10.cut_weight - 2.0).abs() < ABS_TOL, "brute cut at b=10: {}", opt10.cut_weight);
        ensure!((two10.cut_weight - 10.0).abs() < ABS_TOL, "2-color cut at b=10: {}", two10.cut_weight);
        Ok(())
    });
}

#[test]
fn criterion_02_tree_greedy_cover_on_the_big_tree() {
    criterion(2, "greedy cover trace on the 11-vertex tree", Duration::from_secs(1), || {
        let inst = fixture("FIX-GH-TREE").unwrap();
        let g = inst.graph();
        let matrix = constraint_matrix(&inst).map_err(|e| e.to_string())?;
        let weights: Vec<f64> = g.edges().iter().map(|e| e.w).collect();
        let order = greedy_set_cover(&matrix, &weights, 0).map_err(|e| e.to_string())?;
        ensure!(order.len() == 2, "expected 2 deletions, got {:?}", order);
        ensure!(
            (g.edge(order[0]).w - 1.29).abs() < ABS_TOL,
            "first deletion weighs {}",
            g.edge(order[0]).w
        );
        ensure!(
            (g.edge(order[1]).w - 2.47).abs() < ABS_TOL,
            "second deletion weighs {}",
            g.edge(order[1]).w
        );
        let total: f64 = order.iter().map(|&j| g.edge(j).w).sum();
        ensure!((total - 3.76).abs() < ABS_TOL, "total {}", total);

        let rep = solve_tree_greedy(&inst, 0).map_err(|e| e.to_string())?;
        ensure!((rep.cut_weight - 3.76).abs() < ABS_TOL, "solver cut {}", rep.cut_weight);
        let mut blocks: Vec<Vec<String>> = rep
            .matching
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&v| g.name(v).to_string()).collect())
            .collect();
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        let expect = vec![
            vec!["v1", "v10", "v11"],
            vec!["v2", "v3", "v4", "v5", "v6", "v9"],
            vec!["v7", "v8"],
        ];
        ensure!(blocks == expect, "components {:?}", blocks);
        Ok(())
    });
}

#[test]
fn criterion_03_two_set_tree_shows_the_greedy_gap() {
    criterion(3, "greedy vs exact on the two-set tree", Duration::from_secs(1), || {
        let inst = fixture("FIX-2FS-TREE").unwrap();
        let greedy_tree = solve_tree_greedy(&inst, 0).map_err(|e| e.to_string())?;
        let greedy_gh = solve_gomory_hu(&inst, 0).map_err(|e| e.to_string())?;
        let two = solve_two_forbidden(&inst).map_err(|e| e.to_string())?;
        let opt = brute_force(&inst, false).map_err(|e| e.to_string())?;
        ensure!(greedy_tree.cut_weight == 7.0, "tree greedy cut {}", greedy_tree.cut_weight);
        ensure!(greedy_gh.cut_weight == 7.0, "cut-tree greedy cut {}", greedy_gh.cut_weight);
        ensure!(two.cut_weight == 6.0, "two-set solver cut {}", two.cut_weight);
        ensure!(opt.cut_weight == 6.0, "brute cut {}", opt.cut_weight);
        Ok(())
    });
}

#[test]
fn criterion_04_cut_tree_path_minima_equal_direct_cuts() {
    criterion(4, "cut tree defining property", Duration::from_secs(10), || {
        let mut rng = stream(4, "acceptance-ghtree");
        for trial in 0..50 {
            let n = rng.gen_range(6..=24usize);
            let extra = rng.gen_range(0..=n);
            let g = random_connected_graph(n, extra, &mut rng);
            let tree = gomory_hu(&g).map_err(|e| e.to_string())?;
            for s in 0..n {
                for t in (s + 1)..n {
                    let via_tree = tree.path_min(s, t).map_err(|e| e.to_string())?;
                    let direct = min_st_cut(&g, &[s], &[t]).map_err(|e| e.to_string())?.value;
                    let scale = direct.abs().max(1.0);
                    ensure!(
                        (via_tree - direct).abs() <= REL_TOL * scale,
                        "trial {trial}, pair ({s},{t}): tree {via_tree} vs direct {direct}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_05_conversions_preserve_cost_and_feasibility() {
    criterion(5, "solution form interchangeability", Duration::from_secs(10), || {
        let mut rng = stream(5, "acceptance-convert");
        for trial in 0..100 {
            let n = rng.gen_range(4..=10usize);
            let sets = rng.gen_range(1..=3usize);
            let inst = random_valid_instance(n, rng.gen_range(0..=6), sets, 3, &mut rng);

            // A feasible coloring, not necessarily a good one.
            let coloring = loop {
                let k = rng.gen_range(2..=n);
                let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
                let proper = inst
                    .forbidden()
                    .iter()
                    .all(|set| !set.iter().all(|&v| colors[v] == colors[set[0]]));
                if proper {
                    break fusion_core::solution::Coloring::new(colors);
                }
            };
            let base = Solution::Coloring(coloring);
            let cost = fusion_core::solution::evaluate(&inst, &base)
                .map_err(|e| e.to_string())?
                .cut_weight;

            let forms = [SolutionKind::Coloring, SolutionKind::Subgraph, SolutionKind::Matching];
            for from in forms {
                let a = convert(&inst, &base, from).map_err(|e| e.to_string())?;
                for to in forms {
                    let b = convert(&inst, &a, to).map_err(|e| e.to_string())?;
                    ensure!(
                        is_feasible(&inst, &b).map_err(|e| e.to_string())?,
                        "trial {trial}: {from:?} to {to:?} lost feasibility"
                    );
                    let back = fusion_core::solution::evaluate(&inst, &b)
                        .map_err(|e| e.to_string())?
                        .cut_weight;
                    ensure!(
                        (back - cost).abs() <= ABS_TOL,
                        "trial {trial}: {from:?} to {to:?} moved cost {cost} to {back}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_single_set_solvers_agree_and_split_in_two() {
    criterion(6, "single forbidden set, three ways", Duration::from_secs(10), || {
        let mut rng = stream(6, "acceptance-single");
        for trial in 0..30 {
            let n = rng.gen_range(5..=10usize);
            let size = rng.gen_range(3..=4usize);
            let inst = random_valid_instance(n, rng.gen_range(0..=6), 1, size, &mut rng);
            let k = inst.forbidden()[0].len();
            if k < 3 {
                continue;
            }

            let (direct, cut_calls) =
                solve_single_forbidden_detailed(&inst).map_err(|e| e.to_string())?;
            let via_tree = solve_single_via_gh(&inst).map_err(|e| e.to_string())?;
            let opt = brute_force(&inst, false).map_err(|e| e.to_string())?;

            ensure!(
                cut_calls == (1 << (k - 1)) - 1,
                "trial {trial}: {cut_calls} cut calls for a set of {k}"
            );
            ensure!(
                (direct.cut_weight - opt.cut_weight).abs() <= ABS_TOL,
                "trial {trial}: direct {} vs brute {}",
                direct.cut_weight,
                opt.cut_weight
            );
            ensure!(
                (via_tree.cut_weight - opt.cut_weight).abs() <= ABS_TOL,
                "trial {trial}: cut-tree route {} vs brute {}",
                via_tree.cut_weight,
                opt.cut_weight
            );
            for rep in [&direct, &via_tree, &opt] {
                let parts = inst
                    .graph()
                    .connected_components(rep.subgraph.kept_edges())
                    .map_err(|e| e.to_string())?
                    .len();
                ensure!(
                    parts == 2,
                    "trial {trial}: {} returned {parts} components",
                    rep.solver
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_color_bound_never_costs_anything() {
    criterion(7, "bounded vs unbounded exhaustive search", Duration::from_secs(30), || {
        let mut rng = stream(7, "acceptance-colorbound");
        for trial in 0..40 {
            let sets = rng.gen_range(1..=5usize);
            let n = rng.gen_range((sets + 3).max(4)..=9usize);
            let inst = random_valid_instance(n, rng.gen_range(0..=5), sets, 3, &mut rng);
            let bounded = brute_force(&inst, false).map_err(|e| e.to_string())?;
            let unbounded = brute_force(&inst, true).map_err(|e| e.to_string())?;
            ensure!(
                (bounded.cut_weight - unbounded.cut_weight).abs() <= ABS_TOL,
                "trial {trial}: bounded {} vs unbounded {}",
                bounded.cut_weight,
                unbounded.cut_weight
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_08_pipeline_stays_within_the_set_count_factor() {
    criterion(8, "cut-tree pipeline approximation factor", Duration::from_secs(30), || {
        let mut rng = stream(8, "acceptance-factor");
        for trial in 0..50 {
            let sets = rng.gen_range(1..=4usize);
            let n = rng.gen_range((sets + 3).max(5)..=12usize);
            let inst = random_valid_instance(n, rng.gen_range(0..=7), sets, 3, &mut rng);
            let b = inst.forbidden().len() as f64;
            let opt = brute_force(&inst, false).map_err(|e| e.to_string())?;
            let merged = solve_gomory_hu(&inst, 1).map_err(|e| e.to_string())?;
            let raw = solve_gomory_hu_with(&inst, 1, MergePolicy::Off).map_err(|e| e.to_string())?;
            ensure!(
                merged.cut_weight <= b * opt.cut_weight + ABS_TOL,
                "trial {trial}: pipeline {} vs {b} x optimum {}",
                merged.cut_weight,
                opt.cut_weight
            );
            ensure!(
                merged.cut_weight <= raw.cut_weight + ABS_TOL,
                "trial {trial}: merging raised {} to {}",
                raw.cut_weight,
                merged.cut_weight
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_09_cover_solvers_meet_their_guarantees() {
    criterion(9, "set-cover guarantees on trees", Duration::from_secs(30), || {
        let mut rng = stream(9, "acceptance-cover");
        for trial in 0..40 {
            let sets = rng.gen_range(1..=4usize);
            let n = rng.gen_range((sets + 3).max(5)..=12usize);
            let inst = random_valid_instance(n, 0, sets, 3, &mut rng);
            let matrix = constraint_matrix(&inst).map_err(|e| e.to_string())?;
            let c = matrix.max_column_cover();
            let h_c: f64 = (1..=c).map(|i| 1.0 / i as f64).sum();

            let opt = brute_force(&inst, false).map_err(|e| e.to_string())?;
            let greedy = solve_tree_greedy(&inst, trial as u64).map_err(|e| e.to_string())?;
            let pd = solve_tree_primal_dual(&inst, true).map_err(|e| e.to_string())?;
            ensure!(
                greedy.cut_weight <= h_c * opt.cut_weight + ABS_TOL,
                "trial {trial}: greedy {} vs H_{c} x {}",
                greedy.cut_weight,
                opt.cut_weight
            );
            ensure!(
                pd.cut_weight <= c as f64 * opt.cut_weight + ABS_TOL,
                "trial {trial}: primal-dual {} vs {c} x {}",
                pd.cut_weight,
                opt.cut_weight
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_10_forest_greedy_is_exact_and_exchangeable() {
    criterion(10, "matroid greedy for terminal forests", Duration::from_secs(30), || {
        let mut rng = stream(10, "acceptance-matroid");
        let mut checked = 0;
        while checked < 30 {
            let n = rng.gen_range(4..=8usize);
            let g = random_connected_graph(n, rng.gen_range(1..=5), &mut rng);
            if g.edge_count() > 12 {
                continue;
            }
            let mut terminals = BTreeSet::new();
            let want = rng.gen_range(2..=3usize);
            while terminals.len() < want {
                terminals.insert(rng.gen_range(0..n));
            }
            let t: Vec<usize> = terminals.iter().copied().collect();
            let adjacent = t
                .iter()
                .enumerate()
                .any(|(i, &a)| t[i + 1..].iter().any(|&b| g.edge_between(a, b).is_some()));
            if adjacent {
                continue;
            }

            let m = g.edge_count();
            let mut best = 0.0f64;
            for mask in 0u64..(1 << m) {
                let kept: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
                let blocks = g.connected_components(&kept).map_err(|e| e.to_string())?;
                if kept.len() + blocks.len() != n {
                    continue;
                }
                if blocks
                    .iter()
                    .any(|b| b.iter().filter(|v| t.contains(v)).count() > 1)
                {
                    continue;
                }
                best = best.max(kept.iter().map(|&j| g.edge(j).w).sum());
            }
            let out = multiway_greedy_forest(&g, &t).map_err(|e| e.to_string())?;
            ensure!(
                (out.forest.forest_weight - best).abs() <= ABS_TOL,
                "n={n}: greedy forest {} vs exhaustive {best}",
                out.forest.forest_weight
            );
            checked += 1;
        }

        // Exchange property of the underlying independence system.
        let g = random_connected_graph(8, 5, &mut rng);
        let t = {
            let mut pick = Vec::new();
            for v in 0..8 {
                if pick.iter().all(|&p| g.edge_between(p, v).is_none()) {
                    pick.push(v);
                }
                if pick.len() == 2 {
                    break;
                }
            }
            pick
        };
        ensure!(t.len() == 2, "no non-adjacent terminal pair found");
        let random_independent = |rng: &mut ChaCha8Rng| -> Vec<usize> {
            let mut ids: Vec<usize> = (0..g.edge_count()).collect();
            ids.shuffle(rng);
            let target = rng.gen_range(0..=g.vertex_count() - 2);
            let mut picked = Vec::new();
            for j in ids {
                if picked.len() == target {
                    break;
                }
                let mut with = picked.clone();
                with.push(j);
                if is_independent(&g, &with, &t).unwrap() {
                    picked = with;
                }
            }
            picked
        };
        let mut pairs = 0;
        while pairs < 200 {
            let x = random_independent(&mut rng);
            let y = random_independent(&mut rng);
            if x.len() >= y.len() {
                continue;
            }
            let extendable = y.iter().filter(|j| !x.contains(j)).any(|&j| {
                let mut with = x.clone();
                with.push(j);
                is_independent(&g, &with, &t).unwrap()
            });
            ensure!(extendable, "exchange failed for X={x:?}, Y={y:?}");
            pairs += 1;
        }
        Ok(())
    });
}

#[test]
fn criterion_11_benchmark_protocol_on_a_generated_instance() {
    criterion(11, "benchmark protocol at the published scale", Duration::from_secs(60), || {
        ensure!(forbidden_count(60) == 5, "target 60 gives {}", forbidden_count(60));
        ensure!(forbidden_count(1024) == 7, "target 1024 gives {}", forbidden_count(1024));
        ensure!(forbidden_count(32768) == 11, "target 32768 gives {}", forbidden_count(32768));

        let spec = GenSpec::new(60, 90, 11).map_err(|e| e.to_string())?;
        let inst = random_instance(&spec).map_err(|e| e.to_string())?;
        let n = inst.graph().vertex_count();
        let m = inst.graph().edge_count();
        ensure!((51..=60).contains(&n), "giant component kept {n} of 60 vertices");
        ensure!((77..=90).contains(&m), "giant component kept {m} of 90 edges");
        ensure!(inst.forbidden().len() == 5, "{} forbidden sets", inst.forbidden().len());

        let t0 = Instant::now();
        let gh = solve_gomory_hu(&inst, 11).map_err(|e| e.to_string())?;
        let gh_wall = t0.elapsed();
        let t1 = Instant::now();
        let two = two_color_exhaustive(&inst).map_err(|e| e.to_string())?;
        let two_wall = t1.elapsed();

        for rep in [&gh, &two] {
            let sol = Solution::Coloring(rep.coloring.clone());
            ensure!(
                is_feasible(&inst, &sol).map_err(|e| e.to_string())?,
                "{} returned an infeasible coloring",
                rep.solver
            );
        }
        ensure!(
            gh_wall < two_wall,
            "cut-tree pipeline took {gh_wall:.2?}, exhaustive 2-coloring {two_wall:.2?}"
        );

        // At a size where exhaustive search still runs, both heuristics must
        // sit at or above the optimum, never below it.
        for trial in 0..3 {
            let small = GenSpec::new(12, 18, 100 + trial).map_err(|e| e.to_string())?;
            let shrunk = match random_instance(&small) {
                Ok(inst) if inst.graph().vertex_count() <= 12 => inst,
                Ok(_) => continue,
                Err(_) => continue,
            };
            let opt = brute_force(&shrunk, false).map_err(|e| e.to_string())?;
            let gh_small = solve_gomory_hu(&shrunk, trial).map_err(|e| e.to_string())?;
            ensure!(
                gh_small.cut_weight + ABS_TOL >= opt.cut_weight,
                "trial {trial}: pipeline {} under the optimum {}",
                gh_small.cut_weight,
                opt.cut_weight
            );
            if let Ok(two_small) = two_color_exhaustive(&shrunk) {
                ensure!(
                    two_small.cut_weight + ABS_TOL >= opt.cut_weight,
                    "trial {trial}: 2-coloring {} under the optimum {}",
                    two_small.cut_weight,
                    opt.cut_weight
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_12_every_solver_is_deterministic_per_seed() {
    criterion(12, "byte-identical reruns", Duration::from_secs(30), || {
        let path = fixture("FIX-PATH").unwrap();
        let two_tree = fixture("FIX-2FS-TREE").unwrap();
        let single = fixture("FIX-SINGLE").unwrap();
        let cases: Vec<(&str, &FusionInstance, SolverOptions)> = vec![
            ("greedy-subgraph", &path, SolverOptions::default()),
            ("greedy-color", &path, SolverOptions { order: "random".into(), ..Default::default() }),
            ("greedy-match", &path, SolverOptions::default()),
            ("brute", &path, SolverOptions::default()),
            ("single", &single, SolverOptions::default()),
            ("two", &two_tree, SolverOptions::default()),
            ("twocolor", &path, SolverOptions::default()),
            ("tree-greedy", &path, SolverOptions::default()),
            ("tree-pd", &path, SolverOptions::default()),
            ("gomoryhu", &path, SolverOptions::default()),
            (
                "multiway",
                &path,
                SolverOptions { terminals: vec!["v2".into(), "v4".into()], ..Default::default() },
            ),
        ];
        for (name, inst, opts) in cases {
            let choice = choice_from_name(name, &opts, inst).map_err(|e| e.to_string())?;
            for seed in [0u64, 7, 12345] {
                let mut a = solve(inst, &choice, seed).map_err(|e| e.to_string())?;
                let mut b = solve(inst, &choice, seed).map_err(|e| e.to_string())?;
                // Wall time is bookkeeping, not part of the result.
                a.runtime_ms = 0;
                b.runtime_ms = 0;
                let ja = jsonio::emit_report(inst, &a);
                let jb = jsonio::emit_report(inst, &b);
                ensure!(
                    ja == jb,
                    "{name} with seed {seed} produced different reports:\n{ja}\nvs\n{jb}"
                );
            }
        }
        Ok(())
    });
}
