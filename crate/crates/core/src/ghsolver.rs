//! General-graph solver built on a Gomory-Hu cut tree.
//!
//! The pipeline: build the cut tree, delete tree edges by ratio greedy
//! until every forbidden set is split across tree components, transfer the
//! component coloring to the instance graph, then try to merge color
//! classes to win back crossing weight. Costs are always evaluated on the
//! instance graph because distinct tree edges can charge for the same
//! graph edge.

use std::time::Instant;

use crate::error::{invalid, Error, Result};
use crate::gomoryhu::{bounded_subtree, gomory_hu, GomoryHuTree};
use crate::graph::EdgeId;
use crate::instance::FusionInstance;
use crate::partitions::for_each_partition;
use crate::report::SolveReport;
use crate::rng::stream;
use crate::solution::{is_feasible, Coloring, Solution};
use crate::treecover::{ratio_greedy_cover, ConstraintMatrix};

/// Result of the splitting phase on the cut tree.
#[derive(Debug, Clone)]
pub struct SplitOutcome {
    /// Deleted tree edges in deletion order.
    pub removed: Vec<EdgeId>,
    /// Vertex classes induced by the remaining tree components.
    pub coloring: Coloring,
    /// Sum of deleted tree edge weights. An upper bound on the coloring's
    /// instance-graph cost, not the cost itself.
    pub tree_cost: f64,
}

/// Deletes tree edges until no component contains a whole forbidden set.
///
/// Each round scores an undeleted edge by its weight divided by the number
/// of still-unsplit sets whose spanning subtree contains it, and deletes a
/// minimum-score edge (exact ties broken by the seeded stream). With `d`
/// deletions the result has exactly `d + 1` classes.
pub fn iterative_splitting(
    tree: &GomoryHuTree,
    forbidden: &[Vec<usize>],
    seed: u64,
) -> Result<SplitOutcome> {
    let g = tree.as_graph();
    let mut rows = Vec::with_capacity(forbidden.len());
    for set in forbidden {
        let row = bounded_subtree(g, set)?;
        if row.is_empty() {
            return Err(Error::Internal(
                "a forbidden set spans no tree edges".into(),
            ));
        }
        rows.push(row);
    }
    let matrix = ConstraintMatrix {
        rows,
        cols: g.edge_count(),
    };
    let weights: Vec<f64> = g.edges().iter().map(|e| e.w).collect();
    let mut rng = stream(seed, "gh-split");
    let removed = ratio_greedy_cover(&matrix, &weights, &mut rng)?;
    let tree_cost = removed.iter().map(|&j| g.edge(j).w).sum();
    let deleted = {
        let mut mask = vec![false; g.edge_count()];
        for &j in &removed {
            mask[j] = true;
        }
        mask
    };
    let kept: Vec<EdgeId> = (0..g.edge_count()).filter(|&j| !deleted[j]).collect();
    let blocks = g.connected_components(&kept)?;
    debug_assert_eq!(blocks.len(), removed.len() + 1);
    let mut colors = vec![0usize; g.vertex_count()];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            colors[v] = b;
        }
    }
    Ok(SplitOutcome {
        removed,
        coloring: Coloring::new(colors).normalized(),
        tree_cost,
    })
}

/// Inter-class structure of a proper coloring: the weight between each
/// class pair and, per forbidden set, the classes it touches.
#[derive(Debug, Clone)]
pub struct MergeGraph {
    pub classes: usize,
    /// Symmetric matrix of total instance weight between class pairs.
    pub theta: Vec<Vec<f64>>,
    /// For each forbidden set, the sorted classes its vertices occupy.
    /// Grouping all of them together would swallow the set, so each entry
    /// has at least two classes.
    pub forbidden_class_sets: Vec<Vec<usize>>,
}

/// How to recombine color classes after splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergePolicy {
    /// Exhaustive when the class count is at most `threshold`, greedy
    /// beyond it.
    Auto { threshold: usize },
    Exhaustive,
    Greedy,
    Off,
}

impl Default for MergePolicy {
    fn default() -> Self {
        MergePolicy::Auto { threshold: 12 }
    }
}

/// Builds the class-level view of a proper coloring.
pub fn merge_graph(inst: &FusionInstance, coloring: &Coloring) -> Result<MergeGraph> {
    let g = inst.graph();
    if coloring.len() != g.vertex_count() {
        return Err(invalid(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.len(),
            g.vertex_count()
        )));
    }
    if !is_feasible(inst, &Solution::Coloring(coloring.clone()))? {
        return Err(invalid(
            "merge input must be a proper coloring (no monochromatic forbidden set)",
        ));
    }
    let coloring = coloring.normalized();
    let class = coloring.colors();
    let d = coloring.color_count();
    let mut theta = vec![vec![0.0f64; d]; d];
    for e in g.edges() {
        let (a, b) = (class[e.u], class[e.v]);
        if a != b {
            theta[a][b] += e.w;
            theta[b][a] += e.w;
        }
    }
    let forbidden_class_sets = inst
        .forbidden()
        .iter()
        .map(|set| {
            let mut cs: Vec<usize> = set.iter().map(|&v| class[v]).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect();
    Ok(MergeGraph {
        classes: d,
        theta,
        forbidden_class_sets,
    })
}

/// Merges color classes to reduce crossing weight, never breaking
/// properness and never increasing the cost. Default policy.
pub fn merge_colors(inst: &FusionInstance, coloring: &Coloring) -> Result<Coloring> {
    merge_colors_with(inst, coloring, MergePolicy::default())
}

pub fn merge_colors_with(
    inst: &FusionInstance,
    coloring: &Coloring,
    policy: MergePolicy,
) -> Result<Coloring> {
    let mg = merge_graph(inst, coloring)?;
    let normalized = coloring.normalized();
    let group_of = match policy {
        MergePolicy::Off => (0..mg.classes).collect(),
        MergePolicy::Exhaustive => merge_exhaustive(&mg),
        MergePolicy::Greedy => merge_greedy(&mg),
        MergePolicy::Auto { threshold } => {
            if mg.classes <= threshold {
                merge_exhaustive(&mg)
            } else {
                merge_greedy(&mg)
            }
        }
    };
    let colors = normalized
        .colors()
        .iter()
        .map(|&c| group_of[c])
        .collect();
    Ok(Coloring::new(colors).normalized())
}

/// Smallest-cut grouping of classes over all feasible partitions. Starts
/// from the identity grouping (always feasible) and replaces it only on
/// strict improvement, so zero-gain regroupings leave the input alone.
fn merge_exhaustive(mg: &MergeGraph) -> Vec<usize> {
    let d = mg.classes;
    let cut_of = |assign: &[usize]| {
        let mut cut = 0.0;
        for a in 0..d {
            for b in (a + 1)..d {
                if assign[a] != assign[b] {
                    cut += mg.theta[a][b];
                }
            }
        }
        cut
    };
    let mut best: Vec<usize> = (0..d).collect();
    let mut best_cut = cut_of(&best);
    for_each_partition(d, d, &mut |assign, _used| {
        for cs in &mg.forbidden_class_sets {
            let g0 = assign[cs[0]];
            if cs[1..].iter().all(|&c| assign[c] == g0) {
                return true;
            }
        }
        let cut = cut_of(assign);
        if cut < best_cut {
            best_cut = cut;
            best = assign.to_vec();
        }
        true
    });
    best
}

/// Repeatedly merges the admissible group pair with the largest positive
/// inter-group weight; exact ties go to the smallest pair of group labels.
fn merge_greedy(mg: &MergeGraph) -> Vec<usize> {
    let d = mg.classes;
    let mut group_of: Vec<usize> = (0..d).collect();
    let mut theta = mg.theta.clone();
    let mut alive = vec![true; d];
    loop {
        let mut best = 0.0f64;
        let mut pick: Option<(usize, usize)> = None;
        for a in 0..d {
            if !alive[a] {
                continue;
            }
            for b in (a + 1)..d {
                if !alive[b] || theta[a][b] <= best {
                    continue;
                }
                let swallows = mg.forbidden_class_sets.iter().any(|cs| {
                    cs.iter()
                        .all(|&c| group_of[c] == a || group_of[c] == b)
                });
                if !swallows {
                    best = theta[a][b];
                    pick = Some((a, b));
                }
            }
        }
        let Some((a, b)) = pick else { break };
        alive[b] = false;
        #[allow(clippy::needless_range_loop)]
        for k in 0..d {
            theta[a][k] += theta[b][k];
            theta[k][a] = theta[a][k];
        }
        for g in group_of.iter_mut() {
            if *g == b {
                *g = a;
            }
        }
    }
    group_of
}

/// Full pipeline with the default merge policy.
pub fn solve_gomory_hu(inst: &FusionInstance, seed: u64) -> Result<SolveReport> {
    solve_gomory_hu_with(inst, seed, MergePolicy::default())
}

pub fn solve_gomory_hu_with(
    inst: &FusionInstance,
    seed: u64,
    policy: MergePolicy,
) -> Result<SolveReport> {
    let start = Instant::now();
    inst.require_valid()?;
    let tree = gomory_hu(inst.graph())?;
    let split = iterative_splitting(&tree, inst.forbidden(), seed)?;
    let merged = merge_colors_with(inst, &split.coloring, policy)?;
    SolveReport::build(inst, "gomoryhu", seed, merged, start.elapsed())
}

/// Optimal solver for a single forbidden set.
///
/// The cheapest way to split one set F is to remove a minimum-weight edge
/// of F's spanning subtree within a cut tree; the tree components on its
/// two sides realize a minimum cut between the edge's endpoints, so the
/// resulting 2-coloring costs exactly that tree weight.
pub fn solve_single_via_gh(inst: &FusionInstance) -> Result<SolveReport> {
    let start = Instant::now();
    inst.require_valid()?;
    if inst.forbidden().len() != 1 {
        return Err(invalid(format!(
            "this solver handles exactly one forbidden set, got {}",
            inst.forbidden().len()
        )));
    }
    let g = inst.graph();
    let tree = gomory_hu(g)?;
    let sub = bounded_subtree(tree.as_graph(), &inst.forbidden()[0])?;
    let mut pick = sub[0];
    for &j in &sub[1..] {
        if tree.as_graph().edge(j).w < tree.as_graph().edge(pick).w {
            pick = j;
        }
    }
    let kept: Vec<EdgeId> = (0..tree.as_graph().edge_count())
        .filter(|&j| j != pick)
        .collect();
    let blocks = tree.as_graph().connected_components(&kept)?;
    let mut colors = vec![0usize; g.vertex_count()];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            colors[v] = b;
        }
    }
    SolveReport::build(inst, "single-gh", 0, Coloring::new(colors), start.elapsed())
}
