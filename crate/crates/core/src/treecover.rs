//! Set-cover solvers for tree instances.
//!
//! On a tree, separating a forbidden set means deleting at least one edge
//! of its path union, so the instance becomes a covering problem: rows are
//! forbidden sets, columns are tree edges, and a row is covered by the
//! columns on its path union.

use std::time::Instant;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::gomoryhu::bounded_subtree;
use crate::graph::EdgeId;
use crate::instance::FusionInstance;
use crate::report::SolveReport;
use crate::rng::stream;
use crate::solution::Coloring;

/// Sparse 0/1 incidence of forbidden sets (rows) versus tree edges
/// (columns); each row lists the columns that cover it, ascending.
#[derive(Debug, Clone)]
pub struct ConstraintMatrix {
    pub rows: Vec<Vec<EdgeId>>,
    pub cols: usize,
}

impl ConstraintMatrix {
    /// Largest number of rows any single column covers. The greedy cover is
    /// within a factor `H(c)` of optimal and the primal-dual cover within a
    /// factor `c`, for this `c`.
    pub fn max_column_cover(&self) -> usize {
        let mut count = vec![0usize; self.cols];
        for row in &self.rows {
            for &j in row {
                count[j] += 1;
            }
        }
        count.into_iter().max().unwrap_or(0)
    }
}

/// Builds the covering matrix of a tree instance: row `i` holds the edges
/// of the path union of forbidden set `i`.
pub fn constraint_matrix(inst: &FusionInstance) -> Result<ConstraintMatrix> {
    inst.require_valid()?;
    let g = inst.graph();
    if !g.is_tree() {
        return Err(invalid(
            "the covering formulation needs a tree instance; use the gomoryhu \
             solver for general graphs",
        ));
    }
    let mut rows = Vec::with_capacity(inst.forbidden().len());
    for set in inst.forbidden() {
        let row = bounded_subtree(g, set)?;
        debug_assert!(!row.is_empty(), "a forbidden set always spans a tree path");
        rows.push(row);
    }
    Ok(ConstraintMatrix {
        rows,
        cols: g.edge_count(),
    })
}

/// Greedy cover: repeatedly delete the column minimizing
/// `weight / rows still covered`, breaking exact ties by the seeded
/// stream. Returns the chosen columns in deletion order.
pub fn greedy_set_cover(
    matrix: &ConstraintMatrix,
    weights: &[f64],
    seed: u64,
) -> Result<Vec<EdgeId>> {
    let mut rng = stream(seed, "tree-greedy");
    ratio_greedy_cover(matrix, weights, &mut rng)
}

pub(crate) fn ratio_greedy_cover(
    matrix: &ConstraintMatrix,
    weights: &[f64],
    rng: &mut impl Rng,
) -> Result<Vec<EdgeId>> {
    check_cover_input(matrix, weights)?;
    let mut uncovered: Vec<bool> = matrix.rows.iter().map(|r| !r.is_empty()).collect();
    let mut chosen = Vec::new();
    let mut taken = vec![false; matrix.cols];
    while uncovered.iter().any(|&u| u) {
        let mut covers = vec![0usize; matrix.cols];
        for (i, row) in matrix.rows.iter().enumerate() {
            if uncovered[i] {
                for &j in row {
                    covers[j] += 1;
                }
            }
        }
        let mut best = f64::INFINITY;
        let mut ties: Vec<usize> = Vec::new();
        for j in 0..matrix.cols {
            if taken[j] || covers[j] == 0 {
                continue;
            }
            let score = weights[j] / covers[j] as f64;
            if score < best {
                best = score;
                ties.clear();
                ties.push(j);
            } else if score == best {
                ties.push(j);
            }
        }
        let j = ties[rng.gen_range(0..ties.len())];
        taken[j] = true;
        chosen.push(j);
        for (i, row) in matrix.rows.iter().enumerate() {
            if uncovered[i] && row.contains(&j) {
                uncovered[i] = false;
            }
        }
    }
    Ok(chosen)
}

/// Primal-dual cover: raise each uncovered row's dual until a column goes
/// tight, take every newly tight column, then (unless `prune` is off)
/// reverse-delete redundant columns. Deterministic; rows are processed in
/// index order. Returns the surviving columns in selection order.
pub fn primal_dual_set_cover(
    matrix: &ConstraintMatrix,
    weights: &[f64],
    prune: bool,
) -> Result<Vec<EdgeId>> {
    check_cover_input(matrix, weights)?;
    let rows = &matrix.rows;
    let mut slack = weights.to_vec();
    let mut selected: Vec<usize> = Vec::new();
    let mut taken = vec![false; matrix.cols];
    let mut covered: Vec<bool> = rows.iter().map(|r| r.is_empty()).collect();
    for i in 0..rows.len() {
        if covered[i] {
            continue;
        }
        let delta = rows[i]
            .iter()
            .filter(|&&j| !taken[j])
            .map(|&j| slack[j])
            .fold(f64::INFINITY, f64::min);
        for &j in &rows[i] {
            if !taken[j] {
                slack[j] -= delta;
            }
        }
        for &j in &rows[i] {
            if !taken[j] && slack[j] <= 0.0 {
                taken[j] = true;
                selected.push(j);
                for (r, row) in rows.iter().enumerate() {
                    if !covered[r] && row.contains(&j) {
                        covered[r] = true;
                    }
                }
            }
        }
    }
    if prune {
        // Walk the selection backwards and drop any column whose rows stay
        // covered without it.
        let mut cover_count = vec![0usize; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for &j in row {
                if taken[j] {
                    cover_count[r] += 1;
                }
            }
        }
        let mut keep = vec![true; selected.len()];
        for (k, &j) in selected.iter().enumerate().rev() {
            let redundant = rows
                .iter()
                .enumerate()
                .all(|(r, row)| !row.contains(&j) || cover_count[r] >= 2 || row.is_empty());
            if redundant {
                keep[k] = false;
                for (r, row) in rows.iter().enumerate() {
                    if row.contains(&j) {
                        cover_count[r] -= 1;
                    }
                }
            }
        }
        selected = selected
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(j, _)| j)
            .collect();
    }
    Ok(selected)
}

fn check_cover_input(matrix: &ConstraintMatrix, weights: &[f64]) -> Result<()> {
    if weights.len() != matrix.cols {
        return Err(invalid(format!(
            "{} column weights supplied for {} columns",
            weights.len(),
            matrix.cols
        )));
    }
    for row in &matrix.rows {
        for &j in row {
            if j >= matrix.cols {
                return Err(invalid(format!("row mentions column {j} out of range")));
            }
        }
    }
    Ok(())
}

fn report_from_deleted(
    inst: &FusionInstance,
    solver: &str,
    seed: u64,
    deleted: &[EdgeId],
    start: Instant,
) -> Result<SolveReport> {
    let is_deleted = {
        let mut mask = vec![false; inst.graph().edge_count()];
        for &j in deleted {
            mask[j] = true;
        }
        mask
    };
    let kept: Vec<EdgeId> = (0..inst.graph().edge_count())
        .filter(|&j| !is_deleted[j])
        .collect();
    let blocks = inst.graph().connected_components(&kept)?;
    let mut colors = vec![0usize; inst.graph().vertex_count()];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            colors[v] = b;
        }
    }
    SolveReport::build(inst, solver, seed, Coloring::new(colors), start.elapsed())
}

/// Greedy covering solver for tree instances.
pub fn solve_tree_greedy(inst: &FusionInstance, seed: u64) -> Result<SolveReport> {
    let start = Instant::now();
    let matrix = constraint_matrix(inst)?;
    let weights: Vec<f64> = inst.graph().edges().iter().map(|e| e.w).collect();
    let deleted = greedy_set_cover(&matrix, &weights, seed)?;
    report_from_deleted(inst, "tree-greedy", seed, &deleted, start)
}

/// Primal-dual covering solver for tree instances.
pub fn solve_tree_primal_dual(inst: &FusionInstance, prune: bool) -> Result<SolveReport> {
    let start = Instant::now();
    let matrix = constraint_matrix(inst)?;
    let weights: Vec<f64> = inst.graph().edges().iter().map(|e| e.w).collect();
    let deleted = primal_dual_set_cover(&matrix, &weights, prune)?;
    report_from_deleted(inst, "tree-pd", 0, &deleted, start)
}
