//! The record every solver returns.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::instance::FusionInstance;
use crate::solution::{
    convert, evaluate, Coloring, MatchingSolution, Solution, SolutionKind, SubgraphSolution,
};

/// A solver run: the solution in all three forms plus objective values and
/// bookkeeping.
///
/// The coloring is normalized and the other two forms are derived from it,
/// so the three always agree under conversion. `runtime_ms` is wall-clock
/// and is the only field that may differ between reruns with equal seeds.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solver: String,
    pub seed: u64,
    pub coloring: Coloring,
    pub subgraph: SubgraphSolution,
    pub matching: MatchingSolution,
    pub cut_weight: f64,
    pub kept_weight: f64,
    pub color_count: usize,
    pub runtime_ms: u64,
}

impl SolveReport {
    /// Builds the canonical report for a feasible coloring. An infeasible
    /// coloring is rejected, so a buggy solver cannot publish one silently.
    pub fn build(
        inst: &FusionInstance,
        solver: impl Into<String>,
        seed: u64,
        coloring: Coloring,
        runtime: Duration,
    ) -> Result<SolveReport> {
        let coloring = coloring.normalized();
        let sol = Solution::Coloring(coloring.clone());
        let obj = evaluate(inst, &sol)?;
        let subgraph = match convert(inst, &sol, SolutionKind::Subgraph)? {
            Solution::Subgraph(s) => s,
            _ => return Err(Error::Internal("conversion returned the wrong form".into())),
        };
        let matching =
            match convert(inst, &Solution::Subgraph(subgraph.clone()), SolutionKind::Matching)? {
                Solution::Matching(m) => m,
                _ => return Err(Error::Internal("conversion returned the wrong form".into())),
            };
        let color_count = coloring.color_count();
        Ok(SolveReport {
            solver: solver.into(),
            seed,
            coloring,
            subgraph,
            matching,
            cut_weight: obj.cut_weight,
            kept_weight: obj.kept_weight,
            color_count,
            runtime_ms: runtime.as_millis() as u64,
        })
    }

    /// Edge ids not kept by the solution, ascending.
    pub fn removed_edges(&self, inst: &FusionInstance) -> Vec<EdgeId> {
        let kept: std::collections::HashSet<EdgeId> =
            self.subgraph.kept_edges().iter().copied().collect();
        (0..inst.graph().edge_count())
            .filter(|id| !kept.contains(id))
            .collect()
    }
}
