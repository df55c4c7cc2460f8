//! Uniform entry point over all solvers.

use crate::error::{invalid, Result};
use crate::exact;
use crate::ghsolver::{self, MergePolicy};
use crate::heuristics::{self, OrderPolicy};
use crate::instance::FusionInstance;
use crate::multiway;
use crate::report::SolveReport;
use crate::treecover;

/// A solver plus the options that change its behavior.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverChoice {
    GreedySubgraph,
    GreedyColor(OrderPolicy),
    GreedyMatch,
    Brute { unbounded_colors: bool },
    Single,
    Two,
    TwoColor,
    TreeGreedy,
    TreePrimalDual { prune: bool },
    GomoryHu(MergePolicy),
    Multiway { terminals: Vec<usize> },
}

/// String-level options accompanying a solver name, as they arrive from a
/// command line or a foreign-language binding.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Vertex order for greedy-color.
    pub order: String,
    /// Merge phase for gomoryhu: auto, exhaustive, greedy, or off.
    pub merge: String,
    /// Class-count limit for the exhaustive merge under auto.
    pub merge_threshold: usize,
    /// Reverse-delete pass of tree-pd.
    pub prune: bool,
    /// Let brute explore partitions with any number of blocks.
    pub unbounded_colors: bool,
    /// Terminal vertex names for multiway.
    pub terminals: Vec<String>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            order: "given".to_string(),
            merge: "auto".to_string(),
            merge_threshold: 12,
            prune: true,
            unbounded_colors: false,
            terminals: Vec::new(),
        }
    }
}

/// Resolves a solver name plus options into a [`SolverChoice`]. Terminal
/// names are looked up in the instance's graph.
pub fn choice_from_name(
    name: &str,
    opts: &SolverOptions,
    inst: &FusionInstance,
) -> Result<SolverChoice> {
    let choice = match name {
        "greedy-subgraph" => SolverChoice::GreedySubgraph,
        "greedy-color" => {
            let policy = match opts.order.as_str() {
                "given" => OrderPolicy::Given,
                "random" => OrderPolicy::Random,
                "incident-weight" => OrderPolicy::IncidentWeight,
                "forbidden-degree" => OrderPolicy::ForbiddenDegree,
                other => {
                    return Err(invalid(format!(
                        "unknown vertex order {other:?}; use given, random, \
                         incident-weight, or forbidden-degree"
                    )))
                }
            };
            SolverChoice::GreedyColor(policy)
        }
        "greedy-match" => SolverChoice::GreedyMatch,
        "brute" => SolverChoice::Brute {
            unbounded_colors: opts.unbounded_colors,
        },
        "single" => SolverChoice::Single,
        "two" => SolverChoice::Two,
        "twocolor" => SolverChoice::TwoColor,
        "tree-greedy" => SolverChoice::TreeGreedy,
        "tree-pd" => SolverChoice::TreePrimalDual { prune: opts.prune },
        "gomoryhu" => {
            let policy = match opts.merge.as_str() {
                "auto" => MergePolicy::Auto {
                    threshold: opts.merge_threshold,
                },
                "exhaustive" => MergePolicy::Exhaustive,
                "greedy" => MergePolicy::Greedy,
                "off" => MergePolicy::Off,
                other => {
                    return Err(invalid(format!(
                        "unknown merge policy {other:?}; use auto, exhaustive, \
                         greedy, or off"
                    )))
                }
            };
            SolverChoice::GomoryHu(policy)
        }
        "multiway" => {
            if opts.terminals.is_empty() {
                return Err(invalid("multiway needs a list of terminal vertices"));
            }
            let ids = opts
                .terminals
                .iter()
                .map(|t| inst.graph().require_vertex(t))
                .collect::<Result<Vec<usize>>>()?;
            SolverChoice::Multiway { terminals: ids }
        }
        other => {
            return Err(invalid(format!(
                "unknown solver {other:?}; available: greedy-subgraph, greedy-color, \
                 greedy-match, brute, single, two, twocolor, tree-greedy, tree-pd, \
                 gomoryhu, multiway"
            )))
        }
    };
    Ok(choice)
}

impl SolverChoice {
    pub fn name(&self) -> &'static str {
        match self {
            SolverChoice::GreedySubgraph => "greedy-subgraph",
            SolverChoice::GreedyColor(_) => "greedy-color",
            SolverChoice::GreedyMatch => "greedy-match",
            SolverChoice::Brute { .. } => "brute",
            SolverChoice::Single => "single",
            SolverChoice::Two => "two",
            SolverChoice::TwoColor => "twocolor",
            SolverChoice::TreeGreedy => "tree-greedy",
            SolverChoice::TreePrimalDual { .. } => "tree-pd",
            SolverChoice::GomoryHu(_) => "gomoryhu",
            SolverChoice::Multiway { .. } => "multiway",
        }
    }
}

/// Runs the chosen solver. The seed is stamped into the report even for
/// solvers that draw no randomness, so reports stay comparable.
pub fn solve(inst: &FusionInstance, choice: &SolverChoice, seed: u64) -> Result<SolveReport> {
    let mut report = match choice {
        SolverChoice::GreedySubgraph => heuristics::best_in_greedy(inst, seed)?,
        SolverChoice::GreedyColor(policy) => heuristics::greedy_coloring(inst, *policy, seed)?,
        SolverChoice::GreedyMatch => heuristics::greedy_matching(inst, seed)?,
        SolverChoice::Brute { unbounded_colors } => exact::brute_force(inst, *unbounded_colors)?,
        SolverChoice::Single => exact::solve_single_forbidden(inst)?,
        SolverChoice::Two => exact::solve_two_forbidden(inst)?,
        SolverChoice::TwoColor => exact::two_color_exhaustive(inst)?,
        SolverChoice::TreeGreedy => treecover::solve_tree_greedy(inst, seed)?,
        SolverChoice::TreePrimalDual { prune } => {
            treecover::solve_tree_primal_dual(inst, *prune)?
        }
        SolverChoice::GomoryHu(policy) => ghsolver::solve_gomory_hu_with(inst, seed, *policy)?,
        SolverChoice::Multiway { terminals } => {
            multiway::multiway_greedy_forest(inst.graph(), terminals)?.report
        }
    };
    report.seed = seed;
    Ok(report)
}
