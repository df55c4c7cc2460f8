//! Partition a weighted graph so that no part contains a forbidden vertex
//! set, deleting as little edge weight as possible.
//!
//! An instance is a connected, positively weighted graph together with an
//! antichain of vertex sets ("forbidden sets"). A solution can be viewed
//! three ways: as a vertex coloring with no monochromatic forbidden set, as
//! the subgraph of kept edges whose components contain no forbidden set, or
//! as the partition of the vertex set those components form. The three views
//! carry the same objective value and convert into one another losslessly.
//!
//! The crate provides exact solvers (partition enumeration, single- and
//! two-set cut enumeration, exhaustive two-coloring), greedy heuristics,
//! set-cover solvers for tree instances, a Gomory-Hu-tree pipeline with a
//! color-merging post-pass, a greedy multiway-cut forest, and a seeded
//! random instance generator. Everything randomized draws from named,
//! seeded streams, so equal seeds give byte-equal results.

pub mod dispatch;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod flow;
pub mod generate;
pub mod ghsolver;
pub mod gomoryhu;
pub mod graph;
pub mod heuristics;
pub mod instance;
pub mod jsonio;
pub mod multiway;
pub mod partitions;
pub mod report;
pub mod rng;
pub mod solution;
pub mod treecover;

pub use dispatch::{solve, SolverChoice};
pub use error::{Error, Result};
pub use fixtures::fixture;
pub use generate::{random_instance, GenSpec};
pub use ghsolver::MergePolicy;
pub use gomoryhu::{gomory_hu, GomoryHuTree};
pub use graph::{min_st_cut, CutResult, Edge, EdgeId, WeightedGraph};
pub use heuristics::OrderPolicy;
pub use instance::{FusionInstance, ValidationReport};
pub use report::SolveReport;
pub use solution::{Coloring, MatchingSolution, Solution, SolutionKind, SubgraphSolution};
