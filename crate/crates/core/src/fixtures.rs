//! Small named instances used in documentation, tests, and the CLI.
//!
//! Each fixture is tiny enough to verify by hand and exercises one
//! distinctive behavior of the solvers.

use crate::error::{invalid, Result};
use crate::graph::WeightedGraph;
use crate::instance::FusionInstance;

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: [&str; 6] = [
    "FIX-PATH",
    "FIX-GH-TREE",
    "FIX-2FS-TREE",
    "FIX-SINGLE",
    "FIX-MERGE",
    "FIX-GREEDY-TRAP",
];

/// Looks up a named fixture. `FIX-PATH` uses its default heavy weight 3.
pub fn fixture(name: &str) -> Result<FusionInstance> {
    match name {
        "FIX-PATH" => fixture_path(3.0),
        "FIX-GH-TREE" => fixture_gh_tree(),
        "FIX-2FS-TREE" => fixture_two_set_tree(),
        "FIX-SINGLE" => fixture_single(),
        "FIX-MERGE" => fixture_merge(),
        "FIX-GREEDY-TRAP" => fixture_greedy_trap(),
        other => Err(invalid(format!(
            "unknown fixture {other:?}; known fixtures: {}",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// Path v2 -1- v3 -b- v4 -1- v1 with forbidden sets {v1,v2}, {v1,v3,v4},
/// {v2,v3,v4}.
///
/// Any proper 2-coloring must cut the heavy middle edge, so its cost grows
/// with `b` while the 3-color optimum stays at 2.
pub fn fixture_path(b: f64) -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec!["v1", "v2", "v3", "v4"],
        vec![("v2", "v3", 1.0), ("v3", "v4", b), ("v4", "v1", 1.0)],
    )?;
    FusionInstance::from_names(
        g,
        &[
            vec!["v1", "v2"],
            vec!["v1", "v3", "v4"],
            vec!["v2", "v3", "v4"],
        ],
    )
}

/// An 11-vertex weighted tree, treated directly as a cut tree in tests of
/// the covering solvers, with forbidden sets {v1,v2,v3} and {v5,v8}.
pub fn fixture_gh_tree() -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec![
            "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10", "v11",
        ],
        vec![
            ("v6", "v2", 1.56),
            ("v2", "v4", 2.63),
            ("v4", "v1", 2.47),
            ("v1", "v11", 0.37),
            ("v4", "v3", 3.06),
            ("v3", "v9", 1.33),
            ("v4", "v8", 1.29),
            ("v8", "v7", 1.31),
            ("v4", "v5", 2.05),
            ("v1", "v10", 0.73),
        ],
    )?;
    FusionInstance::from_names(g, &[vec!["v1", "v2", "v3"], vec!["v5", "v8"]])
}

/// Path s -2- t -6- s' -5- t' with forbidden pairs {s,s'} and {t,t'}.
///
/// The ratio-greedy cover deletes the weight 2 and 5 edges (cost 7) while
/// the optimum deletes the single weight 6 edge.
pub fn fixture_two_set_tree() -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec!["s", "t", "s'", "t'"],
        vec![("s", "t", 2.0), ("t", "s'", 6.0), ("s'", "t'", 5.0)],
    )?;
    FusionInstance::from_names(g, &[vec!["s", "s'"], vec!["t", "t'"]])
}

/// Triangle a-b 1, a-c 1, b-c 10 with the single forbidden set {a,b,c}.
/// The best split isolates a at cost 2.
pub fn fixture_single() -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec!["a", "b", "c"],
        vec![("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", 10.0)],
    )?;
    FusionInstance::from_names(g, &[vec!["a", "b", "c"]])
}

/// 4-cycle v1 -4- v2 -1- v3 -4- v4 -1- v1 with forbidden diagonals {v1,v3}
/// and {v2,v4}. Recoloring {v1:0, v2:0, v3:1, v4:2} by merging the classes
/// of v3 and v4 restores the weight-4 edge v3-v4.
pub fn fixture_merge() -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec!["v1", "v2", "v3", "v4"],
        vec![
            ("v1", "v2", 4.0),
            ("v3", "v4", 4.0),
            ("v2", "v3", 1.0),
            ("v1", "v4", 1.0),
        ],
    )?;
    FusionInstance::from_names(g, &[vec!["v1", "v3"], vec!["v2", "v4"]])
}

/// A small instance on which weight-greedy subgraph growth is strictly
/// suboptimal for every tie-break seed, found by seeded search against
/// brute force and frozen here.
pub fn fixture_greedy_trap() -> Result<FusionInstance> {
    let g = WeightedGraph::new(
        vec!["v1", "v2", "v3", "v4", "v5", "v6", "v7"],
        vec![
            ("v1", "v2", 3.1310233359654405e-1),
            ("v1", "v5", 6.448375943938407e-1),
            ("v1", "v7", 7.246194157329577e-1),
            ("v2", "v3", 3.605113978878328e-1),
            ("v2", "v4", 3.027097454135541e-1),
            ("v2", "v5", 1.0601192441392615e-1),
            ("v4", "v5", 1.4523535104373253e-1),
            ("v4", "v6", 7.474252976470025e-1),
            ("v5", "v6", 1.5763766135861979e-1),
            ("v6", "v7", 9.941355753847468e-1),
        ],
    )?;
    FusionInstance::from_names(g, &[vec!["v1", "v5", "v6"], vec!["v2", "v4", "v7"]])
}
