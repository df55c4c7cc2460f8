//! Terminal-separating forests and the greedy algorithm over them.
//!
//! Forests in which no component holds two terminals form a matroid, so
//! scanning edges by decreasing weight and keeping whatever stays
//! independent yields a maximum-weight member exactly.

use std::time::Instant;

use crate::error::{invalid, Result};
use crate::graph::{EdgeId, WeightedGraph};
use crate::instance::mmc_to_fusion;
use crate::report::SolveReport;
use crate::solution::Coloring;

/// Printed alongside multiway results: the greedy forest maximizes kept
/// forest weight, which is not the same objective as minimizing the weight
/// crossing the induced partition.
pub const OBJECTIVE_CAVEAT: &str = "note: the forest maximizes kept forest weight; \
the reported cut weight of the induced partition is not minimized";

/// A forest whose components each contain at most one terminal.
#[derive(Debug, Clone)]
pub struct TerminalForest {
    pub kept_edges: Vec<EdgeId>,
    pub terminals: Vec<usize>,
    pub forest_weight: f64,
}

/// Greedy forest plus the standard report for its induced partition.
#[derive(Debug, Clone)]
pub struct MultiwayOutcome {
    pub forest: TerminalForest,
    pub report: SolveReport,
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    terminals: Vec<usize>,
}

impl Dsu {
    fn new(n: usize, terminal_set: &[usize]) -> Dsu {
        let mut terminals = vec![0usize; n];
        for &t in terminal_set {
            terminals[t] = 1;
        }
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            terminals,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins two distinct roots, returning the surviving root.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (big, small) = if self.size[a] >= self.size[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.terminals[big] += self.terminals[small];
        big
    }
}

fn check_terminals(g: &WeightedGraph, terminals: &[usize]) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let mut t = terminals.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.len() != terminals.len() {
        return Err(invalid("terminal list contains duplicates"));
    }
    if t.len() < 2 || t.len() >= n {
        return Err(invalid(format!(
            "need between 2 and {} terminals, got {}",
            n - 1,
            t.len()
        )));
    }
    if let Some(&v) = t.iter().find(|&&v| v >= n) {
        return Err(invalid(format!("terminal {v} out of range")));
    }
    for i in 0..t.len() {
        for j in (i + 1)..t.len() {
            if g.edge_between(t[i], t[j]).is_some() {
                return Err(invalid(format!(
                    "edge between terminals {:?} and {:?}",
                    g.name(t[i]),
                    g.name(t[j])
                )));
            }
        }
    }
    Ok(t)
}

/// True when `edges` form a forest with at most one of `terminals` per
/// component. Membership test for the independence system the greedy
/// optimizes over.
pub fn is_independent(g: &WeightedGraph, edges: &[EdgeId], terminals: &[usize]) -> Result<bool> {
    let t = check_terminals(g, terminals)?;
    let mut dsu = Dsu::new(g.vertex_count(), &t);
    for &j in edges {
        if j >= g.edge_count() {
            return Err(invalid(format!("edge id {j} out of range")));
        }
        let e = g.edge(j);
        let (ra, rb) = (dsu.find(e.u), dsu.find(e.v));
        if ra == rb || dsu.terminals[ra] + dsu.terminals[rb] >= 2 {
            return Ok(false);
        }
        dsu.union(ra, rb);
    }
    Ok(true)
}

/// Scans edges by decreasing weight (exact ties by canonical edge order)
/// and keeps each edge that neither closes a cycle nor joins two
/// terminal-holding components. Exact for maximum forest weight by the
/// matroid greedy argument; deterministic, no randomness involved.
pub fn multiway_greedy_forest(
    g: &WeightedGraph,
    terminals: &[usize],
) -> Result<MultiwayOutcome> {
    let start = Instant::now();
    let t = check_terminals(g, terminals)?;
    if !g.is_connected() {
        return Err(invalid("multiway separation expects a connected graph"));
    }
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        g.edge(b)
            .w
            .partial_cmp(&g.edge(a).w)
            .expect("weights are finite")
            .then(a.cmp(&b))
    });
    let mut dsu = Dsu::new(g.vertex_count(), &t);
    let mut kept = Vec::new();
    let mut forest_weight = 0.0;
    for j in order {
        let e = g.edge(j);
        let (ra, rb) = (dsu.find(e.u), dsu.find(e.v));
        if ra == rb || dsu.terminals[ra] + dsu.terminals[rb] >= 2 {
            continue;
        }
        dsu.union(ra, rb);
        kept.push(j);
        forest_weight += e.w;
    }
    kept.sort_unstable();

    // The induced partition separates every terminal pair, so it is a
    // feasible point of the pairwise-separation instance on T.
    let inst = mmc_to_fusion(g.clone(), std::slice::from_ref(&t))?;
    let blocks = g.connected_components(&kept)?;
    let mut colors = vec![0usize; g.vertex_count()];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            colors[v] = b;
        }
    }
    let report = SolveReport::build(&inst, "multiway", 0, Coloring::new(colors), start.elapsed())?;
    Ok(MultiwayOutcome {
        forest: TerminalForest {
            kept_edges: kept,
            terminals: t,
            forest_weight,
        },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// t1 -2- a -3- t2, t1 -4- b -1- t2, a -5- b, with T = {t1, t2}.
    /// Vertex ids: t1 = 0, a = 1, t2 = 2, b = 3.
    fn crossed() -> WeightedGraph {
        WeightedGraph::from_indexed(
            4,
            vec![
                (0, 1, 2.0),
                (1, 2, 3.0),
                (0, 3, 4.0),
                (2, 3, 1.0),
                (1, 3, 5.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn short_path_keeps_only_the_heavy_half() {
        let g =
            WeightedGraph::from_indexed(3, vec![(0, 1, 3.0), (1, 2, 5.0)]).unwrap();
        let out = multiway_greedy_forest(&g, &[0, 2]).unwrap();
        let kept = &out.forest.kept_edges;
        assert_eq!(kept.len(), 1);
        assert_eq!(g.edge(kept[0]).w, 5.0);
        assert_eq!(out.forest.forest_weight, 5.0);
    }

    #[test]
    fn crossed_square_matches_the_hand_run() {
        let g = crossed();
        let out = multiway_greedy_forest(&g, &[0, 2]).unwrap();
        let names: Vec<f64> = out
            .forest
            .kept_edges
            .iter()
            .map(|&j| g.edge(j).w)
            .collect();
        assert_eq!(names, vec![4.0, 5.0]);
        assert_eq!(out.forest.forest_weight, 9.0);
        assert!((out.report.cut_weight - 4.0).abs() < 1e-9);
        assert_eq!(
            out.report.matching.blocks(),
            &[vec![0, 1, 3], vec![2]]
        );
    }

    #[test]
    fn greedy_weight_matches_exhaustive_enumeration() {
        let g = crossed();
        let t = [0usize, 2];
        let mut best = 0.0f64;
        for mask in 0u32..(1 << g.edge_count()) {
            let edges: Vec<EdgeId> =
                (0..g.edge_count()).filter(|&j| mask >> j & 1 == 1).collect();
            if is_independent(&g, &edges, &t).unwrap() {
                let w: f64 = edges.iter().map(|&j| g.edge(j).w).sum();
                best = best.max(w);
            }
        }
        let out = multiway_greedy_forest(&g, &t).unwrap();
        assert_eq!(out.forest.forest_weight, best);
    }

    #[test]
    fn star_drops_the_lighter_terminal_edge() {
        let g = WeightedGraph::from_indexed(
            4,
            vec![(0, 1, 0.3), (0, 2, 0.8), (0, 3, 0.5)],
        )
        .unwrap();
        let out = multiway_greedy_forest(&g, &[1, 2]).unwrap();
        let kept_w: Vec<f64> = out
            .forest
            .kept_edges
            .iter()
            .map(|&j| g.edge(j).w)
            .collect();
        assert_eq!(kept_w, vec![0.8, 0.5]);
    }

    #[test]
    fn output_is_independent_and_scale_invariant() {
        let g = crossed();
        let out = multiway_greedy_forest(&g, &[0, 2]).unwrap();
        assert!(is_independent(&g, &out.forest.kept_edges, &[0, 2]).unwrap());

        let scaled = WeightedGraph::from_indexed(
            4,
            g.edges()
                .iter()
                .map(|e| (e.u, e.v, e.w * 3.75))
                .collect(),
        )
        .unwrap();
        let out2 = multiway_greedy_forest(&scaled, &[0, 2]).unwrap();
        assert_eq!(out.forest.kept_edges, out2.forest.kept_edges);
    }

    #[test]
    fn bad_terminal_sets_are_rejected() {
        let g = crossed();
        // t1 and b are adjacent.
        assert!(multiway_greedy_forest(&g, &[0, 3]).is_err());
        assert!(multiway_greedy_forest(&g, &[0]).is_err());
        assert!(multiway_greedy_forest(&g, &[0, 1, 2, 3]).is_err());
        assert!(multiway_greedy_forest(&g, &[0, 0, 2]).is_err());
    }
}
