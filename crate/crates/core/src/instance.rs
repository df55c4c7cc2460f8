//! Problem instances: a weighted graph plus an antichain of forbidden
//! vertex sets that no part of a solution may fully contain.

use std::fmt;

use crate::error::{invalid, Result};
use crate::graph::WeightedGraph;

/// An instance of the partitioning problem.
///
/// Forbidden sets are canonicalized on construction: vertices sorted within
/// each set, duplicate sets dropped, sets ordered lexicographically.
/// Semantic requirements (sizes, the antichain property, no forbidden set
/// doubling as an edge) are checked by [`FusionInstance::validate`], so
/// instances loaded from files can be inspected rather than rejected.
#[derive(Debug, Clone)]
pub struct FusionInstance {
    graph: WeightedGraph,
    forbidden: Vec<Vec<usize>>,
}

impl FusionInstance {
    pub fn new(graph: WeightedGraph, forbidden: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.vertex_count();
        let mut canon = Vec::with_capacity(forbidden.len());
        for set in forbidden {
            for &v in &set {
                if v >= n {
                    return Err(invalid(format!(
                        "forbidden set mentions vertex index {v}, but the graph has {n} vertices"
                    )));
                }
            }
            let mut s = set;
            s.sort_unstable();
            s.dedup();
            canon.push(s);
        }
        canon.sort();
        canon.dedup();
        Ok(FusionInstance {
            graph,
            forbidden: canon,
        })
    }

    pub fn from_names<S: AsRef<str>>(graph: WeightedGraph, sets: &[Vec<S>]) -> Result<Self> {
        let mut forbidden = Vec::with_capacity(sets.len());
        for set in sets {
            let mut indexed = Vec::with_capacity(set.len());
            for name in set {
                indexed.push(graph.require_vertex(name.as_ref())?);
            }
            forbidden.push(indexed);
        }
        Self::new(graph, forbidden)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn forbidden(&self) -> &[Vec<usize>] {
        &self.forbidden
    }

    /// All vertices appearing in some forbidden set, ascending.
    pub fn forbidden_union(&self) -> Vec<usize> {
        let mut seen = vec![false; self.graph.vertex_count()];
        for set in &self.forbidden {
            for &v in set {
                seen[v] = true;
            }
        }
        (0..seen.len()).filter(|&v| seen[v]).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, set) in self.forbidden.iter().enumerate() {
            if set.len() < 2 {
                violations.push(Violation::SetTooSmall { index: i });
            } else if set.len() == 2 && self.graph.edge_between(set[0], set[1]).is_some() {
                violations.push(Violation::SetIsEdge { index: i });
            }
        }
        for i in 0..self.forbidden.len() {
            for j in 0..self.forbidden.len() {
                if i != j && is_subset(&self.forbidden[i], &self.forbidden[j]) {
                    violations.push(Violation::Nested { inner: i, outer: j });
                }
            }
        }
        let mut warnings = Vec::new();
        if !self.graph.is_connected() {
            warnings.push("graph is not connected".to_string());
        }
        ValidationReport {
            violations,
            warnings,
        }
    }

    /// Errors unless [`validate`](Self::validate) reports no violations.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            let mut lines = Vec::new();
            for v in &report.violations {
                lines.push(self.describe(v));
            }
            Err(invalid(lines.join("; ")))
        }
    }

    pub fn describe(&self, v: &Violation) -> String {
        let show = |i: usize| {
            let names: Vec<&str> = self.forbidden[i]
                .iter()
                .map(|&v| self.graph.name(v))
                .collect();
            format!("{{{}}}", names.join(", "))
        };
        match v {
            Violation::SetTooSmall { index } => {
                format!("forbidden set {} has fewer than two vertices", show(*index))
            }
            Violation::SetIsEdge { index } => format!(
                "forbidden set {} is an edge of the graph, so it can never be split",
                show(*index)
            ),
            Violation::Nested { inner, outer } => format!(
                "forbidden sets must form an antichain: {} is contained in {}",
                show(*inner),
                show(*outer)
            ),
        }
    }
}

/// Both sets sorted ascending; strict or equal containment.
fn is_subset(small: &[usize], large: &[usize]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for &x in small {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SetTooSmall { index: usize },
    SetIsEdge { index: usize },
    Nested { inner: usize, outer: usize },
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() && self.warnings.is_empty() {
            return write!(f, "ok");
        }
        let mut first = true;
        for v in &self.violations {
            if !first {
                writeln!(f)?;
            }
            write!(f, "violation: {v:?}")?;
            first = false;
        }
        for w in &self.warnings {
            if !first {
                writeln!(f)?;
            }
            write!(f, "warning: {w}")?;
            first = false;
        }
        Ok(())
    }
}

/// Lowers a grouped compatibility problem onto this one: within each group,
/// every vertex pair becomes a size-two forbidden set, so no two members of
/// a group may end up in the same part.
///
/// A pair that is also an edge of the graph is rejected, because such a set
/// could never be split by edge deletion.
pub fn mmc_to_fusion(graph: WeightedGraph, groups: &[Vec<usize>]) -> Result<FusionInstance> {
    let n = graph.vertex_count();
    let mut pairs: Vec<Vec<usize>> = Vec::new();
    for group in groups {
        let mut g = group.clone();
        for &v in &g {
            if v >= n {
                return Err(invalid(format!("group vertex index {v} out of range")));
            }
        }
        g.sort_unstable();
        g.dedup();
        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                if graph.edge_between(g[i], g[j]).is_some() {
                    return Err(invalid(format!(
                        "group pair ({}, {}) is an edge of the graph and can never be separated",
                        graph.name(g[i]),
                        graph.name(g[j])
                    )));
                }
                pairs.push(vec![g[i], g[j]]);
            }
        }
    }
    FusionInstance::new(graph, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph4() -> WeightedGraph {
        WeightedGraph::from_indexed(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    #[test]
    fn canonicalization_dedups_and_sorts() {
        let inst = FusionInstance::new(
            graph4(),
            vec![vec![2, 0], vec![0, 2], vec![3, 1, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(inst.forbidden(), &[vec![0, 2], vec![1, 2, 3]]);
        assert_eq!(inst.forbidden_union(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn validation_catches_each_rule() {
        let inst = FusionInstance::new(
            graph4(),
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 2, 3]],
        )
        .unwrap();
        let report = inst.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .contains(&Violation::SetTooSmall { index: 0 }));
        // {0, 1} is the edge v1-v2.
        assert!(report.violations.contains(&Violation::SetIsEdge { index: 1 }));
        // {0, 2} nests inside {0, 2, 3}.
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Nested { .. })));
        assert!(inst.require_valid().is_err());

        let clean = FusionInstance::new(graph4(), vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(clean.validate().is_valid());
        assert!(clean.require_valid().is_ok());
    }

    #[test]
    fn disconnection_is_a_warning_not_a_violation() {
        let g = WeightedGraph::from_indexed(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let inst = FusionInstance::new(g, vec![vec![0, 2]]).unwrap();
        let report = inst.validate();
        assert!(report.is_valid());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn grouped_pairs_expand_and_reject_edges() {
        let inst = mmc_to_fusion(graph4(), &[vec![0, 2], vec![1, 3], vec![1, 3]]).unwrap();
        assert_eq!(inst.forbidden(), &[vec![0, 2], vec![1, 3]]);
        // 2-3 is an edge, so a group containing both is rejected.
        assert!(mmc_to_fusion(graph4(), &[vec![2, 3]]).is_err());
    }
}
