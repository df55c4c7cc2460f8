//! The three interchangeable solution forms and the operations connecting
//! them.
//!
//! A coloring, a kept-edge subgraph, and a vertex partition describe the
//! same object: a way of breaking the graph so that no part contains a
//! forbidden set. Conversions preserve the crossing edge set exactly, so
//! cut and kept weight survive every round trip bit for bit.

use crate::error::{invalid, Result};
use crate::graph::EdgeId;
use crate::instance::FusionInstance;

/// Vertex coloring; `colors[v]` is the class of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color_count(&self) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        seen.extend(self.colors.iter().copied());
        seen.len()
    }

    /// Renumbers classes in first-appearance order over the vertex order,
    /// so equal partitions get equal colorings.
    pub fn normalized(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let mut next = 0usize;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                *map.entry(c).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        Coloring { colors }
    }
}

/// Solution as the set of kept edges; stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphSolution {
    kept: Vec<EdgeId>,
}

impl SubgraphSolution {
    pub fn new(mut kept: Vec<EdgeId>) -> Self {
        kept.sort_unstable();
        kept.dedup();
        SubgraphSolution { kept }
    }

    pub fn kept_edges(&self) -> &[EdgeId] {
        &self.kept
    }
}

/// Solution as a partition of the vertices; blocks canonically ordered by
/// their smallest member, members ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSolution {
    blocks: Vec<Vec<usize>>,
}

impl MatchingSolution {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        MatchingSolution { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Coloring,
    Subgraph,
    Matching,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Coloring(Coloring),
    Subgraph(SubgraphSolution),
    Matching(MatchingSolution),
}

impl Solution {
    pub fn kind(&self) -> SolutionKind {
        match self {
            Solution::Coloring(_) => SolutionKind::Coloring,
            Solution::Subgraph(_) => SolutionKind::Subgraph,
            Solution::Matching(_) => SolutionKind::Matching,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub cut_weight: f64,
    pub kept_weight: f64,
}

/// The class id of every vertex under the given solution: colors for a
/// coloring, kept-edge components for a subgraph, block ids for a matching.
fn class_assignment(inst: &FusionInstance, s: &Solution) -> Result<Vec<usize>> {
    let n = inst.graph().vertex_count();
    match s {
        Solution::Coloring(c) => {
            if c.len() != n {
                return Err(invalid(format!(
                    "coloring covers {} vertices, the graph has {n}",
                    c.len()
                )));
            }
            Ok(c.colors().to_vec())
        }
        Solution::Subgraph(sub) => {
            let blocks = inst.graph().connected_components(sub.kept_edges())?;
            let mut cls = vec![usize::MAX; n];
            for (b, members) in blocks.iter().enumerate() {
                for &v in members {
                    cls[v] = b;
                }
            }
            Ok(cls)
        }
        Solution::Matching(m) => {
            let mut cls = vec![usize::MAX; n];
            let mut covered = 0usize;
            for (b, members) in m.blocks().iter().enumerate() {
                for &v in members {
                    if v >= n {
                        return Err(invalid(format!("block vertex index {v} out of range")));
                    }
                    if cls[v] != usize::MAX {
                        return Err(invalid(format!(
                            "vertex {:?} appears in more than one block",
                            inst.graph().name(v)
                        )));
                    }
                    cls[v] = b;
                    covered += 1;
                }
            }
            if covered != n {
                return Err(invalid(format!(
                    "blocks cover {covered} vertices, the graph has {n}"
                )));
            }
            Ok(cls)
        }
    }
}

/// Cut weight (edges whose endpoints land in different classes) and kept
/// weight (the rest). Both are direct sums over the edge list.
pub fn evaluate(inst: &FusionInstance, s: &Solution) -> Result<Objective> {
    let cls = class_assignment(inst, s)?;
    let mut cut_weight = 0.0;
    let mut kept_weight = 0.0;
    for e in inst.graph().edges() {
        if cls[e.u] == cls[e.v] {
            kept_weight += e.w;
        } else {
            cut_weight += e.w;
        }
    }
    Ok(Objective {
        cut_weight,
        kept_weight,
    })
}

/// True when no class of the solution contains an entire forbidden set.
pub fn is_feasible(inst: &FusionInstance, s: &Solution) -> Result<bool> {
    let cls = class_assignment(inst, s)?;
    for set in inst.forbidden() {
        if set.is_empty() {
            return Ok(false);
        }
        let c = cls[set[0]];
        if set.iter().all(|&v| cls[v] == c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Converts a feasible solution into another form. Feasibility, cut weight
/// and kept weight are preserved exactly.
pub fn convert(inst: &FusionInstance, s: &Solution, to: SolutionKind) -> Result<Solution> {
    if !is_feasible(inst, s)? {
        return Err(invalid(
            "solution is infeasible; conversions are defined for feasible solutions only",
        ));
    }
    convert_unchecked(inst, s, to)
}

/// The conversion maps themselves:
/// coloring -> subgraph keeps exactly the monochromatic edges,
/// subgraph -> matching reads off kept-edge components,
/// matching -> coloring numbers blocks in canonical order.
/// The remaining directions are compositions of these three.
pub(crate) fn convert_unchecked(
    inst: &FusionInstance,
    s: &Solution,
    to: SolutionKind,
) -> Result<Solution> {
    let cls = class_assignment(inst, s)?;
    match to {
        SolutionKind::Coloring => {
            // Classes are renumbered in first-appearance order. For a
            // subgraph this refines color classes into their components,
            // which crosses no additional edges.
            let via = match s {
                Solution::Coloring(c) => c.clone(),
                Solution::Subgraph(_) | Solution::Matching(_) => Coloring::new(cls),
            };
            Ok(Solution::Coloring(via.normalized()))
        }
        SolutionKind::Subgraph => {
            let kept = inst
                .graph()
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| cls[e.u] == cls[e.v])
                .map(|(id, _)| id)
                .collect();
            Ok(Solution::Subgraph(SubgraphSolution::new(kept)))
        }
        SolutionKind::Matching => {
            let kept: Vec<EdgeId> = inst
                .graph()
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| cls[e.u] == cls[e.v])
                .map(|(id, _)| id)
                .collect();
            let blocks = inst.graph().connected_components(&kept)?;
            Ok(Solution::Matching(MatchingSolution::new(blocks)))
        }
    }
}
