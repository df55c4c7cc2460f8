//! Undirected weighted graphs and the cut primitives the solvers share.

use std::collections::{BTreeMap, HashMap};

use crate::error::{invalid, Result};
use crate::flow::FlowNetwork;

pub type EdgeId = usize;

/// Undirected edge with canonical endpoint order `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected graph with strictly positive edge weights.
///
/// Vertices are dense indices `0..n`; the id strings used in files stay
/// attached so callers can round-trip them. Parallel input edges are merged
/// by summing their weights; self-loops and non-positive weights are
/// rejected outright.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, EdgeId)>>,
}

impl WeightedGraph {
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        edge_list: Vec<(S, S, f64)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let edge_list: Vec<(String, String, f64)> = edge_list
            .into_iter()
            .map(|(a, b, w)| (a.into(), b.into(), w))
            .collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(invalid(format!("duplicate vertex id {name:?}")));
            }
        }
        let mut indexed = Vec::with_capacity(edge_list.len());
        for (a, b, w) in &edge_list {
            let u = *index
                .get(a)
                .ok_or_else(|| invalid(format!("edge endpoint {a:?} is not a vertex")))?;
            let v = *index
                .get(b)
                .ok_or_else(|| invalid(format!("edge endpoint {b:?} is not a vertex")))?;
            indexed.push((u, v, *w));
        }
        Self::build(vertices, index, indexed)
    }

    /// Convenience constructor naming the vertices `v1..vn`.
    pub fn from_indexed(n: usize, edge_list: Vec<(usize, usize, f64)>) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self::build(names, index, edge_list)
    }

    fn build(
        names: Vec<String>,
        index: HashMap<String, usize>,
        edge_list: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b, w) in edge_list {
            if a >= n || b >= n {
                return Err(invalid(format!(
                    "edge endpoint index out of range: ({a}, {b}) with {n} vertices"
                )));
            }
            if a == b {
                return Err(invalid(format!("self-loop at vertex {:?}", names[a])));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(invalid(format!(
                    "edge weight must be positive and finite, got {w}"
                )));
            }
            *merged.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
        }
        let edges: Vec<Edge> = merged
            .into_iter()
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        Ok(Self {
            names,
            index,
            edges,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index(name)
            .ok_or_else(|| invalid(format!("unknown vertex id {name:?}")))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Neighbors of `v` as `(neighbor, edge id)` pairs.
    pub fn adjacent(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<EdgeId> {
        self.adj[a]
            .iter()
            .find(|(nbr, _)| *nbr == b)
            .map(|(_, id)| *id)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(nbr, _) in &self.adj[v] {
                if !seen[nbr] {
                    seen[nbr] = true;
                    count += 1;
                    stack.push(nbr);
                }
            }
        }
        count == self.names.len()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Components of the spanning subgraph on `kept` edges, canonically
    /// ordered: blocks sorted by their smallest vertex, vertices ascending
    /// within each block. Duplicate edge ids are tolerated.
    pub fn connected_components(&self, kept: &[EdgeId]) -> Result<Vec<Vec<usize>>> {
        let n = self.vertex_count();
        let m = self.edge_count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &id in kept {
            if id >= m {
                return Err(invalid(format!(
                    "edge id {id} out of range for a graph with {m} edges"
                )));
            }
            let e = &self.edges[id];
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if block_of[start] != usize::MAX {
                continue;
            }
            let b = blocks.len();
            let mut members = vec![start];
            block_of[start] = b;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &nbr in &adj[v] {
                    if block_of[nbr] == usize::MAX {
                        block_of[nbr] = b;
                        members.push(nbr);
                        stack.push(nbr);
                    }
                }
            }
            members.sort_unstable();
            blocks.push(members);
        }
        Ok(blocks)
    }
}

/// A minimum cut separating the sources from the sinks.
///
/// `cut_edges` are exactly the edges with one endpoint on each side and
/// `value` is the plain sum of their weights.
#[derive(Debug, Clone)]
pub struct CutResult {
    pub value: f64,
    pub source_side: Vec<usize>,
    pub cut_edges: Vec<EdgeId>,
}

/// Exact minimum cut separating every source from every sink.
///
/// Sources and sinks are tied to auxiliary terminals with infinite-capacity
/// arcs (`f64::INFINITY`, never a finite stand-in), so they can never end up
/// on the wrong side. The source side is the set reachable from the source
/// terminal in the residual network.
pub fn min_st_cut(g: &WeightedGraph, sources: &[usize], sinks: &[usize]) -> Result<CutResult> {
    let n = g.vertex_count();
    if sources.is_empty() || sinks.is_empty() {
        return Err(invalid("sources and sinks must both be nonempty"));
    }
    for &v in sources.iter().chain(sinks) {
        if v >= n {
            return Err(invalid(format!("vertex index {v} out of range")));
        }
    }
    let mut side = vec![0u8; n];
    for &v in sources {
        side[v] = 1;
    }
    for &v in sinks {
        if side[v] == 1 {
            return Err(invalid(format!(
                "vertex {:?} appears among both sources and sinks",
                g.name(v)
            )));
        }
        side[v] = 2;
    }
    if !g.is_connected() {
        return Err(invalid("minimum cut requires a connected graph"));
    }

    let s = n;
    let t = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    for e in g.edges() {
        net.add_edge(e.u, e.v, e.w, e.w);
    }
    for &v in sources {
        net.add_edge(s, v, f64::INFINITY, 0.0);
    }
    for &v in sinks {
        net.add_edge(v, t, f64::INFINITY, 0.0);
    }
    net.max_flow(s, t);
    let reach = net.residual_reachable(s);

    let source_side: Vec<usize> = (0..n).filter(|&v| reach[v]).collect();
    let mut cut_edges = Vec::new();
    let mut value = 0.0;
    for (id, e) in g.edges().iter().enumerate() {
        if reach[e.u] != reach[e.v] {
            cut_edges.push(id);
            value += e.w;
        }
    }
    Ok(CutResult {
        value,
        source_side,
        cut_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(
            vec!["a", "b", "c"],
            vec![
                ("a", "b", 1.0),
                ("a", "c", 1.0),
                ("b", "c", 10.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn parallel_edges_merge_and_loops_fail() {
        let g = WeightedGraph::new(
            vec!["a", "b"],
            vec![
                ("a", "b", 1.0),
                ("b", "a", 2.5),
            ],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!((g.edge(0).w - 3.5).abs() < 1e-12);

        let loopy = WeightedGraph::new(
            vec!["a"],
            vec![("a", "a", 1.0)],
        );
        assert!(loopy.is_err());

        let negative = WeightedGraph::from_indexed(2, vec![(0, 1, -1.0)]);
        assert!(negative.is_err());
        let zero = WeightedGraph::from_indexed(2, vec![(0, 1, 0.0)]);
        assert!(zero.is_err());
        let nan = WeightedGraph::from_indexed(2, vec![(0, 1, f64::NAN)]);
        assert!(nan.is_err());
    }

    #[test]
    fn triangle_cut_isolates_the_cheap_vertex() {
        let g = triangle();
        let b = g.vertex_index("b").unwrap();
        let c = g.vertex_index("c").unwrap();
        let cut = min_st_cut(&g, &[b], &[c]).unwrap();
        assert!((cut.value - 11.0).abs() < 1e-9);
        assert_eq!(cut.source_side, vec![b]);
        assert_eq!(cut.cut_edges.len(), 2);
    }

    #[test]
    fn cut_rejects_bad_terminal_sets() {
        let g = triangle();
        assert!(min_st_cut(&g, &[], &[1]).is_err());
        assert!(min_st_cut(&g, &[0], &[0]).is_err());
        assert!(min_st_cut(&g, &[0], &[9]).is_err());
        let disconnected = WeightedGraph::from_indexed(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(min_st_cut(&disconnected, &[0], &[1]).is_err());
    }

    #[test]
    fn multi_terminal_cut_uses_infinite_anchors() {
        // Path a-b-c-d. With both ends anchored as sources, the heavy middle
        // edge stays and the cut takes the two end edges, so c lands with b.
        let g = WeightedGraph::from_indexed(4, vec![(0, 1, 1.0), (1, 2, 5.0), (2, 3, 1.0)]).unwrap();
        let cut = min_st_cut(&g, &[0, 3], &[1]).unwrap();
        assert!((cut.value - 2.0).abs() < 1e-9);
        assert_eq!(cut.source_side, vec![0, 3]);
        assert_eq!(cut.cut_edges, vec![0, 2]);

        let lone = min_st_cut(&g, &[0], &[1]).unwrap();
        assert!((lone.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn components_follow_kept_edges() {
        let g = WeightedGraph::from_indexed(5, vec![(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let blocks = g.connected_components(&[0, 2]).unwrap();
        assert_eq!(blocks, vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(g.connected_components(&[99]).is_err());
    }

    #[test]
    fn tree_and_connectivity_queries() {
        let path = WeightedGraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(path.is_tree());
        assert!(path.is_connected());
        let cycle =
            WeightedGraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert!(!cycle.is_tree());
        assert!(cycle.is_connected());
    }
}
