//! Gomory-Hu cut trees and forbidden-set-bounded subtrees.
//!
//! The tree is built with Gusfield's scheme: n-1 max-flow calls on the
//! original graph, no vertex contraction. For every vertex pair the minimum
//! edge weight on the tree path equals the pair's minimum cut value in the
//! source graph, and removing a tree edge splits the vertices into a
//! minimum cut for that edge's endpoints. The tree is not unique; this
//! construction is deterministic for a fixed vertex order.

use crate::error::{invalid, Result};
use crate::graph::{min_st_cut, EdgeId, WeightedGraph};

#[derive(Debug, Clone)]
pub struct GomoryHuTree {
    tree: WeightedGraph,
}

impl GomoryHuTree {
    /// The tree as an ordinary weighted graph on the same vertex ids.
    pub fn as_graph(&self) -> &WeightedGraph {
        &self.tree
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.tree
    }

    /// Treats an existing spanning tree as a cut tree. Useful when a tree
    /// with the cut-tree property is already known, and in tests.
    pub fn from_tree(tree: WeightedGraph) -> Result<Self> {
        if !tree.is_tree() {
            return Err(invalid("a cut tree must be a spanning tree"));
        }
        Ok(GomoryHuTree { tree })
    }

    /// Minimum edge weight on the unique `u`-`v` tree path, which equals the
    /// minimum cut value between `u` and `v` in the graph the tree was
    /// built from.
    pub fn path_min(&self, u: usize, v: usize) -> Result<f64> {
        let n = self.tree.vertex_count();
        if u >= n || v >= n {
            return Err(invalid(format!("vertex index out of range: ({u}, {v})")));
        }
        if u == v {
            return Err(invalid("path minimum needs two distinct vertices"));
        }
        // DFS from u tracking the smallest weight seen so far.
        let mut best = vec![f64::NAN; n];
        best[u] = f64::INFINITY;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                break;
            }
            for &(nbr, eid) in self.tree.adjacent(x) {
                if best[nbr].is_nan() {
                    best[nbr] = best[x].min(self.tree.edge(eid).w);
                    stack.push(nbr);
                }
            }
        }
        if best[v].is_nan() {
            return Err(invalid("vertices are not connected in the tree"));
        }
        Ok(best[v])
    }
}

/// Builds a Gomory-Hu tree of a connected graph.
pub fn gomory_hu(g: &WeightedGraph) -> Result<GomoryHuTree> {
    if !g.is_connected() {
        return Err(invalid("Gomory-Hu tree requires a connected graph"));
    }
    let n = g.vertex_count();
    let mut parent = vec![0usize; n];
    let mut weight = vec![0f64; n];
    for s in 1..n {
        let t = parent[s];
        let cut = min_st_cut(g, &[s], &[t])?;
        let mut side = vec![false; n];
        for &v in &cut.source_side {
            side[v] = true;
        }
        weight[s] = cut.value;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        // If t's own parent fell on s's side, s takes t's place under it.
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            weight[s] = weight[t];
            weight[t] = cut.value;
        }
    }
    let edge_list = (1..n)
        .map(|i| {
            (
                g.name(i).to_string(),
                g.name(parent[i]).to_string(),
                weight[i],
            )
        })
        .collect();
    let tree = WeightedGraph::new(g.names().to_vec(), edge_list)?;
    Ok(GomoryHuTree { tree })
}

fn check_subtree_args(tree: &WeightedGraph, f: &[usize]) -> Result<()> {
    if !tree.is_tree() {
        return Err(invalid("bounded subtree requires a tree"));
    }
    if f.len() < 2 {
        return Err(invalid("bounded subtree needs at least two vertices"));
    }
    let n = tree.vertex_count();
    let mut seen = vec![false; n];
    for &v in f {
        if v >= n {
            return Err(invalid(format!("vertex index {v} out of range")));
        }
        if seen[v] {
            return Err(invalid("bounded subtree vertices must be distinct"));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Edges of `tree` lying on a path between two vertices of `f`, computed by
/// repeatedly pruning leaves outside `f`. Returned in ascending edge order.
pub fn bounded_subtree(tree: &WeightedGraph, f: &[usize]) -> Result<Vec<EdgeId>> {
    check_subtree_args(tree, f)?;
    let n = tree.vertex_count();
    let mut in_f = vec![false; n];
    for &v in f {
        in_f[v] = true;
    }
    let mut deg: Vec<usize> = (0..n).map(|v| tree.adjacent(v).len()).collect();
    let mut alive = vec![true; tree.edge_count()];
    let mut queue: Vec<usize> = (0..n).filter(|&v| !in_f[v] && deg[v] == 1).collect();
    while let Some(v) = queue.pop() {
        if deg[v] != 1 {
            continue;
        }
        let &(nbr, eid) = tree
            .adjacent(v)
            .iter()
            .find(|&&(_, eid)| alive[eid])
            .expect("a degree-one vertex has a live edge");
        alive[eid] = false;
        deg[v] = 0;
        deg[nbr] -= 1;
        if !in_f[nbr] && deg[nbr] == 1 {
            queue.push(nbr);
        }
    }
    Ok((0..tree.edge_count()).filter(|&id| alive[id]).collect())
}

/// The same subtree by the auxiliary-vertex route: join a new vertex to all
/// of `f`, take the 2-core of the result, then drop the auxiliary edges.
pub fn bounded_subtree_two_core(tree: &WeightedGraph, f: &[usize]) -> Result<Vec<EdgeId>> {
    check_subtree_args(tree, f)?;
    let n = tree.vertex_count();
    let m = tree.edge_count();
    let aux = n;
    // Combined edge list: tree edges keep their ids, auxiliary edges follow.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (id, e) in tree.edges().iter().enumerate() {
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }
    for (k, &v) in f.iter().enumerate() {
        adj[v].push((aux, m + k));
        adj[aux].push((v, m + k));
    }
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut alive_edge = vec![true; m + f.len()];
    let mut alive_vertex = vec![true; n + 1];
    let mut queue: Vec<usize> = (0..=n).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = queue.pop() {
        if !alive_vertex[v] || deg[v] >= 2 {
            continue;
        }
        alive_vertex[v] = false;
        for &(nbr, eid) in &adj[v] {
            if alive_edge[eid] {
                alive_edge[eid] = false;
                deg[nbr] -= 1;
                if alive_vertex[nbr] && deg[nbr] < 2 {
                    queue.push(nbr);
                }
            }
        }
        deg[v] = 0;
    }
    Ok((0..m).filter(|&id| alive_edge[id]).collect())
}
