//! Greedy heuristics over the three solution views.
//!
//! All tie-breaking draws from named seeded streams, so runs with equal
//! seeds are reproducible to the byte.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::error::Result;
use crate::instance::FusionInstance;
use crate::report::SolveReport;
use crate::rng::stream;
use crate::solution::Coloring;

/// Vertex orders the coloring heuristic can process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPolicy {
    /// The instance's own vertex order.
    Given,
    /// A seeded shuffle.
    Random,
    /// Heaviest total incident edge weight first; ties by vertex index.
    IncidentWeight,
    /// Most forbidden-set memberships first; ties by vertex index.
    ForbiddenDegree,
}

impl OrderPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            OrderPolicy::Given => "given",
            OrderPolicy::Random => "random",
            OrderPolicy::IncidentWeight => "incident-weight",
            OrderPolicy::ForbiddenDegree => "forbidden-degree",
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        ra
    }
}

/// Greedy kept-edge construction: edges are offered in decreasing weight
/// order (ties shuffled by the seed) and accepted unless the merged
/// component would swallow a forbidden set.
pub fn best_in_greedy(inst: &FusionInstance, seed: u64) -> Result<SolveReport> {
    inst.require_valid()?;
    let start = Instant::now();
    let g = inst.graph();
    let n = g.vertex_count();
    let mut rng = stream(seed, "greedy-subgraph");
    let tie: Vec<u64> = (0..g.edge_count()).map(|_| rng.next_u64()).collect();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        g.edge(b)
            .w
            .partial_cmp(&g.edge(a).w)
            .unwrap()
            .then(tie[a].cmp(&tie[b]))
    });

    let mut dsu = Dsu::new(n);
    for id in order {
        let e = g.edge(id);
        let (ra, rb) = (dsu.find(e.u), dsu.find(e.v));
        if ra == rb {
            // Same component already; keeping the edge changes nothing.
            continue;
        }
        let merged_swallows = inst.forbidden().iter().any(|set| {
            set.iter().all(|&v| {
                let r = dsu.find(v);
                r == ra || r == rb
            })
        });
        if !merged_swallows {
            dsu.union(ra, rb);
        }
    }
    let mut colors = vec![0usize; n];
    for (v, c) in colors.iter_mut().enumerate() {
        *c = dsu.find(v);
    }
    SolveReport::build(
        inst,
        "greedy-subgraph",
        seed,
        Coloring::new(colors),
        start.elapsed(),
    )
}

/// Sequential coloring: each vertex joins the admissible color class with
/// the most incident weight, or opens a new class when every existing one
/// would complete a forbidden set.
pub fn greedy_coloring(
    inst: &FusionInstance,
    policy: OrderPolicy,
    seed: u64,
) -> Result<SolveReport> {
    inst.require_valid()?;
    let start = Instant::now();
    let g = inst.graph();
    let n = g.vertex_count();
    let mut rng = stream(seed, "greedy-color");

    let mut order: Vec<usize> = (0..n).collect();
    match policy {
        OrderPolicy::Given => {}
        OrderPolicy::Random => order.shuffle(&mut rng),
        OrderPolicy::IncidentWeight => {
            let weight: Vec<f64> = (0..n)
                .map(|v| g.adjacent(v).iter().map(|&(_, id)| g.edge(id).w).sum())
                .collect();
            order.sort_by(|&a, &b| weight[b].partial_cmp(&weight[a]).unwrap().then(a.cmp(&b)));
        }
        OrderPolicy::ForbiddenDegree => {
            let mut deg = vec![0usize; n];
            for set in inst.forbidden() {
                for &v in set {
                    deg[v] += 1;
                }
            }
            order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        }
    }
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    // Sets become checkable once their last vertex (in processing order)
    // arrives; earlier vertices can never complete them.
    let mut closing_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, set) in inst.forbidden().iter().enumerate() {
        let last = *set.iter().max_by_key(|&&v| pos[v]).unwrap();
        closing_at[last].push(i);
    }

    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut used = 0usize;
    for &v in &order {
        let admissible: Vec<usize> = (0..used)
            .filter(|&c| {
                !closing_at[v].iter().any(|&i| {
                    inst.forbidden()[i]
                        .iter()
                        .filter(|&&u| u != v)
                        .all(|&u| colors[u] == Some(c))
                })
            })
            .collect();
        let choice = if admissible.is_empty() {
            used += 1;
            used - 1
        } else {
            let mut gain = vec![0.0f64; used];
            for &(nbr, id) in g.adjacent(v) {
                if let Some(c) = colors[nbr] {
                    gain[c] += g.edge(id).w;
                }
            }
            let best = admissible
                .iter()
                .map(|&c| gain[c])
                .fold(f64::NEG_INFINITY, f64::max);
            let ties: Vec<usize> = admissible
                .iter()
                .copied()
                .filter(|&c| gain[c] == best)
                .collect();
            ties[rng.gen_range(0..ties.len())]
        };
        colors[v] = Some(choice);
    }
    let colors: Vec<usize> = colors.into_iter().map(Option::unwrap).collect();
    SolveReport::build(
        inst,
        "greedy-color",
        seed,
        Coloring::new(colors),
        start.elapsed(),
    )
}

/// Agglomerative partition: starting from singletons, repeatedly merge the
/// pair of blocks with the largest positive inter-block weight whose union
/// contains no forbidden set. Zero-weight pairs are never merged; doing so
/// cannot change the objective.
pub fn greedy_matching(inst: &FusionInstance, seed: u64) -> Result<SolveReport> {
    inst.require_valid()?;
    let start = Instant::now();
    let g = inst.graph();
    let n = g.vertex_count();
    let mut rng = stream(seed, "greedy-match");

    let mut block_of: Vec<usize> = (0..n).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut gain = vec![vec![0.0f64; n]; n];
    for e in g.edges() {
        gain[e.u][e.v] += e.w;
        gain[e.v][e.u] += e.w;
    }

    let admissible = |block_of: &[usize], a: usize, b: usize, inst: &FusionInstance| {
        !inst.forbidden().iter().any(|set| {
            set.iter()
                .all(|&v| block_of[v] == a || block_of[v] == b)
        })
    };

    loop {
        let mut best = 0.0f64;
        let mut ties: Vec<(usize, usize)> = Vec::new();
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            for b in (a + 1)..n {
                if !alive[b] || gain[a][b] <= 0.0 {
                    continue;
                }
                if gain[a][b] > best || (gain[a][b] == best && !ties.is_empty()) {
                    if !admissible(&block_of, a, b, inst) {
                        continue;
                    }
                    if gain[a][b] > best {
                        best = gain[a][b];
                        ties.clear();
                    }
                    ties.push((a, b));
                }
            }
        }
        if ties.is_empty() {
            break;
        }
        let (a, b) = ties[rng.gen_range(0..ties.len())];
        for g in block_of.iter_mut() {
            if *g == b {
                *g = a;
            }
        }
        alive[b] = false;
        #[allow(clippy::needless_range_loop)]
        for c in 0..n {
            if c != a && c != b {
                let add = gain[c][b];
                gain[c][a] += add;
                gain[a][c] += add;
            }
        }
    }
    SolveReport::build(
        inst,
        "greedy-match",
        seed,
        Coloring::new(block_of),
        start.elapsed(),
    )
}
