//! Random instance generation.
//!
//! Graphs come from a configuration-model draw of a multinomial degree
//! sequence, keeping the largest connected component. Weights are
//! independent Uniform(0,1). Forbidden sets are planted around a small
//! pool of "bad" vertices so that sets overlap realistically.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::instance::FusionInstance;
use crate::rng::stream;

/// Parameters for [`random_instance`]. The realized instance keeps the
/// largest component, so its vertex and edge counts land near `n` and `m`
/// rather than exactly on them.
#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, seed: u64) -> Result<GenSpec> {
        if n < 4 {
            return Err(invalid("generation needs at least 4 vertices"));
        }
        if m + 1 < n {
            return Err(invalid(format!(
                "{m} edges cannot connect {n} vertices; need at least n - 1"
            )));
        }
        if m > n * (n - 1) / 2 {
            return Err(invalid(format!(
                "{m} edges exceed the simple-graph capacity of {n} vertices"
            )));
        }
        Ok(GenSpec { n, m, seed })
    }
}

/// Number of forbidden sets planted for a target vertex count: ceil(ln n).
/// 60 -> 5, 1024 -> 7, 32768 -> 11.
pub fn forbidden_count(n: usize) -> usize {
    (n as f64).ln().ceil() as usize
}

/// Size of the bad-vertex pool: ceil(0.75 b).
pub fn bad_vertex_count(b: usize) -> usize {
    (0.75 * b as f64).ceil() as usize
}

const PAIRING_RESTARTS: usize = 100;
const PARTNER_TRIES: usize = 200;
const SET_TRIES: usize = 1000;

/// Draws the degree sequence: every vertex gets one stub, and the
/// remaining 2m - n stubs fall uniformly and independently.
fn draw_degrees(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut deg = vec![1usize; spec.n];
    for _ in 0..(2 * spec.m - spec.n) {
        deg[rng.gen_range(0..spec.n)] += 1;
    }
    deg
}

/// Pairs stubs into a simple graph with the given degrees. Each stub
/// redraws its partner locally on a self-loop or duplicate edge; if a stub
/// runs out of tries the whole pairing restarts, up to a global cap.
fn pair_stubs(
    deg: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<BTreeSet<(usize, usize)>> {
    for _ in 0..PAIRING_RESTARTS {
        let mut stubs: Vec<usize> = Vec::with_capacity(deg.iter().sum());
        for (v, &d) in deg.iter().enumerate() {
            stubs.extend(std::iter::repeat_n(v, d));
        }
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut dead_end = false;
        while !stubs.is_empty() {
            let u = stubs[0];
            let mut matched = false;
            for _ in 0..PARTNER_TRIES {
                let j = rng.gen_range(1..stubs.len());
                let v = stubs[j];
                let key = (u.min(v), u.max(v));
                if v != u && !edges.contains(&key) {
                    edges.insert(key);
                    stubs.swap_remove(j);
                    stubs.swap_remove(0);
                    matched = true;
                    break;
                }
            }
            if !matched {
                dead_end = true;
                break;
            }
        }
        if !dead_end {
            return Ok(edges);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no simple pairing of the degree sequence after {PAIRING_RESTARTS} restarts \
         (sum of degrees {}, {} vertices)",
        deg.iter().sum::<usize>(),
        deg.len()
    )))
}

/// Largest component as a sorted vertex list; ties go to the component
/// containing the smallest vertex id.
fn largest_component(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        if comp.len() > best.len() {
            comp.sort_unstable();
            best = comp;
        }
    }
    best
}

/// Generates a connected weighted instance with planted forbidden sets.
/// Deterministic: every random choice comes from named streams keyed by
/// the requested seed.
pub fn random_instance(spec: &GenSpec) -> Result<FusionInstance> {
    GenSpec::new(spec.n, spec.m, spec.seed)?;
    let deg = draw_degrees(spec, &mut stream(spec.seed, "gen-degrees"));
    let edges = pair_stubs(&deg, &mut stream(spec.seed, "gen-pairing"))?;
    let keep = largest_component(spec.n, &edges);

    let mut new_id = vec![usize::MAX; spec.n];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let mut kept_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
        .map(|&(u, v)| (new_id[u], new_id[v]))
        .collect();
    kept_edges.sort_unstable();

    let mut wrng = stream(spec.seed, "gen-weights");
    let weighted: Vec<(usize, usize, f64)> = kept_edges
        .into_iter()
        .map(|(u, v)| {
            let mut w: f64 = wrng.gen();
            while w == 0.0 {
                w = wrng.gen();
            }
            (u, v, w)
        })
        .collect();
    let graph = WeightedGraph::from_indexed(keep.len(), weighted)?;

    let k = keep.len();
    let b = forbidden_count(spec.n);
    let a = bad_vertex_count(b);
    if a + 2 > k {
        return Err(Error::GenerationFailed(format!(
            "largest component has {k} vertices, too few for {a} bad vertices \
             plus 2 good ones per set"
        )));
    }
    let mut frng = stream(spec.seed, "gen-forbidden");
    let mut pool: Vec<usize> = (0..k).collect();
    for i in 0..a {
        let j = frng.gen_range(i..k);
        pool.swap(i, j);
    }
    let mut bad: Vec<usize> = pool[..a].to_vec();
    let mut good: Vec<usize> = pool[a..].to_vec();
    bad.sort_unstable();
    good.sort_unstable();

    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(b);
    for _ in 0..b {
        let mut placed = false;
        for _ in 0..SET_TRIES {
            let bv = bad[frng.gen_range(0..bad.len())];
            let g1 = good[frng.gen_range(0..good.len())];
            let g2 = loop {
                let g = good[frng.gen_range(0..good.len())];
                if g != g1 {
                    break g;
                }
            };
            let mut set = vec![bv, g1, g2];
            set.sort_unstable();
            if !sets.contains(&set) {
                sets.push(set);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailed(format!(
                "could not draw {b} distinct forbidden sets from {a} bad and {} good \
                 vertices",
                good.len()
            )));
        }
    }
    FusionInstance::new(graph, sets)
}
