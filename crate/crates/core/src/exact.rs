//! Exact solvers: partition enumeration, cut enumeration for one or two
//! forbidden sets, and exhaustive two-coloring.

use std::time::Instant;

use crate::error::{invalid, Error, Result};
use crate::graph::min_st_cut;
use crate::instance::FusionInstance;
use crate::partitions::for_each_partition;
use crate::report::SolveReport;
use crate::solution::Coloring;

/// The largest number of classes an optimal solution can need when `b`
/// forbidden sets are present: the biggest `t` with `t * (t - 1) <= 2 * b`,
/// and 1 when there are no forbidden sets at all.
pub fn color_bound(b: usize) -> usize {
    if b == 0 {
        return 1;
    }
    let mut t = ((1.0 + (1.0 + 8.0 * b as f64).sqrt()) / 2.0).floor() as usize;
    while t > 1 && t * (t - 1) > 2 * b {
        t -= 1;
    }
    while (t + 1) * t <= 2 * b {
        t += 1;
    }
    t
}

/// Exhaustive optimum by set-partition enumeration, capped at 12 vertices.
///
/// Only partitions with at most [`color_bound`] blocks are visited unless
/// `unbounded_colors` lifts the cap for cross-checking. Objective ties are
/// resolved toward the lexicographically smallest normalized coloring,
/// which is the first optimum in enumeration order.
pub fn brute_force(inst: &FusionInstance, unbounded_colors: bool) -> Result<SolveReport> {
    inst.require_valid()?;
    let start = Instant::now();
    let n = inst.graph().vertex_count();
    if n > 12 {
        return Err(Error::SizeLimit(format!(
            "partition enumeration is capped at 12 vertices, the instance has {n}"
        )));
    }
    if n == 0 {
        return Err(invalid("the graph has no vertices"));
    }
    let max_blocks = if unbounded_colors {
        n
    } else {
        color_bound(inst.forbidden().len()).min(n)
    };
    let forbidden = inst.forbidden();
    let edges = inst.graph().edges();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for_each_partition(n, max_blocks, &mut |assign, _| {
        for set in forbidden {
            let c = assign[set[0]];
            if set.iter().all(|&v| assign[v] == c) {
                return true;
            }
        }
        let mut cut = 0.0;
        for e in edges {
            if assign[e.u] != assign[e.v] {
                cut += e.w;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, assign.to_vec()));
        }
        true
    });
    let (_, assign) = best.ok_or_else(|| {
        Error::Internal("no feasible partition within the color bound".to_string())
    })?;
    SolveReport::build(inst, "brute", 0, Coloring::new(assign), start.elapsed())
}

/// The candidate splits `(K, F \ K)` of a single forbidden set `f`:
/// every nonempty `K` with `|K| <= |f| / 2`, keeping only the copy that
/// contains the smallest vertex when `|K| = |f| / 2` and `|f|` is even
/// (its complement names the same cut). There are exactly
/// `2^(|f| - 1) - 1` of them.
pub fn split_candidates(f: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = f.len();
    debug_assert!(k >= 2 && k < usize::BITS as usize);
    let mut out = Vec::new();
    for mask in 1u64..(1 << k) - 1 {
        let size = mask.count_ones() as usize;
        if 2 * size > k {
            continue;
        }
        // f is sorted, so bit 0 is its smallest vertex.
        if k.is_multiple_of(2) && 2 * size == k && mask & 1 == 0 {
            continue;
        }
        let mut side = Vec::with_capacity(size);
        let mut rest = Vec::with_capacity(k - size);
        for (i, &v) in f.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side.push(v);
            } else {
                rest.push(v);
            }
        }
        out.push((side, rest));
    }
    out
}

/// Exact solver for exactly one forbidden set: the optimum is the cheapest
/// of the minimum cuts separating some nonempty `K` from `F \ K`, and it
/// always has exactly two parts.
pub fn solve_single_forbidden(inst: &FusionInstance) -> Result<SolveReport> {
    solve_single_forbidden_detailed(inst).map(|(report, _)| report)
}

/// Same, also returning the number of minimum-cut calls made.
pub fn solve_single_forbidden_detailed(inst: &FusionInstance) -> Result<(SolveReport, usize)> {
    inst.require_valid()?;
    let start = Instant::now();
    if inst.forbidden().len() != 1 {
        return Err(invalid(format!(
            "this solver handles exactly one forbidden set, the instance has {}",
            inst.forbidden().len()
        )));
    }
    let f = inst.forbidden()[0].clone();
    let mut cut_calls = 0usize;
    let mut best: Option<(f64, Coloring)> = None;
    for (side, rest) in split_candidates(&f) {
        let cut = min_st_cut(inst.graph(), &side, &rest)?;
        cut_calls += 1;
        consider(&mut best, cut.value, two_sided(inst, &cut.source_side));
    }
    let (_, coloring) = best.ok_or_else(|| Error::Internal("no candidate splits".into()))?;
    let report = SolveReport::build(inst, "single", 0, coloring, start.elapsed())?;
    Ok((report, cut_calls))
}

/// Exact solver for exactly two forbidden sets: enumerate the unordered
/// two-part splits of their union that meet both sets on both sides, take
/// the cheapest of the corresponding minimum cuts.
///
/// With one forbidden set (for example after construction deduplicated two
/// equal sets) the call is routed to [`solve_single_forbidden`].
pub fn solve_two_forbidden(inst: &FusionInstance) -> Result<SolveReport> {
    inst.require_valid()?;
    match inst.forbidden().len() {
        1 => return solve_single_forbidden(inst),
        2 => {}
        other => {
            return Err(invalid(format!(
                "this solver handles exactly two forbidden sets, the instance has {other}"
            )))
        }
    }
    let start = Instant::now();
    let f0 = &inst.forbidden()[0];
    let f1 = &inst.forbidden()[1];
    let union = inst.forbidden_union();
    let k = union.len();
    let in_set = |set: &[usize], v: usize| set.binary_search(&v).is_ok();

    let mut best: Option<(f64, Coloring)> = None;
    // Fixing union[0] on side A enumerates unordered splits once each.
    for mask in 0u64..(1 << (k - 1)) {
        let mut a = vec![union[0]];
        let mut b = Vec::new();
        for (i, &v) in union.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        if b.is_empty() {
            continue;
        }
        let touches = |side: &[usize]| {
            side.iter().any(|&v| in_set(f0, v)) && side.iter().any(|&v| in_set(f1, v))
        };
        if !touches(&a) || !touches(&b) {
            continue;
        }
        let cut = min_st_cut(inst.graph(), &a, &b)?;
        consider(&mut best, cut.value, two_sided(inst, &cut.source_side));
    }
    let (_, coloring) = best.ok_or_else(|| {
        Error::Internal("no two-part split meets both forbidden sets on both sides".into())
    })?;
    SolveReport::build(inst, "two", 0, coloring, start.elapsed())
}

/// Exhaustive two-coloring solver: try every proper two-coloring of the
/// vertices that appear in forbidden sets (capped at 24 of them), complete
/// each by a minimum cut anchored on the two color classes, and keep the
/// cheapest. Errors with [`Error::NoProperTwoColoring`] when no proper
/// two-coloring exists.
pub fn two_color_exhaustive(inst: &FusionInstance) -> Result<SolveReport> {
    inst.require_valid()?;
    let start = Instant::now();
    let x = inst.forbidden_union();
    if x.len() > 24 {
        return Err(Error::SizeLimit(format!(
            "exhaustive two-coloring is capped at 24 forbidden-set vertices, got {}",
            x.len()
        )));
    }
    if x.is_empty() {
        // No forbidden sets: keep everything.
        let n = inst.graph().vertex_count();
        return SolveReport::build(
            inst,
            "twocolor",
            0,
            Coloring::new(vec![0; n]),
            start.elapsed(),
        );
    }
    let forbidden = inst.forbidden();
    let pos_of: std::collections::HashMap<usize, usize> =
        x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut best: Option<(f64, Coloring)> = None;
    // x[0] is pinned to color 0; complementary colorings name the same cut.
    for mask in 0u64..(1 << (x.len() - 1)) {
        let color = |v: usize| -> u8 {
            let p = pos_of[&v];
            if p == 0 {
                0
            } else {
                (mask >> (p - 1) & 1) as u8
            }
        };
        let proper = forbidden
            .iter()
            .all(|set| !set.iter().all(|&v| color(v) == color(set[0])));
        if !proper {
            continue;
        }
        let sources: Vec<usize> = x.iter().copied().filter(|&v| color(v) == 0).collect();
        let sinks: Vec<usize> = x.iter().copied().filter(|&v| color(v) == 1).collect();
        let cut = min_st_cut(inst.graph(), &sources, &sinks)?;
        consider(&mut best, cut.value, two_sided(inst, &cut.source_side));
    }
    match best {
        Some((_, coloring)) => SolveReport::build(inst, "twocolor", 0, coloring, start.elapsed()),
        None => Err(Error::NoProperTwoColoring),
    }
}

/// Two-coloring of all vertices from a cut's source side.
fn two_sided(inst: &FusionInstance, source_side: &[usize]) -> Coloring {
    let mut colors = vec![1usize; inst.graph().vertex_count()];
    for &v in source_side {
        colors[v] = 0;
    }
    Coloring::new(colors)
}

/// Keeps the candidate if it is strictly cheaper, or equally cheap with a
/// lexicographically smaller normalized coloring.
fn consider(best: &mut Option<(f64, Coloring)>, value: f64, coloring: Coloring) {
    let coloring = coloring.normalized();
    let replace = match best {
        None => true,
        Some((bv, bc)) => value < *bv || (value == *bv && coloring.colors() < bc.colors()),
    };
    if replace {
        *best = Some((value, coloring));
    }
}
