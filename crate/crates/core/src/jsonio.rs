//! Canonical JSON reading and writing for instances, solutions, and trees.
//!
//! Emission is byte-stable: keys appear in sorted order and floats are
//! printed with 17 significant digits, enough for an exact f64 round trip.
//! Identical inputs therefore produce identical files.

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::{invalid, Result};
use crate::gomoryhu::GomoryHuTree;
use crate::graph::WeightedGraph;
use crate::instance::FusionInstance;
use crate::report::SolveReport;
use crate::solution::Coloring;

/// 17 significant digits in scientific notation; round-trips every finite
/// f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn inline_names<'a>(names: impl Iterator<Item = &'a str>) -> String {
    let quoted: Vec<String> = names.map(quote).collect();
    format!("[{}]", quoted.join(", "))
}

/// Multi-line array: one rendered item per line, or `[]` when empty.
fn block_array(items: &[String], indent: &str) -> String {
    if items.is_empty() {
        return "[]".to_string();
    }
    let inner = items
        .iter()
        .map(|it| format!("{indent}  {it}"))
        .collect::<Vec<_>>()
        .join(",\n");
    format!("[\n{inner}\n{indent}]")
}

fn edge_lines(g: &WeightedGraph) -> Vec<String> {
    g.edges()
        .iter()
        .map(|e| {
            format!(
                "{{\"u\": {}, \"v\": {}, \"w\": {}}}",
                quote(g.name(e.u)),
                quote(g.name(e.v)),
                fmt_float(e.w)
            )
        })
        .collect()
}

/// Serializes an instance as `{"edges": ..., "forbidden": ..., "vertices": ...}`.
pub fn emit_instance(inst: &FusionInstance) -> String {
    let g = inst.graph();
    let forbidden: Vec<String> = inst
        .forbidden()
        .iter()
        .map(|set| inline_names(set.iter().map(|&v| g.name(v))))
        .collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"edges\": {},", block_array(&edge_lines(g), "  "));
    let _ = writeln!(out, "  \"forbidden\": {},", block_array(&forbidden, "  "));
    let _ = writeln!(
        out,
        "  \"vertices\": {}",
        inline_names(g.names().iter().map(String::as_str))
    );
    out.push_str("}\n");
    out
}

/// Serializes a cut tree with the same edge layout as an instance file.
pub fn emit_tree(tree: &GomoryHuTree) -> String {
    let g = tree.as_graph();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"edges\": {},", block_array(&edge_lines(g), "  "));
    let _ = writeln!(
        out,
        "  \"vertices\": {}",
        inline_names(g.names().iter().map(String::as_str))
    );
    out.push_str("}\n");
    out
}

/// Serializes a report. Vertex names key the coloring map; removed edges
/// are name pairs in canonical edge order.
pub fn emit_report(inst: &FusionInstance, rep: &SolveReport) -> String {
    let g = inst.graph();
    let mut names: Vec<(&str, usize)> = (0..g.vertex_count())
        .map(|v| (g.name(v), rep.coloring.colors()[v]))
        .collect();
    names.sort_by(|a, b| a.0.cmp(b.0));
    let coloring = names
        .iter()
        .map(|(name, c)| format!("{}: {c}", quote(name)))
        .collect::<Vec<_>>()
        .join(", ");
    let removed: Vec<String> = rep
        .removed_edges(inst)
        .iter()
        .map(|&j| {
            let e = g.edge(j);
            format!("[{}, {}]", quote(g.name(e.u)), quote(g.name(e.v)))
        })
        .collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"color_count\": {},", rep.color_count);
    let _ = writeln!(out, "  \"coloring\": {{{coloring}}},");
    let _ = writeln!(out, "  \"cut_weight\": {},", fmt_float(rep.cut_weight));
    let _ = writeln!(out, "  \"kept_weight\": {},", fmt_float(rep.kept_weight));
    let _ = writeln!(out, "  \"removed_edges\": {},", block_array(&removed, "  "));
    let _ = writeln!(out, "  \"runtime_ms\": {},", rep.runtime_ms);
    let _ = writeln!(out, "  \"seed\": {},", rep.seed);
    let _ = writeln!(out, "  \"solver\": {}", quote(&rep.solver));
    out.push_str("}\n");
    out
}

fn parse_root(text: &str) -> Result<serde_json::Map<String, Value>> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| invalid(format!("JSON parse error: {e}")))?;
    match v {
        Value::Object(map) => Ok(map),
        _ => Err(invalid("expected a JSON object at the top level")),
    }
}

fn str_item(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| invalid(format!("{what} must be a string")))
}

/// Reads an instance file written by [`emit_instance`] (or by hand in the
/// same shape).
pub fn parse_instance(text: &str) -> Result<FusionInstance> {
    let map = parse_root(text)?;
    for key in map.keys() {
        if !matches!(key.as_str(), "edges" | "forbidden" | "vertices") {
            return Err(invalid(format!("unknown instance key {key:?}")));
        }
    }
    let vertices = map
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("instance needs a \"vertices\" array"))?
        .iter()
        .map(|v| str_item(v, "vertex name"))
        .collect::<Result<Vec<String>>>()?;
    let mut edges = Vec::new();
    for (i, e) in map
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("instance needs an \"edges\" array"))?
        .iter()
        .enumerate()
    {
        let obj = e
            .as_object()
            .ok_or_else(|| invalid(format!("edge {i} must be an object")))?;
        let u = str_item(
            obj.get("u").ok_or_else(|| invalid(format!("edge {i} lacks \"u\"")))?,
            "edge endpoint",
        )?;
        let v = str_item(
            obj.get("v").ok_or_else(|| invalid(format!("edge {i} lacks \"v\"")))?,
            "edge endpoint",
        )?;
        let w = obj
            .get("w")
            .and_then(Value::as_f64)
            .ok_or_else(|| invalid(format!("edge {i} lacks a numeric \"w\"")))?;
        edges.push((u, v, w));
    }
    let graph = WeightedGraph::new(vertices, edges)?;
    let mut forbidden = Vec::new();
    for (i, set) in map
        .get("forbidden")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("instance needs a \"forbidden\" array"))?
        .iter()
        .enumerate()
    {
        let names = set
            .as_array()
            .ok_or_else(|| invalid(format!("forbidden set {i} must be an array")))?
            .iter()
            .map(|v| str_item(v, "forbidden set member"))
            .collect::<Result<Vec<String>>>()?;
        forbidden.push(names);
    }
    FusionInstance::from_names(graph, &forbidden)
}

/// A solution file, resolved against the instance it belongs to.
#[derive(Debug, Clone)]
pub struct SolutionFile {
    pub solver: String,
    pub seed: u64,
    pub coloring: Coloring,
    pub cut_weight: f64,
    pub kept_weight: f64,
    pub color_count: usize,
    pub runtime_ms: u64,
}

/// Reads a solution file; the coloring map must mention every instance
/// vertex exactly once.
pub fn parse_solution(text: &str, inst: &FusionInstance) -> Result<SolutionFile> {
    let map = parse_root(text)?;
    let g = inst.graph();
    let cmap = map
        .get("coloring")
        .and_then(Value::as_object)
        .ok_or_else(|| invalid("solution needs a \"coloring\" object"))?;
    let mut colors = vec![usize::MAX; g.vertex_count()];
    for (name, val) in cmap {
        let v = g.require_vertex(name)?;
        let c = val
            .as_u64()
            .ok_or_else(|| invalid(format!("color of {name:?} must be a nonnegative integer")))?;
        colors[v] = c as usize;
    }
    if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
        return Err(invalid(format!(
            "coloring does not mention vertex {:?}",
            g.name(v)
        )));
    }
    let get_u64 = |key: &str| -> Result<u64> {
        map.get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| invalid(format!("solution needs an integer \"{key}\"")))
    };
    let get_f64 = |key: &str| -> Result<f64> {
        map.get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| invalid(format!("solution needs a numeric \"{key}\"")))
    };
    Ok(SolutionFile {
        solver: str_item(
            map.get("solver").ok_or_else(|| invalid("solution needs a \"solver\""))?,
            "solver",
        )?,
        seed: get_u64("seed")?,
        coloring: Coloring::new(colors),
        cut_weight: get_f64("cut_weight")?,
        kept_weight: get_f64("kept_weight")?,
        color_count: get_u64("color_count")? as usize,
        runtime_ms: get_u64("runtime_ms")?,
    })
}
