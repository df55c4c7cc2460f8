//! Python bindings. A thin, owning layer over the core library: `Instance`
//! wraps a problem, `solve` returns a plain-data `Report`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fusion_core::dispatch::{choice_from_name, solve, SolverOptions};
use fusion_core::fixtures::fixture;
use fusion_core::generate::{random_instance, GenSpec};
use fusion_core::gomoryhu::gomory_hu;
use fusion_core::instance::FusionInstance;
use fusion_core::jsonio;
use fusion_core::report::SolveReport;

fn value_err(e: fusion_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A fusion problem: a weighted graph plus the forbidden vertex sets.
#[pyclass(frozen)]
struct Instance {
    inner: FusionInstance,
}

#[pymethods]
impl Instance {
    /// Parses the canonical instance JSON.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = jsonio::parse_instance(text).map_err(value_err)?;
        Ok(Instance { inner })
    }

    /// Loads a named built-in fixture such as "FIX-PATH".
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let inner = fixture(name).map_err(value_err)?;
        Ok(Instance { inner })
    }

    /// Generates a random instance with the library's stock model.
    #[staticmethod]
    #[pyo3(signature = (nodes, edges, seed = 0))]
    fn random(nodes: usize, edges: usize, seed: u64) -> PyResult<Self> {
        let spec = GenSpec::new(nodes, edges, seed).map_err(value_err)?;
        let inner = random_instance(&spec).map_err(value_err)?;
        Ok(Instance { inner })
    }

    fn vertex_names(&self) -> Vec<String> {
        self.inner.graph().names().to_vec()
    }

    fn edges(&self) -> Vec<(String, String, f64)> {
        let g = self.inner.graph();
        g.edges()
            .iter()
            .map(|e| (g.name(e.u).to_string(), g.name(e.v).to_string(), e.w))
            .collect()
    }

    fn forbidden(&self) -> Vec<Vec<String>> {
        let g = self.inner.graph();
        self.inner
            .forbidden()
            .iter()
            .map(|set| set.iter().map(|&v| g.name(v).to_string()).collect())
            .collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    /// Human-readable validation summary; "ok" when nothing is wrong.
    fn validate(&self) -> String {
        self.inner.validate().to_string()
    }

    fn to_json(&self) -> String {
        jsonio::emit_instance(&self.inner)
    }

    /// Runs a solver by name. Solver names and options match the CLI.
    #[pyo3(signature = (
        solver,
        seed = 0,
        order = "given",
        merge = "auto",
        merge_threshold = 12,
        prune = true,
        unbounded_colors = false,
        terminals = vec![],
    ))]
    #[allow(clippy::too_many_arguments)]
    fn solve(
        &self,
        solver: &str,
        seed: u64,
        order: &str,
        merge: &str,
        merge_threshold: usize,
        prune: bool,
        unbounded_colors: bool,
        terminals: Vec<String>,
    ) -> PyResult<Report> {
        let opts = SolverOptions {
            order: order.to_string(),
            merge: merge.to_string(),
            merge_threshold,
            prune,
            unbounded_colors,
            terminals,
        };
        let choice = choice_from_name(solver, &opts, &self.inner).map_err(value_err)?;
        let rep = solve(&self.inner, &choice, seed).map_err(value_err)?;
        Ok(Report::from_core(&self.inner, &rep))
    }

    /// The cut tree: (u, v, weight) triples where the weight is the u-v
    /// minimum cut value in the original graph.
    fn gomory_hu(&self) -> PyResult<Vec<(String, String, f64)>> {
        let tree = gomory_hu(self.inner.graph()).map_err(value_err)?;
        let t = tree.as_graph();
        Ok(t.edges()
            .iter()
            .map(|e| (t.name(e.u).to_string(), t.name(e.v).to_string(), e.w))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, edges={}, forbidden={})",
            self.inner.graph().vertex_count(),
            self.inner.graph().edge_count(),
            self.inner.forbidden().len()
        )
    }
}

/// One solver run, flattened to plain data.
#[pyclass(frozen)]
struct Report {
    #[pyo3(get)]
    solver: String,
    #[pyo3(get)]
    seed: u64,
    #[pyo3(get)]
    coloring: BTreeMap<String, usize>,
    #[pyo3(get)]
    color_count: usize,
    #[pyo3(get)]
    cut_weight: f64,
    #[pyo3(get)]
    kept_weight: f64,
    #[pyo3(get)]
    removed_edges: Vec<(String, String)>,
    #[pyo3(get)]
    runtime_ms: u64,
    json: String,
}

impl Report {
    fn from_core(inst: &FusionInstance, rep: &SolveReport) -> Report {
        let g = inst.graph();
        let coloring = g
            .names()
            .iter()
            .enumerate()
            .map(|(v, name)| (name.clone(), rep.coloring.colors()[v]))
            .collect();
        let removed_edges = rep
            .removed_edges(inst)
            .into_iter()
            .map(|id| {
                let e = g.edge(id);
                (g.name(e.u).to_string(), g.name(e.v).to_string())
            })
            .collect();
        Report {
            solver: rep.solver.clone(),
            seed: rep.seed,
            coloring,
            color_count: rep.color_count,
            cut_weight: rep.cut_weight,
            kept_weight: rep.kept_weight,
            removed_edges,
            runtime_ms: rep.runtime_ms,
            json: jsonio::emit_report(inst, rep),
        }
    }
}

#[pymethods]
impl Report {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(solver={:?}, cut_weight={}, color_count={})",
            self.solver, self.cut_weight, self.color_count
        )
    }
}

#[pymodule]
fn fusion_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Report>()?;
    Ok(())
}
