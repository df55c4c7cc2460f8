//! Command line for generating, solving, evaluating, and converting
//! fusion instances.
//!
//! Exit codes: 0 success, 1 solver or input error, 2 argument parse error
//! (clap's default), 3 infeasible solution under `eval`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fusion_core::dispatch::{choice_from_name, solve, SolverChoice, SolverOptions};
use fusion_core::fixtures::fixture;
use fusion_core::generate::{random_instance, GenSpec};
use fusion_core::gomoryhu::gomory_hu;
use fusion_core::jsonio;
use fusion_core::multiway::OBJECTIVE_CAVEAT;
use fusion_core::solution::{convert, evaluate, is_feasible, Solution, SolutionKind};
use fusion_core::FusionInstance;

#[derive(Parser)]
#[command(
    name = "fusion",
    version,
    about = "Delete minimum-weight edges so no component contains a forbidden vertex set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and write it as JSON.
    Generate {
        /// Target vertex count (the largest component is kept, so the
        /// realized count can be slightly smaller).
        #[arg(long)]
        nodes: usize,
        /// Target edge count.
        #[arg(long)]
        edges: usize,
        #[arg(long, env = "FUSION_SEED", default_value_t = 0)]
        seed: u64,
        /// Edge weight distribution; only uniform01 is available.
        #[arg(long, default_value = "uniform01")]
        weight_dist: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a solver on an instance file or a FIX-* fixture name.
    Solve {
        instance: String,
        #[arg(long)]
        solver: String,
        #[arg(long, env = "FUSION_SEED", default_value_t = 0)]
        seed: u64,
        /// Vertex order for greedy-color: given, random, incident-weight,
        /// or forbidden-degree.
        #[arg(long, default_value = "given")]
        order: String,
        /// Merge phase for gomoryhu: auto, exhaustive, greedy, or off.
        #[arg(long, default_value = "auto")]
        merge: String,
        /// Class-count limit for the exhaustive merge under auto.
        #[arg(long, default_value_t = 12)]
        merge_threshold: usize,
        /// Skip the reverse-delete pass of tree-pd.
        #[arg(long)]
        no_prune: bool,
        /// Let brute explore partitions with any number of blocks.
        #[arg(long)]
        unbounded_colors: bool,
        /// Comma-separated terminal vertex names for multiway.
        #[arg(long, value_delimiter = ',')]
        terminals: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute a solution's feasibility and objective.
    Eval { instance: String, solution: PathBuf },
    /// Re-express a solution as a coloring, subgraph, or matching.
    Convert {
        instance: String,
        solution: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Build the Gomory-Hu cut tree of an instance's graph.
    Gomoryhu {
        instance: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate instances of several sizes and tabulate solver results.
    Bench {
        /// Comma-separated sizes like 60x90,64x192.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<String>,
        /// Comma-separated solver names.
        #[arg(long, value_delimiter = ',')]
        solvers: Vec<String>,
        #[arg(long, env = "FUSION_SEED", default_value_t = 0)]
        seed: u64,
        /// csv or md.
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate {
            nodes,
            edges,
            seed,
            weight_dist,
            output,
        } => {
            if weight_dist != "uniform01" {
                return Err(format!(
                    "unsupported weight distribution {weight_dist:?}; only uniform01 exists"
                ));
            }
            let spec = GenSpec::new(nodes, edges, seed).map_err(|e| e.to_string())?;
            let inst = random_instance(&spec).map_err(|e| e.to_string())?;
            write_out(output.as_deref(), &jsonio::emit_instance(&inst))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            instance,
            solver,
            seed,
            order,
            merge,
            merge_threshold,
            no_prune,
            unbounded_colors,
            terminals,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let opts = SolverOptions {
                order,
                merge,
                merge_threshold,
                prune: !no_prune,
                unbounded_colors,
                terminals,
            };
            let choice = choice_from_name(&solver, &opts, &inst).map_err(|e| e.to_string())?;
            let report = solve(&inst, &choice, seed).map_err(|e| e.to_string())?;
            if matches!(choice, SolverChoice::Multiway { .. }) {
                eprintln!("{OBJECTIVE_CAVEAT}");
            }
            write_out(output.as_deref(), &jsonio::emit_report(&inst, &report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { instance, solution } => {
            let inst = load_instance(&instance)?;
            let text = fs::read_to_string(&solution)
                .map_err(|e| format!("cannot read {}: {e}", solution.display()))?;
            let sol = jsonio::parse_solution(&text, &inst).map_err(|e| e.to_string())?;
            let as_solution = Solution::Coloring(sol.coloring.clone());
            let feasible = is_feasible(&inst, &as_solution).map_err(|e| e.to_string())?;
            if !feasible {
                println!("feasible: false");
                eprintln!("a forbidden set is monochromatic under this coloring");
                return Ok(ExitCode::from(3));
            }
            let obj = evaluate(&inst, &as_solution).map_err(|e| e.to_string())?;
            println!("feasible: true");
            println!("cut_weight: {}", jsonio::fmt_float(obj.cut_weight));
            println!("kept_weight: {}", jsonio::fmt_float(obj.kept_weight));
            if (obj.cut_weight - sol.cut_weight).abs() > 1e-9 {
                println!(
                    "note: stored cut_weight {} disagrees with the recomputed value",
                    jsonio::fmt_float(sol.cut_weight)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert {
            instance,
            solution,
            to,
        } => {
            let inst = load_instance(&instance)?;
            let text = fs::read_to_string(&solution)
                .map_err(|e| format!("cannot read {}: {e}", solution.display()))?;
            let sol = jsonio::parse_solution(&text, &inst).map_err(|e| e.to_string())?;
            let kind = match to.as_str() {
                "coloring" => SolutionKind::Coloring,
                "subgraph" => SolutionKind::Subgraph,
                "matching" => SolutionKind::Matching,
                other => return Err(format!("unknown target form {other:?}")),
            };
            let converted = convert(&inst, &Solution::Coloring(sol.coloring), kind)
                .map_err(|e| e.to_string())?;
            print!("{}", render_solution_form(&inst, &converted));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gomoryhu { instance, output } => {
            let inst = load_instance(&instance)?;
            let tree = gomory_hu(inst.graph()).map_err(|e| e.to_string())?;
            write_out(output.as_deref(), &jsonio::emit_tree(&tree))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            sizes,
            solvers,
            seed,
            format,
        } => {
            bench(&sizes, &solvers, seed, &format)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Fixture name or path to an instance file.
fn load_instance(arg: &str) -> Result<FusionInstance, String> {
    if Path::new(arg).exists() {
        let text =
            fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?;
        return jsonio::parse_instance(&text).map_err(|e| e.to_string());
    }
    if arg.starts_with("FIX-") {
        return fixture(arg).map_err(|e| e.to_string());
    }
    Err(format!("{arg}: no such file, and not a FIX-* fixture name"))
}

fn render_solution_form(inst: &FusionInstance, sol: &Solution) -> String {
    let g = inst.graph();
    match sol {
        Solution::Coloring(c) => {
            let mut names: Vec<(&str, usize)> = (0..g.vertex_count())
                .map(|v| (g.name(v), c.colors()[v]))
                .collect();
            names.sort_by(|a, b| a.0.cmp(b.0));
            let body = names
                .iter()
                .map(|(n, c)| format!("{}: {c}", serde_json::to_string(n).unwrap()))
                .collect::<Vec<_>>()
                .join(", ");
            format!("{{\"coloring\": {{{body}}}}}\n")
        }
        Solution::Subgraph(s) => {
            let body = s
                .kept_edges()
                .iter()
                .map(|&j| {
                    let e = g.edge(j);
                    format!(
                        "[{}, {}]",
                        serde_json::to_string(g.name(e.u)).unwrap(),
                        serde_json::to_string(g.name(e.v)).unwrap()
                    )
                })
                .collect::<Vec<_>>()
                .join(", ");
            format!("{{\"kept_edges\": [{body}]}}\n")
        }
        Solution::Matching(m) => {
            let body = m
                .blocks()
                .iter()
                .map(|block| {
                    let names = block
                        .iter()
                        .map(|&v| serde_json::to_string(g.name(v)).unwrap())
                        .collect::<Vec<_>>()
                        .join(", ");
                    format!("[{names}]")
                })
                .collect::<Vec<_>>()
                .join(", ");
            format!("{{\"blocks\": [{body}]}}\n")
        }
    }
}

fn bench(sizes: &[String], solvers: &[String], seed: u64, format: &str) -> Result<(), String> {
    if sizes.is_empty() || solvers.is_empty() {
        return Err("bench needs --sizes and --solvers".to_string());
    }
    if !matches!(format, "csv" | "md") {
        return Err(format!("unknown format {format:?}; use csv or md"));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for size in sizes {
        let (n, m) = size
            .split_once('x')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| format!("size {size:?} is not of the form NxM"))?;
        let spec = GenSpec::new(n, m, seed).map_err(|e| e.to_string())?;
        let inst = random_instance(&spec).map_err(|e| e.to_string())?;
        let mut row = vec![
            inst.graph().vertex_count().to_string(),
            inst.graph().edge_count().to_string(),
            inst.forbidden().len().to_string(),
        ];
        for solver in solvers {
            let choice = choice_from_name(solver, &SolverOptions::default(), &inst)
                .map_err(|e| e.to_string())?;
            let report = solve(&inst, &choice, seed).map_err(|e| e.to_string())?;
            row.push(jsonio::fmt_float(report.cut_weight));
            row.push(report.runtime_ms.to_string());
        }
        rows.push(row);
    }
    let mut header = vec![
        "nodes".to_string(),
        "edges".to_string(),
        "forbidden".to_string(),
    ];
    for solver in solvers {
        header.push(format!("{solver}_cut"));
        header.push(format!("{solver}_ms"));
    }
    match format {
        "csv" => {
            println!("{}", header.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        _ => {
            println!("| {} |", header.join(" | "));
            println!("|{}|", vec!["---"; header.len()].join("|"));
            for row in rows {
                println!("| {} |", row.join(" | "));
            }
        }
    }
    Ok(())
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
