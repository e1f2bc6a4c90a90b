use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cfrs_core::branching::DEFAULT_BUDGET;
use cfrs_core::containment::build_containment;
use cfrs_core::instances::{gen_ib_reduction, gen_md, gen_random, gen_random_laminar, gen_vc_reduction, CubicGraph};
use cfrs_core::io::{parse_edge_list, parse_matrix, parse_split, write_matrix, write_split};
use cfrs_core::matrix::{build_phylogeny, find_conflict, verify_row_split, BinaryMatrix, Verdict};
use cfrs_core::solvers::{solve, Method};

/// Conflict-free row splits of binary matrices.
#[derive(Debug, Parser)]
#[command(name = "cfrs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print dimensions, containment statistics and the first conflict.
    Analyze { file: PathBuf },
    /// Compute a conflict-free row split.
    Solve {
        file: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Write the split to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Largest number of branchings an exact method may enumerate.
        #[arg(long, env = "CFRS_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Add the wall-clock time to the JSON report.
        #[arg(long)]
        timing: bool,
    },
    /// Check that SPLIT is a conflict-free row split of MATRIX.
    Verify { matrix: PathBuf, split: PathBuf },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write the matrix to this file instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Write the perfect phylogeny of a conflict-free matrix as DOT.
    Tree {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
    /// Write the containment digraph as DOT.
    Digraph {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Draw only the elementary arcs.
        #[arg(long)]
        hasse: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Hierarchical family with d^(h-1) rows.
    Md {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        h: usize,
    },
    /// Row-count reduction from vertex cover on a cubic graph.
    VcReduction {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Distinct-row reduction from vertex cover on a cubic graph.
    IbReduction {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Uniform random matrix without zero rows or columns.
    Random {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Random conflict-free matrix with k distinct columns.
    Laminar {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

enum Failure {
    Invalid(String),
    Rejected,
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) | Failure::Rejected => 1,
            Failure::Budget(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<BinaryMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<CubicGraph, Failure> {
    let (n, edges) = parse_edge_list(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    CubicGraph::new(n, edges).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file } => {
            let matrix = load_matrix(&file)?;
            let d = build_containment(&matrix);
            let conflict = find_conflict(&matrix);
            println!("m: {}", matrix.rows());
            println!("n: {}", matrix.cols());
            println!("k: {}", d.vertex_count());
            println!("height: {}", d.height());
            println!("width: {}", d.width());
            println!("conflict_free: {}", conflict.is_none());
            match conflict {
                Some(w) => println!("witness: {w}"),
                None => println!("witness: none"),
            }
        }
        Command::Solve {
            file,
            method,
            out,
            json,
            budget,
            timing,
        } => {
            let matrix = load_matrix(&file)?;
            let (split, report) = solve(&matrix, method, budget).map_err(|e| {
                if e.is_budget_exceeded() {
                    Failure::Budget(e.to_string())
                } else {
                    invalid(e)
                }
            })?;
            print!("{report}");
            if let Some(path) = out {
                write(&path, &write_split(&split))?;
            }
            if let Some(path) = json {
                let mut value = serde_json::to_value(&report).map_err(invalid)?;
                if timing {
                    value["elapsed_ms"] = serde_json::json!(report.elapsed.as_secs_f64() * 1e3);
                }
                let mut text = serde_json::to_string_pretty(&value).map_err(invalid)?;
                text.push('\n');
                write(&path, &text)?;
            }
        }
        Command::Verify { matrix, split } => {
            let source = load_matrix(&matrix)?;
            let candidate = parse_split(&read(&split)?).map_err(|e| Failure::Invalid(format!("{}: {e}", split.display())))?;
            match verify_row_split(&source, &candidate, true).map_err(invalid)? {
                Verdict::Accept => println!("accept"),
                Verdict::Reject(reason) => {
                    println!("reject: {reason}");
                    return Err(Failure::Rejected);
                }
            }
        }
        Command::Gen { kind, out } => {
            let matrix = match kind {
                GenKind::Md { d, h } => gen_md(d, h),
                GenKind::VcReduction { graph } => gen_vc_reduction(&load_graph(&graph)?),
                GenKind::IbReduction { graph } => gen_ib_reduction(&load_graph(&graph)?),
                GenKind::Random {
                    rows,
                    cols,
                    density,
                    seed,
                } => gen_random(rows, cols, density, seed),
                GenKind::Laminar { rows, k, seed } => gen_random_laminar(rows, k, seed),
            }
            .map_err(invalid)?;
            let text = write_matrix(&matrix);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Tree { file, dot } => {
            let matrix = load_matrix(&file)?;
            let tree = build_phylogeny(&matrix).map_err(invalid)?;
            write(&dot, &tree.to_dot(matrix.row_labels(), matrix.col_labels()))?;
        }
        Command::Digraph { file, dot, hasse } => {
            let matrix = load_matrix(&file)?;
            write(&dot, &build_containment(&matrix).to_dot(matrix.row_labels(), hasse))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Invalid(msg) => eprintln!("error: {msg}"),
                Failure::Budget(msg) => eprintln!("error: {msg}"),
                Failure::Rejected => {}
            }
            ExitCode::from(failure.code())
        }
    }
}
