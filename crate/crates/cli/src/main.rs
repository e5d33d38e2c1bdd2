//! `srs`: build, check, repair and export (3,6)-tight surface triangulations.
//!
//! Exit status: 0 pass, 1 property fails, 2 usage or format error,
//! 3 budget exhausted. Worker threads follow `RAYON_NUM_THREADS`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use srs_core::girth::{self, DEFAULT_EDGE_BUDGET};
use srs_core::graph::Graph;
use srs_core::mesh::io;
use srs_core::mesh::SurfaceMesh;
use srs_core::model::{self, TreeSpec};
use srs_core::moves::{self, MoveLog};
use srs_core::rigidity::{self, DEFAULT_SEED, DEFAULT_TRIALS};
use srs_core::seeds;
use srs_core::sparsity;
use srs_core::GirthError;

#[derive(Parser)]
#[command(name = "srs", version, about = "(3,6)-tight surface triangulations and generic 3D rigidity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tower of tight meshes for a tree spec
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the topological invariants of a tree spec
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Check a property of a mesh (or, for tight and rigid, a plain graph)
    Check {
        property: Property,
        mesh: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Apply local barycentric moves until the girth inequalities hold
    Repair {
        mesh: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_moves: usize,
    },
    /// Print vertex, edge, face and genus data of a mesh
    Invariants { mesh: PathBuf },
    /// Generic rank of the rigidity matrix
    Rank {
        mesh: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Apply a move log to a mesh
    Replay {
        mesh: PathBuf,
        log: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a mesh as DOT or canonical JSON
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        mesh: PathBuf,
    },
    /// Join m^3 copies of the six-holed sphere unit
    Schwarz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in mesh or graph: disc, octahedron, discus-R,
    /// projective-seed, torus-seed, projective-core, torus-core,
    /// violating-join, double-banana
    Seed {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Tight,
    Girth,
    Rigid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exhaustive,
    Flow,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// Outcome of a verb; errors are mapped to exit status 2.
enum Status {
    Pass,
    Fail,
    Budget,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_mesh(path: &Path) -> Result<SurfaceMesh> {
    io::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    io::graph_from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_spec(path: &Path) -> Result<TreeSpec> {
    TreeSpec::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Write to stdout; a closed pipe is not an error.
fn say(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn print(value: &serde_json::Value) {
    say(&serde_json::to_string_pretty(value).expect("json"));
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            say(text);
            Ok(())
        }
    }
}

fn build(spec: &Path, depth: usize, out: &Path) -> Result<Status> {
    let spec = load_spec(spec)?;
    let tower = model::build_tower(&spec, depth)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut stages = Vec::new();
    for (k, stage) in tower.stages.iter().enumerate() {
        let name = format!("stage-{k}.json");
        write(&out.join(&name), &io::to_json(&stage.mesh))?;
        stages.push(json!({
            "file": name,
            "vertices": stage.mesh.vertex_count(),
            "edges": stage.mesh.edge_count(),
            "maxwell": stage.mesh.maxwell_count(),
            "frontier": stage.frontier,
            "moves": stage.moves,
        }));
    }
    write(&out.join("moves.json"), &MoveLog::new(tower.log).to_json())?;
    print(&json!({"depth": depth, "stages": stages, "log": "moves.json"}));
    Ok(Status::Pass)
}

fn check(property: Property, path: &Path, method: Option<Method>, seed: u64, trials: usize) -> Result<Status> {
    match property {
        Property::Tight => {
            let g = load_graph(path)?;
            let verdict = match method {
                Some(Method::Exhaustive) => match sparsity::check_exhaustive(&g) {
                    Ok(v) => v,
                    Err(e) => {
                        print(&json!({"error": e.to_string()}));
                        return Ok(Status::Budget);
                    }
                },
                Some(Method::Flow) => sparsity::check_flow(&g),
                None => sparsity::check(&g),
            };
            print(&serde_json::to_value(&verdict)?);
            Ok(verdict.is_tight().into())
        }
        Property::Girth => {
            let mesh = load_mesh(path)?;
            let result = match method {
                Some(Method::Exhaustive) => girth::check_girth_with_budget(&mesh, DEFAULT_EDGE_BUDGET).and_then(|v| {
                    if v.mode == girth::Mode::Exhaustive {
                        Ok(v)
                    } else {
                        Err(GirthError::Budget {
                            edges: mesh.edge_count(),
                            budget: DEFAULT_EDGE_BUDGET,
                        })
                    }
                }),
                Some(Method::Flow) => girth::check_girth_with_budget(&mesh, 0),
                None => girth::check_girth(&mesh),
            };
            match result {
                Ok(v) => {
                    print(&serde_json::to_value(&v)?);
                    Ok(v.passes.into())
                }
                Err(GirthError::Budget { edges, budget }) => {
                    print(&json!({"error": "edge budget exceeded", "edges": edges, "budget": budget}));
                    Ok(Status::Budget)
                }
                Err(GirthError::MaxwellNotSix(f)) => {
                    print(&json!({"passes": false, "error": "girth inequalities need f = 6", "maxwell": f}));
                    Ok(Status::Fail)
                }
                Err(e) => Err(e.into()),
            }
        }
        Property::Rigid => {
            let g = load_graph(path)?;
            let report = rigidity::generic_rank(&g, seed, trials);
            let verdict = rigidity::is_min_3rigid(&g, seed, trials);
            print(&json!({"report": report, "verdict": verdict}));
            Ok(verdict.is_minimally_rigid().into())
        }
    }
}

fn repair(path: &Path, out: &Path, max_moves: usize) -> Result<Status> {
    let mesh = load_mesh(path)?;
    let result = girth::repair(&mesh, max_moves)?;
    write(out, &io::to_json(&result.mesh))?;
    let log_path = out.with_extension("moves.json");
    write(&log_path, &MoveLog::new(result.log.clone()).to_json())?;
    print(&json!({
        "success": result.success,
        "moves": result.log.len(),
        "maxwell_trace": result.maxwell_trace,
        "delta_trace": result.delta_trace,
        "out": out,
        "log": log_path,
    }));
    Ok(if result.success { Status::Pass } else { Status::Budget })
}

fn schwarz(m: usize, out: Option<&Path>) -> Result<Status> {
    let block = model::schwarz_block_join(m)?;
    let verdict = sparsity::check_flow(&block.mesh.graph());
    if let Some(p) = out {
        write(p, &io::to_json(&block.mesh))?;
    }
    print(&json!({
        "m": m,
        "vertices": block.mesh.vertex_count(),
        "edges": block.mesh.edge_count(),
        "adjacencies": block.adjacencies,
        "maxwell": block.maxwell,
        "predicted_maxwell": block.predicted_maxwell(),
        "holes": block.mesh.hole_lengths().len(),
        "deficiency": verdict.deficiency,
        "status": verdict.status,
    }));
    Ok(Status::Pass)
}

fn seed(name: &str, out: Option<&Path>) -> Result<Status> {
    let mesh = match name {
        "disc" => seeds::disc(),
        "octahedron" => seeds::octahedron(),
        "projective-seed" => seeds::projective_seed(),
        "torus-seed" => seeds::torus_seed(),
        "projective-core" => seeds::projective_core(),
        "torus-core" => seeds::torus_core(),
        "violating-join" => seeds::violating_join(),
        "double-banana" => return emit(&io::graph_to_json(&seeds::double_banana()), out).map(|_| Status::Pass),
        other => {
            let r = other
                .strip_prefix("discus-")
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| anyhow!("unknown seed {other:?}"))?;
            seeds::discus_mesh(r)?
        }
    };
    emit(&io::to_json(&mesh), out)?;
    Ok(Status::Pass)
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Build { spec, depth, out } => build(&spec, depth, &out),
        Command::Classify { spec } => {
            let spec = load_spec(&spec)?;
            print(&serde_json::to_value(model::classify(&spec))?);
            Ok(Status::Pass)
        }
        Command::Check {
            property,
            mesh,
            method,
            seed,
            trials,
        } => check(property, &mesh, method, seed, trials),
        Command::Repair { mesh, out, max_moves } => repair(&mesh, &out, max_moves),
        Command::Invariants { mesh } => {
            let inv = load_mesh(&mesh)?.invariants()?;
            print(&serde_json::to_value(inv)?);
            Ok(Status::Pass)
        }
        Command::Rank { mesh, seed, trials } => {
            let report = rigidity::generic_rank(&load_graph(&mesh)?, seed, trials);
            print(&serde_json::to_value(report)?);
            Ok(Status::Pass)
        }
        Command::Replay { mesh, log, out } => {
            let start = load_mesh(&mesh)?;
            let log = MoveLog::from_json(&read(&log)?)?;
            let end = moves::replay(&start, &log.moves)?;
            emit(&io::to_json(&end), out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::Export { format, mesh } => {
            let mesh = load_mesh(&mesh)?;
            match format {
                ExportFormat::Dot => say(io::to_dot(&mesh).trim_end()),
                ExportFormat::Json => say(&io::to_json(&mesh)),
            }
            Ok(Status::Pass)
        }
        Command::Schwarz { m, out } => schwarz(m, out.as_deref()),
        Command::Seed { name, out } => seed(&name, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Ok(Status::Budget) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
