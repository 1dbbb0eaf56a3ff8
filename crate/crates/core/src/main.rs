use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dpcolor::discharging;
use dpcolor::dp::{self, ChiMode, Coloring, CorrespondenceAssignment};
use dpcolor::generate;
use dpcolor::io;
use dpcolor::pipeline::{self, BatchConfig};
use dpcolor::reductions::{self, ReductionPlan};
use dpcolor::structure;
use dpcolor::{Graph, Plane};

#[derive(Parser)]
#[command(name = "dpcolor", version, about = "Correspondence colouring of plane graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConfigArg {
    I,
    Ii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    InClass,
    Triangulation,
}

#[derive(clap::Args)]
struct AssignmentArgs {
    /// Assignment file; without it a random perfect assignment is drawn.
    #[arg(long)]
    assignment: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and check its embedding.
    Validate { graph: PathBuf },
    /// List traced faces.
    Faces { graph: PathBuf },
    /// Look for a 4-cycle adjacent to two triangles.
    ClassCheck { graph: PathBuf },
    /// Structure report and the minimal-counterexample audit.
    Audit {
        graph: PathBuf,
        /// Precoloured set, e.g. `0,1,2`; defaults to the outer boundary.
        #[arg(long)]
        s: Option<String>,
    },
    /// Find a C-colouring.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
    },
    /// Extend a precolouring.
    Extend {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
        #[arg(long)]
        precoloring: PathBuf,
    },
    /// Count C-colourings extending an optional precolouring.
    Count {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
        #[arg(long)]
        precoloring: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Correspondence chromatic number.
    ChiDp {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Sample this many assignments per k instead of exhaustive search.
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Straighten a forest (a spanning forest by default).
    Straighten {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
        /// Forest edges as `u-v,u-v,...`.
        #[arg(long)]
        forest: Option<String>,
    },
    /// Apply a reducible configuration.
    Reduce {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
        #[arg(long, value_enum)]
        config: ConfigArg,
        /// Which occurrence to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Lift a colouring of the reduced graph back.
    Lift {
        graph: PathBuf,
        #[command(flatten)]
        assignment: AssignmentArgs,
        /// JSON written by `reduce`.
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Run the discharging rules.
    Discharge {
        graph: PathBuf,
        /// Include the full transfer log.
        #[arg(long)]
        ledger: bool,
        /// Compare the ledger against a stored JSON file.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Generate a graph file. With `--format text` only the file is printed.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = GenKind::InClass)]
        kind: GenKind,
    },
    /// Batch verification over generated instances.
    VerifyBatch {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        #[arg(long, default_value_t = 5)]
        assignments: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 24)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        extensions: usize,
        #[arg(long)]
        no_audit: bool,
        #[arg(long)]
        include_k4: bool,
        /// Omit the timestamp so reruns are byte-identical.
        #[arg(long)]
        deterministic: bool,
    },
}

/// Exit classes.
enum Failure {
    Check(Value),
    Format(String),
    Internal(String),
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Format(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Format(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Plane, Failure> {
    Ok(io::parse_graph(&read(path)?)?)
}

fn need_seed(seed: Option<u64>) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::Format("this command is randomized; pass --seed".into()))
}

fn load_assignment(args: &AssignmentArgs, g: &Graph) -> Result<CorrespondenceAssignment, Failure> {
    match &args.assignment {
        Some(p) => Ok(io::parse_assignment(&read(p)?, g)?),
        None => Ok(CorrespondenceAssignment::random(g, args.k, need_seed(args.seed)?, true)),
    }
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn coloring_json(c: &Coloring) -> Value {
    json!(c.labels())
}

fn solve_report(g: &Graph, c: &CorrespondenceAssignment, phi0: &Coloring) -> Outcome {
    let sol = dp::solve(g, c, phi0).map_err(|e| Failure::Format(e.to_string()))?;
    let stats = json!(sol.stats);
    match sol.coloring() {
        Some(phi) => {
            if !dp::is_valid(g, c, phi, true) || !phi.extends(phi0) {
                return Err(internal("solver returned an invalid colouring"));
            }
            Ok(
                json!({ "status": "sat", "coloring": coloring_json(phi), "coloring_text": io::write_coloring(phi), "stats": stats }),
            )
        }
        None => Err(Failure::Check(json!({ "status": "unsat", "coloring": null, "stats": stats }))),
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { graph } => {
            let p = load_graph(&graph)?;
            Ok(json!({
                "valid": true,
                "n": p.vertex_count(),
                "m": p.edge_count(),
                "faces": p.face_count(),
                "euler": p.euler_characteristic(),
                "outer_degree": p.outer_face().ok().map(|f| f.degree()),
            }))
        }
        Command::Faces { graph } => {
            let p = load_graph(&graph)?;
            let outer = p.outer().ok();
            let faces: Vec<Value> = p
                .faces()
                .iter()
                .map(|f| json!({ "id": f.id, "degree": f.degree(), "vertices": f.vertices(), "outer": Some(f.id) == outer }))
                .collect();
            Ok(json!({ "faces": faces }))
        }
        Command::ClassCheck { graph } => {
            let p = load_graph(&graph)?;
            match structure::class_check(p.graph()) {
                None => Ok(json!({ "in_class": true, "class_witness": null })),
                Some(w) => Err(Failure::Check(json!({ "in_class": false, "class_witness": w }))),
            }
        }
        Command::Audit { graph, s } => {
            let p = load_graph(&graph)?;
            let s: BTreeSet<_> = match s {
                Some(text) => io::parse_vertex_set(&text)?.into_iter().collect(),
                None => p
                    .outer_face()
                    .map_err(|_| Failure::Format("no outer face; pass --s or add an outer line".into()))?
                    .vertex_set(),
            };
            let report = structure::report(&p, Some(&s)).map_err(|e| Failure::Format(e.to_string()))?;
            let passed = report.audit.as_ref().is_some_and(|a| a.passed());
            let v = json!(report);
            if passed {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Solve { graph, assignment } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            solve_report(p.graph(), &c, &Coloring::empty(p.vertex_count()))
        }
        Command::Extend { graph, assignment, precoloring } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            let phi0 = io::parse_coloring(&read(&precoloring)?, p.vertex_count())?;
            solve_report(p.graph(), &c, &phi0)
        }
        Command::Count { graph, assignment, precoloring, max_n } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            let phi0 = match precoloring {
                Some(path) => io::parse_coloring(&read(&path)?, p.vertex_count())?,
                None => Coloring::empty(p.vertex_count()),
            };
            let count =
                dp::count_colorings_within(p.graph(), &c, &phi0, max_n).map_err(|e| Failure::Format(e.to_string()))?;
            Ok(json!({ "count": count }))
        }
        Command::ChiDp { graph, k, samples, seed } => {
            let p = load_graph(&graph)?;
            let mode = match samples {
                Some(samples) => ChiMode::Sampled { samples, seed: need_seed(seed)? },
                None => ChiMode::Exhaustive { budget: dp::DEFAULT_EXHAUSTIVE_BUDGET },
            };
            let r = dp::dp_chromatic_number(p.graph(), k, mode).map_err(|e| Failure::Format(e.to_string()))?;
            Ok(r.to_json())
        }
        Command::Straighten { graph, assignment, forest } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            let edges = match forest {
                Some(text) => text
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        let (a, b) =
                            t.trim().split_once('-').ok_or_else(|| Failure::Format(format!("bad edge `{t}`")))?;
                        let parse = |x: &str| x.parse().map_err(|_| Failure::Format(format!("bad edge `{t}`")));
                        Ok((parse(a)?, parse(b)?))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?,
                None => dp::spanning_forest(p.graph()),
            };
            let (straight, plan) = dp::straighten(p.graph(), &c, &edges).map_err(|e| Failure::Format(e.to_string()))?;
            if !edges.iter().all(|&(u, v)| straight.is_straight(u, v)) {
                return Err(internal("forest edge left crooked"));
            }
            Ok(json!({
                "forest": edges,
                "assignment": io::write_assignment(&straight),
                "plan": plan,
            }))
        }
        Command::Reduce { graph, assignment, config, index } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            let found = match config {
                ConfigArg::I => reductions::find_config_i(&p),
                ConfigArg::Ii => reductions::find_config_ii(&p),
            }
            .map_err(|e| Failure::Format(e.to_string()))?;
            let Some(cfg) = found.get(index) else {
                return Err(Failure::Check(json!({ "found": found.len(), "reduced": null })));
            };
            let red = reductions::reduce(&p, &c, cfg).map_err(|e| Failure::Check(json!({ "error": e.to_string() })))?;
            Ok(json!({
                "found": found.len(),
                "reduced": { "n": red.graph.vertex_count(), "edges": red.graph.edges() },
                "assignment": io::write_assignment(&red.assignment),
                "plan": red.plan,
            }))
        }
        Command::Lift { graph, assignment, plan, coloring } => {
            let p = load_graph(&graph)?;
            let c = load_assignment(&assignment, p.graph())?;
            let doc: Value = serde_json::from_str(&read(&plan)?).map_err(|e| Failure::Format(e.to_string()))?;
            let plan: ReductionPlan = serde_json::from_value(doc.get("plan").cloned().unwrap_or(doc))
                .map_err(|e| Failure::Format(format!("plan: {e}")))?;
            let n_reduced = plan.vertex_map.iter().flatten().max().map_or(0, |m| m + 1);
            let phi = io::parse_coloring(&read(&coloring)?, n_reduced)?;
            match reductions::lift_traced(p.graph(), &c, &plan, &phi) {
                Ok((lifted, trace)) => {
                    if !dp::is_valid(p.graph(), &c, &lifted, true) {
                        return Err(Failure::Check(json!({ "valid": false, "coloring": coloring_json(&lifted) })));
                    }
                    Ok(
                        json!({ "valid": true, "coloring": coloring_json(&lifted), "coloring_text": io::write_coloring(&lifted), "trace": trace }),
                    )
                }
                Err(e) => Err(Failure::Check(json!({ "valid": false, "error": e.to_string() }))),
            }
        }
        Command::Discharge { graph, ledger, golden } => {
            let p = load_graph(&graph)?;
            let l = discharging::discharge(&p).map_err(|e| Failure::Format(e.to_string()))?;
            let report = discharging::verify(&p, &l).map_err(|e| Failure::Format(e.to_string()))?;
            if !report.conservation_ok || !report.closed_form_matches {
                return Err(internal("ledger invariant violated"));
            }
            let mut out = report.to_json();
            if ledger {
                out["ledger"] = l.to_json();
            }
            if let Some(path) = golden {
                let stored: Value = serde_json::from_str(&read(&path)?).map_err(|e| Failure::Format(e.to_string()))?;
                let same = stored == l.to_json();
                out["golden_match"] = json!(same);
                if !same {
                    return Err(Failure::Check(out));
                }
            }
            if report.all_nonnegative() {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Command::Gen { n, seed, kind } => {
            let seed = need_seed(seed)?;
            let pg = match kind {
                GenKind::InClass => generate::gen_in_class(n, seed),
                GenKind::Triangulation => generate::random_triangulation(n, seed),
            }
            .map_err(|e| Failure::Format(e.to_string()))?;
            let (plane, chordless) = pipeline::choose_outer(pg).map_err(internal)?;
            Ok(json!({ "graph": io::write_graph(&plane), "chordless_outer": chordless }))
        }
        Command::VerifyBatch {
            seed,
            instances,
            assignments,
            k,
            max_n,
            extensions,
            no_audit,
            include_k4,
            deterministic,
        } => {
            let config = BatchConfig {
                seed: need_seed(seed)?,
                instances,
                assignments,
                k,
                max_n,
                extensions,
                audit: !no_audit,
                include_k4,
                deterministic,
            };
            let report = pipeline::run_batch(&config);
            let v = report.to_json();
            if report.has_errors() {
                Err(Failure::Internal(serde_json::to_string(&v).expect("json")))
            } else if report.pass {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        Format::Text => {
            if let Some(Value::String(graph)) = v.get("graph") {
                return graph.clone();
            }
            let mut out = String::new();
            if let Value::Object(map) = v {
                for (key, val) in map {
                    match val {
                        Value::String(s) if s.contains('\n') => out.push_str(&format!("{key}:\n{s}")),
                        Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
                        other => out.push_str(&format!("{key}: {other}\n")),
                    }
                }
            }
            out
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut body, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Check(v)) => (v, 1),
        Err(Failure::Format(msg)) => (json!({ "error": msg }), 2),
        Err(Failure::Internal(msg)) => match serde_json::from_str::<Value>(&msg) {
            Ok(v @ Value::Object(_)) => (v, 3),
            _ => (json!({ "error": msg }), 3),
        },
    };
    if let Value::Object(map) = &mut body {
        map.entry("schema").or_insert(json!(pipeline::SCHEMA));
    }
    if let Err(e) = emit(cli.output.as_deref(), &render(&body, cli.format)) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
