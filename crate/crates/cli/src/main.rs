//! `corefall` command-line interface.
//!
//! Exit codes: 0 ok, 1 usage, 2 data error, 3 infeasible (e.g. brute-force cap).

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use corefall::exact::{exact_bruteforce, exact_forest_dp, DEFAULT_BRUTE_FORCE_CAP};
use corefall::generators::{barabasi_albert, erdos_renyi};
use corefall::heuristics::{self, AhdrOptions, CandidateSet, Method};
use corefall::reductions::{self, Construction, SetCoverInstance};
use corefall::resilience::{
    self, CoreMethod, EntropySign, RandOptions, DEFAULT_GRID_POINTS, DEFAULT_TRIALS,
};
use corefall::sweep::{run_sweep, ExperimentConfig};
use corefall::{core_decompose, pearson, AttackResult, ExecMode, Graph};

#[derive(Parser, Debug)]
#[command(name = "corefall", version, about = "k-core robustness under targeted vertex deletion")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Input edge list ("u v" per line, '#' comments).
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Run every loop sequentially.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coreness per vertex and core-size histogram.
    Decompose {
        /// Write the JSON summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Restrict to the largest connected component.
        #[arg(long)]
        lcc: bool,
    },
    /// Run a selection heuristic. Every method returns exactly `budget`
    /// vertices: AHDR keeps deleting (lowest id first) even when no candidate
    /// hurts anything, so disruption curves are defined on the full grid.
    Attack {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, conflicts_with = "budget_frac")]
        budget: Option<usize>,
        /// Budget as a fraction of the live vertex count.
        #[arg(long)]
        budget_frac: Option<f64>,
        /// "all" or a file with one vertex token per line.
        #[arg(long, default_value = "all")]
        candidates: String,
        /// Per-step CSV (step,vertex,f_cum,F_cum) destination.
        #[arg(long)]
        steps: Option<PathBuf>,
        /// Disable neighbour-coreness pruning in AHDR.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        lcc: bool,
    },
    /// Solve exactly.
    Exact {
        #[arg(long, value_enum)]
        solver: Solver,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value = "all")]
        candidates: String,
        /// Largest candidate set the brute force accepts.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
    },
    /// Resilience curve: CSV alpha,value plus a JSON score summary.
    Resilience {
        #[arg(long, value_enum)]
        metric: Metric,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = CurveMethod::Ahdr)]
        method: CurveMethod,
        #[arg(long)]
        lcc: bool,
        /// Use the unnegated entropy sum (values in [-1, 0]).
        #[arg(long)]
        raw_entropy: bool,
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Pearson correlation between two numeric columns.
    Correlate {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Random graph.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Average degree (er) or edges per new vertex (ba).
        #[arg(long)]
        deg: usize,
    },
    /// Hardness construction from a set-cover instance JSON
    /// ({"n":4,"sets":[[1,2],[1,3,4],[3]],"r":2}).
    Reduce {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 6)]
        gadget_size: usize,
    },
    /// Budget sweep from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Full rows including deletion sets.
        #[arg(long)]
        rows_json: Option<PathBuf>,
        /// Minimum-budget table (dataset,target_F,min_budget).
        #[arg(long)]
        targets: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Random,
    Hd,
    Hdr,
    Ahdr,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Random => Method::Random,
            MethodArg::Hd => Method::Hd,
            MethodArg::Hdr => Method::Hdr,
            MethodArg::Ahdr => Method::Ahdr,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Solver {
    Brute,
    ForestDp,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Metric {
    Core,
    Rand,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CurveMethod {
    Ahdr,
    Hdr,
    Random,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Model {
    Er,
    Ba,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConstructionArg {
    W2,
    Exactcover,
    Inapprox,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::W2 => Construction::W2,
            ConstructionArg::Exactcover => Construction::ExactCover,
            ConstructionArg::Inapprox => Construction::Inapprox,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let threads = cli.global.threads;
    match corefall::exec::with_threads(threads, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let infeasible = e
                .downcast_ref::<corefall::Error>()
                .is_some_and(corefall::Error::is_infeasible);
            ExitCode::from(if infeasible { 3 } else { 2 })
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_to(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Summary JSON goes to `summary`, else stdout when the main output is a
/// file, else stderr.
fn emit_summary(summary: Option<&Path>, output: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match (summary, output) {
        (Some(p), _) => write_to(p, &(text + "\n")),
        (None, Some(_)) => {
            println!("{text}");
            Ok(())
        }
        (None, None) => {
            eprintln!("{text}");
            Ok(())
        }
    }
}

fn load_graph(global: &Global, lcc: bool) -> Result<Graph> {
    let path = global
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("--input is required for this command"))?;
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let (g, report) = Graph::from_edge_list(BufReader::new(file))
        .with_context(|| format!("parsing {}", path.display()))?;
    if report.dropped() > 0 {
        eprintln!(
            "note: dropped {} duplicate edges and {} self-loops",
            report.duplicate_edges, report.self_loops
        );
    }
    Ok(if lcc { g.largest_component() } else { g })
}

fn load_candidates(g: &Graph, source: &str) -> Result<CandidateSet> {
    if source == "all" {
        return Ok(CandidateSet::all(g));
    }
    let text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let index: std::collections::HashMap<String, usize> =
        (0..g.n()).map(|v| (g.label(v), v)).collect();
    let mut ids = Vec::new();
    for tok in text.split_whitespace().filter(|t| !t.starts_with('#')) {
        let v = index
            .get(tok)
            .ok_or_else(|| anyhow!("candidate {tok:?} is not a vertex of the input graph"))?;
        ids.push(*v);
    }
    Ok(CandidateSet::new(g, ids)?)
}

fn exec_mode(global: &Global) -> ExecMode {
    if global.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    }
}

fn steps_csv(g: &Graph, result: &AttackResult) -> String {
    let base = core_decompose(g);
    let mut s = String::from("step,vertex,f_cum,F_cum\n");
    for (t, v, f, big_f) in result.prefix_rows(g, &base) {
        s.push_str(&format!("{t},{},{f},{big_f}\n", g.label(v)));
    }
    s
}

fn run(cli: Cli) -> Result<()> {
    let global = &cli.global;
    let exec = exec_mode(global);
    let out_path = global.output.as_deref();
    match &cli.command {
        Command::Decompose { summary, lcc } => {
            let g = load_graph(global, *lcc)?;
            let d = core_decompose(&g);
            let hist = d.histogram(&g);
            let summary_json = json!({
                "n": g.live_count(),
                "m": g.m(),
                "degeneracy": d.degeneracy,
                "core_size_histogram": hist,
            });
            let mut out = open_output(out_path)?;
            match global.format {
                Format::Csv => {
                    writeln!(out, "vertex,coreness")?;
                    for v in g.live_vertices() {
                        writeln!(out, "{},{}", g.label(v), d.coreness[v])?;
                    }
                    out.flush()?;
                    drop(out);
                    emit_summary(summary.as_deref(), out_path, &summary_json)?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &summary_json)?;
                    writeln!(out)?;
                    if let Some(p) = summary {
                        write_to(p, &serde_json::to_string_pretty(&summary_json)?)?;
                    }
                }
            }
        }
        Command::Attack {
            method,
            budget,
            budget_frac,
            candidates,
            steps,
            no_prune,
            lcc,
        } => {
            let g = load_graph(global, *lcc)?;
            let cands = load_candidates(&g, candidates)?;
            let budget = match (budget, budget_frac) {
                (Some(b), _) => *b,
                (None, Some(p)) if (0.0..=1.0).contains(p) => {
                    (p * g.live_count() as f64).floor() as usize
                }
                (None, Some(p)) => bail!("--budget-frac must lie in [0, 1], got {p}"),
                (None, None) => bail!("one of --budget or --budget-frac is required"),
            };
            let base = core_decompose(&g);
            let method = Method::from(*method);
            let result = match method {
                Method::Ahdr => heuristics::select_ahdr(
                    &g,
                    &base,
                    &cands,
                    budget,
                    AhdrOptions {
                        prune: !no_prune,
                        exec,
                    },
                )?,
                Method::Hdr => heuristics::select_hdr(&g, &base, &cands, budget, exec)?,
                m => heuristics::run(m, &g, &base, &cands, budget, global.seed)?,
            };
            let mut out = open_output(out_path)?;
            match global.format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &result)?;
                    writeln!(out)?;
                }
                Format::Csv => out.write_all(steps_csv(&g, &result).as_bytes())?,
            }
            out.flush()?;
            if let Some(p) = steps {
                write_to(p, &steps_csv(&g, &result))?;
            }
        }
        Command::Exact {
            solver,
            budget,
            candidates,
            cap,
        } => {
            let g = load_graph(global, false)?;
            let cands = load_candidates(&g, candidates)?;
            let result = match solver {
                Solver::Brute => {
                    let base = core_decompose(&g);
                    exact_bruteforce(&g, &base, &cands, *budget, *cap, exec)?
                }
                Solver::ForestDp => exact_forest_dp(&g, &cands, *budget)?,
            };
            let mut out = open_output(out_path)?;
            serde_json::to_writer_pretty(&mut out, &result)?;
            writeln!(out)?;
        }
        Command::Resilience {
            metric,
            grid,
            trials,
            method,
            lcc,
            raw_entropy,
            summary,
        } => {
            if *grid < 2 {
                bail!("--grid needs at least 2 points");
            }
            let g = load_graph(global, *lcc)?;
            let curve = match metric {
                Metric::Rand => resilience::resilience_rand(
                    &g,
                    RandOptions {
                        trials: *trials,
                        grid_points: *grid,
                        seed: global.seed,
                        sign: if *raw_entropy {
                            EntropySign::Raw
                        } else {
                            EntropySign::Standard
                        },
                        exec,
                    },
                ),
                Metric::Core => {
                    let m = match method {
                        CurveMethod::Ahdr => CoreMethod::Ahdr,
                        CurveMethod::Hdr => CoreMethod::Hdr,
                        CurveMethod::Random => CoreMethod::Random(global.seed),
                    };
                    resilience::resilience_core(&g, *grid, m, exec)
                }
            };
            let summary_json = json!({ "score": curve.score, "auc": curve.auc });
            let mut out = open_output(out_path)?;
            match global.format {
                Format::Csv => {
                    writeln!(out, "alpha,value")?;
                    for (a, v) in curve.alphas.iter().zip(&curve.values) {
                        writeln!(out, "{a},{v}")?;
                    }
                    out.flush()?;
                    drop(out);
                    emit_summary(summary.as_deref(), out_path, &summary_json)?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &curve)?;
                    writeln!(out)?;
                }
            }
        }
        Command::Correlate { x, y } => {
            let xs = read_column(x)?;
            let ys = read_column(y)?;
            let c = pearson(&xs, &ys)?;
            let mut out = open_output(out_path)?;
            serde_json::to_writer_pretty(&mut out, &c)?;
            writeln!(out)?;
        }
        Command::Generate { model, n, deg } => {
            let g = match model {
                Model::Er => erdos_renyi(*n, *deg, global.seed)?,
                Model::Ba => barabasi_albert(*n, *deg, global.seed)?,
            };
            let mut out = open_output(out_path)?;
            g.write_edge_list(&mut out)?;
            out.flush()?;
        }
        Command::Reduce {
            construction,
            instance,
            gadget_size,
        } => {
            let text = std::fs::read_to_string(instance)
                .with_context(|| format!("reading {}", instance.display()))?;
            let inst: SetCoverInstance = serde_json::from_str(&text)?;
            let red = reductions::build((*construction).into(), &inst, *gadget_size)?;
            let roles: Vec<String> = red.roles.iter().map(ToString::to_string).collect();
            let thresholds = json!({
                "n": red.graph.n(),
                "m": red.graph.m(),
                "candidates": red.candidates.ids(),
                "budget": red.budget,
                "yes_threshold": red.yes_threshold,
            });
            match out_path {
                Some(p) => {
                    let mut out = open_output(Some(p))?;
                    red.graph.write_edge_list(&mut out)?;
                    out.flush()?;
                    write_to(&sidecar(p, "roles.json"), &serde_json::to_string_pretty(&roles)?)?;
                    write_to(
                        &sidecar(p, "thresholds.json"),
                        &serde_json::to_string_pretty(&thresholds)?,
                    )?;
                }
                None => {
                    let edges: Vec<[usize; 2]> = red.graph.edges().map(|(u, v)| [u, v]).collect();
                    let bundle = json!({ "edges": edges, "roles": roles, "thresholds": thresholds });
                    println!("{}", serde_json::to_string_pretty(&bundle)?);
                }
            }
        }
        Command::Sweep {
            config,
            rows_json,
            targets,
        } => {
            let text = std::fs::read_to_string(config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let result = run_sweep(&cfg, exec)?;
            let mut out = open_output(out_path)?;
            match global.format {
                Format::Csv => out.write_all(result.to_csv().as_bytes())?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &result)?;
                    writeln!(out)?;
                }
            }
            out.flush()?;
            if let Some(p) = rows_json {
                write_to(p, &serde_json::to_string_pretty(&result.rows)?)?;
            }
            if let Some(p) = targets {
                write_to(p, &result.targets_csv())?;
            }
        }
    }
    Ok(())
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

/// One number per line; for comma-separated lines the last field is used.
/// Blank lines, `#` comments and a non-numeric header line are skipped.
fn read_column(path: &Path) -> Result<Vec<f64>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut values = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or(line).trim();
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if values.is_empty() => continue,
            Err(_) => bail!("{}:{}: not a number: {field:?}", path.display(), i + 1),
        }
    }
    Ok(values)
}
