//! Budget sweeps over datasets and methods, driven by one JSON config.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coreness::core_decompose;
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::generators::GenSpec;
use crate::graph::{Graph, VertexId};
use crate::heuristics::{self, AhdrOptions, CandidateSet, Method};
use crate::resilience::derive_seed;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatasetSource {
    File {
        path: PathBuf,
        #[serde(default)]
        name: Option<String>,
    },
    Generated {
        generate: GenSpec,
        #[serde(default)]
        name: Option<String>,
    },
}

impl DatasetSource {
    pub fn name(&self) -> String {
        match self {
            DatasetSource::File { path, name } => name.clone().unwrap_or_else(|| {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string())
            }),
            DatasetSource::Generated { generate, name } => {
                name.clone().unwrap_or_else(|| generate.name())
            }
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            DatasetSource::File { path, .. } => {
                let file = File::open(path)?;
                Ok(Graph::from_edge_list(BufReader::new(file))?.0)
            }
            DatasetSource::Generated { generate, .. } => generate.generate(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSource>,
    pub methods: Vec<Method>,
    /// Absolute budgets.
    #[serde(default)]
    pub budgets: Vec<usize>,
    /// Budgets as fractions of the live vertex count (rounded down).
    #[serde(default)]
    pub budget_fractions: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    /// Restrict every dataset to its largest connected component.
    #[serde(default)]
    pub lcc: bool,
    /// Disruption targets for the minimum-budget table (AHDR).
    #[serde(default)]
    pub targets: Vec<f64>,
    /// Longest AHDR run used for the minimum-budget table; default n.
    #[serde(default)]
    pub target_max_budget: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("at least one method is required".into()));
        }
        if self.budgets.is_empty() && self.budget_fractions.is_empty() {
            return Err(Error::InvalidParameter("no budgets given".into()));
        }
        if self.budgets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("budgets must be strictly ascending".into()));
        }
        if self.budget_fractions.windows(2).any(|w| w[0] >= w[1])
            || self.budget_fractions.iter().any(|p| !(0.0..=1.0).contains(p))
        {
            return Err(Error::InvalidParameter(
                "budget fractions must be ascending within [0, 1]".into(),
            ));
        }
        Ok(())
    }

    fn budgets_for(&self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.budgets.iter().copied().filter(|&b| b <= n).collect();
        out.extend(self.budget_fractions.iter().map(|p| (p * n as f64).floor() as usize));
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub dataset: String,
    pub method: String,
    pub budget: usize,
    pub f: usize,
    #[serde(rename = "F")]
    pub disruption: f64,
    pub seconds: f64,
    #[serde(rename = "B")]
    pub deleted: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetRow {
    pub dataset: String,
    pub target: f64,
    /// Smallest AHDR prefix reaching the target, if any.
    pub min_budget: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub targets: Vec<TargetRow>,
}

impl SweepOutput {
    /// `dataset,method,budget,f,F,seconds`; error rows leave the numbers empty.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("dataset,method,budget,f,F,seconds\n");
        for r in &self.rows {
            match &r.error {
                Some(e) => s.push_str(&format!(
                    "{},error: {},,,,\n",
                    csv_field(&r.dataset),
                    csv_field(e)
                )),
                None => s.push_str(&format!(
                    "{},{},{},{},{},{:.6}\n",
                    csv_field(&r.dataset),
                    r.method,
                    r.budget,
                    r.f,
                    r.disruption,
                    r.seconds
                )),
            }
        }
        s
    }

    /// `dataset,target_F,min_budget`.
    pub fn targets_csv(&self) -> String {
        let mut s = String::from("dataset,target_F,min_budget\n");
        for t in &self.targets {
            let b = t.min_budget.map(|b| b.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{}\n", csv_field(&t.dataset), t.target, b));
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed for one (dataset, method, budget) cell; independent of which other
/// cells are in the config.
pub fn cell_seed(master: u64, dataset: &str, method: Method, budget: usize) -> u64 {
    let key = format!("{dataset}\u{1f}{}\u{1f}{budget}", method.name());
    derive_seed(master, fnv1a(key.as_bytes()))
}

struct Cell<'a> {
    dataset: &'a str,
    graph: &'a Graph,
    method: Method,
    budget: usize,
}

pub fn run_sweep(cfg: &ExperimentConfig, exec: ExecMode) -> Result<SweepOutput> {
    cfg.validate()?;
    let mut out = SweepOutput::default();
    let mut loaded: Vec<(String, Graph)> = Vec::new();
    for src in &cfg.datasets {
        let name = src.name();
        match src.load() {
            Ok(g) => {
                let g = if cfg.lcc { g.largest_component() } else { g };
                loaded.push((name, g));
            }
            Err(e) => out.rows.push(SweepRow {
                dataset: name,
                method: "error".into(),
                budget: 0,
                f: 0,
                disruption: 0.0,
                seconds: 0.0,
                deleted: Vec::new(),
                error: Some(e.to_string()),
            }),
        }
    }

    let bases: Vec<_> = loaded.iter().map(|(_, g)| core_decompose(g)).collect();
    let cells: Vec<(usize, Cell)> = loaded
        .iter()
        .enumerate()
        .flat_map(|(di, (name, g))| {
            let budgets = cfg.budgets_for(g.live_count());
            cfg.methods.iter().flat_map(move |&method| {
                budgets.clone().into_iter().map(move |budget| {
                    (
                        di,
                        Cell {
                            dataset: name,
                            graph: g,
                            method,
                            budget,
                        },
                    )
                })
            })
        })
        .collect();

    // cells run in parallel; heuristics inside them stay sequential
    let rows = exec.map(&cells, |(di, cell)| {
        let started = Instant::now();
        let cands = CandidateSet::all(cell.graph);
        let base = &bases[*di];
        let seed = cell_seed(cfg.seed, cell.dataset, cell.method, cell.budget);
        let res = match cell.method {
            Method::Random => heuristics::select_random(cell.graph, base, &cands, cell.budget, seed),
            Method::Hd => heuristics::select_high_degree(cell.graph, base, &cands, cell.budget),
            Method::Hdr => {
                heuristics::select_hdr(cell.graph, base, &cands, cell.budget, ExecMode::Sequential)
            }
            Method::Ahdr => heuristics::select_ahdr(
                cell.graph,
                base,
                &cands,
                cell.budget,
                AhdrOptions {
                    prune: true,
                    exec: ExecMode::Sequential,
                },
            ),
        };
        let seconds = started.elapsed().as_secs_f64();
        match res {
            Ok(r) => SweepRow {
                dataset: cell.dataset.to_owned(),
                method: cell.method.name().into(),
                budget: cell.budget,
                f: r.f,
                disruption: r.disruption,
                seconds,
                deleted: r.deleted,
                error: None,
            },
            Err(e) => SweepRow {
                dataset: cell.dataset.to_owned(),
                method: cell.method.name().into(),
                budget: cell.budget,
                f: 0,
                disruption: 0.0,
                seconds,
                deleted: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    });
    out.rows.extend(rows);
    out.rows.sort_by(|a, b| {
        a.dataset
            .cmp(&b.dataset)
            .then_with(|| a.method.cmp(&b.method))
            .then(a.budget.cmp(&b.budget))
    });

    if !cfg.targets.is_empty() {
        for ((name, g), base) in loaded.iter().zip(&bases) {
            out.targets.extend(min_budgets(name, g, base, cfg, exec));
        }
    }
    Ok(out)
}

fn min_budgets(
    name: &str,
    g: &Graph,
    base: &crate::coreness::CoreDecomposition,
    cfg: &ExperimentConfig,
    exec: ExecMode,
) -> Vec<TargetRow> {
    let cands = CandidateSet::all(g);
    let cap = cfg.target_max_budget.unwrap_or(cands.len()).min(cands.len());
    let res = heuristics::select_ahdr(g, base, &cands, cap, AhdrOptions { prune: true, exec })
        .expect("cap is bounded by the candidate count");
    let steps = res.per_step.unwrap_or_default();
    let n = g.n() as f64;
    cfg.targets
        .iter()
        .map(|&target| TargetRow {
            dataset: name.to_owned(),
            target,
            min_budget: steps
                .iter()
                .position(|s| s.f_cum as f64 / n >= target)
                .map(|i| i + 1),
        })
        .collect()
}
