//! Resilience curves over deletion fractions `alpha ∈ [0, 1]`.
//!
//! `Resilience_rand` tracks component fragmentation under random removal;
//! `Resilience_core` tracks the disruption `F(B_alpha)` under a targeted
//! deletion order. Both report `1 - AUC` with trapezoidal integration.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::components::connected_components;
use crate::coreness::core_decompose;
use crate::exec::ExecMode;
use crate::graph::{Graph, VertexId};
use crate::heuristics::{ahdr_sequence, strengths, AhdrOptions, CandidateSet};
use crate::objective::affected_count_masked;
use crate::stats::pairwise_sum;

pub const DEFAULT_GRID_POINTS: usize = 101;
pub const DEFAULT_TRIALS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResilienceCurve {
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub auc: f64,
    pub score: f64,
}

impl ResilienceCurve {
    fn from_values(values: Vec<f64>) -> Self {
        let alphas = grid(values.len());
        let auc = trapezoid(&alphas, &values);
        ResilienceCurve {
            alphas,
            values,
            auc,
            score: 1.0 - auc,
        }
    }
}

/// Whether `H` carries the leading minus sign of ordinary entropy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EntropySign {
    /// Nonnegative normalized entropy in `[0, 1]`.
    #[default]
    Standard,
    /// The unnegated sum `(1/ln n) Σ p ln p`, in `[-1, 0]`.
    Raw,
}

/// `alphas[i] = i / (points - 1)`, with exact endpoints.
pub fn grid(points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    let last = (points - 1) as f64;
    (0..points).map(|i| i as f64 / last).collect()
}

fn prefix_len(i: usize, points: usize, n: usize) -> usize {
    i * n / (points - 1)
}

pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    let parts: Vec<f64> = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (x[1] - x[0]) * (y[0] + y[1]) / 2.0)
        .collect();
    pairwise_sum(&parts)
}

/// Normalized entropy of the component-size distribution of the live
/// subgraph: 0 for one component, 1 when every vertex is alone.
/// Graphs with at most one live vertex give 0.
pub fn fragmentation_entropy(g: &Graph) -> f64 {
    fragmentation_entropy_masked(g, g.live_mask(), EntropySign::Standard)
}

pub fn fragmentation_entropy_masked(g: &Graph, alive: &[bool], sign: EntropySign) -> f64 {
    let n = alive.iter().filter(|&&a| a).count();
    if n <= 1 {
        return 0.0;
    }
    let comps = connected_components(g, alive);
    let h = if comps.sizes.len() == 1 {
        0.0
    } else if comps.sizes.len() == n {
        1.0
    } else {
        let nf = n as f64;
        let terms: Vec<f64> = comps
            .sizes
            .iter()
            .map(|&s| {
                let p = s as f64 / nf;
                -p * p.ln()
            })
            .collect();
        (pairwise_sum(&terms) / nf.ln()).clamp(0.0, 1.0)
    };
    match sign {
        EntropySign::Standard => h,
        EntropySign::Raw => -h,
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for stream `index` under `master`; stable across runs and thread counts.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

#[derive(Clone, Copy, Debug)]
pub struct RandOptions {
    pub trials: usize,
    pub grid_points: usize,
    pub seed: u64,
    pub sign: EntropySign,
    pub exec: ExecMode,
}

impl Default for RandOptions {
    fn default() -> Self {
        RandOptions {
            trials: DEFAULT_TRIALS,
            grid_points: DEFAULT_GRID_POINTS,
            seed: 0,
            sign: EntropySign::Standard,
            exec: ExecMode::default(),
        }
    }
}

/// Average fragmentation after removing `floor(alpha n)` uniformly random
/// vertices. Each trial draws one random order and deletes its prefixes.
/// Residual graphs with at most one vertex count as fully fragmented.
pub fn resilience_rand(g: &Graph, opts: RandOptions) -> ResilienceCurve {
    let points = opts.grid_points;
    assert!(points >= 2, "a grid needs at least two points");
    let live: Vec<VertexId> = g.live_vertices().collect();
    let n = live.len();
    let trials = opts.trials.max(1);

    let per_trial: Vec<Vec<f64>> = opts.exec.map_range_with(
        trials,
        || (),
        |_, t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, t as u64));
            let mut order = live.clone();
            order.shuffle(&mut rng);
            let mut alive = g.live_mask().to_vec();
            let mut removed = 0;
            (0..points)
                .map(|i| {
                    let k = prefix_len(i, points, n);
                    while removed < k {
                        alive[order[removed]] = false;
                        removed += 1;
                    }
                    if n - k <= 1 {
                        match opts.sign {
                            EntropySign::Standard => 1.0,
                            EntropySign::Raw => -1.0,
                        }
                    } else {
                        fragmentation_entropy_masked(g, &alive, opts.sign)
                    }
                })
                .collect()
        },
    );

    let values = (0..points)
        .map(|i| {
            let col: Vec<f64> = per_trial.iter().map(|row| row[i]).collect();
            pairwise_sum(&col) / trials as f64
        })
        .collect();
    ResilienceCurve::from_values(values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreMethod {
    Ahdr,
    Hdr,
    Random(u64),
}

/// Deletion order whose prefixes are the `B_alpha`.
pub fn deletion_order(g: &Graph, method: CoreMethod, exec: ExecMode) -> Vec<VertexId> {
    match method {
        CoreMethod::Ahdr => ahdr_sequence(g, AhdrOptions { prune: true, exec }).deleted,
        CoreMethod::Hdr => {
            let base = core_decompose(g);
            let all = CandidateSet::all(g);
            let s = strengths(g, &base, &all, exec);
            let mut order: Vec<usize> = (0..all.len()).collect();
            order.sort_by(|&a, &b| s[b].cmp(&s[a]).then(a.cmp(&b)));
            order.into_iter().map(|i| all.ids()[i]).collect()
        }
        CoreMethod::Random(seed) => {
            let mut order: Vec<VertexId> = g.live_vertices().collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order
        }
    }
}

/// `F(B_alpha)` along one deletion order, `B_alpha` its prefix of length
/// `floor(alpha n)`.
pub fn resilience_core(g: &Graph, grid_points: usize, method: CoreMethod, exec: ExecMode) -> ResilienceCurve {
    assert!(grid_points >= 2, "a grid needs at least two points");
    let order = deletion_order(g, method, exec);
    curve_from_order(g, &order, grid_points, exec)
}

/// Samples `F` on the grid for an arbitrary deletion order.
pub fn curve_from_order(g: &Graph, order: &[VertexId], grid_points: usize, exec: ExecMode) -> ResilienceCurve {
    let base = core_decompose(g);
    let n = order.len();
    let denom = g.n().max(1) as f64;
    let values = exec.map_range_with(
        grid_points,
        || (),
        |_, i| {
            let k = prefix_len(i, grid_points, n);
            let mut alive = g.live_mask().to_vec();
            for &v in &order[..k] {
                alive[v] = false;
            }
            affected_count_masked(g, &base, &alive) as f64 / denom
        },
    );
    ResilienceCurve::from_values(values)
}
