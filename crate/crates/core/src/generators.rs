//! Seeded random graph models.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Er,
    Ba,
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(Model::Er),
            "ba" => Ok(Model::Ba),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

/// A model plus its size parameter: average degree for ER, edges per new
/// vertex for BA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub degree: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::Er => erdos_renyi(self.n, self.degree, self.seed),
            Model::Ba => barabasi_albert(self.n, self.degree, self.seed),
        }
    }

    /// `ER-d2-n2000-s1` style; `d` is the average degree, so BA with one
    /// edge per new vertex is `BA-d2`.
    pub fn name(&self) -> String {
        let (m, d) = match self.model {
            Model::Er => ("ER", self.degree),
            Model::Ba => ("BA", 2 * self.degree),
        };
        format!("{m}-d{d}-n{}-s{}", self.n, self.seed)
    }
}

/// Uniform simple graph with exactly `round(n * avg_degree / 2)` edges.
pub fn erdos_renyi(n: usize, avg_degree: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    // n * d is an integer, so the rounding is exact
    let target = (n * avg_degree).div_ceil(2);
    let pairs = n * (n - 1) / 2;
    if target > pairs {
        return Err(Error::InvalidParameter(format!(
            "{target} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // sample the sparser side, then complement if needed
    let take = target.min(pairs - target);
    let mut chosen: HashSet<(usize, usize)> = HashSet::with_capacity(take);
    let mut picked = Vec::with_capacity(take);
    while picked.len() < take {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if chosen.insert(e) {
            picked.push(e);
        }
    }
    if take == target {
        Graph::from_edges(n, picked)
    } else {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !chosen.contains(e));
        Graph::from_edges(n, edges.collect::<Vec<_>>())
    }
}

/// Preferential attachment from a clique on `attach + 1` vertices; each new
/// vertex links to `attach` distinct existing vertices chosen with
/// probability proportional to degree.
pub fn barabasi_albert(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach == 0 || n <= attach {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= attach_m < n, got attach_m = {attach}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seed_size = attach + 1;
    let mut edges = Vec::with_capacity(attach * n);
    // each edge endpoint appears once, so a uniform draw is degree-proportional
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * attach * n);
    for u in 0..seed_size {
        for v in u + 1..seed_size {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<usize> = Vec::with_capacity(attach);
    for v in seed_size..n {
        targets.clear();
        while targets.len() < attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Graph::from_edges(n, edges)
}
