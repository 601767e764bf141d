//! The disruption objective: which surviving vertices fall out of their
//! original core when a set of vertices is deleted.

use serde::{Deserialize, Serialize};

use crate::coreness::{coreness_masked, CoreDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// One greedy round: the deleted vertex and how the objective moved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub vertex: VertexId,
    /// `f(B_t) - f(B_{t-1})`. Negative (-1) only when the deleted vertex had
    /// itself already dropped and nothing new dropped this round.
    pub marginal: i64,
    /// Vertices whose coreness in the residual graph dropped this round.
    pub strength: usize,
    pub f_cum: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackResult {
    #[serde(rename = "B")]
    pub deleted: Vec<VertexId>,
    pub f: usize,
    #[serde(rename = "F")]
    pub disruption: f64,
    pub affected: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_step: Option<Vec<Step>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
}

impl AttackResult {
    /// Cumulative `(step, vertex, f, F)` rows for adaptive methods; for one-shot
    /// methods the prefix values are recomputed from scratch.
    pub fn prefix_rows(&self, g: &Graph, base: &CoreDecomposition) -> Vec<(usize, VertexId, usize, f64)> {
        let n = g.n() as f64;
        match &self.per_step {
            Some(steps) => steps
                .iter()
                .enumerate()
                .map(|(i, s)| (i + 1, s.vertex, s.f_cum, s.f_cum as f64 / n))
                .collect(),
            None => (1..=self.deleted.len())
                .map(|t| {
                    let f = affected_set(g, base, &self.deleted[..t]).len();
                    (t, self.deleted[t - 1], f, f as f64 / n)
                })
                .collect(),
        }
    }
}

/// Live vertices outside `deleted` whose coreness strictly drops.
/// Full re-decomposition of the residual graph.
pub fn affected_set(g: &Graph, base: &CoreDecomposition, deleted: &[VertexId]) -> Vec<VertexId> {
    let mut alive = g.live_mask().to_vec();
    for &v in deleted {
        alive[v] = false;
    }
    let after = coreness_masked(g, &alive);
    (0..g.n())
        .filter(|&v| alive[v] && after[v] < base.coreness[v])
        .collect()
}

/// Count-only variant of [`affected_set`] over a precomputed mask.
pub(crate) fn affected_count_masked(g: &Graph, base: &CoreDecomposition, alive: &[bool]) -> usize {
    let after = coreness_masked(g, alive);
    (0..g.n())
        .filter(|&v| alive[v] && after[v] < base.coreness[v])
        .count()
}

/// Wraps [`affected_set`]. `F` divides by the original id-space size, which
/// includes deleted vertices.
pub fn evaluate(
    g: &Graph,
    base: &CoreDecomposition,
    deleted: &[VertexId],
    budget: Option<usize>,
) -> Result<AttackResult> {
    if let Some(b) = budget {
        if deleted.len() > b {
            return Err(Error::BudgetExceeded {
                size: deleted.len(),
                budget: b,
            });
        }
    }
    let mut seen = vec![false; g.n()];
    for &v in deleted {
        g.check_vertex(v)?;
        if !g.is_live(v) {
            return Err(Error::DeadVertex(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("vertex {v} deleted twice")));
        }
    }
    let affected = affected_set(g, base, deleted);
    Ok(AttackResult {
        deleted: deleted.to_vec(),
        f: affected.len(),
        disruption: disruption(affected.len(), g.n()),
        affected,
        per_step: None,
        optimal: None,
    })
}

pub(crate) fn disruption(f: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        f as f64 / n as f64
    }
}
