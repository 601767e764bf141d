//! k-core decomposition by bucket peeling.

use serde::Serialize;

use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreDecomposition {
    /// Coreness per vertex id; 0 for tombstones and isolated vertices.
    pub coreness: Vec<u32>,
    pub degeneracy: u32,
}

impl CoreDecomposition {
    pub fn get(&self, v: VertexId) -> u32 {
        self.coreness[v]
    }

    /// Number of vertices with coreness exactly `k`, for `k = 0..=degeneracy`.
    /// Tombstones are excluded.
    pub fn histogram(&self, g: &Graph) -> Vec<usize> {
        let mut h = vec![0; self.degeneracy as usize + 1];
        for v in g.live_vertices() {
            h[self.coreness[v] as usize] += 1;
        }
        h
    }
}

/// Coreness of every live vertex of `g`.
pub fn core_decompose(g: &Graph) -> CoreDecomposition {
    let coreness = coreness_masked(g, g.live_mask());
    let degeneracy = coreness.iter().copied().max().unwrap_or(0);
    CoreDecomposition {
        coreness,
        degeneracy,
    }
}

/// `{v live : coreness(v) >= k}` in increasing id order.
pub fn k_core_members(g: &Graph, d: &CoreDecomposition, k: u32) -> Vec<VertexId> {
    g.live_vertices().filter(|&v| d.coreness[v] >= k).collect()
}

/// Coreness of the subgraph induced by `alive`. Vertices outside the mask get 0.
///
/// Batagelj–Zaversnik peeling: vertices sit in an array sorted by current
/// degree with `bin[d]` pointing at the first slot of degree `d`; removing the
/// minimum and decrementing a neighbour swaps it to the front of its bin.
pub(crate) fn coreness_masked(g: &Graph, alive: &[bool]) -> Vec<u32> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n)
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().filter(|&&u| alive[u]).count()
            } else {
                0
            }
        })
        .collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for slot in bin.iter_mut() {
        let count = *slot;
        *slot = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        order[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg + 1).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        if !alive[v] {
            continue;
        }
        for &u in g.neighbors(v) {
            if alive[u] && deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg.into_iter()
        .zip(alive)
        .map(|(d, &a)| if a { d as u32 } else { 0 })
        .collect()
}
