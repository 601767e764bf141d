//! Local recomputation of the vertices hurt by one deletion.
//!
//! Removing a single vertex `v` lowers any other coreness by at most one, and
//! only for vertices `u` with `C(u) <= C(v)`. At level `k` the candidates are
//! the coreness-`k` vertices connected to a coreness-`k` neighbour of `v`
//! through coreness-`k` vertices. Levels are independent: a drop from `k` to
//! `k - 1` leaves the vertex at `>= j` for every `j < k`.
//!
//! Inside a level we count, for each candidate, neighbours that will stay at
//! coreness `>= k` and peel candidates whose count falls below `k`.

use crate::graph::{Graph, VertexId};

pub(crate) struct DropScratch {
    stamp: Vec<u32>,
    dropped: Vec<u32>,
    support: Vec<u32>,
    epoch: u32,
    members: Vec<VertexId>,
    stack: Vec<VertexId>,
    levels: Vec<u32>,
}

impl DropScratch {
    pub fn new(n: usize) -> Self {
        DropScratch {
            stamp: vec![0; n],
            dropped: vec![0; n],
            support: vec![0; n],
            epoch: 0,
            members: Vec::new(),
            stack: Vec::new(),
            levels: Vec::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.dropped.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }
}

/// Vertices (other than `v`) whose coreness in `alive`'s induced subgraph
/// drops when `v` is removed. `core` must be the coreness of that subgraph.
/// Output order: by level, then peel order.
pub(crate) fn dropped_by_deletion(
    g: &Graph,
    alive: &[bool],
    core: &[u32],
    v: VertexId,
    scratch: &mut DropScratch,
    out: &mut Vec<VertexId>,
) {
    out.clear();
    let cv = core[v];
    if cv == 0 || !alive[v] {
        return;
    }

    let mut levels = std::mem::take(&mut scratch.levels);
    levels.clear();
    levels.extend(
        g.neighbors(v)
            .iter()
            .filter(|&&w| alive[w] && core[w] <= cv)
            .map(|&w| core[w]),
    );
    levels.sort_unstable();
    levels.dedup();

    for &k in &levels {
        let epoch = scratch.next_epoch();

        // subcore reachable from v's level-k neighbours
        scratch.members.clear();
        scratch.stack.clear();
        for &w in g.neighbors(v) {
            if alive[w] && core[w] == k && scratch.stamp[w] != epoch {
                scratch.stamp[w] = epoch;
                scratch.stack.push(w);
            }
        }
        while let Some(u) = scratch.stack.pop() {
            scratch.members.push(u);
            for &x in g.neighbors(u) {
                if x != v && alive[x] && core[x] == k && scratch.stamp[x] != epoch {
                    scratch.stamp[x] = epoch;
                    scratch.stack.push(x);
                }
            }
        }

        for &u in &scratch.members {
            let s = g
                .neighbors(u)
                .iter()
                .filter(|&&x| x != v && alive[x] && core[x] >= k)
                .count() as u32;
            scratch.support[u] = s;
            if s < k {
                scratch.dropped[u] = epoch;
                scratch.stack.push(u);
            }
        }
        while let Some(u) = scratch.stack.pop() {
            out.push(u);
            for &x in g.neighbors(u) {
                if scratch.stamp[x] == epoch && scratch.dropped[x] != epoch {
                    scratch.support[x] -= 1;
                    if scratch.support[x] < k {
                        scratch.dropped[x] = epoch;
                        scratch.stack.push(x);
                    }
                }
            }
        }
    }
    scratch.levels = levels;
}
