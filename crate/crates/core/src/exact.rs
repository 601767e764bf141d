//! Exact solvers: exhaustive search over candidate subsets, and a tree
//! dynamic program for forests (degeneracy at most 1).

use crate::coreness::{core_decompose, CoreDecomposition};
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::graph::{Graph, VertexId};
use crate::heuristics::CandidateSet;
use crate::objective::{affected_count_masked, evaluate, AttackResult};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank_combination(n: usize, k: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut x = 0;
    for slot in 0..k {
        loop {
            let rest = binomial(n - x - 1, k - slot - 1);
            if rank < rest {
                break;
            }
            rank -= rest;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
}

/// Maximizes `f` over all `B ⊆ candidates` with `|B| <= budget`, visiting
/// subsets by size and then lexicographically; the first maximizer wins.
pub fn exact_bruteforce(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
    cap: usize,
    exec: ExecMode,
) -> Result<AttackResult> {
    let c = candidates.len();
    if c > cap {
        return Err(Error::CandidateCapExceeded { size: c, cap });
    }
    let ids = candidates.ids();
    let mut best: (usize, Vec<VertexId>) = (0, Vec::new());
    for k in 1..=budget.min(c) {
        let total = binomial(c, k) as usize;
        let scores: Vec<usize> = exec.map_range_with(
            total,
            || (g.live_mask().to_vec(), Vec::with_capacity(k)),
            |(alive, combo), rank| {
                unrank_combination(c, k, rank as u64, combo);
                for &i in combo.iter() {
                    alive[ids[i]] = false;
                }
                let f = affected_count_masked(g, base, alive);
                for &i in combo.iter() {
                    alive[ids[i]] = true;
                }
                f
            },
        );
        if let Some((rank, &f)) = scores
            .iter()
            .enumerate()
            .fold(None, |acc: Option<(usize, &usize)>, (i, s)| match acc {
                Some((_, b)) if b >= s => acc,
                _ => Some((i, s)),
            })
        {
            if f > best.0 {
                let mut combo = Vec::new();
                unrank_combination(c, k, rank as u64, &mut combo);
                best = (f, combo.into_iter().map(|i| ids[i]).collect());
            }
        }
    }
    let mut result = evaluate(g, base, &best.1, None)?;
    debug_assert_eq!(result.f, best.0);
    result.optimal = Some(true);
    Ok(result)
}

/// A table cell: `None` is infeasible (treated as minus infinity).
pub type Cell = Option<i64>;

fn plus(a: Cell, b: Cell) -> Cell {
    Some(a? + b?)
}

fn gt(a: Cell, b: Cell) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x > y,
        (Some(_), None) => true,
        _ => false,
    }
}

fn max_cell(a: Cell, b: Cell) -> Cell {
    if gt(b, a) {
        b
    } else {
        a
    }
}

/// `out[l] = max_{j <= l} acc[l - j] + item[j]`, with the chosen `j`.
fn knapsack(acc: &[Cell], item: &[Cell]) -> (Vec<Cell>, Vec<usize>) {
    let len = acc.len();
    let mut out = vec![None; len];
    let mut pick = vec![0; len];
    for l in 0..len {
        for j in 0..=l {
            let cand = plus(acc[l - j], item[j]);
            if gt(cand, out[l]) {
                out[l] = cand;
                pick[l] = j;
            }
        }
    }
    (out, pick)
}

/// Per-vertex rows over budgets `0..=b` for a rooted tree:
/// * `a`: vertex kept, all children deleted (isolated within its subtree;
///   counted as isolated, the parent subtracts 1 if it survives too),
/// * `b`: vertex kept with at least one surviving child,
/// * `c`: vertex deleted (only for candidates, needs budget),
/// * `d`: best of the three.
///
/// Values count surviving vertices that end up isolated.
#[derive(Clone, Debug, Default)]
pub struct VertexRows {
    pub a: Vec<Cell>,
    pub b: Vec<Cell>,
    pub c: Vec<Cell>,
    pub d: Vec<Cell>,
}

impl VertexRows {
    /// Best value with the vertex alive and its parent alive too.
    fn kept_under_live_parent(&self, l: usize) -> Cell {
        max_cell(self.a[l].map(|x| x - 1), self.b[l])
    }
}

#[derive(Clone, Debug, Default)]
struct ChildStep {
    child: VertexId,
    none: Vec<usize>,
    some: Vec<(bool, usize)>,
    all: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    A,
    B,
    C,
}

/// DP tables for every vertex of a forest, indexed by vertex id
/// (isolated vertices and tombstones have empty rows).
#[derive(Clone, Debug)]
pub struct DpTables {
    pub budget: usize,
    pub rows: Vec<VertexRows>,
    steps: Vec<Vec<ChildStep>>,
    /// Roots of trees with at least two vertices.
    pub roots: Vec<VertexId>,
}

impl DpTables {
    pub fn build(g: &Graph, candidates: &CandidateSet, budget: usize) -> Result<Self> {
        let base = core_decompose(g);
        if base.degeneracy > 1 {
            return Err(Error::NotAForest(base.degeneracy));
        }
        let n = g.n();
        let width = budget + 1;
        let mut deletable = vec![false; n];
        for &v in candidates.ids() {
            deletable[v] = true;
        }

        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut roots = Vec::new();
        let mut order = Vec::with_capacity(n);
        for r in g.live_vertices() {
            if seen[r] || g.degree(r) == 0 {
                continue;
            }
            roots.push(r);
            seen[r] = true;
            let start = order.len();
            order.push(r);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                for &u in g.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = v;
                        order.push(u);
                    }
                }
                i += 1;
            }
        }

        let mut rows = vec![VertexRows::default(); n];
        let mut steps: Vec<Vec<ChildStep>> = vec![Vec::new(); n];
        // reverse BFS order visits children before parents
        for &x in order.iter().rev() {
            let mut none: Vec<Cell> = vec![Some(0); width];
            let mut some: Vec<Cell> = vec![None; width];
            let mut all: Vec<Cell> = vec![Some(0); width];
            let mut x_steps = Vec::new();
            for &y in g.neighbors(x) {
                if parent[y] != x {
                    continue;
                }
                let ry = &rows[y];
                let surv: Vec<Cell> = (0..width).map(|l| ry.kept_under_live_parent(l)).collect();
                let any: Vec<Cell> = (0..width).map(|l| max_cell(surv[l], ry.c[l])).collect();

                let (next_none, pick_none) = knapsack(&none, &ry.c);
                let (via_some, pick_some) = knapsack(&some, &any);
                let (via_none, pick_first) = knapsack(&none, &surv);
                let mut next_some = vec![None; width];
                let mut pick = vec![(true, 0); width];
                for l in 0..width {
                    if gt(via_none[l], via_some[l]) {
                        next_some[l] = via_none[l];
                        pick[l] = (false, pick_first[l]);
                    } else {
                        next_some[l] = via_some[l];
                        pick[l] = (true, pick_some[l]);
                    }
                }
                let (next_all, pick_all) = knapsack(&all, &ry.d);

                none = next_none;
                some = next_some;
                all = next_all;
                x_steps.push(ChildStep {
                    child: y,
                    none: pick_none,
                    some: pick,
                    all: pick_all,
                });
            }

            let a: Vec<Cell> = none.iter().map(|&v| v.map(|s| s + 1)).collect();
            let b = some;
            let c: Vec<Cell> = (0..width)
                .map(|l| if deletable[x] && l > 0 { all[l - 1] } else { None })
                .collect();
            let d: Vec<Cell> = (0..width)
                .map(|l| max_cell(max_cell(a[l], b[l]), c[l]))
                .collect();
            rows[x] = VertexRows { a, b, c, d };
            steps[x] = x_steps;
        }

        Ok(DpTables {
            budget,
            rows,
            steps,
            roots,
        })
    }

    fn best_state(&self, x: VertexId, l: usize) -> State {
        let r = &self.rows[x];
        if r.d[l] == r.a[l] {
            State::A
        } else if r.d[l] == r.b[l] {
            State::B
        } else {
            State::C
        }
    }

    fn trace(&self, root: VertexId, budget: usize, deleted: &mut Vec<VertexId>) {
        let mut stack = vec![(root, self.best_state(root, budget), budget)];
        while let Some((x, state, l)) = stack.pop() {
            let steps = &self.steps[x];
            match state {
                State::A => {
                    let mut rest = l;
                    for s in steps.iter().rev() {
                        let j = s.none[rest];
                        stack.push((s.child, State::C, j));
                        rest -= j;
                    }
                }
                State::B => {
                    let mut rest = l;
                    let mut need_survivor = true;
                    for s in steps.iter().rev() {
                        if need_survivor {
                            let (from_some, j) = s.some[rest];
                            let ry = &self.rows[s.child];
                            let kept = ry.kept_under_live_parent(j);
                            let state = if !from_some || !gt(ry.c[j], kept) {
                                if ry.b[j] == kept {
                                    State::B
                                } else {
                                    State::A
                                }
                            } else {
                                State::C
                            };
                            if !from_some {
                                need_survivor = false;
                            }
                            stack.push((s.child, state, j));
                            rest -= j;
                        } else {
                            let j = s.none[rest];
                            stack.push((s.child, State::C, j));
                            rest -= j;
                        }
                    }
                }
                State::C => {
                    deleted.push(x);
                    let mut rest = l - 1;
                    for s in steps.iter().rev() {
                        let j = s.all[rest];
                        stack.push((s.child, self.best_state(s.child, j), j));
                        rest -= j;
                    }
                }
            }
        }
    }

    /// Combines the trees' `d` rows and reconstructs one optimal deletion set.
    pub fn solve(&self) -> (i64, Vec<VertexId>) {
        let width = self.budget + 1;
        let mut acc: Vec<Cell> = vec![Some(0); width];
        let mut picks = Vec::with_capacity(self.roots.len());
        for &r in &self.roots {
            let (next, pick) = knapsack(&acc, &self.rows[r].d);
            acc = next;
            picks.push(pick);
        }
        let value = acc[self.budget].expect("keeping everything is always feasible");
        let mut deleted = Vec::new();
        let mut rest = self.budget;
        for (i, &r) in self.roots.iter().enumerate().rev() {
            let j = picks[i][rest];
            self.trace(r, j, &mut deleted);
            rest -= j;
        }
        deleted.sort_unstable();
        (value, deleted)
    }
}

/// Optimal deletion for forests: surviving vertices of a forest are affected
/// exactly when they become isolated.
pub fn exact_forest_dp(g: &Graph, candidates: &CandidateSet, budget: usize) -> Result<AttackResult> {
    let tables = DpTables::build(g, candidates, budget)?;
    let (value, deleted) = tables.solve();
    let base = core_decompose(g);
    let mut result = evaluate(g, &base, &deleted, Some(budget))?;
    debug_assert_eq!(result.f as i64, value);
    result.optimal = Some(true);
    Ok(result)
}
