//! Budgeted vertex-selection strategies: random, high degree (HD), high
//! disruption (HDR) and adaptive high disruption (AHDR).
//!
//! Ties are broken by lowest vertex id everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coreness::{core_decompose, CoreDecomposition};
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::graph::{Graph, VertexId};
use crate::local::{dropped_by_deletion, DropScratch};
use crate::objective::{disruption, evaluate, AttackResult, Step};

/// Vertices the attacker may delete. Sorted, deduplicated, all live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet(Vec<VertexId>);

impl CandidateSet {
    pub fn all(g: &Graph) -> Self {
        CandidateSet(g.live_vertices().collect())
    }

    pub fn new(g: &Graph, ids: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut ids: Vec<VertexId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        for &v in &ids {
            g.check_vertex(v)?;
            if !g.is_live(v) {
                return Err(Error::DeadVertex(v));
            }
        }
        Ok(CandidateSet(ids))
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_budget(&self, budget: usize) -> Result<()> {
        if budget > self.len() {
            return Err(Error::NotEnoughCandidates {
                budget,
                available: self.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Random,
    Hd,
    Hdr,
    Ahdr,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Random, Method::Hd, Method::Hdr, Method::Ahdr];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Hd => "hd",
            Method::Hdr => "hdr",
            Method::Ahdr => "ahdr",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(Method::Random),
            "hd" => Ok(Method::Hd),
            "hdr" => Ok(Method::Hdr),
            "ahdr" => Ok(Method::Ahdr),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AhdrOptions {
    /// Skip candidates whose live neighbours all have strictly higher coreness.
    pub prune: bool,
    pub exec: ExecMode,
}

impl Default for AhdrOptions {
    fn default() -> Self {
        AhdrOptions {
            prune: true,
            exec: ExecMode::default(),
        }
    }
}

/// Runs `method` with default options. `seed` is only used by `Random`.
pub fn run(
    method: Method,
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
    seed: u64,
) -> Result<AttackResult> {
    match method {
        Method::Random => select_random(g, base, candidates, budget, seed),
        Method::Hd => select_high_degree(g, base, candidates, budget),
        Method::Hdr => select_hdr(g, base, candidates, budget, ExecMode::default()),
        Method::Ahdr => select_ahdr(g, base, candidates, budget, AhdrOptions::default()),
    }
}

/// Uniform sample of `budget` candidates without replacement.
pub fn select_random(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
    seed: u64,
) -> Result<AttackResult> {
    candidates.check_budget(budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked: Vec<VertexId> = rand::seq::index::sample(&mut rng, candidates.len(), budget)
        .into_iter()
        .map(|i| candidates.ids()[i])
        .collect();
    evaluate(g, base, &picked, None)
}

/// The `budget` highest-degree candidates.
pub fn select_high_degree(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
) -> Result<AttackResult> {
    candidates.check_budget(budget)?;
    let mut order = candidates.ids().to_vec();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order.truncate(budget);
    evaluate(g, base, &order, None)
}

/// `f({v})`: how many vertices leave their core when `v` alone is deleted.
pub fn node_strength(g: &Graph, base: &CoreDecomposition, v: VertexId) -> usize {
    let mut scratch = DropScratch::new(g.n());
    let mut out = Vec::new();
    dropped_by_deletion(g, g.live_mask(), &base.coreness, v, &mut scratch, &mut out);
    out.len()
}

/// Strengths of all candidates, in candidate order.
pub fn strengths(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    exec: ExecMode,
) -> Vec<usize> {
    exec.map_with(
        candidates.ids(),
        || (DropScratch::new(g.n()), Vec::new()),
        |(scratch, out), &v| {
            dropped_by_deletion(g, g.live_mask(), &base.coreness, v, scratch, out);
            out.len()
        },
    )
}

/// The `budget` candidates with the largest one-shot strength on `g`.
pub fn select_hdr(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
    exec: ExecMode,
) -> Result<AttackResult> {
    candidates.check_budget(budget)?;
    let s = strengths(g, base, candidates, exec);
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| s[b].cmp(&s[a]).then(a.cmp(&b)));
    let picked: Vec<VertexId> = order[..budget].iter().map(|&i| candidates.ids()[i]).collect();
    evaluate(g, base, &picked, None)
}

/// Adaptive greedy: `budget` rounds, each deleting the candidate with the
/// largest strength on the current residual graph. A round where every
/// strength is zero still deletes (the lowest-id remaining candidate), so the
/// result always has exactly `budget` vertices.
pub fn select_ahdr(
    g: &Graph,
    base: &CoreDecomposition,
    candidates: &CandidateSet,
    budget: usize,
    opts: AhdrOptions,
) -> Result<AttackResult> {
    candidates.check_budget(budget)?;
    let n = g.n();
    let mut alive = g.live_mask().to_vec();
    let mut core = base.coreness.clone();
    let mut remaining: Vec<VertexId> = candidates.ids().to_vec();
    let mut deleted = Vec::with_capacity(budget);
    let mut steps = Vec::with_capacity(budget);
    let mut f_cum = 0usize;
    let mut scratch = DropScratch::new(n);
    let mut drops = Vec::new();

    for _ in 0..budget {
        let scores: Vec<usize> = opts.exec.map_with(
            &remaining,
            || (DropScratch::new(n), Vec::new()),
            |(s, out), &v| {
                if opts.prune && g.neighbors(v).iter().all(|&u| !alive[u] || core[u] > core[v]) {
                    return 0;
                }
                dropped_by_deletion(g, &alive, &core, v, s, out);
                out.len()
            },
        );
        // remaining is id-sorted, so the first maximum has the lowest id
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        let v = remaining.remove(best);

        dropped_by_deletion(g, &alive, &core, v, &mut scratch, &mut drops);
        let prev = f_cum;
        if core[v] < base.coreness[v] {
            f_cum -= 1;
        }
        for &u in &drops {
            if core[u] == base.coreness[u] {
                f_cum += 1;
            }
            core[u] -= 1;
        }
        alive[v] = false;
        core[v] = 0;
        deleted.push(v);
        steps.push(Step {
            vertex: v,
            marginal: f_cum as i64 - prev as i64,
            strength: drops.len(),
            f_cum,
        });
    }

    let affected: Vec<VertexId> = (0..n)
        .filter(|&u| alive[u] && core[u] < base.coreness[u])
        .collect();
    debug_assert_eq!(affected.len(), f_cum);
    Ok(AttackResult {
        deleted,
        f: f_cum,
        disruption: disruption(f_cum, n),
        affected,
        per_step: Some(steps),
        optimal: None,
    })
}

/// Full AHDR deletion order over every live vertex; prefixes give `B_alpha`.
pub fn ahdr_sequence(g: &Graph, opts: AhdrOptions) -> AttackResult {
    let base = core_decompose(g);
    let all = CandidateSet::all(g);
    select_ahdr(g, &base, &all, all.len(), opts).expect("budget equals candidate count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::objective::affected_set;
    use proptest::prelude::*;

    fn setup(g: &Graph) -> (CoreDecomposition, CandidateSet) {
        (core_decompose(g), CandidateSet::all(g))
    }

    #[test]
    fn random_basics() {
        let g = cycle(6);
        let (d, all) = setup(&g);
        let r = select_random(&g, &d, &all, 0, 1).unwrap();
        assert!(r.deleted.is_empty() && r.f == 0);
        let a = select_random(&g, &d, &all, 3, 42).unwrap();
        let b = select_random(&g, &d, &all, 3, 42).unwrap();
        assert_eq!(a.deleted, b.deleted);
        for seed in 0..20 {
            assert_eq!(select_random(&g, &d, &all, 1, seed).unwrap().f, 5);
        }
        assert!(matches!(
            select_random(&g, &d, &all, 7, 0),
            Err(Error::NotEnoughCandidates { budget: 7, available: 6 })
        ));
    }

    #[test]
    fn hd_picks_star_center_and_lowest_ids() {
        let g = star(4);
        let (d, all) = setup(&g);
        let r = select_high_degree(&g, &d, &all, 1).unwrap();
        assert_eq!((r.deleted.clone(), r.f), (vec![0], 4));

        let g = cycle(8);
        let (d, all) = setup(&g);
        assert_eq!(select_high_degree(&g, &d, &all, 3).unwrap().deleted, vec![0, 1, 2]);
    }

    #[test]
    fn strengths_small_cases() {
        let g = complete(4);
        let d = core_decompose(&g);
        assert!((0..4).all(|v| node_strength(&g, &d, v) == 3));
        let g = star(5);
        let d = core_decompose(&g);
        assert_eq!(node_strength(&g, &d, 3), 0);
        assert_eq!(node_strength(&g, &d, 0), 5);
    }

    #[test]
    fn hdr_prefers_the_clique() {
        let g = union(&complete(4), &cycle(3));
        let (d, all) = setup(&g);
        let r = select_hdr(&g, &d, &all, 1, ExecMode::Sequential).unwrap();
        assert_eq!(r.deleted, vec![0]);
        assert_eq!(r.f, 3);
        let r = select_hdr(&g, &d, &all, all.len(), ExecMode::Sequential).unwrap();
        let mut b = r.deleted.clone();
        b.sort_unstable();
        assert_eq!(b, all.ids());
    }

    #[test]
    fn hdr_on_p3_takes_the_middle() {
        let g = path(3);
        let (d, all) = setup(&g);
        // dropping an endpoint leaves an edge; the middle isolates both ends
        assert_eq!(node_strength(&g, &d, 0), 0);
        assert_eq!(node_strength(&g, &d, 1), 2);
        assert_eq!(select_hdr(&g, &d, &all, 1, ExecMode::Sequential).unwrap().deleted, vec![1]);
    }

    #[test]
    fn ahdr_two_cliques() {
        let g = union(&complete(4), &complete(4));
        let (d, all) = setup(&g);
        let r = select_ahdr(&g, &d, &all, 2, AhdrOptions::default()).unwrap();
        assert_eq!(r.deleted, vec![0, 4]);
        assert_eq!(r.f, 6);
        let steps = r.per_step.unwrap();
        assert_eq!(steps.iter().map(|s| s.marginal).collect::<Vec<_>>(), vec![3, 3]);
    }

    #[test]
    fn ahdr_marginal_can_go_negative_on_k4() {
        // second deletion removes an already-affected vertex; the other two
        // drop again but were already counted
        let g = complete(4);
        let (d, all) = setup(&g);
        let r = select_ahdr(&g, &d, &all, 4, AhdrOptions::default()).unwrap();
        let f: Vec<usize> = r.per_step.as_ref().unwrap().iter().map(|s| s.f_cum).collect();
        assert_eq!(f, vec![3, 2, 1, 0]);
    }

    #[test]
    fn ahdr_zero_rounds_still_delete() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let (d, all) = setup(&g);
        let r = select_ahdr(&g, &d, &all, 3, AhdrOptions::default()).unwrap();
        assert_eq!(r.deleted, vec![0, 1, 2]);
        assert_eq!(r.f, 0);
    }

    #[test]
    fn candidate_set_validation() {
        let g = complete(3).delete_vertices(&[1]).unwrap();
        assert!(CandidateSet::new(&g, [0, 1]).is_err());
        assert!(CandidateSet::new(&g, [5]).is_err());
        assert_eq!(CandidateSet::new(&g, [2, 0, 2]).unwrap().ids(), &[0, 2]);
        assert_eq!(CandidateSet::all(&g).ids(), &[0, 2]);
    }

    fn arb_case() -> impl Strategy<Value = (Graph, Vec<usize>, usize)> {
        (3usize..22).prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n), 0..70),
                proptest::collection::btree_set(0..n, 1..=n),
                0usize..6,
            )
                .prop_map(move |(e, c, b)| {
                    let g = Graph::from_edges(n, e).unwrap();
                    let c: Vec<usize> = c.into_iter().collect();
                    let b = b.min(c.len());
                    (g, c, b)
                })
        })
    }

    proptest! {
        #[test]
        fn pruning_never_changes_ahdr((g, c, b) in arb_case()) {
            let d = core_decompose(&g);
            let cands = CandidateSet::new(&g, c).unwrap();
            let on = select_ahdr(&g, &d, &cands, b, AhdrOptions { prune: true, exec: ExecMode::Sequential }).unwrap();
            let off = select_ahdr(&g, &d, &cands, b, AhdrOptions { prune: false, exec: ExecMode::Parallel }).unwrap();
            prop_assert_eq!(&on.deleted, &off.deleted);
            prop_assert_eq!(&on.per_step, &off.per_step);
        }

        #[test]
        fn ahdr_bookkeeping_matches_scratch((g, c, b) in arb_case()) {
            let d = core_decompose(&g);
            let cands = CandidateSet::new(&g, c).unwrap();
            let r = select_ahdr(&g, &d, &cands, b, AhdrOptions::default()).unwrap();
            prop_assert_eq!(&r.affected, &affected_set(&g, &d, &r.deleted));
            let steps = r.per_step.as_ref().unwrap();
            prop_assert_eq!(steps.iter().map(|s| s.marginal).sum::<i64>(), r.f as i64);
            for (t, s) in steps.iter().enumerate() {
                prop_assert!(s.marginal >= -1);
                prop_assert_eq!(s.f_cum, affected_set(&g, &d, &r.deleted[..=t]).len());
            }
        }

        #[test]
        fn hdr_and_ahdr_agree_on_first_pick((g, c, _b) in arb_case()) {
            let d = core_decompose(&g);
            let cands = CandidateSet::new(&g, c).unwrap();
            let h = select_hdr(&g, &d, &cands, 1, ExecMode::Parallel).unwrap();
            let a = select_ahdr(&g, &d, &cands, 1, AhdrOptions::default()).unwrap();
            prop_assert_eq!(h.deleted, a.deleted);
        }

        #[test]
        fn isolated_by_higher_cores_means_zero_strength((g, _c, _b) in arb_case()) {
            let d = core_decompose(&g);
            for v in 0..g.n() {
                if g.neighbors(v).iter().all(|&u| d.coreness[u] > d.coreness[v]) {
                    prop_assert_eq!(node_strength(&g, &d, v), 0);
                }
            }
        }
    }
}
