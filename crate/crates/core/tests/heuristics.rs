mod common;

use common::{adjacency, gnp, naive_coreness, naive_f};
use corefall::heuristics::CandidateSet;
use corefall::{
    affected_set, core_decompose, node_strength, select_ahdr, select_hdr, AhdrOptions, ExecMode,
};
use proptest::prelude::*;

fn graph_for(seed: u64) -> corefall::Graph {
    let n = 8 + (seed % 23) as usize;
    let p = 0.05 + 0.5 * ((seed * 7919) % 100) as f64 / 100.0;
    gnp(n, p, seed)
}

#[test]
fn affected_vertices_never_outrank_the_deleted_one() {
    for seed in 0..50u64 {
        let g = graph_for(seed);
        let base = core_decompose(&g);
        for v in 0..g.n() {
            for u in affected_set(&g, &base, &[v]) {
                assert!(base.coreness[u] <= base.coreness[v], "seed {seed}: {u} after {v}");
            }
        }
    }
}

#[test]
fn vertices_below_all_neighbours_have_no_strength() {
    let mut hits = 0;
    for seed in 0..50u64 {
        let g = graph_for(seed);
        let base = core_decompose(&g);
        let adj = adjacency(&g);
        for v in 0..g.n() {
            let below = g.neighbors(v).iter().all(|&u| base.coreness[u] > base.coreness[v]);
            if below {
                hits += 1;
                assert_eq!(node_strength(&g, &base, v), 0);
                assert_eq!(naive_f(&adj, &vec![true; g.n()], &[v]), 0);
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn strength_matches_naive_single_deletion() {
    for seed in 0..20u64 {
        let g = graph_for(seed);
        let base = core_decompose(&g);
        let adj = adjacency(&g);
        assert_eq!(base.coreness, naive_coreness(&adj, &vec![true; g.n()]));
        for v in 0..g.n() {
            assert_eq!(node_strength(&g, &base, v), naive_f(&adj, &vec![true; g.n()], &[v]));
        }
    }
}

#[test]
fn pruning_never_changes_the_choice() {
    for seed in 0..50u64 {
        let g = graph_for(seed);
        let base = core_decompose(&g);
        let cands = CandidateSet::all(&g);
        let b = g.n() / 3;
        let on = select_ahdr(&g, &base, &cands, b, AhdrOptions { prune: true, exec: ExecMode::Sequential });
        let off = select_ahdr(&g, &base, &cands, b, AhdrOptions { prune: false, exec: ExecMode::Sequential });
        assert_eq!(on.unwrap(), off.unwrap(), "seed {seed}");
    }
}

#[test]
fn one_step_adaptive_equals_static_ranking() {
    for seed in 0..50u64 {
        let g = graph_for(seed);
        let base = core_decompose(&g);
        let cands = CandidateSet::all(&g);
        let hdr = select_hdr(&g, &base, &cands, 1, ExecMode::default()).unwrap();
        let ahdr = select_ahdr(&g, &base, &cands, 1, AhdrOptions::default()).unwrap();
        assert_eq!(hdr.deleted, ahdr.deleted);
        assert_eq!(hdr.f, ahdr.f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ahdr_steps_add_up(seed in any::<u64>(), n in 5usize..25, p in 0.05f64..0.6, b in 1usize..8) {
        let g = gnp(n, p, seed);
        let base = core_decompose(&g);
        let cands = CandidateSet::all(&g);
        let b = b.min(n);
        let par = select_ahdr(&g, &base, &cands, b, AhdrOptions { prune: true, exec: ExecMode::Parallel }).unwrap();
        let seq = select_ahdr(&g, &base, &cands, b, AhdrOptions { prune: true, exec: ExecMode::Sequential }).unwrap();
        prop_assert_eq!(&par, &seq);
        let steps = par.per_step.clone().unwrap();
        prop_assert_eq!(steps.len(), b);
        let adj = adjacency(&g);
        let alive = vec![true; n];
        for (t, s) in steps.iter().enumerate() {
            prop_assert_eq!(s.f_cum, naive_f(&adj, &alive, &par.deleted[..=t]));
            prop_assert!(s.marginal >= -1);
        }
        prop_assert_eq!(steps.iter().map(|s| s.marginal).sum::<i64>(), par.f as i64);
    }
}
