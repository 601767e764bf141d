mod common;

use common::{adjacency, gnp, naive_f, naive_opt, random_forest, random_subset};
use corefall::heuristics::CandidateSet;
use corefall::{
    core_decompose, evaluate, exact_bruteforce, exact_forest_dp, select_ahdr, AhdrOptions,
    ExecMode, Graph, Method,
};

fn forest_case(seed: u64) -> (Graph, CandidateSet, usize) {
    let n = 1 + (seed % 14) as usize;
    let g = random_forest(n, 0.85, seed);
    let ids = random_subset(n, 0.6, seed ^ 0xabcd);
    let cands = CandidateSet::new(&g, ids).unwrap();
    (g, cands, (seed % 5) as usize)
}

#[test]
fn forest_dp_matches_brute_force() {
    for seed in 0..200u64 {
        let (g, cands, b) = forest_case(seed);
        let base = core_decompose(&g);
        let bf = exact_bruteforce(&g, &base, &cands, b, 20, ExecMode::Sequential).unwrap();
        let dp = exact_forest_dp(&g, &cands, b).unwrap();
        assert_eq!(dp.f, bf.f, "seed {seed}");
        assert!(dp.deleted.len() <= b);
        assert!(dp.deleted.iter().all(|v| cands.ids().contains(v)));
        let again = evaluate(&g, &base, &dp.deleted, Some(b)).unwrap();
        assert_eq!(again.f, dp.f, "seed {seed}: reconstruction {:?}", dp.deleted);
    }
}

#[test]
fn brute_force_matches_naive_enumeration() {
    for seed in 0..30u64 {
        let n = 4 + (seed % 8) as usize;
        let g = gnp(n, 0.45, seed);
        let adj = adjacency(&g);
        let ids: Vec<usize> = (0..n).collect();
        let b = 1 + (seed % 3) as usize;
        let base = core_decompose(&g);
        let cands = CandidateSet::all(&g);
        let bf = exact_bruteforce(&g, &base, &cands, b, 20, ExecMode::default()).unwrap();
        assert_eq!(bf.f, naive_opt(&adj, &ids, b), "seed {seed}");
        assert_eq!(bf.f, naive_f(&adj, &vec![true; n], &bf.deleted));
    }
}

#[test]
fn brute_force_is_monotone_in_budget_and_candidates() {
    for seed in 0..20u64 {
        let g = gnp(10, 0.4, seed);
        let base = core_decompose(&g);
        let small = CandidateSet::new(&g, 0..5).unwrap();
        let all = CandidateSet::all(&g);
        let mut prev = 0;
        for b in 0..=4 {
            let s = exact_bruteforce(&g, &base, &small, b, 20, ExecMode::Sequential).unwrap().f;
            let a = exact_bruteforce(&g, &base, &all, b, 20, ExecMode::Sequential).unwrap().f;
            assert!(s >= prev && a >= s);
            prev = s;
        }
    }
}

#[test]
fn execution_modes_agree() {
    for seed in 0..10u64 {
        let g = gnp(14, 0.3, seed);
        let base = core_decompose(&g);
        let cands = CandidateSet::all(&g);
        let s = exact_bruteforce(&g, &base, &cands, 3, 20, ExecMode::Sequential).unwrap();
        let p = exact_bruteforce(&g, &base, &cands, 3, 20, ExecMode::Parallel).unwrap();
        assert_eq!(s, p);
    }
}

#[test]
fn heuristics_never_beat_the_optimum() {
    for seed in 0..60u64 {
        let (g, cands, b) = if seed % 2 == 0 {
            forest_case(seed)
        } else {
            let g = gnp(11, 0.35, seed);
            let c = CandidateSet::all(&g);
            (g, c, 1 + (seed % 4) as usize)
        };
        let b = b.min(cands.len());
        let base = core_decompose(&g);
        let opt = exact_bruteforce(&g, &base, &cands, b, 20, ExecMode::Sequential).unwrap().f;
        for m in Method::ALL {
            let r = corefall::heuristics::run(m, &g, &base, &cands, b, seed).unwrap();
            assert!(r.f <= opt, "seed {seed} {}: {} > {opt}", m.name(), r.f);
        }
        let ahdr = select_ahdr(&g, &base, &cands, b, AhdrOptions::default()).unwrap();
        assert!(ahdr.f <= opt);
    }
}

#[test]
fn dp_rejects_non_forests() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    assert!(exact_forest_dp(&g, &CandidateSet::all(&g), 1).is_err());
}
