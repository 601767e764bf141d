//! Reference implementations for integration tests. Deliberately slow and
//! independent of the library: plain adjacency lists, fixed-point peeling,
//! exhaustive enumeration.

#![allow(dead_code)]

use corefall::{Graph, SetCoverInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Coreness by repeated fixed-point peeling for k = 1, 2, ...; vertices with
/// `alive[v] == false` are ignored and get 0.
pub fn naive_coreness(adj: &[Vec<usize>], alive: &[bool]) -> Vec<u32> {
    let n = adj.len();
    let mut core = vec![0u32; n];
    let mut in_core: Vec<bool> = alive.to_vec();
    let mut k = 1u32;
    while in_core.iter().any(|&x| x) {
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&v| in_core[v])
                .filter(|&v| adj[v].iter().filter(|&&u| in_core[u]).count() < k as usize)
                .collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                in_core[v] = false;
            }
        }
        for v in 0..n {
            if in_core[v] {
                core[v] = k;
            }
        }
        k += 1;
    }
    core
}

/// Number of survivors whose coreness strictly drops when `deleted` goes.
pub fn naive_f(adj: &[Vec<usize>], alive: &[bool], deleted: &[usize]) -> usize {
    let before = naive_coreness(adj, alive);
    let mut after_alive = alive.to_vec();
    for &v in deleted {
        after_alive[v] = false;
    }
    let after = naive_coreness(adj, &after_alive);
    (0..adj.len())
        .filter(|&u| after_alive[u] && after[u] < before[u])
        .count()
}

/// Best f over all subsets of `cands` with at most `budget` elements.
pub fn naive_opt(adj: &[Vec<usize>], cands: &[usize], budget: usize) -> usize {
    let alive = vec![true; adj.len()];
    let k = cands.len();
    assert!(k <= 20);
    (0u32..1 << k)
        .filter(|mask| mask.count_ones() as usize <= budget)
        .map(|mask| {
            let del: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
            naive_f(adj, &alive, &del)
        })
        .max()
        .unwrap_or(0)
}

/// G(n, p) with a seeded generator.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random forest: each vertex after the first links to an earlier vertex
/// with probability `p_link`, otherwise starts a new tree.
pub fn random_forest(n: usize, p_link: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        if r.random_bool(p_link) {
            edges.push((r.random_range(0..v), v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_subset(n: usize, p: f64, seed: u64) -> Vec<usize> {
    let mut r = rng(seed);
    (0..n).filter(|_| r.random_bool(p)).collect()
}

/// Smallest number of sets covering the universe, if any cover exists.
pub fn min_cover(inst: &SetCoverInstance) -> Option<usize> {
    let m = inst.sets.len();
    (0u32..1 << m)
        .filter(|mask| {
            (1..=inst.n).all(|e| (0..m).any(|i| mask >> i & 1 == 1 && inst.sets[i].contains(&e)))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Random set-cover instance over `{1..=n}` with `m` nonempty sets.
pub fn random_setcover(n: usize, m: usize, seed: u64) -> SetCoverInstance {
    let mut r = rng(seed);
    let sets = (0..m)
        .map(|_| loop {
            let s: Vec<usize> = (1..=n).filter(|_| r.random_bool(0.4)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    let rr = r.random_range(1..=m.min(3));
    SetCoverInstance::new(n, sets, rr).unwrap()
}

/// Random instance with sets of size 3 and every element in exactly two sets:
/// `m` sets, `n = 3m/2` elements, built from a random pairing of the `3m` set
/// slots. Retries until no set repeats an element.
pub fn random_exact_cover_shape(m: usize, seed: u64) -> SetCoverInstance {
    assert!(m.is_multiple_of(2));
    let n = 3 * m / 2;
    let mut r = rng(seed);
    loop {
        let mut slots: Vec<usize> = (1..=n).flat_map(|e| [e, e]).collect();
        for i in (1..slots.len()).rev() {
            slots.swap(i, r.random_range(0..=i));
        }
        let sets: Vec<Vec<usize>> = slots.chunks(3).map(|c| c.to_vec()).collect();
        if sets.iter().all(|s| s[0] != s[1] && s[1] != s[2] && s[0] != s[2]) {
            let rr = r.random_range(1..=m / 2 + 1).min(m);
            return SetCoverInstance::new(n, sets, rr).unwrap();
        }
    }
}
