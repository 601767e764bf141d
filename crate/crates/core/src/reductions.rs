//! Set-cover style instances turned into deletion instances with a known
//! threshold: some `B` reaches `yes_threshold` exactly when the source
//! instance has a cover of size at most `r`.
//!
//! Vertex layout is fixed: P-cliques (set-major), then Q-vertices
//! (element-major), then R-cliques, then the hub and gadget if any.
//!
//! Every surviving vertex of a cover's set clique drops (three per deleted
//! hub), and every element gadget that loses one hub edge drops entirely.
//! The deleted hubs themselves are not counted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::heuristics::CandidateSet;

/// Universe `{1..=n}`, a family of subsets and a cover-size target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub r: usize,
}

impl SetCoverInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>, r: usize) -> Result<Self> {
        let inst = SetCoverInstance { n, sets, r };
        inst.validate()?;
        Ok(inst)
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidInstance(format!("set {} is empty", i + 1)));
            }
            if let Some(&e) = s.iter().find(|&&e| e == 0 || e > self.n) {
                return Err(Error::InvalidInstance(format!(
                    "set {} has element {e} outside 1..={}",
                    i + 1,
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn contains(&self, set: usize, element: usize) -> bool {
        self.sets[set].contains(&(element + 1))
    }

    /// Every set has three elements and every element lies in exactly two sets.
    pub fn validate_exact_cover_shape(&self) -> Result<()> {
        self.validate()?;
        for (i, s) in self.sets.iter().enumerate() {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != 3 {
                return Err(Error::InvalidInstance(format!(
                    "set {} has {} distinct elements, expected 3",
                    i + 1,
                    s.len()
                )));
            }
        }
        for e in 0..self.n {
            let count = (0..self.m()).filter(|&i| self.contains(i, e)).count();
            if count != 2 {
                return Err(Error::InvalidInstance(format!(
                    "element {} lies in {count} sets, expected 2",
                    e + 1
                )));
            }
        }
        Ok(())
    }
}

/// What a generated vertex stands for. Indices are 1-based as in the source
/// instance (`set`, `element`), slots `t` run 1..=4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    SetClique { set: usize, t: usize },
    Element { element: usize, slot: usize },
    ElementClique { element: usize, t: usize },
    Hub,
    Gadget(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::SetClique { set, t } => write!(f, "P_{{{set},{t}}}"),
            Role::Element { element, slot } => write!(f, "Q_{{{element},{slot}}}"),
            Role::ElementClique { element, t } => write!(f, "R_{{{element},{t}}}"),
            Role::Hub => write!(f, "R"),
            Role::Gadget(i) => write!(f, "T_{{{i}}}"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Element cycles of length `m`, one 4-clique per element.
    W2,
    /// Element edge pairs, bounded maximum degree.
    ExactCover,
    /// Element cycles, a single hub guarding a cubic gadget.
    Inapprox,
}

impl std::str::FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w2" => Ok(Construction::W2),
            "exactcover" => Ok(Construction::ExactCover),
            "inapprox" => Ok(Construction::Inapprox),
            other => Err(Error::InvalidParameter(format!("unknown construction {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub candidates: CandidateSet,
    pub budget: usize,
    pub yes_threshold: usize,
    pub roles: Vec<Role>,
    /// `hubs[i]` is the deletable vertex of set `i + 1`.
    pub hubs: Vec<VertexId>,
}

impl ReductionOutput {
    /// Deletion set for a choice of (1-based) set indices.
    pub fn deletion_for(&self, sets: &[usize]) -> Vec<VertexId> {
        sets.iter().map(|&s| self.hubs[s - 1]).collect()
    }

    pub fn count_roles(&self, pred: impl Fn(&Role) -> bool) -> usize {
        self.roles.iter().filter(|r| pred(r)).count()
    }
}

struct Builder {
    roles: Vec<Role>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn add(&mut self, role: Role) -> VertexId {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn clique(&mut self, vs: &[VertexId]) {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.edges.push((u, v));
            }
        }
    }

    /// One 4-clique per set; returns the block start per set.
    fn set_cliques(&mut self, m: usize) -> Vec<VertexId> {
        (0..m)
            .map(|i| {
                let vs: Vec<VertexId> = (1..=4)
                    .map(|t| self.add(Role::SetClique { set: i + 1, t }))
                    .collect();
                self.clique(&vs);
                vs[0]
            })
            .collect()
    }

    fn element_cycles(&mut self, n: usize, m: usize) -> Vec<Vec<VertexId>> {
        let q: Vec<Vec<VertexId>> = (0..n)
            .map(|j| {
                (0..m)
                    .map(|i| {
                        self.add(Role::Element {
                            element: j + 1,
                            slot: i + 1,
                        })
                    })
                    .collect()
            })
            .collect();
        for ring in &q {
            for i in 0..m {
                self.edges.push((ring[i], ring[(i + 1) % m]));
            }
        }
        q
    }

    fn element_cliques(&mut self, n: usize) -> Vec<VertexId> {
        (0..n)
            .map(|j| {
                let vs: Vec<VertexId> = (1..=4)
                    .map(|t| self.add(Role::ElementClique { element: j + 1, t }))
                    .collect();
                self.clique(&vs);
                vs[0]
            })
            .collect()
    }

    fn finish(self, budget: usize, yes_threshold: usize, hubs: Vec<VertexId>) -> Result<ReductionOutput> {
        let graph = Graph::from_edges(self.roles.len(), self.edges)?;
        let candidates = CandidateSet::new(&graph, hubs.iter().copied())?;
        Ok(ReductionOutput {
            graph,
            candidates,
            budget,
            yes_threshold,
            roles: self.roles,
            hubs,
        })
    }
}

fn require_cycle_length(inst: &SetCoverInstance) -> Result<()> {
    if inst.m() < 3 {
        return Err(Error::InvalidInstance(format!(
            "need at least 3 sets for element cycles, got {}",
            inst.m()
        )));
    }
    Ok(())
}

/// Element `j` gets a cycle `Q_{j,1..m}`; `Q_{j,i}` hangs on set `i`'s hub
/// when `u_j ∈ S_i`, otherwise on the element's own clique.
/// `4m + nm + 4n` vertices, threshold `3·min(r, m) + mn`.
pub fn setcover_to_tmcv(inst: &SetCoverInstance) -> Result<ReductionOutput> {
    inst.validate()?;
    require_cycle_length(inst)?;
    let (n, m) = (inst.n, inst.m());
    let mut b = Builder {
        roles: Vec::new(),
        edges: Vec::new(),
    };
    let hubs = b.set_cliques(m);
    let q = b.element_cycles(n, m);
    let r = b.element_cliques(n);
    for j in 0..n {
        for i in 0..m {
            let other = if inst.contains(i, j) { hubs[i] } else { r[j] };
            b.edges.push((q[j][i], other));
        }
    }
    b.finish(inst.r, 3 * inst.r.min(m) + m * n, hubs)
}

/// Each element gets two vertices `Q_{j,1}, Q_{j,2}` (one per containing set,
/// in set order) joined by an edge, both tied to `R_{j,1}`. Maximum degree 6.
/// Threshold `3·min(r, m) + 2n`.
pub fn exactcover_to_tmcv(inst: &SetCoverInstance) -> Result<ReductionOutput> {
    inst.validate_exact_cover_shape()?;
    let (n, m) = (inst.n, inst.m());
    let mut b = Builder {
        roles: Vec::new(),
        edges: Vec::new(),
    };
    let hubs = b.set_cliques(m);
    let q: Vec<[VertexId; 2]> = (0..n)
        .map(|j| {
            let pair = [1, 2].map(|slot| b.add(Role::Element { element: j + 1, slot }));
            b.edges.push((pair[0], pair[1]));
            pair
        })
        .collect();
    let r = b.element_cliques(n);
    let mut used = vec![0usize; n];
    for (i, &hub) in hubs.iter().enumerate() {
        for j in 0..n {
            if inst.contains(i, j) {
                b.edges.push((hub, q[j][used[j]]));
                used[j] += 1;
            }
        }
    }
    for j in 0..n {
        b.edges.push((q[j][0], r[j]));
        b.edges.push((q[j][1], r[j]));
    }
    b.finish(inst.r, 3 * inst.r.min(m) + 2 * n, hubs)
}

/// Like [`setcover_to_tmcv`] but every non-membership edge goes to a single
/// hub `R`, which holds up a gadget of `t` vertices. The gadget is a prism
/// (two `t/2`-cycles plus a matching) with one rung replaced by edges to `R`,
/// so every gadget vertex has degree exactly 3 and the whole gadget falls
/// with `R`. Threshold `3·min(r, m) + mn + 1 + t`.
pub fn inapprox_gadget_to_tmcv(inst: &SetCoverInstance, t: usize) -> Result<ReductionOutput> {
    inst.validate()?;
    require_cycle_length(inst)?;
    if t < 6 || !t.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "gadget size must be even and at least 6, got {t}"
        )));
    }
    let (n, m) = (inst.n, inst.m());
    let misses = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !inst.contains(i, j))
        .count();
    if misses == 0 {
        return Err(Error::InvalidInstance(
            "every set contains every element; the hub would start outside the 3-core".into(),
        ));
    }

    let mut b = Builder {
        roles: Vec::new(),
        edges: Vec::new(),
    };
    let hubs = b.set_cliques(m);
    let q = b.element_cycles(n, m);
    let hub = b.add(Role::Hub);
    let gadget: Vec<VertexId> = (0..t).map(|i| b.add(Role::Gadget(i + 1))).collect();
    let half = t / 2;
    for k in 0..half {
        b.edges.push((gadget[k], gadget[(k + 1) % half]));
        b.edges.push((gadget[half + k], gadget[half + (k + 1) % half]));
        if k > 0 {
            b.edges.push((gadget[k], gadget[half + k]));
        }
    }
    b.edges.push((hub, gadget[0]));
    b.edges.push((hub, gadget[half]));
    for (j, cycle) in q.iter().enumerate() {
        for (i, &qv) in cycle.iter().enumerate() {
            let other = if inst.contains(i, j) { hubs[i] } else { hub };
            b.edges.push((qv, other));
        }
    }
    b.finish(inst.r, 3 * inst.r.min(m) + m * n + 1 + t, hubs)
}

pub fn build(construction: Construction, inst: &SetCoverInstance, gadget_size: usize) -> Result<ReductionOutput> {
    match construction {
        Construction::W2 => setcover_to_tmcv(inst),
        Construction::ExactCover => exactcover_to_tmcv(inst),
        Construction::Inapprox => inapprox_gadget_to_tmcv(inst, gadget_size),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coreness::core_decompose;
    use crate::objective::evaluate;

    fn fig3() -> SetCoverInstance {
        SetCoverInstance::new(4, vec![vec![1, 2], vec![1, 3, 4], vec![3]], 2).unwrap()
    }

    fn f(out: &ReductionOutput, sets: &[usize]) -> usize {
        let d = core_decompose(&out.graph);
        evaluate(&out.graph, &d, &out.deletion_for(sets), None).unwrap().f
    }

    #[test]
    fn w2_shape() {
        let out = setcover_to_tmcv(&fig3()).unwrap();
        assert_eq!(out.graph.n(), 40);
        assert_eq!(out.candidates.len(), 3);
        assert_eq!(out.yes_threshold, 18);
        assert_eq!(out.count_roles(|r| matches!(r, Role::SetClique { .. })), 12);
        assert_eq!(out.count_roles(|r| matches!(r, Role::Element { .. })), 12);
        assert_eq!(out.count_roles(|r| matches!(r, Role::ElementClique { .. })), 16);
        assert_eq!(out.roles[0].to_string(), "P_{1,1}");
        assert_eq!(out.roles[12].to_string(), "Q_{1,1}");
        let d = core_decompose(&out.graph);
        assert!(d.coreness.iter().all(|&c| c == 3));
    }

    #[test]
    fn w2_cover_and_non_cover() {
        let out = setcover_to_tmcv(&fig3()).unwrap();
        assert_eq!(f(&out, &[1, 2]), 18);
        // S2 ∪ S3 misses u2: two clique remnants plus three element cycles
        assert_eq!(f(&out, &[2, 3]), 6 + 9);
        assert_eq!(f(&out, &[2]), 3 + 9);
    }

    #[test]
    fn w2_needs_three_sets() {
        let inst = SetCoverInstance::new(2, vec![vec![1], vec![2]], 2).unwrap();
        assert!(setcover_to_tmcv(&inst).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(SetCoverInstance::new(3, vec![vec![]], 1).is_err());
        assert!(SetCoverInstance::new(3, vec![vec![4]], 1).is_err());
        let json = r#"{"n":4,"sets":[[1,2],[1,3,4],[3]],"r":2}"#;
        let inst: SetCoverInstance = serde_json::from_str(json).unwrap();
        assert_eq!(inst, fig3());
    }

    fn exact_cover_example() -> SetCoverInstance {
        SetCoverInstance::new(
            6,
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 4], vec![3, 5, 6]],
            2,
        )
        .unwrap()
    }

    #[test]
    fn exact_cover_shape_and_degrees() {
        let out = exactcover_to_tmcv(&exact_cover_example()).unwrap();
        assert_eq!(out.graph.max_degree(), 6);
        assert_eq!(out.graph.n(), 4 * 4 + 2 * 6 + 4 * 6);
        let d = core_decompose(&out.graph);
        assert!(d.coreness.iter().all(|&c| c == 3));
        assert_eq!(out.yes_threshold, 18);
        assert_eq!(f(&out, &[1, 2]), 18);
        assert_eq!(f(&out, &[1, 3]), 6 + 2 * 4);
        assert!(exactcover_to_tmcv(&fig3()).is_err());
    }

    fn inapprox_example() -> SetCoverInstance {
        SetCoverInstance::new(4, vec![vec![1, 2], vec![1, 2, 4], vec![3]], 2).unwrap()
    }

    #[test]
    fn gadget_vertices_have_degree_three() {
        let out = inapprox_gadget_to_tmcv(&inapprox_example(), 8).unwrap();
        for (v, role) in out.roles.iter().enumerate() {
            if matches!(role, Role::Gadget(_)) {
                assert_eq!(out.graph.degree(v), 3);
            }
        }
        let d = core_decompose(&out.graph);
        assert!(d.coreness.iter().all(|&c| c == 3));
    }

    #[test]
    fn inapprox_yes_collapses_hub_and_gadget() {
        let out = inapprox_gadget_to_tmcv(&inapprox_example(), 6).unwrap();
        let d = core_decompose(&out.graph);
        let r = evaluate(&out.graph, &d, &out.deletion_for(&[2, 3]), None).unwrap();
        assert_eq!(r.f, out.yes_threshold);
        assert_eq!(r.f, 25);
        let hub = out.roles.iter().position(|r| *r == Role::Hub).unwrap();
        assert!(r.affected.contains(&hub));
        assert!((hub + 1..hub + 7).all(|v| r.affected.contains(&v)));
    }

    #[test]
    fn inapprox_no_instance_keeps_hub() {
        let out = inapprox_gadget_to_tmcv(&inapprox_example(), 6).unwrap();
        let d = core_decompose(&out.graph);
        let hub = out.roles.iter().position(|r| *r == Role::Hub).unwrap();
        for pick in [[1, 2], [1, 3]] {
            let r = evaluate(&out.graph, &d, &out.deletion_for(&pick), None).unwrap();
            assert!(!r.affected.contains(&hub));
            assert!(r.f < out.yes_threshold);
        }
    }

    #[test]
    fn inapprox_parameter_checks() {
        assert!(inapprox_gadget_to_tmcv(&inapprox_example(), 7).is_err());
        assert!(inapprox_gadget_to_tmcv(&inapprox_example(), 4).is_err());
        let full = SetCoverInstance::new(2, vec![vec![1, 2]; 3], 1).unwrap();
        assert!(inapprox_gadget_to_tmcv(&full, 6).is_err());
    }
}
