//! k-core robustness under targeted vertex deletion.
//!
//! Given a budget `b` and candidate vertices, pick a deletion set `B` that
//! maximizes the number of surviving vertices whose coreness strictly drops.
//! The crate provides the objective, four selection heuristics, two exact
//! solvers (subset enumeration and a forest dynamic program), hardness
//! constructions with known thresholds, resilience curves, and a sweep runner.
//!
//! Data-parallel loops run on rayon behind the default `parallel` feature;
//! [`ExecMode`] selects the path at runtime and never changes results.

pub mod components;
pub mod coreness;
pub mod error;
pub mod exact;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod heuristics;
mod local;
pub mod objective;
pub mod reductions;
pub mod resilience;
pub mod stats;
pub mod sweep;

pub use coreness::{core_decompose, k_core_members, CoreDecomposition};
pub use error::{Error, Result};
pub use exact::{exact_bruteforce, exact_forest_dp, DpTables, DEFAULT_BRUTE_FORCE_CAP};
pub use exec::ExecMode;
pub use graph::{Graph, ParseReport, VertexId};
pub use heuristics::{
    node_strength, select_ahdr, select_high_degree, select_hdr, select_random, AhdrOptions,
    CandidateSet, Method,
};
pub use objective::{affected_set, evaluate, AttackResult, Step};
pub use reductions::{ReductionOutput, Role, SetCoverInstance};
pub use resilience::{fragmentation_entropy, resilience_core, resilience_rand, ResilienceCurve};
pub use stats::{pearson, Correlation};
