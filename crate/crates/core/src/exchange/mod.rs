//! Disc exchanges pulled back along the forward orbits of two precritical
//! points, with the endpoint bookkeeping for the paths that join them.
//!
//! A component is a pair of lifted copies `P D'` and `Q D'` of the region D'
//! strictly between D(y) and D(x), joined by an arc outside the disc. The arc
//! is modelled by where it leaves the circle and the signed angle it sweeps;
//! pulling back halves both.

mod component;
mod predicates;
mod scenario;
mod trace;

use thiserror::Error;

pub use component::{
    build_dprime, seed_component, AttachedDisc, ComponentTree, DPrime, ExchangeComponent, Side,
};
pub use predicates::{branch_hits, d1_hits, verify_exchange, verify_predicates};
pub use scenario::{choose_z, ScenarioConfig, ScenarioKind};
pub use trace::{lifted_meets, orbit_words, strict_orbit, trace_scenario, EventKind, StepRecord, Trace, TraceEvent};

use crate::coding::CodingError;
use crate::families::FamilyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("no region lies strictly between D({y}) and D({x})")]
    EmptyRegion { x: String, y: String },
    #[error("no admissible z word of length below {bound}")]
    NotFound { bound: usize },
    #[error("lifting {prefix} D' puts an attach point at {angle}, outside every admissible region")]
    LiftMismatch { prefix: String, angle: String },
    #[error("no pulled-back component has a disc {prefix} D'")]
    UntrackedPrefix { prefix: String },
    #[error("{count} components meet O(y) at step {step}")]
    MultipleActiveComponents { step: usize, count: usize },
    #[error("no point of the orbit of {y} lies in D'")]
    EmptyOrbitSection { y: String },
    #[error("levels k = {k}, n = {n} are out of range")]
    InvalidLevels { k: usize, n: usize },
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}
