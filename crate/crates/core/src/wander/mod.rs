//! The translated-disc chain model, orbit-pair distance traces, the
//! contracting / semi-contracting / eventually isometric classifier, the
//! invariance of the limit distance and the hyperbolic Landau check.

mod chain;
mod classify;
mod degree;
mod export;
mod field;
mod landau;
mod trace;

pub use chain::{ChainModel, Lift, Perturbation, RadiiRule};
pub use classify::{
    classify, TrichotomyVerdict, VerdictKind, WindowDiagnostics, DEFAULT_EPS_CONTRACT, DEFAULT_EPS_FLAT,
    DEFAULT_HORIZON, DEFAULT_WINDOW,
};
pub use degree::degree_check;
pub use export::{trace_csv, verdict_json};
pub use field::{invariance_check, u_field, UField};
pub use landau::{guaranteed_radius, landau_check, LandauReport, BLOCH_CONSTANT};
pub use trace::{pair_trace, pair_trace_from, MetricMode, OrbitPairTrace, COLLISION_TOLERANCE};
