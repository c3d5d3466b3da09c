//! Pole-transplant surgery planning: the rescaled Joukowski map, the two
//! interpolation conditions and their constants, certification of the
//! dilatation product, the surround check and the no-revisit audit of the
//! operated map.

mod audit;
mod conditions;
mod export;
mod joukowski;
mod plan;
mod sweep;

pub use audit::{
    audit_no_revisit, omega_annulus, sample_annulus, sample_component, AuditOutcome, AuditReport, OrbitAudit,
    POLE_TOLERANCE,
};
pub use conditions::{cond1_bound, cond2_blaschke_bound, interpolation_constant, Cond1Bound, InterpolationConstant};
pub use export::{report_csv, report_json, SURROGATE_NOTE};
pub use joukowski::{
    cond2_gamma_bound, cond2_gamma_sweep, surround_check, JoukowskiMap, SurroundReport, SurroundVerdict,
    SURROUND_TOLERANCE,
};
pub use plan::{
    certify_product, AnnulusRecord, InterpolationReport, MuRule, SurgerySchedule, DEFAULT_TAIL_TOLERANCE,
    DEFAULT_THETA_SAMPLES,
};
pub use sweep::{sweep, swept_bound, Sweep, SweepBound};
