//! The non-autonomous inner-function engine: degree-two Blaschke factors, their
//! forward compositions, derivative bookkeeping at the common fixed point, the
//! contraction criterion, limit-function estimation and annulus detection.

mod compose;
mod factor;
mod schedule;

pub use compose::{
    compose, compose_range, criterion_report, detect_annulus, estimate_limit_function, AnnulusScan, Composition,
    CriterionReport, LimitEstimate, DERIVATIVE_FLOOR,
};
pub use factor::BlaschkeFactor;
pub use schedule::{FactorSchedule, VerdictHint};

use num_complex::Complex;

use crate::Real;

/// Holomorphic self-map of the unit disc fixing the origin.
pub trait DiscMap<T: Real> {
    fn apply(&self, z: Complex<T>) -> Complex<T>;

    fn derivative_at_zero(&self) -> T;
}
