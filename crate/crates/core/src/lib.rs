//! Numerical laboratory for the internal hyperbolic dynamics of wandering
//! domains.
//!
//! The crate simulates the translated-disc chain model driven by the
//! non-autonomous Blaschke factors `b(z) = z (z + a) / (1 + a z)`, measures
//! hyperbolic distances between orbit pairs, classifies them into the
//! contracting / semi-contracting / eventually isometric trichotomy, checks
//! the hyperbolic Landau bound and certifies the dilatation budget of the
//! pole-transplant surgery.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what the grid-based estimators and
//! the command-line front end use.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blaschke;
pub mod cli;
pub mod config;
pub mod error;
pub mod hypgeo;
pub mod scalar;
pub mod surgery;
pub mod wander;

pub use error::{Error, Result};
pub use scalar::Real;

/// A point of the complex plane.
pub type Point = num_complex::Complex<f64>;
pub type Factor = blaschke::BlaschkeFactor<f64>;
pub type Schedule = blaschke::FactorSchedule<f64>;
pub type Chain = wander::ChainModel<f64>;
pub type Trace = wander::OrbitPairTrace<f64>;
pub type Verdict = wander::TrichotomyVerdict<f64>;
pub type Joukowski = surgery::JoukowskiMap<f64>;
pub type Surgery = surgery::SurgerySchedule<f64>;
