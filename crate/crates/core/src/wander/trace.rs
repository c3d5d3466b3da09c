use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::ChainModel;
use crate::hypgeo::disc_distance;
use crate::scalar::{is_finite, lit, Real};
use crate::{Error, Result};

/// Orbits closer than this count as having collided.
pub const COLLISION_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricMode {
    /// `U_n` is the unit disc around `4n`; valid for the unperturbed chain.
    ExactDiscModel,
    /// Only the brackets `d_{Δ_n} <= d_{U_n} <= d_{Δ_n'}` are reported.
    Bracketed,
}

/// Distances `u_n` between the orbits of two points along the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPairTrace<T> {
    pub base_point: Complex<T>,
    pub other: Complex<T>,
    /// Chain index of the first entry.
    pub start: usize,
    /// Requested last chain index.
    pub horizon: usize,
    pub mode: MetricMode,
    /// `u_n` for exact traces, the lower bracket otherwise.
    pub values: Vec<T>,
    pub lower: Vec<T>,
    /// Present when both iterates lie in the inner disc `Δ_n'`.
    pub upper: Vec<Option<T>>,
    /// `u_n - u_{n+1}` computed without cancellation (exact traces only).
    pub decrements: Vec<T>,
    pub collision: Option<usize>,
    /// First chain index at which an iterate left its outer disc.
    pub escape: Option<usize>,
}

impl<T: Real> OrbitPairTrace<T> {
    /// A bare sequence of values, for exercising the classifier.
    pub fn synthetic(values: Vec<T>) -> Self {
        let n = values.len().saturating_sub(1);
        Self {
            base_point: Complex::new(T::zero(), T::zero()),
            other: Complex::new(T::zero(), T::zero()),
            start: 0,
            horizon: n,
            mode: MetricMode::ExactDiscModel,
            lower: values.clone(),
            upper: values.iter().map(|v| Some(*v)).collect(),
            values,
            decrements: Vec::new(),
            collision: None,
            escape: None,
        }
    }

    /// Last chain index with a value.
    pub fn last_index(&self) -> usize {
        self.start + self.values.len().saturating_sub(1)
    }

    pub fn last_value(&self) -> Option<T> {
        self.values.last().copied()
    }

    pub fn is_exact(&self) -> bool {
        self.mode == MetricMode::ExactDiscModel
    }

    /// Total decrease `u_i - u_j` over entries `i <= j`, from the stable decrements when present.
    pub fn decrease(&self, i: usize, j: usize) -> T {
        if self.decrements.len() + 1 == self.values.len() && !self.decrements.is_empty() {
            self.decrements[i..j].iter().fold(T::zero(), |s, d| s + *d)
        } else {
            self.values[i] - self.values[j]
        }
    }
}

pub fn pair_trace<T: Real>(
    model: &ChainModel<T>,
    z0: Complex<T>,
    w: Complex<T>,
    horizon: usize,
    mode: MetricMode,
) -> Result<OrbitPairTrace<T>> {
    pair_trace_from(model, 0, z0, w, horizon, mode)
}

/// Trace of the pair `(z0, w)` given in the coordinates of `Δ_start`, up to chain index `horizon`.
pub fn pair_trace_from<T: Real>(
    model: &ChainModel<T>,
    start: usize,
    z0: Complex<T>,
    w: Complex<T>,
    horizon: usize,
    mode: MetricMode,
) -> Result<OrbitPairTrace<T>> {
    if horizon < start {
        return Err(Error::precondition("horizon precedes the start index"));
    }
    if mode == MetricMode::ExactDiscModel && model.is_perturbed() {
        return Err(Error::precondition(
            "exact disc metric needs the unperturbed chain; use bracketed mode",
        ));
    }
    let centre = model.center(start);
    let (mut zeta, mut xi) = (z0 - centre, w - centre);
    for p in [zeta, xi] {
        let limit = match mode {
            MetricMode::ExactDiscModel => T::one(),
            MetricMode::Bracketed => model.outer_radius(start)?,
        };
        if !is_finite(p) || !(p.norm() < limit) {
            return Err(Error::domain(format!(
                "point {p} (local) outside the starting component"
            )));
        }
    }

    let len = horizon - start + 1;
    let mut trace = OrbitPairTrace {
        base_point: z0,
        other: w,
        start,
        horizon,
        mode,
        values: Vec::with_capacity(len),
        lower: Vec::with_capacity(len),
        upper: Vec::with_capacity(len),
        decrements: Vec::new(),
        collision: None,
        escape: None,
    };
    let tol = lit::<T>(COLLISION_TOLERANCE);
    for n in start..=horizon {
        let (gi, go) = model.radius_gaps(n)?;
        let (inner, outer) = (T::one() - gi, T::one() + go);
        let lower = disc_distance(zeta / outer, xi / outer)?;
        let upper = if zeta.norm() < inner && xi.norm() < inner {
            Some(disc_distance(zeta / inner, xi / inner)?)
        } else {
            None
        };
        trace.lower.push(lower);
        trace.upper.push(upper);
        trace.values.push(match mode {
            MetricMode::ExactDiscModel => disc_distance(zeta, xi)?,
            MetricMode::Bracketed => lower,
        });
        if trace.collision.is_none() && (zeta - xi).norm() < tol {
            trace.collision = Some(n);
        }
        if n == horizon {
            break;
        }
        match mode {
            MetricMode::ExactDiscModel => {
                let lift = model.lift(n)?;
                trace.decrements.push(lift.decrement(zeta, xi));
                zeta = lift.apply(zeta);
                xi = lift.apply(xi);
            }
            MetricMode::Bracketed => {
                let step = model.step_map(n)?;
                zeta = step(zeta);
                xi = step(xi);
                let limit = model.outer_radius(n + 1)?;
                if !(zeta.norm() < limit && xi.norm() < limit) {
                    trace.escape = Some(n + 1);
                    break;
                }
            }
        }
    }
    Ok(trace)
}
