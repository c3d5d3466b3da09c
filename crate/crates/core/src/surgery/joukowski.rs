use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::sweep::{sweep, Sweep};
use crate::scalar::{is_finite, lit, ln_1p, Real};
use crate::{Error, Result};

/// `γ(z) = λ (μ z + 1/(μ z))` with `λ = (1 + η) μ r² / (μ² r² − 1)`.
///
/// With `η = 0` the image of `|z| = r` is an ellipse whose minor semi-axis is
/// exactly `r`; `η > 0` inflates it so the image strictly surrounds that circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoukowskiMap<T> {
    mu: T,
    r: T,
    eta: T,
    lambda: T,
}

impl<T: Real> JoukowskiMap<T> {
    pub fn new(mu: T, r: T) -> Result<Self> {
        Self::with_inflation(mu, r, T::zero())
    }

    pub fn with_inflation(mu: T, r: T, eta: T) -> Result<Self> {
        if !(r > T::zero() && r.is_finite() && mu.is_finite()) {
            return Err(Error::domain(format!(
                "Joukowski radius {r} and parameter {mu} must be finite, r > 0"
            )));
        }
        if !(mu * r > T::one()) {
            return Err(Error::precondition(format!(
                "Joukowski map needs mu r > 1, got {}",
                mu * r
            )));
        }
        if !(eta > lit(-1.0) && eta.is_finite()) {
            return Err(Error::domain(format!("inflation {eta} must exceed -1")));
        }
        let mr = mu * r;
        let lambda = (T::one() + eta) * mu * r * r / ((mr - T::one()) * (mr + T::one()));
        Ok(Self { mu, r, eta, lambda })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() == T::zero() {
            return Err(Error::Pole("Joukowski map has its pole at 0".into()));
        }
        if !is_finite(z) {
            return Err(Error::domain(format!("non-finite point {z}")));
        }
        Ok(self.eval_unchecked(z))
    }

    #[inline]
    pub fn eval_unchecked(&self, z: Complex<T>) -> Complex<T> {
        let mz = z * self.mu;
        (mz + mz.inv()) * self.lambda
    }

    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let mz = z * self.mu;
        (Complex::new(T::one(), T::zero()) - (mz * mz).inv()) * (self.lambda * self.mu)
    }

    /// Semi-axes `λ(μr + 1/(μr))` and `λ(μr − 1/(μr))` of the image of `|z| = r`.
    pub fn semi_axes(&self) -> (T, T) {
        let mr = self.mu * self.r;
        (self.lambda * (mr + mr.recip()), self.lambda * (mr - mr.recip()))
    }

    /// `log(γ(z)/z) = log(1 + η) − log(1 − 1/(μr)²) + log(1 + 1/(μz)²)`, accurate when `μ` is huge.
    pub fn log_ratio(&self, z: Complex<T>) -> Complex<T> {
        let mr = self.mu * self.r;
        let c = self.eta.ln_1p() - (-(mr * mr).recip()).ln_1p();
        let mz = z * self.mu;
        ln_1p((mz * mz).inv()) + c
    }

    /// `z (d/dz) log(γ(z)/z) = −2 / (μ² z² + 1)`.
    pub fn log_derivative_defect(&self, z: Complex<T>) -> Complex<T> {
        let mz = z * self.mu;
        -(mz * mz + T::one()).inv() * lit::<T>(2.0)
    }
}

/// Closed form `2 / (μ² r² − 1)` of the largest `|z (log(γ/z))'|` on `|z| = r`.
pub fn cond2_gamma_bound<T: Real>(map: &JoukowskiMap<T>) -> T {
    let mr = map.mu * map.r;
    lit::<T>(2.0) / ((mr - T::one()) * (mr + T::one()))
}

/// Dense sweep of `|z (log(γ/z))'|` over `|z| = r`.
pub fn cond2_gamma_sweep<T: Real>(map: &JoukowskiMap<T>, samples: usize) -> Result<Sweep<T>> {
    sweep(samples, |theta| {
        map.log_derivative_defect(Complex::from_polar(map.r, theta)).norm()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurroundVerdict {
    Surrounds,
    Touches,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurroundReport<T> {
    pub min_modulus: T,
    pub verdict: SurroundVerdict,
}

/// Relative tolerance for calling the image of `|z| = r` tangent to the target circle.
pub const SURROUND_TOLERANCE: f64 = 1e-10;

/// Whether `γ(|z| = r)` surrounds the circle of radius `target_radius` about 0.
pub fn surround_check<T: Real>(map: &JoukowskiMap<T>, target_radius: T, samples: usize) -> Result<SurroundReport<T>> {
    if !(target_radius > T::zero()) {
        return Err(Error::domain("target radius must be positive"));
    }
    let s = sweep(samples, |theta| {
        -map.eval_unchecked(Complex::from_polar(map.r, theta)).norm()
    })?;
    let min_modulus = -s.value;
    let tol = lit::<T>(SURROUND_TOLERANCE) * target_radius;
    let verdict = if min_modulus > target_radius + tol {
        SurroundVerdict::Surrounds
    } else if (min_modulus - target_radius).abs() <= tol {
        SurroundVerdict::Touches
    } else {
        SurroundVerdict::Fails
    };
    Ok(SurroundReport { min_modulus, verdict })
}
