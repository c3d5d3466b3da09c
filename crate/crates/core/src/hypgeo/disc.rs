use num_complex::Complex;

use crate::scalar::{is_finite, lit, Real};
use crate::{Error, Result};

/// Pseudo-hyperbolic distance `|z - w| / |1 - conj(w) z|`.
#[inline]
pub fn pseudo_distance<T: Real>(z: Complex<T>, w: Complex<T>) -> T {
    let den = (Complex::new(T::one(), T::zero()) - w.conj() * z).norm();
    ((z - w).norm() / den).min(T::one())
}

/// Hyperbolic distance in the unit disc, `2 artanh(|z - w| / |1 - conj(w) z|)`.
pub fn disc_distance<T: Real>(z: Complex<T>, w: Complex<T>) -> Result<T> {
    for p in [z, w] {
        if !is_finite(p) || p.norm() >= T::one() {
            return Err(Error::domain(format!("point {p} is not inside the unit disc")));
        }
    }
    Ok(lit::<T>(2.0) * pseudo_distance(z, w).atanh())
}

#[inline]
pub fn disc_density<T: Real>(z: Complex<T>) -> T {
    lit::<T>(2.0) / (T::one() - z.norm_sqr())
}

/// Euclidean center and radius of the hyperbolic disc `B(center, radius)`.
pub fn hyperbolic_disc_in_euclidean<T: Real>(center: Complex<T>, radius: T) -> (Complex<T>, T) {
    let t = (radius / lit(2.0)).tanh();
    let t2 = t * t;
    let c2 = center.norm_sqr();
    let den = T::one() - t2 * c2;
    (center * ((T::one() - t2) / den), t * (T::one() - c2) / den)
}

/// Disc automorphism `z -> rotation * (z - center) / (1 - conj(center) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscAutomorphism<T> {
    pub rotation: Complex<T>,
    pub center: Complex<T>,
}

impl<T: Real> DiscAutomorphism<T> {
    pub fn new(angle: T, center: Complex<T>) -> Result<Self> {
        if center.norm() >= T::one() {
            return Err(Error::domain("automorphism center must lie in the disc"));
        }
        Ok(Self {
            rotation: Complex::from_polar(T::one(), angle),
            center,
        })
    }

    pub fn apply(&self, z: Complex<T>) -> Complex<T> {
        self.rotation * (z - self.center) / (Complex::new(T::one(), T::zero()) - self.center.conj() * z)
    }
}
