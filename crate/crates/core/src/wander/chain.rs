use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blaschke::{BlaschkeFactor, FactorSchedule};
use crate::scalar::{from_usize, is_finite, lit, Real};
use crate::{Error, Result};

/// Closed-form rule for the inner radii `r_n` and outer radii `R_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiiRule<T> {
    /// `1 - r_n = R_n - 1 = min(kappa (1 - a_{n+1}), sigma 2^{-n})`.
    ///
    /// With `kappa < 1` the zero `-a_{n+1}` stays inside `|z| < r_n`, so the
    /// step map keeps degree two on the inner disc.
    Adaptive { kappa: T, sigma: T },
    /// The same radii at every index.
    Constant { inner: T, outer: T },
}

impl<T: Real> Default for RadiiRule<T> {
    fn default() -> Self {
        Self::Adaptive {
            kappa: lit(0.5),
            sigma: lit(0.25),
        }
    }
}

/// Polynomial perturbation `P_n(ζ) = sum_{k=1..degree} c_k ζ^k` added to step `n`.
///
/// The coefficients are drawn from a seeded ChaCha stream per index and then
/// scaled so that `sum |c_k| R_n^k` equals half the budget `ε_{n+1}`; there is
/// no constant term, so the base orbit `f^n(0) = 4n` is untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation<T> {
    pub seed: u64,
    pub degree: usize,
    /// `ε_n = fraction q^n (R_n - r_n)`.
    pub fraction: T,
    pub q: T,
}

impl<T: Real> Perturbation<T> {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            degree: 3,
            fraction: lit(0.125),
            q: lit(0.25),
        }
    }
}

/// Lift of one step to the local unit-disc coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lift<T> {
    Factor(BlaschkeFactor<T>),
    Rotation(Complex<T>),
}

impl<T: Real> Lift<T> {
    pub fn apply(&self, z: Complex<T>) -> Complex<T> {
        match self {
            Lift::Factor(b) => b.eval_unchecked(z),
            Lift::Rotation(u) => *u * z,
        }
    }

    /// Exact drop of the disc distance between `z` and `w` under the lift.
    pub fn decrement(&self, z: Complex<T>, w: Complex<T>) -> T {
        match self {
            Lift::Factor(b) => b.hyperbolic_decrement(z, w),
            Lift::Rotation(_) => T::zero(),
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Lift::Factor(_) => 2,
            Lift::Rotation(_) => 1,
        }
    }
}

/// The translated-disc chain: step `n` maps `B(4n, R_n)` towards `B(4(n+1), R_{n+1})`
/// by `T_{n+1} ∘ b_{n+1} ∘ T_n^{-1}`, plus an optional perturbation.
///
/// Without perturbation the component `U_n` is taken to be the unit disc
/// around `4n`, so the lift fixing the base orbit is `b_{n+1}` itself and the
/// exact disc metric is ground truth. With a perturbation only the brackets
/// `B(4n, r_n) ⊂ U_n ⊂ B(4n, R_n)` are available.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel<T> {
    schedule: FactorSchedule<T>,
    translation_step: T,
    radii: RadiiRule<T>,
    perturbation: Option<Perturbation<T>>,
    isometric_from: Option<usize>,
    rotation: Complex<T>,
}

impl<T: Real> ChainModel<T> {
    pub fn new(schedule: FactorSchedule<T>) -> Result<Self> {
        schedule.validate()?;
        Ok(Self {
            schedule,
            translation_step: lit(4.0),
            radii: RadiiRule::default(),
            perturbation: None,
            isometric_from: None,
            rotation: Complex::from_polar(T::one(), lit(0.5)),
        })
    }

    pub fn with_translation_step(mut self, step: T) -> Result<Self> {
        // outer radii never exceed 5/4, so the discs stay disjoint
        if !(step > lit(2.5) && step.is_finite()) {
            return Err(Error::domain(format!("translation step {step} too small")));
        }
        self.translation_step = step;
        Ok(self)
    }

    pub fn with_radii(mut self, radii: RadiiRule<T>) -> Result<Self> {
        match radii {
            RadiiRule::Adaptive { kappa, sigma } => {
                if !(kappa > T::zero() && kappa < T::one() && sigma > T::zero() && sigma <= lit(0.25)) {
                    return Err(Error::domain(
                        "adaptive radii need kappa in (0, 1) and sigma in (0, 1/4]",
                    ));
                }
            }
            RadiiRule::Constant { inner, outer } => {
                if !(inner > T::zero() && inner < T::one() && outer > T::one() && outer <= lit(1.25)) {
                    return Err(Error::domain("constant radii need 0 < r < 1 < R <= 5/4"));
                }
            }
        }
        self.radii = radii;
        Ok(self)
    }

    pub fn with_perturbation(mut self, p: Perturbation<T>) -> Result<Self> {
        if !(p.fraction > T::zero() && p.fraction < lit(0.25) && p.q > T::zero() && p.q <= T::one()) {
            return Err(Error::domain(
                "perturbation budget needs fraction in (0, 1/4) and q in (0, 1]",
            ));
        }
        self.perturbation = Some(p);
        Ok(self)
    }

    /// Steps with index `n >= from` use the rotation `ζ -> e^{i angle} ζ` as their lift.
    pub fn with_isometry_from(mut self, from: usize, angle: T) -> Self {
        self.isometric_from = Some(from);
        self.rotation = Complex::from_polar(T::one(), angle);
        self
    }

    pub fn schedule(&self) -> &FactorSchedule<T> {
        &self.schedule
    }

    pub fn translation_step(&self) -> T {
        self.translation_step
    }

    pub fn perturbation(&self) -> Option<&Perturbation<T>> {
        self.perturbation.as_ref()
    }

    pub fn isometric_from(&self) -> Option<usize> {
        self.isometric_from
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturbation.is_some()
    }

    /// `T_n(0) = 4n`.
    pub fn center(&self, n: usize) -> Complex<T> {
        Complex::new(self.translation_step * from_usize(n), T::zero())
    }

    /// `(1 - r_n, R_n - 1)`, kept separately because both underflow `1` in floating point.
    pub fn radius_gaps(&self, n: usize) -> Result<(T, T)> {
        match self.radii {
            RadiiRule::Adaptive { kappa, sigma } => {
                let g = (kappa * self.schedule.gap(n + 1)?).min(sigma * lit::<T>(2.0).powi(-(n.min(1000) as i32)));
                Ok((g, g))
            }
            RadiiRule::Constant { inner, outer } => Ok((T::one() - inner, outer - T::one())),
        }
    }

    pub fn inner_radius(&self, n: usize) -> Result<T> {
        Ok(T::one() - self.radius_gaps(n)?.0)
    }

    pub fn outer_radius(&self, n: usize) -> Result<T> {
        Ok(T::one() + self.radius_gaps(n)?.1)
    }

    /// Sup-norm budget `ε_n` on `Δ_{n-1}` (zero without perturbation).
    pub fn budget(&self, n: usize) -> Result<T> {
        match &self.perturbation {
            None => Ok(T::zero()),
            Some(p) => {
                let (gi, go) = self.radius_gaps(n)?;
                Ok(p.fraction * p.q.powi(n.min(10_000) as i32) * (gi + go))
            }
        }
    }

    pub fn lift(&self, n: usize) -> Result<Lift<T>> {
        match self.isometric_from {
            Some(m) if n >= m => Ok(Lift::Rotation(self.rotation)),
            _ => Ok(Lift::Factor(self.schedule.factor(n + 1)?)),
        }
    }

    /// Coefficients `c_1..c_d` of the perturbation at step `n`.
    pub fn perturbation_coefficients(&self, n: usize) -> Result<Vec<Complex<T>>> {
        let Some(p) = &self.perturbation else {
            return Ok(Vec::new());
        };
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        rng.set_stream(n as u64);
        let raw: Vec<(f64, f64)> = (0..p.degree)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let outer = self.outer_radius(n)?;
        let mut weight = T::zero();
        let mut rk = T::one();
        for &(x, y) in &raw {
            rk = rk * outer;
            weight = weight + Complex::new(lit::<T>(x), lit::<T>(y)).norm() * rk;
        }
        if weight == T::zero() {
            return Ok(vec![Complex::new(T::zero(), T::zero()); p.degree]);
        }
        let scale = lit::<T>(0.5) * self.budget(n + 1)? / weight;
        Ok(raw
            .iter()
            .map(|&(x, y)| Complex::new(lit::<T>(x), lit::<T>(y)) * scale)
            .collect())
    }

    fn perturbation_at(coeffs: &[Complex<T>], zeta: Complex<T>) -> Complex<T> {
        coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, c| (acc + *c) * zeta)
    }

    /// Step `n` in local coordinates: `ζ = z - 4n` goes to `f_n(z) - 4(n+1)`.
    pub fn local_step(&self, n: usize, zeta: Complex<T>) -> Result<Complex<T>> {
        let (_, outer_gap) = self.radius_gaps(n)?;
        if !is_finite(zeta) || !(zeta.norm() - T::one() < outer_gap) {
            return Err(Error::domain(format!(
                "point {zeta} outside Δ_{n} in local coordinates"
            )));
        }
        let lifted = self.lift(n)?.apply(zeta);
        if self.perturbation.is_none() {
            return Ok(lifted);
        }
        Ok(lifted + Self::perturbation_at(&self.perturbation_coefficients(n)?, zeta))
    }

    /// The model step `f_n = T_{n+1} ∘ b_{n+1} ∘ T_n^{-1}` (plus perturbation).
    pub fn model_step(&self, n: usize, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.local_step(n, z - self.center(n))? + self.center(n + 1))
    }

    /// Local step map with its perturbation coefficients resolved once, for repeated use.
    pub fn step_map(&self, n: usize) -> Result<impl Fn(Complex<T>) -> Complex<T>> {
        let lift = self.lift(n)?;
        let coeffs = self.perturbation_coefficients(n)?;
        Ok(move |z| lift.apply(z) + Self::perturbation_at(&coeffs, z))
    }
}
