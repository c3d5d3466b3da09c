use num_complex::Complex;

use super::sweep::{sweep, swept_bound, SweepBound};
use super::JoukowskiMap;
use crate::blaschke::BlaschkeFactor;
use crate::hypgeo::winding_number_of_map;
use crate::scalar::{angle_between, from_usize, lit, Real};
use crate::{Error, Result};

const WINDING_SAMPLES: usize = 256;

/// Bound for `|z b'/b − 1|` on `|z| = r'`, inflated for a perturbation of sup norm
/// `epsilon_budget` on the unit disc.
///
/// With `m = min |b|` and `M' = max |b'|` on the circle and Cauchy's estimate
/// `|ε'| <= ε / (1 − r')`, the perturbed quantity moves by at most
/// `r' (ε' / (m − ε) + M' ε / (m (m − ε)))`.
pub fn cond2_blaschke_bound<T: Real>(
    factor: &BlaschkeFactor<T>,
    r_prime: T,
    epsilon_budget: T,
    samples: usize,
) -> Result<SweepBound<T>> {
    check_radius(r_prime)?;
    let inflation = if epsilon_budget > T::zero() {
        let (m, dmax) = circle_extremes(factor, r_prime, samples)?;
        if !(m > epsilon_budget) {
            return Err(Error::precondition(
                "perturbation budget swamps |b| on the outer circle",
            ));
        }
        let eps_d = epsilon_budget / (T::one() - r_prime);
        r_prime * (eps_d / (m - epsilon_budget) + dmax * epsilon_budget / (m * (m - epsilon_budget)))
    } else {
        T::zero()
    };
    swept_bound(samples, inflation, |theta| {
        factor.log_derivative_defect(Complex::from_polar(r_prime, theta)).norm()
    })
}

/// `min |b|` and `max |b'|` on `|z| = r`, each from the finer of two sweeps.
fn circle_extremes<T: Real>(factor: &BlaschkeFactor<T>, r: T, samples: usize) -> Result<(T, T)> {
    let neg_min = sweep(2 * samples, |t| {
        -factor.eval_unchecked(Complex::from_polar(r, t)).norm()
    })?;
    let dmax = sweep(2 * samples, |t| factor.derivative(Complex::from_polar(r, t)).norm())?;
    Ok((-neg_min.value, dmax.value))
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius {r} not in (0, 1)")))
    }
}

/// Both forms of the boundary-matching condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cond1Bound<T> {
    /// Sweep of `|log((b(r'e^{iθ})/r'e^{iθ}) (r e^{iθ}/γ(r e^{iθ})))|` plus inflation.
    pub direct: SweepBound<T>,
    /// Sweep of `|log(b/z)| + |log(z/γ)|` plus inflation; never below `direct`.
    pub triangle: SweepBound<T>,
}

/// Boundary-matching bound between `φ₁ = γ` on `|z| = r` and `φ₂ = b + ε` on `|z| = r'`, for `k = 1`.
///
/// Both curves must wind once around 0 and the quotient must have zero net
/// winding along θ, otherwise the logarithm has no continuous branch and the
/// interpolation set-up is invalid.
pub fn cond1_bound<T: Real>(
    factor: &BlaschkeFactor<T>,
    map: &JoukowskiMap<T>,
    r_prime: T,
    epsilon_budget: T,
    samples: usize,
) -> Result<Cond1Bound<T>> {
    check_radius(r_prime)?;
    let r = map.r();
    if !(r < r_prime) {
        return Err(Error::domain(format!(
            "inner radius {r} must be below outer radius {r_prime}"
        )));
    }
    let origin = Complex::new(T::zero(), T::zero());
    let tol = lit::<T>(1e-300).max(T::min_positive_value());
    let w2 = winding_number_of_map(
        |z| factor.eval_unchecked(z),
        origin,
        r_prime,
        origin,
        tol,
        WINDING_SAMPLES,
    )?;
    let w1 = winding_number_of_map(|z| map.eval_unchecked(z), origin, r, origin, tol, WINDING_SAMPLES)?;
    if w2 != 1 || w1 != 1 {
        return Err(Error::Structural(format!(
            "boundary curves wind {w1} and {w2} times around 0; both must wind once"
        )));
    }
    let quotient_log = |theta: T| -> Complex<T> {
        factor.log_ratio(Complex::from_polar(r_prime, theta)) - map.log_ratio(Complex::from_polar(r, theta))
    };
    let mut turning = T::zero();
    let step = T::TAU() / from_usize(2 * samples);
    let mut prev = quotient_log(T::zero()).exp();
    for k in 1..=2 * samples {
        let next = quotient_log(step * from_usize(k)).exp();
        turning = turning + angle_between(prev, next);
        prev = next;
    }
    if (turning / T::TAU()).abs() > lit(0.5) {
        return Err(Error::Structural(
            "boundary quotient winds around 0; no continuous logarithm".into(),
        ));
    }

    let inflation = if epsilon_budget > T::zero() {
        let (m, _) = circle_extremes(factor, r_prime, samples)?;
        if !(m > epsilon_budget) {
            return Err(Error::precondition(
                "perturbation budget swamps |b| on the outer circle",
            ));
        }
        -(-epsilon_budget / m).ln_1p()
    } else {
        T::zero()
    };
    let direct = swept_bound(samples, inflation, |theta| quotient_log(theta).norm())?;
    let triangle = swept_bound(samples, inflation, |theta| {
        factor.log_ratio(Complex::from_polar(r_prime, theta)).norm()
            + map.log_ratio(Complex::from_polar(r, theta)).norm()
    })?;
    Ok(Cond1Bound { direct, triangle })
}

/// `C = 1 − (δ₀ / log(r'/r) + δ₁) / k` and, when positive, `K = 1/C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationConstant<T> {
    pub c: T,
    pub k: Option<T>,
    /// `log K = −log(1 − x)`, accurate when `x` is tiny.
    pub log_k: Option<T>,
}

pub fn interpolation_constant<T: Real>(
    delta0: T,
    delta1: T,
    r: T,
    r_prime: T,
    k: u32,
) -> Result<InterpolationConstant<T>> {
    if !(r > T::zero() && r < r_prime) {
        return Err(Error::domain(format!("need 0 < r < r', got r = {r}, r' = {r_prime}")));
    }
    if !(delta0 >= T::zero() && delta1 >= T::zero()) {
        return Err(Error::domain("δ₀ and δ₁ must be non-negative"));
    }
    if k == 0 {
        return Err(Error::domain("winding k must be at least 1"));
    }
    let x = (delta0 / (r_prime / r).ln() + delta1) / lit::<T>(k as f64);
    let c = T::one() - x;
    if c > T::zero() {
        Ok(InterpolationConstant {
            c,
            k: Some(c.recip()),
            log_k: Some(-(-x).ln_1p()),
        })
    } else {
        Ok(InterpolationConstant {
            c,
            k: None,
            log_k: None,
        })
    }
}
