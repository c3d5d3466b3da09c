use num_complex::Complex;

use super::{DiscMap, FactorSchedule, VerdictHint};
use crate::scalar::{from_usize, is_finite, lit, Real};
use crate::{Error, Result};

/// Default lower bound on `B_N'(0)` for annulus-based workflows.
pub const DERIVATIVE_FLOOR: f64 = 1e-3;

/// `b_to ∘ ... ∘ b_{from+1}` applied to `z`.
pub fn compose_range<T: Real>(
    schedule: &FactorSchedule<T>,
    from: usize,
    to: usize,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if !is_finite(z) || z.norm() >= T::one() {
        return Err(Error::domain(format!("composition needs |z| < 1, got {z}")));
    }
    let mut w = z;
    for k in from + 1..=to {
        w = schedule.factor(k)?.eval(w)?;
    }
    Ok(w)
}

/// `B_n(z) = b_n ∘ ... ∘ b_1 (z)`; `n = 0` is the identity.
pub fn compose<T: Real>(schedule: &FactorSchedule<T>, n: usize, z: Complex<T>) -> Result<Complex<T>> {
    compose_range(schedule, 0, n, z)
}

/// `B_n` as a disc map.
#[derive(Debug, Clone)]
pub struct Composition<T> {
    pub schedule: FactorSchedule<T>,
    pub n: usize,
}

impl<T: Real> DiscMap<T> for Composition<T> {
    fn apply(&self, z: Complex<T>) -> Complex<T> {
        let mut w = z;
        for k in 1..=self.n {
            w = self.schedule.factor(k).expect("validated schedule").eval_unchecked(w);
        }
        w
    }

    fn derivative_at_zero(&self) -> T {
        (1..=self.n).fold(T::one(), |p, k| p * self.schedule.a(k).expect("validated schedule"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<T> {
    pub n: usize,
    /// `sum_{k <= N} (1 - a_k)`.
    pub partial_sum: T,
    /// `prod_{k <= N} a_k = B_N'(0)`.
    pub derivative_product: T,
    pub verdict_hint: VerdictHint,
}

pub fn criterion_report<T: Real>(schedule: &FactorSchedule<T>, n: usize) -> Result<CriterionReport<T>> {
    if n == 0 {
        return Err(Error::precondition("criterion needs N >= 1"));
    }
    let mut partial_sum = T::zero();
    let mut compensation = T::zero();
    let mut derivative_product = T::one();
    for k in 1..=n {
        // Kahan summation keeps the harmonic tail honest at large N
        let y = schedule.gap(k)? - compensation;
        let t = partial_sum + y;
        compensation = (t - partial_sum) - y;
        partial_sum = t;
        derivative_product = derivative_product * schedule.a(k)?;
    }
    Ok(CriterionReport {
        n,
        partial_sum,
        derivative_product,
        verdict_hint: schedule.verdict_hint(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate<T> {
    pub grid: Vec<Complex<T>>,
    /// `B_n` on the grid at the last index reached.
    pub values: Vec<Complex<T>>,
    /// Index at which the sup-change fell below tolerance for the second consecutive step.
    pub stabilized_at: Option<usize>,
    pub last_index: usize,
    pub last_change: T,
}

impl<T> LimitEstimate<T> {
    pub fn stabilized(&self) -> bool {
        self.stabilized_at.is_some()
    }
}

/// Iterates `B_n` on the grid until `sup |B_{n+1} - B_n| < tol` holds twice in a row,
/// or `cap` factors have been applied.
pub fn estimate_limit_function<T: Real>(
    schedule: &FactorSchedule<T>,
    grid: &[Complex<T>],
    tol: T,
    cap: usize,
) -> Result<LimitEstimate<T>> {
    if grid.iter().any(|z| !is_finite(*z) || z.norm() >= T::one()) {
        return Err(Error::domain("limit grid must lie in the open disc"));
    }
    let mut values = grid.to_vec();
    let mut below = 0;
    let mut last_change = T::infinity();
    for n in 1..=cap {
        let f = schedule.factor(n)?;
        let mut change = T::zero();
        for v in values.iter_mut() {
            let next = f.eval_unchecked(*v);
            change = change.max((next - *v).norm());
            *v = next;
        }
        last_change = change;
        below = if change < tol { below + 1 } else { 0 };
        if below == 2 {
            return Ok(LimitEstimate {
                grid: grid.to_vec(),
                values,
                stabilized_at: Some(n),
                last_index: n,
                last_change,
            });
        }
    }
    Ok(LimitEstimate {
        grid: grid.to_vec(),
        values,
        stabilized_at: None,
        last_index: cap,
        last_change,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusScan<T> {
    /// `(s, t)` with `min_θ |B_N(r e^{iθ})| > c` at every sampled radius in `(s, t)`.
    pub annulus: Option<(T, T)>,
    pub radii: Vec<T>,
    pub min_modulus: Vec<T>,
    pub derivative_at_zero: T,
    pub warnings: Vec<String>,
}

/// Scans radii `i / (radial + 1)` for `i = 1..=radial`.
pub fn detect_annulus<T: Real>(
    schedule: &FactorSchedule<T>,
    c: T,
    n: usize,
    radial_samples: usize,
    angular_samples: usize,
) -> Result<AnnulusScan<T>> {
    if !(c > T::zero() && c < T::one()) {
        return Err(Error::domain(format!("threshold c = {c} not in (0, 1)")));
    }
    if radial_samples == 0 || angular_samples == 0 {
        return Err(Error::precondition("annulus scan needs positive sample counts"));
    }
    let factors = (1..=n).map(|k| schedule.factor(k)).collect::<Result<Vec<_>>>()?;
    let derivative_at_zero = factors.iter().fold(T::one(), |p, f| p * f.a());
    let mut warnings = Vec::new();
    if derivative_at_zero < lit(DERIVATIVE_FLOOR) {
        warnings.push(format!(
            "B_N'(0) = {derivative_at_zero} is below the floor {DERIVATIVE_FLOOR}; annulus may be unreliable"
        ));
    }
    let step = T::one() / from_usize::<T>(radial_samples + 1);
    let radii: Vec<T> = (1..=radial_samples).map(|i| from_usize::<T>(i) * step).collect();
    let tau = T::TAU();
    let min_modulus: Vec<T> = radii
        .iter()
        .map(|&r| {
            (0..angular_samples)
                .map(|j| {
                    let z = Complex::from_polar(r, tau * from_usize::<T>(j) / from_usize::<T>(angular_samples));
                    factors.iter().fold(z, |w, f| f.eval_unchecked(w)).norm()
                })
                .fold(T::infinity(), T::min)
        })
        .collect();

    let mut best: Option<(T, T)> = None;
    let mut i = 0;
    while i < radii.len() {
        if min_modulus[i] > c {
            let start = i;
            while i < radii.len() && min_modulus[i] > c {
                i += 1;
            }
            let s = if start == 0 { T::zero() } else { radii[start - 1] };
            let t = if i == radii.len() { T::one() } else { radii[i] };
            // later runs are further out, so ties go outward
            if best.is_none_or(|(bs, bt)| t - s >= bt - bs) {
                best = Some((s, t));
            }
        } else {
            i += 1;
        }
    }
    Ok(AnnulusScan {
        annulus: best,
        radii,
        min_modulus,
        derivative_at_zero,
        warnings,
    })
}
