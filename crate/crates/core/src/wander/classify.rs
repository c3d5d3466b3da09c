use serde::{Deserialize, Serialize};

use super::OrbitPairTrace;
use crate::scalar::{lit, Real};
use crate::{Error, Result};

pub const DEFAULT_EPS_CONTRACT: f64 = 1e-6;
pub const DEFAULT_EPS_FLAT: f64 = 1e-12;
pub const DEFAULT_WINDOW: usize = 50;
pub const DEFAULT_HORIZON: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Contracting,
    SemiContracting,
    EventuallyIsometric,
    Undecided,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Contracting => "contracting",
            Self::SemiContracting => "semi_contracting",
            Self::EventuallyIsometric => "eventually_isometric",
            Self::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowDiagnostics<T> {
    /// Smallest total decrease over a length-W window.
    pub min_window_decrease: T,
    /// Decrease over the final window.
    pub last_window_decrease: T,
    /// Common ratio of successive decrements when it is stable.
    pub decrement_ratio: Option<T>,
    /// Extrapolated remaining decrease beyond the horizon.
    pub tail_estimate: T,
    /// Whether window sums came from the stable decrement series.
    pub used_decrements: bool,
    pub collision: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrichotomyVerdict<T> {
    pub kind: VerdictKind,
    pub limit_estimate: T,
    pub isometry_onset: Option<usize>,
    pub horizon: usize,
    pub eps_contract: T,
    pub eps_flat: T,
    pub window: usize,
    pub diagnostics: WindowDiagnostics<T>,
}

// ratios of the last decrements must agree to this relative spread
const RATIO_SPREAD: f64 = 0.05;
const RATIO_SAMPLES: usize = 5;

/// Sorts a trace into contracting, semi-contracting, eventually isometric or undecided.
///
/// Checks run in that order: `u_N < eps_contract`; then the least `m <= N - W`
/// whose decrease over `[m, N]` is below `eps_flat`; then a decrease above
/// `eps_flat` in every length-`W` window.
pub fn classify<T: Real>(
    trace: &OrbitPairTrace<T>,
    eps_contract: T,
    eps_flat: T,
    window: usize,
) -> Result<TrichotomyVerdict<T>> {
    if window == 0 {
        return Err(Error::precondition("window must be positive"));
    }
    if trace.values.is_empty() || trace.values.len() - 1 < 2 * window {
        return Err(Error::precondition(format!(
            "trace with {} values is shorter than twice the window {window}",
            trace.values.len()
        )));
    }
    if !(eps_contract > T::zero() && eps_flat > T::zero()) {
        return Err(Error::precondition("thresholds must be positive"));
    }
    let n = trace.values.len() - 1;
    let u_n = trace.values[n];
    let used_decrements = trace.decrements.len() == n;

    let mut min_window = T::infinity();
    for i in 0..=n - window {
        min_window = min_window.min(trace.decrease(i, i + window));
    }
    let last_window = trace.decrease(n - window, n);
    let (ratio, tail) = tail_extrapolation(trace);
    let diagnostics = WindowDiagnostics {
        min_window_decrease: min_window,
        last_window_decrease: last_window,
        decrement_ratio: ratio,
        tail_estimate: tail,
        used_decrements,
        collision: trace.collision,
    };
    let verdict = |kind, limit_estimate, isometry_onset| TrichotomyVerdict {
        kind,
        limit_estimate,
        isometry_onset,
        horizon: trace.last_index(),
        eps_contract,
        eps_flat,
        window,
        diagnostics: diagnostics.clone(),
    };

    if u_n < eps_contract {
        return Ok(verdict(VerdictKind::Contracting, T::zero(), None));
    }
    // decrease over [m, N] shrinks as m grows, so scan backwards for the least m
    let mut onset = None;
    let mut m = n - window;
    loop {
        if trace.decrease(m, n) < eps_flat {
            onset = Some(m);
        } else {
            break;
        }
        if m == 0 {
            break;
        }
        m -= 1;
    }
    if let Some(m) = onset {
        return Ok(verdict(VerdictKind::EventuallyIsometric, u_n, Some(trace.start + m)));
    }
    let limit = (u_n - tail).max(T::zero());
    if min_window > eps_flat {
        return Ok(verdict(VerdictKind::SemiContracting, limit, None));
    }
    Ok(verdict(VerdictKind::Undecided, limit, None))
}

/// Aitken-style tail: when the last decrements shrink by a stable ratio `ρ < 1`,
/// the remaining decrease is `d_last ρ / (1 - ρ)`.
fn tail_extrapolation<T: Real>(trace: &OrbitPairTrace<T>) -> (Option<T>, T) {
    let n = trace.values.len() - 1;
    let d: Vec<T> = if trace.decrements.len() == n {
        trace.decrements.clone()
    } else {
        trace.values.windows(2).map(|w| w[0] - w[1]).collect()
    };
    if d.len() < RATIO_SAMPLES + 1 {
        return (None, T::zero());
    }
    let tail = &d[d.len() - RATIO_SAMPLES - 1..];
    if tail.iter().any(|x| !(*x > T::zero())) {
        return (None, T::zero());
    }
    let ratios: Vec<T> = tail.windows(2).map(|w| w[1] / w[0]).collect();
    let lo = ratios.iter().copied().fold(T::infinity(), T::min);
    let hi = ratios.iter().copied().fold(T::neg_infinity(), T::max);
    let mean = ratios.iter().copied().fold(T::zero(), |s, r| s + r) / lit(ratios.len() as f64);
    if !(mean < T::one()) || hi - lo > lit::<T>(RATIO_SPREAD) * mean {
        return (None, T::zero());
    }
    let last = *d.last().expect("nonempty");
    (Some(mean), last * mean / (T::one() - mean))
}
