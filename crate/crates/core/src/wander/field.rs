use num_complex::Complex;

use super::{pair_trace, pair_trace_from, ChainModel, MetricMode};
use crate::scalar::Real;
use crate::{Error, Result};

/// `u_N` over a grid together with the sup-norm gaps `sup |u_n - u_N|` over a tail window.
#[derive(Debug, Clone, PartialEq)]
pub struct UField<T> {
    pub points: Vec<Complex<T>>,
    pub values: Vec<T>,
    /// `(n, sup_grid |u_n - u_N|)` for `n` in `[N - window, N]`.
    pub gaps: Vec<(usize, T)>,
    pub mode: MetricMode,
}

fn mode_for<T: Real>(model: &ChainModel<T>) -> MetricMode {
    if model.is_perturbed() {
        MetricMode::Bracketed
    } else {
        MetricMode::ExactDiscModel
    }
}

pub fn u_field<T: Real>(
    model: &ChainModel<T>,
    z0: Complex<T>,
    grid: &[Complex<T>],
    horizon: usize,
    window: usize,
) -> Result<UField<T>> {
    let mode = mode_for(model);
    let first = horizon.saturating_sub(window);
    let mut values = Vec::with_capacity(grid.len());
    let mut gaps: Vec<(usize, T)> = (first..=horizon).map(|n| (n, T::zero())).collect();
    for &w in grid {
        let trace = pair_trace(model, z0, w, horizon, mode)?;
        if let Some(e) = trace.escape {
            return Err(Error::domain(format!(
                "orbit of {w} escapes its component at index {e}"
            )));
        }
        let u_n = trace.values[horizon];
        for (n, gap) in gaps.iter_mut() {
            *gap = gap.max((trace.values[*n] - u_n).abs());
        }
        values.push(u_n);
    }
    Ok(UField {
        points: grid.to_vec(),
        values,
        gaps,
        mode,
    })
}

/// Largest `|u(z) - u'(f(z))|` over the grid, where `u` is measured from `z0`
/// at chain index 0 and `u'` from `f(z0)` at index 1, both truncated at the
/// same absolute index `horizon`.
pub fn invariance_check<T: Real>(
    model: &ChainModel<T>,
    z0: Complex<T>,
    grid: &[Complex<T>],
    horizon: usize,
) -> Result<T> {
    if horizon == 0 {
        return Err(Error::precondition("invariance check needs horizon >= 1"));
    }
    let mode = mode_for(model);
    let fz0 = model.model_step(0, z0)?;
    let mut worst = T::zero();
    for &z in grid {
        let before = pair_trace(model, z0, z, horizon, mode)?;
        let after = pair_trace_from(model, 1, fz0, model.model_step(0, z)?, horizon, mode)?;
        if before.escape.is_some() || after.escape.is_some() {
            return Err(Error::domain(format!("orbit of {z} escapes before the horizon")));
        }
        let (u, v) = (
            before.values[before.values.len() - 1],
            after.values[after.values.len() - 1],
        );
        worst = worst.max((u - v).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::FactorSchedule;
    use crate::wander::Perturbation;

    type C = Complex<f64>;

    fn fast() -> ChainModel<f64> {
        ChainModel::new(FactorSchedule::geometric(0.25).unwrap()).unwrap()
    }

    fn grid(n: usize, radius: f64) -> Vec<C> {
        (0..n * n)
            .map(|k| {
                let (i, j) = (k % n, k / n);
                let s = |t: usize| radius * (2.0 * (t as f64 + 0.5) / n as f64 - 1.0);
                C::new(s(i), s(j))
            })
            .collect()
    }

    #[test]
    fn base_point_has_zero_field() {
        let z0 = C::new(0.2, 0.0);
        let f = u_field(&fast(), z0, &[z0], 30, 10).unwrap();
        assert_eq!(f.values, vec![0.0]);
    }

    #[test]
    fn gaps_are_non_increasing() {
        let f = u_field(
            &ChainModel::new(FactorSchedule::Harmonic).unwrap(),
            C::new(0.1, 0.0),
            &grid(6, 0.6),
            60,
            30,
        )
        .unwrap();
        for w in f.gaps.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12);
        }
        assert_eq!(f.gaps.last().unwrap().1, 0.0);
    }

    #[test]
    fn semi_contracting_field_is_positive_off_the_base_orbit() {
        let z0 = C::new(0.2, 0.0);
        let pts: Vec<C> = grid(5, 0.6).into_iter().filter(|p| (p - z0).norm() > 1e-3).collect();
        let f = u_field(&fast(), z0, &pts, 60, 10).unwrap();
        assert!(f.values.iter().all(|u| *u > 1e-6));
    }

    #[test]
    fn invariance_for_plain_and_perturbed_chains() {
        let z0 = C::new(0.2, 0.0);
        let pts = grid(5, 0.7);
        assert_eq!(invariance_check(&fast(), z0, &[z0], 40).unwrap(), 0.0);
        assert!(invariance_check(&fast(), z0, &pts, 60).unwrap() < 1e-10);
        let p = fast().with_perturbation(Perturbation::new(5)).unwrap();
        assert!(invariance_check(&p, z0, &pts, 60).unwrap() < 1e-10);
    }
}
