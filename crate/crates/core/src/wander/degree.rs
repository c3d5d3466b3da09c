use num_complex::Complex;

use super::ChainModel;
use crate::hypgeo::winding_number_of_map;
use crate::scalar::{lit, Real};
use crate::Result;

const BASE_SAMPLES: usize = 256;

/// Winding number of `f_n` on the circle `|z - 4n| = r_n` around each target,
/// which counts the preimages of the target inside `Δ_n'`.
pub fn degree_check<T: Real>(model: &ChainModel<T>, n: usize, targets: &[Complex<T>]) -> Result<Vec<i64>> {
    let step = model.step_map(n)?;
    let radius = model.inner_radius(n)?;
    let next = model.center(n + 1);
    let tol = lit::<T>(1e-9);
    targets
        .iter()
        .map(|&p| {
            winding_number_of_map(
                &step,
                Complex::new(T::zero(), T::zero()),
                radius,
                p - next,
                tol,
                BASE_SAMPLES,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::FactorSchedule;
    use crate::wander::{Perturbation, RadiiRule};
    use crate::Error;

    type C = Complex<f64>;

    #[test]
    fn two_preimages_near_the_base_orbit() {
        let m = ChainModel::new(FactorSchedule::Constant { a: 0.5 })
            .unwrap()
            .with_radii(RadiiRule::Constant { inner: 0.9, outer: 1.1 })
            .unwrap();
        assert_eq!(degree_check(&m, 3, &[C::new(16.0, 0.0)]).unwrap(), vec![2]);
        assert_eq!(degree_check(&m, 3, &[C::new(18.0, 0.0)]).unwrap(), vec![0]);
    }

    #[test]
    fn squaring_covers_the_small_disc_twice() {
        let m = ChainModel::new(FactorSchedule::Trivial).unwrap();
        let r = m.inner_radius(2).unwrap();
        let t: Vec<C> = (0..8)
            .map(|k| C::new(12.0, 0.0) + C::from_polar(0.9 * r * r, k as f64))
            .collect();
        assert!(degree_check(&m, 2, &t).unwrap().iter().all(|d| *d == 2));
    }

    #[test]
    fn degree_two_survives_perturbation_and_late_indices() {
        let m = ChainModel::new(FactorSchedule::geometric(0.25).unwrap())
            .unwrap()
            .with_perturbation(Perturbation::new(9))
            .unwrap();
        for n in [1, 5, 10] {
            let t: Vec<C> = (0..10)
                .map(|k| C::new(4.0 * (n + 1) as f64, 0.0) + C::from_polar(0.05, k as f64 * 0.6))
                .collect();
            assert!(degree_check(&m, n, &t).unwrap().iter().all(|d| *d == 2), "n = {n}");
        }
    }

    #[test]
    fn target_on_the_image_curve_is_ill_conditioned() {
        let m = ChainModel::new(FactorSchedule::Trivial).unwrap();
        let r = m.inner_radius(0).unwrap();
        assert!(matches!(
            degree_check(&m, 0, &[C::new(4.0 + r * r, 0.0)]),
            Err(Error::IllConditioned { .. })
        ));
    }
}
