use num_complex::Complex;

use crate::blaschke::DiscMap;
use crate::hypgeo::{hyperbolic_bloch_radius, DiscGrid, HyperbolicDomain, Subset};
use crate::{Error, Point, Result};

/// Conservative end of the known interval `(0.43, 0.47)` for Bloch's constant.
pub const BLOCH_CONSTANT: f64 = 0.433;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauReport {
    pub derivative_norm: f64,
    pub bloch_constant_used: f64,
    /// `tanh(1/2)`, the Euclidean radius of the hyperbolic unit disc about 0.
    pub r_star: f64,
    /// `2 B r* |f'(0)|`.
    pub guaranteed_radius: f64,
    pub measured_radius: f64,
    pub resolution: f64,
    pub passed: bool,
}

pub fn guaranteed_radius(bloch_constant: f64, derivative_norm: f64) -> f64 {
    2.0 * bloch_constant * 0.5f64.tanh() * derivative_norm
}

/// Compares the largest hyperbolic disc inside `f(B(0, 1))` with the guaranteed radius.
///
/// The image is rasterised by forward sampling of `|z| < tanh(1/2)` on a
/// lattice fine enough, given a sampled Lipschitz bound, that every cell whose
/// centre lies in the image receives a sample.
pub fn landau_check<F: DiscMap<f64> + ?Sized>(f: &F, grid_resolution: usize) -> Result<LandauReport> {
    let zero = Point::new(0.0, 0.0);
    if f.apply(zero).norm() > 1e-14 {
        return Err(Error::precondition("map must fix the origin"));
    }
    let derivative_norm = f.derivative_at_zero().abs();
    if !(derivative_norm > 0.0 && derivative_norm < 1.0) {
        return Err(Error::precondition(format!(
            "|f'(0)| = {derivative_norm} not in (0, 1)"
        )));
    }
    let r_star = 0.5f64.tanh();
    let grid = DiscGrid::new(grid_resolution);
    let cell = grid.cell_size();

    // |f'| is largest on the boundary circle; sample it with a safety factor
    let h = 1e-7;
    let lipschitz = (0..4096)
        .map(|k| {
            let z = Complex::from_polar(r_star, k as f64 * std::f64::consts::TAU / 4096.0);
            (f.apply(z + h) - f.apply(z - h)).norm() / (2.0 * h)
        })
        .fold(0.0, f64::max)
        * 1.25;
    let spacing = cell / (2.0 * lipschitz.max(1e-3));
    let steps = (r_star / spacing).ceil() as i64;

    let n = grid.n;
    let mut mask = vec![false; n * n];
    for i in -steps..=steps {
        for j in -steps..=steps {
            let z = Point::new(i as f64 * spacing, j as f64 * spacing);
            if z.norm() >= r_star {
                continue;
            }
            if let Some((c, r)) = grid.cell_of(f.apply(z)) {
                mask[r * n + c] = true;
            }
        }
    }
    let est = hyperbolic_bloch_radius(&HyperbolicDomain::UnitDisc, grid, &Subset::Mask(mask))?;
    let guaranteed = guaranteed_radius(BLOCH_CONSTANT, derivative_norm);
    Ok(LandauReport {
        derivative_norm,
        bloch_constant_used: BLOCH_CONSTANT,
        r_star,
        guaranteed_radius: guaranteed,
        measured_radius: est.radius,
        resolution: est.resolution,
        passed: est.radius + est.resolution >= guaranteed,
    })
}
