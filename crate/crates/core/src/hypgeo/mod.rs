//! Hyperbolic geometry on the disc and round annulus, quasi-hyperbolic
//! estimation on rasterized domains, winding numbers and hyperbolic inradius
//! estimation.
//!
//! Curvature is normalized to `-1`: the disc density is `2 / (1 - |z|^2)`, so
//! `d(0, tanh(1/2)) = 1`.

mod annulus;
mod bloch;
mod disc;
mod qh;
mod raster;
mod winding;

pub use annulus::{annulus_density, annulus_distance, RoundAnnulus};
pub use bloch::{hyperbolic_bloch_radius, BlochEstimate, DiscGrid, Subset};
pub use disc::{disc_density, disc_distance, hyperbolic_disc_in_euclidean, pseudo_distance, DiscAutomorphism};
pub use qh::{quasi_hyperbolic_distance, QhEstimate, QuasiHyperbolicSolver};
pub use raster::RasterGrid;
pub use winding::{winding_number, winding_number_of_map, CurveSample};

use crate::{Error, Point, Result};

/// A planar hyperbolic domain.
#[derive(Debug, Clone)]
pub enum HyperbolicDomain {
    UnitDisc,
    RoundAnnulus(RoundAnnulus),
    Raster(RasterGrid),
}

impl HyperbolicDomain {
    pub fn annulus(inner_radius: f64) -> Result<Self> {
        Ok(HyperbolicDomain::RoundAnnulus(RoundAnnulus::new(inner_radius)?))
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            HyperbolicDomain::UnitDisc => p.norm() < 1.0,
            HyperbolicDomain::RoundAnnulus(a) => a.contains(p),
            HyperbolicDomain::Raster(g) => g.contains(p),
        }
    }

    /// Euclidean distance from `p` to the boundary. Raster domains report the
    /// value stored for the containing cell.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        match self {
            HyperbolicDomain::UnitDisc => (1.0 - p.norm()).max(0.0),
            HyperbolicDomain::RoundAnnulus(a) => {
                let r = p.norm();
                (r - a.inner_radius()).min(1.0 - r).max(0.0)
            }
            HyperbolicDomain::Raster(g) => g.boundary_distance_at(p),
        }
    }

    pub(crate) fn require(&self, p: Point) -> Result<()> {
        if !crate::scalar::is_finite(p) {
            return Err(Error::domain(format!("non-finite point {p}")));
        }
        if !self.contains(p) {
            return Err(Error::domain(format!("point {p} lies outside the domain")));
        }
        Ok(())
    }
}
