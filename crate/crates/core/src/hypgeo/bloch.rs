use super::disc::hyperbolic_disc_in_euclidean;
use super::raster::distance_transform;
use super::HyperbolicDomain;
use crate::{Error, Point, Result};

/// `n x n` cells over `[-1, 1]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscGrid {
    pub n: usize,
}

impl DiscGrid {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn cell_size(&self) -> f64 {
        2.0 / self.n as f64
    }

    pub fn center(&self, col: usize, row: usize) -> Point {
        let h = self.cell_size();
        Point::new(-1.0 + (col as f64 + 0.5) * h, -1.0 + (row as f64 + 0.5) * h)
    }

    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let h = self.cell_size();
        let (x, y) = ((p.re + 1.0) / h, (p.im + 1.0) / h);
        if !(x >= 0.0 && y >= 0.0) {
            return None;
        }
        let (c, r) = (x as usize, y as usize);
        (c < self.n && r < self.n).then_some((c, r))
    }
}

/// A subset of the unit disc, resolved on a [`DiscGrid`] by cell centers.
pub enum Subset<'a> {
    /// The whole ambient disc.
    Whole,
    /// Row-major occupancy over the grid.
    Mask(Vec<bool>),
    /// Cells containing at least one of the points.
    Points(&'a [Point]),
    Region(&'a dyn Fn(Point) -> bool),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochEstimate {
    /// Largest hyperbolic radius found; `f64::INFINITY` when the subset is the whole disc.
    pub radius: f64,
    /// Hyperbolic length of one cell diagonal at the outer edge of the best disc.
    pub resolution: f64,
    pub grid_size: usize,
    pub center: Option<Point>,
}

impl Subset<'_> {
    fn mask(&self, grid: DiscGrid) -> Result<Vec<bool>> {
        let n = grid.n;
        let mut mask = match self {
            Subset::Whole => vec![true; n * n],
            Subset::Mask(m) => {
                if m.len() != n * n {
                    return Err(Error::domain(format!("mask has {} cells, grid has {}", m.len(), n * n)));
                }
                m.clone()
            }
            Subset::Points(pts) => {
                let mut m = vec![false; n * n];
                for &p in pts.iter() {
                    if let Some((c, r)) = grid.cell_of(p) {
                        m[r * n + c] = true;
                    }
                }
                m
            }
            Subset::Region(f) => {
                let mut m = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        m.push(f(grid.center(c, r)));
                    }
                }
                m
            }
        };
        for r in 0..n {
            for c in 0..n {
                if grid.center(c, r).norm() >= 1.0 {
                    mask[r * n + c] = false;
                }
            }
        }
        Ok(mask)
    }
}

/// Radius of the largest hyperbolic disc inside `subset`, searched over every
/// occupied cell center as a candidate center.
///
/// A candidate disc is accepted when its Euclidean image keeps clear of every
/// unoccupied cell center by half a cell diagonal, so the estimate errs low.
pub fn hyperbolic_bloch_radius(
    ambient: &HyperbolicDomain,
    grid: DiscGrid,
    subset: &Subset<'_>,
) -> Result<BlochEstimate> {
    if !matches!(ambient, HyperbolicDomain::UnitDisc) {
        return Err(Error::precondition(
            "hyperbolic Bloch radius is estimated in the unit disc only",
        ));
    }
    if grid.n < 4 {
        return Err(Error::precondition("grid needs at least 4 cells per side"));
    }
    if matches!(subset, Subset::Whole) {
        return Ok(BlochEstimate {
            radius: f64::INFINITY,
            resolution: 0.0,
            grid_size: grid.n,
            center: None,
        });
    }
    let n = grid.n;
    let h = grid.cell_size();
    let half_diag = h * std::f64::consts::FRAC_1_SQRT_2;
    let mask = subset.mask(grid)?;
    if !mask.iter().any(|&b| b) {
        return Err(Error::domain("subset is empty on the grid"));
    }
    let clearance: Vec<f64> = distance_transform(n, n, &mask)
        .into_iter()
        .map(|d2| d2.sqrt() * h)
        .collect();

    let contained = |c: Point, rho: f64| -> bool {
        let (e, s) = hyperbolic_disc_in_euclidean(c, rho);
        if e.norm() + s >= 1.0 {
            return false;
        }
        match grid.cell_of(e) {
            Some((col, row)) => clearance[row * n + col] - half_diag >= s,
            None => false,
        }
    };

    // Upper bound: the disc reaches distance `clearance` from its center first
    // in the outward radial direction.
    let mut candidates: Vec<(f64, Point)> = Vec::new();
    for row in 0..n {
        for col in 0..n {
            let i = row * n + col;
            if !mask[i] {
                continue;
            }
            let c = grid.center(col, row);
            let r = c.norm();
            let outer = r + clearance[i];
            let ub = if outer >= 1.0 {
                f64::INFINITY
            } else {
                2.0 * (outer.atanh() - r.atanh()) + 1e-12
            };
            candidates.push((ub, c));
        }
    }
    candidates.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(a.1.re.total_cmp(&b.1.re))
            .then(a.1.im.total_cmp(&b.1.im))
    });

    let mut best = 0.0_f64;
    let mut best_center = candidates[0].1;
    for &(ub, c) in &candidates {
        if ub <= best {
            break;
        }
        if best > 0.0 && !contained(c, best) {
            continue;
        }
        let mut lo = best;
        let mut hi = if ub.is_finite() { ub } else { 40.0 };
        if contained(c, hi) {
            lo = hi;
        } else {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if contained(c, mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-12 * (1.0 + lo) {
                    break;
                }
            }
        }
        if lo > best {
            best = lo;
            best_center = c;
        }
    }

    let (e, s) = hyperbolic_disc_in_euclidean(best_center, best);
    let outer = (e.norm() + s + 2.0 * half_diag).min(1.0 - 1e-15);
    let resolution = 4.0 * half_diag / (1.0 - outer * outer);
    Ok(BlochEstimate {
        radius: best,
        resolution,
        grid_size: n,
        center: Some(best_center),
    })
}
