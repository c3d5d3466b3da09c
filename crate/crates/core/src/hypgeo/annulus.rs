use std::f64::consts::{PI, TAU};

use crate::{Error, Point, Result};

/// The round annulus `{inner_radius < |z| < 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundAnnulus {
    inner: f64,
}

impl RoundAnnulus {
    pub fn new(inner_radius: f64) -> Result<Self> {
        if !(inner_radius > 0.0 && inner_radius < 1.0) {
            return Err(Error::domain(format!(
                "annulus inner radius {inner_radius} not in (0, 1)"
            )));
        }
        Ok(Self { inner: inner_radius })
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner
    }

    /// Width of the logarithmic strip covering the annulus.
    pub fn log_width(&self) -> f64 {
        -self.inner.ln()
    }

    pub fn contains(&self, p: Point) -> bool {
        let r = p.norm();
        r > self.inner && r < 1.0
    }
}

/// Hyperbolic density of the annulus at `z`.
pub fn annulus_density(annulus: &RoundAnnulus, z: Point) -> f64 {
    let width = annulus.log_width();
    let r = z.norm();
    let x = (r / annulus.inner).ln();
    (PI / width) / (r * (PI * x / width).sin())
}

// Sine modes per coordinate in the path family.
const MODES: usize = 3;
const QUAD_INTERVALS: usize = 256;

/// Candidate path in logarithmic coordinates `(log|z|, arg z)`: the straight
/// segment between the endpoints plus a truncated sine series in each
/// coordinate.
struct PathFamily {
    x0: f64,
    dx: f64,
    dy: f64,
    log_inner: f64,
    width: f64,
}

impl PathFamily {
    fn length(&self, coeffs: &[f64]) -> f64 {
        let (cx, cy) = coeffs.split_at(MODES);
        let h = 1.0 / QUAD_INTERVALS as f64;
        let mut sum = 0.0;
        for i in 0..=QUAD_INTERVALS {
            let t = i as f64 * h;
            // the density does not depend on the angle, only its speed matters
            let mut x = self.x0 + self.dx * t;
            let (mut vx, mut vy) = (self.dx, self.dy);
            for j in 0..MODES {
                let k = (j + 1) as f64 * PI;
                let (s, c) = (k * t).sin_cos();
                x += cx[j] * s;
                vx += cx[j] * k * c;
                vy += cy[j] * k * c;
            }
            let u = x - self.log_inner;
            if u <= 0.0 || u >= self.width {
                return f64::INFINITY;
            }
            let density = (PI / self.width) / (PI * u / self.width).sin();
            let w = if i == 0 || i == QUAD_INTERVALS {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            sum += w * density * vx.hypot(vy);
        }
        sum * h / 3.0
    }
}

/// Hyperbolic distance in a round annulus, estimated by minimizing the
/// integrated annulus density over a family of candidate paths that wind
/// between the endpoints in each of the three nearest homotopy classes.
pub fn annulus_distance(annulus: &RoundAnnulus, z: Point, w: Point) -> Result<f64> {
    for p in [z, w] {
        if !crate::scalar::is_finite(p) || !annulus.contains(p) {
            return Err(Error::domain(format!("point {p} lies outside the annulus")));
        }
    }
    if z == w {
        return Ok(0.0);
    }
    // Fixed orientation makes the estimate exactly symmetric.
    let (z, w) = if (z.re, z.im) <= (w.re, w.im) { (z, w) } else { (w, z) };

    let (x0, y0) = (z.norm().ln(), z.arg());
    let (x1, y1) = (w.norm().ln(), w.arg());
    let mut dy = y1 - y0;
    dy -= TAU * (dy / TAU).round();

    let mut best = f64::INFINITY;
    for turn in [-1.0, 0.0, 1.0] {
        let family = PathFamily {
            x0,
            dx: x1 - x0,
            dy: dy + turn * TAU,
            log_inner: annulus.inner.ln(),
            width: annulus.log_width(),
        };
        let scale = 0.1 * family.width;
        let (_, value) = nelder_mead(|c| family.length(c), &[0.0; 2 * MODES], scale, 4000);
        best = best.min(value);
    }
    Ok(best)
}

/// Plain Nelder–Mead simplex minimizer.
fn nelder_mead(f: impl Fn(&[f64]) -> f64, start: &[f64], step: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        if spread.abs() <= 1e-13 * (1.0 + values[0].abs()) {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|k| centroid[k] + t * (simplex[n][k] - centroid[k]))
                .collect()
        };

        let reflected = along(-1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let contracted = if fr < values[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&contracted);
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    for k in 0..n {
                        simplex[i][k] = best[k] + 0.5 * (simplex[i][k] - best[k]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let i = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    (simplex[i].clone(), values[i])
}
