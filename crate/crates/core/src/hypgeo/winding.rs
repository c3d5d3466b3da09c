use num_complex::Complex;

use crate::scalar::{angle_between, from_usize, lit, Real};
use crate::{Error, Result};

/// Sampled curve, closed or open.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample<T> {
    points: Vec<Complex<T>>,
    closed: bool,
}

impl<T: Real> CurveSample<T> {
    pub const MIN_POINTS: usize = 16;

    pub fn new(points: Vec<Complex<T>>, closed: bool) -> Result<Self> {
        if points.len() < Self::MIN_POINTS {
            return Err(Error::domain(format!(
                "curve needs at least {} points, got {}",
                Self::MIN_POINTS,
                points.len()
            )));
        }
        if points.iter().any(|p| !crate::scalar::is_finite(*p)) {
            return Err(Error::domain("curve has non-finite points"));
        }
        let n = points.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            if points[i] == points[(i + 1) % n] {
                return Err(Error::domain(format!("consecutive points {i} coincide")));
            }
        }
        Ok(Self { points, closed })
    }

    /// `n` equally spaced samples of `t -> f(center + radius e^{it})`.
    pub fn from_circle_map(
        center: Complex<T>,
        radius: T,
        n: usize,
        f: impl Fn(Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        let step = T::TAU() / from_usize(n);
        let points = (0..n)
            .map(|k| f(center + Complex::from_polar(radius, step * from_usize(k))))
            .collect();
        Self::new(points, true)
    }

    pub fn circle(center: Complex<T>, radius: T, n: usize) -> Result<Self> {
        Self::from_circle_map(center, radius, n, |z| z)
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn segments(&self) -> impl Iterator<Item = (Complex<T>, Complex<T>)> + '_ {
        let n = self.points.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    /// Each segment midpoint inserted; the polyline is unchanged.
    pub fn refined(&self) -> Self {
        let mut pts = Vec::with_capacity(2 * self.points.len());
        for (a, b) in self.segments() {
            pts.push(a);
            pts.push((a + b) / lit::<T>(2.0));
        }
        if !self.closed {
            pts.push(*self.points.last().unwrap());
        }
        Self {
            points: pts,
            closed: self.closed,
        }
    }
}

fn segment_distance<T: Real>(p: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let t = if len2 > T::zero() {
        (((p - a) * ab.conj()).re / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    (a + ab * t - p).norm()
}

/// Winding number of a closed polyline around `p`.
///
/// Every straight segment subtends an angle strictly below `pi` at a point off
/// the segment, so the principal argument increment per segment is exact.
pub fn winding_number<T: Real>(curve: &CurveSample<T>, p: Complex<T>, tolerance: T) -> Result<i64> {
    if !curve.closed {
        return Err(Error::precondition("winding number needs a closed curve"));
    }
    let mut total = T::zero();
    for (a, b) in curve.segments() {
        let dist = segment_distance(p, a, b);
        if dist <= tolerance {
            return Err(Error::IllConditioned {
                distance: dist.to_f64().unwrap_or(0.0),
                tolerance: tolerance.to_f64().unwrap_or(0.0),
            });
        }
        total = total + angle_between(a - p, b - p);
    }
    Ok((total / T::TAU()).round().to_i64().unwrap_or(0))
}

// Refinement stops once the image turns by less than this per step.
const MAX_STEP_ANGLE: f64 = std::f64::consts::FRAC_PI_4;
const MAX_DEPTH: u32 = 24;

/// Winding number around `p` of the image of the circle `|z - center| = radius`
/// under `f`, with the parameter step refined until every step turns by less
/// than `pi/4` as seen from `p`.
pub fn winding_number_of_map<T: Real>(
    f: impl Fn(Complex<T>) -> Complex<T>,
    center: Complex<T>,
    radius: T,
    p: Complex<T>,
    tolerance: T,
    base_samples: usize,
) -> Result<i64> {
    let base_samples = base_samples.max(CurveSample::<T>::MIN_POINTS);
    let point_at = |theta: T| f(center + Complex::from_polar(radius, theta));
    let step = T::TAU() / from_usize(base_samples);
    let limit = lit::<T>(MAX_STEP_ANGLE);

    let check = |w: Complex<T>| -> Result<()> {
        let d = (w - p).norm();
        if !(d > tolerance) {
            return Err(Error::IllConditioned {
                distance: d.to_f64().unwrap_or(0.0),
                tolerance: tolerance.to_f64().unwrap_or(0.0),
            });
        }
        Ok(())
    };

    let mut total = T::zero();
    let mut theta0 = T::zero();
    let mut w0 = point_at(theta0);
    check(w0)?;
    for k in 1..=base_samples {
        let theta1 = step * from_usize(k);
        let w1 = point_at(theta1);
        check(w1)?;
        total = total + turn(&point_at, &check, p, theta0, w0, theta1, w1, limit, 0)?;
        theta0 = theta1;
        w0 = w1;
    }
    Ok((total / T::TAU()).round().to_i64().unwrap_or(0))
}

#[allow(clippy::too_many_arguments)]
fn turn<T: Real>(
    point_at: &impl Fn(T) -> Complex<T>,
    check: &impl Fn(Complex<T>) -> Result<()>,
    p: Complex<T>,
    t0: T,
    w0: Complex<T>,
    t1: T,
    w1: Complex<T>,
    limit: T,
    depth: u32,
) -> Result<T> {
    let angle = angle_between(w0 - p, w1 - p);
    if angle.abs() < limit || depth >= MAX_DEPTH {
        if angle.abs() >= lit(std::f64::consts::FRAC_PI_2) {
            // refinement exhausted while the curve still jumps around p
            return Err(Error::IllConditioned {
                distance: (w0 - p).norm().min((w1 - p).norm()).to_f64().unwrap_or(0.0),
                tolerance: 0.0,
            });
        }
        return Ok(angle);
    }
    let tm = (t0 + t1) / lit(2.0);
    let wm = point_at(tm);
    check(wm)?;
    Ok(turn(point_at, check, p, t0, w0, tm, wm, limit, depth + 1)?
        + turn(point_at, check, p, tm, wm, t1, w1, limit, depth + 1)?)
}
