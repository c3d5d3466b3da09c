use crate::scalar::{from_usize, Real};
use crate::{Error, Result};

/// Maximum of a function sampled at `θ_k = 2πk / samples`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep<T> {
    pub value: T,
    /// First sample angle attaining the maximum.
    pub argmax: T,
    pub samples: usize,
}

pub fn sweep<T: Real>(samples: usize, f: impl Fn(T) -> T) -> Result<Sweep<T>> {
    if samples < 4 {
        return Err(Error::precondition("a sweep needs at least 4 samples"));
    }
    let step = T::TAU() / from_usize(samples);
    let mut best = Sweep {
        value: T::neg_infinity(),
        argmax: T::zero(),
        samples,
    };
    for k in 0..samples {
        let theta = step * from_usize(k);
        let v = f(theta);
        if v.is_nan() {
            return Err(Error::domain(format!("sweep value undefined at θ = {theta}")));
        }
        if v > best.value {
            best.value = v;
            best.argmax = theta;
        }
    }
    Ok(best)
}

/// A swept bound together with its doubled-resolution check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepBound<T> {
    /// `max(sweep, refined sweep) + inflation`.
    pub value: T,
    /// `|refined − sweep|`, the resolution reported with the bound.
    pub resolution: T,
    pub inflation: T,
    pub argmax: T,
    pub samples: usize,
}

impl<T: Real> SweepBound<T> {
    /// The bound with its resolution added, as used for certification.
    pub fn padded(&self) -> T {
        self.value + self.resolution
    }
}

pub fn swept_bound<T: Real>(samples: usize, inflation: T, f: impl Fn(T) -> T) -> Result<SweepBound<T>> {
    let coarse = sweep(samples, &f)?;
    let fine = sweep(2 * samples, &f)?;
    let best = if fine.value > coarse.value { fine } else { coarse };
    Ok(SweepBound {
        value: best.value + inflation,
        resolution: (fine.value - coarse.value).abs(),
        inflation,
        argmax: best.argmax,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_peak_and_first_tie() {
        let s = sweep(64, |t: f64| t.cos()).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.argmax, 0.0);
        let s = sweep(64, |_t: f64| 3.0).unwrap();
        assert_eq!(s.argmax, 0.0);
        assert!(sweep(2, |t: f64| t).is_err());
    }

    #[test]
    fn refinement_reports_its_change() {
        let b = swept_bound(6, 0.5, |t: f64| (t - 0.3).cos()).unwrap();
        assert!(b.resolution > 0.0);
        assert!(b.value <= 1.5 + 1e-15);
        assert!(b.padded() >= b.value);
    }
}
