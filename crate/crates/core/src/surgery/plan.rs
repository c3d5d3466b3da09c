use super::conditions::{cond1_bound, cond2_blaschke_bound, interpolation_constant};
use super::joukowski::{cond2_gamma_bound, JoukowskiMap};
use crate::blaschke::BlaschkeFactor;
use crate::scalar::{from_usize, lit, Real};
use crate::wander::ChainModel;
use crate::{Error, Result};

pub const DEFAULT_THETA_SAMPLES: usize = 4096;
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-6;

/// Closed-form rule for the Joukowski parameters `μ_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuRule<T> {
    /// `μ_n = scale · ratio^n`.
    Geometric {
        scale: T,
        ratio: T,
    },
    Constant {
        mu: T,
    },
}

impl<T: Real> MuRule<T> {
    pub fn mu(&self, n: usize) -> T {
        match *self {
            MuRule::Geometric { scale, ratio } => scale * ratio.powf(from_usize(n)),
            MuRule::Constant { mu } => mu,
        }
    }
}

/// Everything needed to plan the pole transplant on the annuli `r <= |z - 4n| <= r'`, `n >= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurgerySchedule<T> {
    pub chain: ChainModel<T>,
    pub mu_rule: MuRule<T>,
    pub r: T,
    pub r_prime: T,
    /// First operated index `N`.
    pub start: usize,
    /// Inflation of the Joukowski scale `λ`; 0 reproduces the tangent construction.
    pub eta: T,
    pub theta_samples: usize,
    pub tail_tolerance: T,
}

impl<T: Real> SurgerySchedule<T> {
    pub fn new(chain: ChainModel<T>, mu_rule: MuRule<T>, r: T, r_prime: T, start: usize) -> Result<Self> {
        let s = Self {
            chain,
            mu_rule,
            r,
            r_prime,
            start,
            eta: T::zero(),
            theta_samples: DEFAULT_THETA_SAMPLES,
            tail_tolerance: lit(DEFAULT_TAIL_TOLERANCE),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > T::zero() && self.r < self.r_prime && self.r_prime < T::one()) {
            return Err(Error::domain(format!(
                "need 0 < r < r' < 1, got r = {}, r' = {}",
                self.r, self.r_prime
            )));
        }
        if self.r_prime >= self.chain.inner_radius(self.start)? {
            return Err(Error::domain(
                "outer surgery circle must sit inside the inner disc Δ_N'",
            ));
        }
        match self.mu_rule {
            MuRule::Geometric { scale, ratio } if !(ratio >= T::one() && scale > T::zero()) => {
                return Err(Error::domain("geometric μ rule needs scale > 0 and ratio >= 1"));
            }
            _ => {}
        }
        if !(self.mu_rule.mu(self.start) * self.r > T::one()) {
            return Err(Error::precondition(format!("μ_N r must exceed 1 (N = {})", self.start)));
        }
        if !(self.eta >= T::zero()) {
            return Err(Error::domain("λ inflation must be non-negative"));
        }
        if self.theta_samples < 16 {
            return Err(Error::domain("theta sweep needs at least 16 samples"));
        }
        Ok(())
    }

    pub fn joukowski(&self, n: usize) -> Result<JoukowskiMap<T>> {
        JoukowskiMap::with_inflation(self.mu_rule.mu(n), self.r, self.eta)
    }

    pub fn factor(&self, n: usize) -> Result<BlaschkeFactor<T>> {
        self.chain.schedule().factor(n + 1)
    }

    /// Condition bounds and interpolation constant for the annulus around `4n`.
    pub fn annulus_record(&self, n: usize) -> Result<AnnulusRecord<T>> {
        let factor = self.factor(n)?;
        let gamma = self.joukowski(n)?;
        let eps = self.chain.budget(n + 1)?;
        let cond1 = cond1_bound(&factor, &gamma, self.r_prime, eps, self.theta_samples)?;
        let cond2_gamma = cond2_gamma_bound(&gamma);
        let cond2_blaschke = cond2_blaschke_bound(&factor, self.r_prime, eps, self.theta_samples)?.padded();
        let delta0 = cond1.direct.padded();
        let delta1 = cond2_gamma.max(cond2_blaschke);
        let ic = interpolation_constant(delta0, delta1, self.r, self.r_prime, 1)?;
        Ok(AnnulusRecord {
            n,
            mu: gamma.mu(),
            delta0,
            delta1,
            cond2_gamma,
            cond2_blaschke,
            c: ic.c,
            k: ic.k,
            log_k: ic.log_k,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusRecord<T> {
    pub n: usize,
    pub mu: T,
    pub delta0: T,
    pub delta1: T,
    pub cond2_gamma: T,
    pub cond2_blaschke: T,
    pub c: T,
    pub k: Option<T>,
    pub log_k: Option<T>,
}

/// Per-annulus constants and the extrapolated verdict on `∏ K_n`.
///
/// The tail is bounded by fitting a geometric envelope `α q^n` to `log K_n`
/// over the final indices; this is an extrapolation, not a proof.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationReport<T> {
    pub records: Vec<AnnulusRecord<T>>,
    pub k_infinity_partial: T,
    pub log_k_partial: T,
    /// Extrapolated `sum_{n > N_max} log K_n`; infinite when no decaying envelope fits.
    pub tail_bound: T,
    /// `(α, q)` of the fitted envelope.
    pub envelope: Option<(T, T)>,
    pub infeasible_at: Option<usize>,
    pub certified: bool,
    pub eta: T,
    pub theta_samples: usize,
}

pub fn certify_product<T: Real>(schedule: &SurgerySchedule<T>, n_max: usize) -> Result<InterpolationReport<T>> {
    schedule.validate()?;
    if n_max < schedule.start {
        return Err(Error::precondition("N_max precedes the first operated index"));
    }
    let records = (schedule.start..=n_max)
        .map(|n| schedule.annulus_record(n))
        .collect::<Result<Vec<_>>>()?;
    let infeasible_at = records.iter().find(|r| r.k.is_none()).map(|r| r.n);
    let log_k_partial = records.iter().filter_map(|r| r.log_k).fold(T::zero(), |s, x| s + x);

    let window = 10usize.max((n_max - schedule.start) / 2).min(records.len());
    let (envelope, tail_bound) = if infeasible_at.is_some() {
        (None, T::infinity())
    } else {
        geometric_tail(&records[records.len() - window..], n_max)
    };
    let certified = infeasible_at.is_none() && tail_bound.is_finite() && tail_bound < schedule.tail_tolerance;
    Ok(InterpolationReport {
        records,
        k_infinity_partial: log_k_partial.exp(),
        log_k_partial,
        tail_bound,
        envelope,
        infeasible_at,
        certified,
        eta: schedule.eta,
        theta_samples: schedule.theta_samples,
    })
}

/// Least-squares line through `(n, log log K_n)`, lifted to dominate every point.
fn geometric_tail<T: Real>(records: &[AnnulusRecord<T>], n_max: usize) -> (Option<(T, T)>, T) {
    let pts: Vec<(T, T)> = records
        .iter()
        .filter_map(|r| {
            r.log_k
                .filter(|l| *l > T::zero())
                .map(|l| (from_usize::<T>(r.n), l.ln()))
        })
        .collect();
    if pts.is_empty() {
        return (Some((T::zero(), T::zero())), T::zero());
    }
    if pts.len() < 2 {
        return (None, T::infinity());
    }
    let m = from_usize::<T>(pts.len());
    let mx = pts.iter().fold(T::zero(), |s, p| s + p.0) / m;
    let my = pts.iter().fold(T::zero(), |s, p| s + p.1) / m;
    let sxy = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.1 - my));
    let sxx = pts.iter().fold(T::zero(), |s, p| s + (p.0 - mx) * (p.0 - mx));
    let slope = sxy / sxx;
    if !(slope < T::zero()) {
        return (None, T::infinity());
    }
    let q = slope.exp();
    let log_alpha = pts.iter().map(|p| p.1 - p.0 * slope).fold(T::neg_infinity(), T::max);
    let tail = (log_alpha + slope * from_usize(n_max + 1)).exp() / (T::one() - q);
    (Some((log_alpha.exp(), q)), tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::FactorSchedule;

    fn reference() -> SurgerySchedule<f64> {
        let chain = ChainModel::new(FactorSchedule::geometric(0.25).unwrap()).unwrap();
        SurgerySchedule::new(
            chain,
            MuRule::Geometric {
                scale: 10.0,
                ratio: 2.0,
            },
            0.1,
            0.2,
            5,
        )
        .unwrap()
    }

    #[test]
    fn reference_schedule_certifies() {
        let rep = certify_product(&reference(), 40).unwrap();
        assert!(rep.certified, "{:?}", rep.tail_bound);
        assert!(rep.records.iter().all(|r| r.c > 0.0 && r.k.unwrap() >= 1.0));
        let tail = &rep.records[rep.records.len() - 20..];
        for w in tail.windows(2) {
            assert!(w[1].k.unwrap() <= w[0].k.unwrap());
        }
        assert!(rep.tail_bound < 1e-6);
        let (_, q) = rep.envelope.unwrap();
        assert!(q < 1.0);
    }

    #[test]
    fn constant_factor_is_not_certified() {
        let chain = ChainModel::new(FactorSchedule::Constant { a: 0.5 }).unwrap();
        let s = SurgerySchedule::new(
            chain,
            MuRule::Geometric {
                scale: 10.0,
                ratio: 2.0,
            },
            0.1,
            0.2,
            5,
        )
        .unwrap();
        let rep = certify_product(&s, 20).unwrap();
        assert!(!rep.certified);
    }

    #[test]
    fn conformal_limit_gives_unit_constants() {
        let chain = ChainModel::<f64>::new(FactorSchedule::Constant { a: 1.0 - 1e-15 }).unwrap();
        let s = SurgerySchedule::new(chain, MuRule::Constant { mu: 1e12 }, 0.1, 0.2, 1).unwrap();
        let rep = certify_product(&s, 10).unwrap();
        assert!(rep.records.iter().all(|r| (r.k.unwrap() - 1.0).abs() < 1e-9));
        assert!((rep.k_infinity_partial - 1.0).abs() < 1e-9);
    }

    #[test]
    fn partial_products_grow_with_horizon() {
        let s = reference();
        let a = certify_product(&s, 12).unwrap().k_infinity_partial;
        let b = certify_product(&s, 16).unwrap().k_infinity_partial;
        assert!(b >= a);
    }

    #[test]
    fn invalid_plans() {
        let chain = ChainModel::new(FactorSchedule::geometric(0.25).unwrap()).unwrap();
        assert!(SurgerySchedule::new(chain.clone(), MuRule::Constant { mu: 5.0 }, 0.1, 0.2, 5).is_err());
        assert!(SurgerySchedule::new(chain.clone(), MuRule::Constant { mu: 50.0 }, 0.3, 0.2, 5).is_err());
        assert!(certify_product(&reference(), 3).is_err());
    }
}
