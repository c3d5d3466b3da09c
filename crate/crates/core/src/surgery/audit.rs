use std::collections::BTreeMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SurgerySchedule;
use crate::blaschke::detect_annulus;
use crate::scalar::{lit, Real};
use crate::{Error, Result};

/// Distance to a transplanted pole below which an orbit is recorded as captured.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditOutcome {
    Completed,
    /// The orbit reached a pole at this chain index.
    PoleCapture {
        index: usize,
    },
    /// The orbit left the outer disc of its component at this chain index.
    Escaped {
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitAudit<T> {
    pub start: Complex<T>,
    pub outcome: AuditOutcome,
    /// Entries into each closed annulus `Ā_m`, keyed by `m`; only visited annuli appear.
    pub visits: BTreeMap<usize, u32>,
}

impl<T> OrbitAudit<T> {
    pub fn max_visits(&self) -> u32 {
        self.visits.values().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport<T> {
    pub orbits: Vec<OrbitAudit<T>>,
    pub horizon: usize,
}

impl<T> AuditReport<T> {
    pub fn max_visits(&self) -> u32 {
        self.orbits.iter().map(|o| o.max_visits()).max().unwrap_or(0)
    }

    pub fn pole_captures(&self) -> usize {
        self.orbits
            .iter()
            .filter(|o| matches!(o.outcome, AuditOutcome::PoleCapture { .. }))
            .count()
    }
}

enum Step<T> {
    To(Complex<T>),
    Pole,
    Escape,
}

/// One step of the operated map `g₀` at chain index `n`, in global coordinates.
///
/// Inside `|z - 4n| < r` it is the transplanted Joukowski map, outside `r'` the
/// model step. On the closed annulus between them it is a surrogate: the radial
/// blend `(1 - t) γ_n(r e^{iθ}) + t f_n(r' e^{iθ})`, `t = (|ζ| - r)/(r' - r)`,
/// which matches both boundary maps exactly. It only propagates orbits; its
/// dilatation plays no part in the certification.
fn g0_step<T: Real>(plan: &SurgerySchedule<T>, n: usize, z: Complex<T>) -> Result<Step<T>> {
    let chain = &plan.chain;
    let zeta = z - chain.center(n);
    let rho = zeta.norm();
    let next = chain.center(n + 1);
    let local = if n < plan.start || rho > plan.r_prime {
        if rho - T::one() >= chain.radius_gaps(n)?.1 {
            return Ok(Step::Escape);
        }
        chain.local_step(n, zeta)?
    } else if rho < lit(POLE_TOLERANCE) {
        return Ok(Step::Pole);
    } else if rho < plan.r {
        plan.joukowski(n)?.eval_unchecked(zeta)
    } else {
        let dir = zeta / rho;
        let t = (rho - plan.r) / (plan.r_prime - plan.r);
        let inner = plan.joukowski(n)?.eval_unchecked(dir * plan.r);
        let outer = chain.local_step(n, dir * plan.r_prime)?;
        inner * (T::one() - t) + outer * t
    };
    if !(local.norm() - T::one() < chain.radius_gaps(n + 1)?.1) {
        return Ok(Step::Escape);
    }
    Ok(Step::To(local + next))
}

/// Index of the operated annulus containing `z`, if any.
fn annulus_of<T: Real>(plan: &SurgerySchedule<T>, z: Complex<T>) -> Option<usize> {
    let step = plan.chain.translation_step();
    let m = (z.re / step).round();
    if m < T::zero() {
        return None;
    }
    let m = m.to_usize()?;
    let rho = (z - plan.chain.center(m)).norm();
    (m >= plan.start && rho >= plan.r && rho <= plan.r_prime).then_some(m)
}

/// Runs every sample (global coordinates in `Δ_N`) through `g₀` for `horizon`
/// steps from index `N` and counts entries into each closed annulus.
pub fn audit_no_revisit<T: Real>(
    plan: &SurgerySchedule<T>,
    samples: &[Complex<T>],
    horizon: usize,
) -> Result<AuditReport<T>> {
    plan.validate()?;
    let n0 = plan.start;
    let outer = plan.chain.outer_radius(n0)?;
    let mut orbits = Vec::with_capacity(samples.len());
    for &z0 in samples {
        if !((z0 - plan.chain.center(n0)).norm() < outer) {
            return Err(Error::domain(format!("sample {z0} is not in Δ_N")));
        }
        let mut visits = BTreeMap::new();
        let mut z = z0;
        let mut outcome = AuditOutcome::Completed;
        for n in n0..n0 + horizon {
            if let Some(m) = annulus_of(plan, z) {
                *visits.entry(m).or_insert(0) += 1;
            }
            match g0_step(plan, n, z)? {
                Step::To(w) => z = w,
                Step::Pole => {
                    outcome = AuditOutcome::PoleCapture { index: n };
                    break;
                }
                Step::Escape => {
                    outcome = AuditOutcome::Escaped { index: n + 1 };
                    break;
                }
            }
        }
        if outcome == AuditOutcome::Completed {
            if let Some(m) = annulus_of(plan, z) {
                *visits.entry(m).or_insert(0) += 1;
            }
        }
        orbits.push(OrbitAudit {
            start: z0,
            outcome,
            visits,
        });
    }
    Ok(AuditReport { orbits, horizon })
}

/// Area-uniform seeded samples in the outer disc `Δ_N`.
pub fn sample_component<T: Real>(plan: &SurgerySchedule<T>, count: usize, seed: u64) -> Result<Vec<Complex<T>>> {
    let outer = plan.chain.outer_radius(plan.start)?;
    let centre = plan.chain.center(plan.start);
    Ok(sample_annulus(T::zero(), outer, count, seed)
        .into_iter()
        .map(|z| z + centre)
        .collect())
}

/// Area-uniform seeded samples in `s < |z| < t`.
pub fn sample_annulus<T: Real>(s: T, t: T, count: usize, seed: u64) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (s2, t2) = ((s * s).to_f64().unwrap_or(0.0), (t * t).to_f64().unwrap_or(0.0));
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen_range(0.0..1.0);
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let rho = (s2 + u * (t2 - s2)).sqrt();
            Complex::from_polar(lit::<T>(rho), lit::<T>(theta))
        })
        .filter(|z| z.norm() > s && z.norm() < t)
        .collect()
}

/// The round annulus `{s < |ζ| < t}` in `Δ_N` on which `|B|` stays above `c`
/// for `steps` steps of the schedule shifted to start at `N`.
pub fn omega_annulus<T: Real>(plan: &SurgerySchedule<T>, c: T, steps: usize) -> Result<Option<(T, T)>> {
    if !(c > plan.r_prime) {
        return Err(Error::precondition(
            "Ω threshold must exceed r' to keep orbits off the annuli",
        ));
    }
    let shifted = plan.chain.schedule().clone().shifted(plan.start);
    Ok(detect_annulus(&shifted, c, steps, 400, 256)?.annulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::FactorSchedule;
    use crate::surgery::MuRule;
    use crate::wander::ChainModel;

    type C = Complex<f64>;

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
    fn base_orbit_sits_on_the_pole() {
        let rep = audit_no_revisit(&reference(), &[C::new(20.0, 0.0)], 50).unwrap();
        assert_eq!(rep.orbits[0].outcome, AuditOutcome::PoleCapture { index: 5 });
        assert!(rep.orbits[0].visits.is_empty());
    }

    #[test]
    fn blend_matches_boundary_maps() {
        let plan = reference();
        let dir = C::from_polar(1.0, 0.7);
        let at = |rho: f64| match g0_step(&plan, 6, C::new(24.0, 0.0) + dir * rho).unwrap() {
            Step::To(w) => w,
            _ => panic!("unexpected"),
        };
        let inner = plan.joukowski(6).unwrap().eval_unchecked(dir * 0.1) + 28.0;
        let outer = plan.chain.model_step(6, C::new(24.0, 0.0) + dir * 0.2).unwrap();
        assert!((at(0.1) - inner).norm() < 1e-12);
        assert!((at(0.2) - outer).norm() < 1e-12);
    }

    #[test]
    fn random_samples_visit_each_annulus_at_most_once() {
        let plan = reference();
        let samples = sample_component(&plan, 200, 17).unwrap();
        assert_eq!(samples.len(), 200);
        let rep = audit_no_revisit(&plan, &samples, 50).unwrap();
        assert!(rep.max_visits() <= 1);
    }

    #[test]
    fn omega_samples_avoid_the_annuli() {
        let plan = reference();
        let (s, t) = omega_annulus(&plan, 0.25, 50).unwrap().expect("Ω annulus");
        assert!(s > 0.2);
        let samples: Vec<C> = sample_annulus(s, t, 100, 3).into_iter().map(|z| z + 20.0).collect();
        let rep = audit_no_revisit(&plan, &samples, 50).unwrap();
        assert!(rep
            .orbits
            .iter()
            .all(|o| o.visits.is_empty() && o.outcome == AuditOutcome::Completed));
    }

    #[test]
    fn samples_must_start_in_the_first_component() {
        assert!(audit_no_revisit(&reference(), &[C::new(0.0, 0.0)], 5).is_err());
    }
}
