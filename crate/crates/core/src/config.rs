//! Experiment configuration: a TOML file with one table per concern. Every
//! table rejects unknown keys, and every error names the offending key and line.

use serde::Deserialize;

use crate::blaschke::FactorSchedule;
use crate::surgery::{MuRule, SurgerySchedule};
use crate::wander::{ChainModel, MetricMode, Perturbation, RadiiRule};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub horizon: Option<usize>,
    pub schedule: Option<ScheduleConfig>,
    pub chain: Option<ChainConfig>,
    pub perturbation: Option<PerturbationConfig>,
    pub classify: Option<ClassifyConfig>,
    pub ufield: Option<UFieldConfig>,
    pub criterion: Option<CriterionConfig>,
    pub landau: Option<LandauConfig>,
    pub surgery: Option<SurgeryConfig>,
    pub qhd: Option<QhdConfig>,
    pub audit: Option<AuditConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Harmonic,
    Geometric,
    Trivial,
    Constant,
    List,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    pub family: Family,
    pub q: Option<f64>,
    pub a: Option<f64>,
    pub values: Option<Vec<f64>>,
    pub tail: Option<Box<ScheduleConfig>>,
    pub shift: Option<usize>,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            family: Family::Geometric,
            q: Some(0.25),
            a: None,
            values: None,
            tail: None,
            shift: None,
        }
    }
}

fn key_error(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line: 0,
        key: key.into(),
        message: message.into(),
    }
}

impl ScheduleConfig {
    pub fn build(&self) -> Result<FactorSchedule<f64>> {
        let unused = |present: bool, key: &str| -> Result<()> {
            if present {
                Err(key_error(key, format!("not used by family {:?}", self.family)))
            } else {
                Ok(())
            }
        };
        let base = match self.family {
            Family::Harmonic | Family::Trivial => {
                unused(self.q.is_some(), "schedule.q")?;
                unused(self.a.is_some(), "schedule.a")?;
                unused(self.values.is_some(), "schedule.values")?;
                unused(self.tail.is_some(), "schedule.tail")?;
                if self.family == Family::Harmonic {
                    FactorSchedule::Harmonic
                } else {
                    FactorSchedule::Trivial
                }
            }
            Family::Geometric => {
                unused(self.a.is_some(), "schedule.a")?;
                unused(self.values.is_some(), "schedule.values")?;
                unused(self.tail.is_some(), "schedule.tail")?;
                let q = self
                    .q
                    .ok_or_else(|| key_error("schedule.q", "geometric family needs q"))?;
                FactorSchedule::Geometric { q }
            }
            Family::Constant => {
                unused(self.q.is_some(), "schedule.q")?;
                unused(self.values.is_some(), "schedule.values")?;
                unused(self.tail.is_some(), "schedule.tail")?;
                let a = self
                    .a
                    .ok_or_else(|| key_error("schedule.a", "constant family needs a"))?;
                FactorSchedule::Constant { a }
            }
            Family::List => {
                unused(self.q.is_some(), "schedule.q")?;
                unused(self.a.is_some(), "schedule.a")?;
                let values = self
                    .values
                    .clone()
                    .ok_or_else(|| key_error("schedule.values", "list family needs values"))?;
                let tail = self.tail.as_ref().map(|t| t.build().map(Box::new)).transpose()?;
                FactorSchedule::List { values, tail }
            }
        };
        base.validate().map_err(|e| key_error("schedule", e.to_string()))?;
        Ok(base.shifted(self.shift.unwrap_or(0)))
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub translation_step: Option<f64>,
    pub kappa: Option<f64>,
    pub sigma: Option<f64>,
    /// Constant radii `r` and `R`; both or neither.
    pub inner: Option<f64>,
    pub outer: Option<f64>,
    pub isometric_from: Option<usize>,
    pub rotation_angle: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationConfig {
    pub enabled: Option<bool>,
    pub degree: Option<usize>,
    pub fraction: Option<f64>,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    Exact,
    Bracketed,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    pub z0: Option<[f64; 2]>,
    pub w: Option<[f64; 2]>,
    /// Extra seeded random partners `w` in `|w| <= pair_radius`.
    pub random_pairs: Option<usize>,
    pub pair_radius: Option<f64>,
    pub eps_contract: Option<f64>,
    pub eps_flat: Option<f64>,
    pub window: Option<usize>,
    pub mode: Option<ModeConfig>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UFieldConfig {
    pub z0: Option<[f64; 2]>,
    pub grid: Option<usize>,
    pub radius: Option<f64>,
    pub window: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionConfig {
    pub c: Option<f64>,
    pub radial_samples: Option<usize>,
    pub angular_samples: Option<usize>,
    pub limit_tol: Option<f64>,
    pub limit_cap: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LandauConfig {
    /// Factor parameters to check; when absent the composition `B_n` of the schedule is checked.
    pub a: Option<Vec<f64>>,
    pub compose: Option<usize>,
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuFamily {
    Geometric,
    Constant,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryConfig {
    pub r: Option<f64>,
    pub r_prime: Option<f64>,
    pub mu_family: Option<MuFamily>,
    pub mu_scale: Option<f64>,
    pub mu_ratio: Option<f64>,
    pub mu: Option<f64>,
    #[serde(rename = "N")]
    pub start: Option<usize>,
    pub n_max: Option<usize>,
    pub eta: Option<f64>,
    pub theta_samples: Option<usize>,
    pub tail_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QhdDomain {
    Disc,
    Annulus,
    Raster,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QhdConfig {
    pub domain: Option<QhdDomain>,
    pub inner_radius: Option<f64>,
    pub raster: Option<String>,
    pub resolution: Option<usize>,
    pub z: Option<[f64; 2]>,
    pub w: Option<[f64; 2]>,
    pub random_pairs: Option<usize>,
    pub pair_radius: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub samples: Option<usize>,
    pub omega_samples: Option<usize>,
    pub omega_threshold: Option<f64>,
}

/// Line (1-based) of a byte offset.
fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| line_of(text, s.start)).unwrap_or(0);
            let message = e.message().to_string();
            let key = message
                .split('`')
                .nth(1)
                .map(str::to_string)
                .or_else(|| {
                    e.span()
                        .map(|s| text[s].split('=').next().unwrap_or("").trim().to_string())
                })
                .unwrap_or_default();
            Error::Config { line, key, message }
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn schedule(&self) -> Result<FactorSchedule<f64>> {
        self.schedule.clone().unwrap_or_default().build()
    }

    pub fn chain(&self) -> Result<ChainModel<f64>> {
        let mut model = ChainModel::new(self.schedule()?)?;
        let c = self.chain.clone().unwrap_or_default();
        let wrap = |key: &'static str| move |e: Error| key_error(key, e.to_string());
        if let Some(step) = c.translation_step {
            model = model
                .with_translation_step(step)
                .map_err(wrap("chain.translation_step"))?;
        }
        match (c.inner, c.outer, c.kappa, c.sigma) {
            (None, None, kappa, sigma) => {
                if kappa.is_some() || sigma.is_some() {
                    let rule = RadiiRule::Adaptive {
                        kappa: kappa.unwrap_or(0.5),
                        sigma: sigma.unwrap_or(0.25),
                    };
                    model = model.with_radii(rule).map_err(wrap("chain.kappa"))?;
                }
            }
            (Some(inner), Some(outer), None, None) => {
                model = model
                    .with_radii(RadiiRule::Constant { inner, outer })
                    .map_err(wrap("chain.inner"))?;
            }
            _ => {
                return Err(key_error(
                    "chain.inner",
                    "give both inner and outer, and not together with kappa/sigma",
                ))
            }
        }
        if let Some(from) = c.isometric_from {
            model = model.with_isometry_from(from, c.rotation_angle.unwrap_or(0.5));
        } else if c.rotation_angle.is_some() {
            return Err(key_error("chain.rotation_angle", "only meaningful with isometric_from"));
        }
        if let Some(p) = &self.perturbation {
            if p.enabled.unwrap_or(true) {
                let mut pert = Perturbation::new(self.seed());
                pert.degree = p.degree.unwrap_or(pert.degree);
                pert.fraction = p.fraction.unwrap_or(pert.fraction);
                pert.q = p.q.unwrap_or(pert.q);
                if pert.degree == 0 {
                    return Err(key_error("perturbation.degree", "degree must be at least 1"));
                }
                model = model.with_perturbation(pert).map_err(wrap("perturbation"))?;
            }
        }
        Ok(model)
    }

    pub fn mode(&self) -> MetricMode {
        match self.classify.as_ref().and_then(|c| c.mode) {
            Some(ModeConfig::Bracketed) => MetricMode::Bracketed,
            Some(ModeConfig::Exact) => MetricMode::ExactDiscModel,
            None if self.perturbation.as_ref().is_some_and(|p| p.enabled.unwrap_or(true)) => MetricMode::Bracketed,
            None => MetricMode::ExactDiscModel,
        }
    }

    pub fn surgery_plan(&self) -> Result<SurgerySchedule<f64>> {
        let s = self.surgery.clone().unwrap_or_default();
        let mu_rule = match s.mu_family.unwrap_or(MuFamily::Geometric) {
            MuFamily::Geometric => {
                if s.mu.is_some() {
                    return Err(key_error(
                        "surgery.mu",
                        "use mu_scale and mu_ratio with the geometric family",
                    ));
                }
                MuRule::Geometric {
                    scale: s.mu_scale.unwrap_or(10.0),
                    ratio: s.mu_ratio.unwrap_or(2.0),
                }
            }
            MuFamily::Constant => {
                if s.mu_scale.is_some() || s.mu_ratio.is_some() {
                    return Err(key_error("surgery.mu_scale", "not used by the constant family"));
                }
                MuRule::Constant {
                    mu: s
                        .mu
                        .ok_or_else(|| key_error("surgery.mu", "constant family needs mu"))?,
                }
            }
        };
        let mut plan = SurgerySchedule::new(
            self.chain()?,
            mu_rule,
            s.r.unwrap_or(0.1),
            s.r_prime.unwrap_or(0.2),
            s.start.unwrap_or(5),
        )
        .map_err(|e| key_error("surgery", e.to_string()))?;
        plan.eta = s.eta.unwrap_or(0.0);
        plan.theta_samples = s.theta_samples.unwrap_or(plan.theta_samples);
        plan.tail_tolerance = s.tail_tol.unwrap_or(plan.tail_tolerance);
        plan.validate().map_err(|e| key_error("surgery", e.to_string()))?;
        Ok(plan)
    }
}
