use serde::{Deserialize, Serialize};

use super::BlaschkeFactor;
use crate::scalar::{from_usize, Real};
use crate::{Error, Result};

/// Tail behaviour of `sum (1 - a_n)` as far as the family can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictHint {
    Diverging,
    Converging,
    Inconclusive,
}

/// Rule producing the factor parameter `a_n` for every index `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorSchedule<T> {
    /// `a_n = n / (n + 1)`.
    Harmonic,
    /// `a_n = 1 - q^n`.
    Geometric { q: T },
    /// `a_n = 0`, so every factor is `z^2`.
    Trivial,
    /// `a_n = a` for every n.
    Constant { a: T },
    /// Explicit values for `n = 1..=len`, then the tail rule evaluated at the same absolute index.
    List {
        values: Vec<T>,
        tail: Option<Box<FactorSchedule<T>>>,
    },
    /// `a_n` of the base schedule at `n + by`.
    Shifted { base: Box<FactorSchedule<T>>, by: usize },
}

impl<T: Real> FactorSchedule<T> {
    pub fn geometric(q: T) -> Result<Self> {
        let s = Self::Geometric { q };
        s.validate()?;
        Ok(s)
    }

    pub fn shifted(self, by: usize) -> Self {
        match self {
            Self::Shifted { base, by: b } => Self::Shifted { base, by: b + by },
            other if by == 0 => other,
            other => Self::Shifted {
                base: Box::new(other),
                by,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Harmonic | Self::Trivial => Ok(()),
            Self::Geometric { q } => {
                if *q > T::zero() && *q < T::one() {
                    Ok(())
                } else {
                    Err(Error::domain(format!("geometric ratio {q} not in (0, 1)")))
                }
            }
            Self::Constant { a } => BlaschkeFactor::new(*a).map(|_| ()),
            Self::List { values, tail } => {
                if values.is_empty() && tail.is_none() {
                    return Err(Error::domain("empty list schedule without tail"));
                }
                for v in values {
                    BlaschkeFactor::new(*v)?;
                }
                match tail {
                    Some(t) => t.validate(),
                    None => Ok(()),
                }
            }
            Self::Shifted { base, .. } => base.validate(),
        }
    }

    /// `1 - a_n`, computed without cancellation for the closed-form families.
    pub fn gap(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::domain("factor index starts at 1"));
        }
        match self {
            Self::Harmonic => Ok(T::one() / from_usize::<T>(n + 1)),
            Self::Geometric { q } => Ok(q.powf(from_usize(n))),
            Self::Trivial => Ok(T::one()),
            Self::Constant { a } => Ok(T::one() - *a),
            Self::List { values, tail } => match values.get(n - 1) {
                Some(v) => Ok(T::one() - *v),
                None => match tail {
                    Some(t) => t.gap(n),
                    None => Err(Error::domain(format!("list schedule has no entry for n = {n}"))),
                },
            },
            Self::Shifted { base, by } => base.gap(n + by),
        }
    }

    /// `a_n`.
    pub fn a(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::domain("factor index starts at 1"));
        }
        match self {
            Self::Harmonic => Ok(from_usize::<T>(n) / from_usize::<T>(n + 1)),
            Self::Trivial => Ok(T::zero()),
            Self::Constant { a } => Ok(*a),
            Self::List { values, tail } => match values.get(n - 1) {
                Some(v) => Ok(*v),
                None => match tail {
                    Some(t) => t.a(n),
                    None => Err(Error::domain(format!("list schedule has no entry for n = {n}"))),
                },
            },
            Self::Shifted { base, by } => base.a(n + by),
            Self::Geometric { .. } => Ok(T::one() - self.gap(n)?),
        }
    }

    pub fn factor(&self, n: usize) -> Result<BlaschkeFactor<T>> {
        BlaschkeFactor::from_parts(self.a(n)?, self.gap(n)?)
    }

    pub fn verdict_hint(&self) -> VerdictHint {
        match self {
            Self::Harmonic | Self::Trivial | Self::Constant { .. } => VerdictHint::Diverging,
            Self::Geometric { .. } => VerdictHint::Converging,
            Self::List { tail: Some(t), .. } => t.verdict_hint(),
            Self::List { tail: None, .. } => VerdictHint::Inconclusive,
            Self::Shifted { base, .. } => base.verdict_hint(),
        }
    }

    /// Whether the family claims `a_n` increasing to 1.
    pub fn claims_increasing_to_one(&self) -> bool {
        match self {
            Self::Harmonic | Self::Geometric { .. } => true,
            Self::List { tail: Some(t), .. } => t.claims_increasing_to_one(),
            Self::Shifted { base, .. } => base.claims_increasing_to_one(),
            _ => false,
        }
    }
}
