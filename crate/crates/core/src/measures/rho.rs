use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Schedule of correlations `ρₙ ∈ [-1, 1]` for the coupled-bit family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RhoSchedule {
    /// `ρₙ = ρ`.
    Const(f64),
    /// `ρₙ = 1/√(n + c)`, `c ≥ 1`.
    InverseSqrt { offset: f64 },
    /// `ρₙ = 1/(n + c)`, `c ≥ 1`.
    Harmonic { offset: f64 },
    /// `ρₙ = ρ₀·rⁿ`, `|r| < 1`.
    Geometric { rho0: f64, ratio: f64 },
    /// Listed values, then `tail` forever.
    Explicit { values: Vec<f64>, tail: f64 },
}

fn in_unit(x: f64) -> bool {
    x.abs() <= 1.0
}

impl RhoSchedule {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            RhoSchedule::Const(r) => in_unit(*r),
            RhoSchedule::InverseSqrt { offset } | RhoSchedule::Harmonic { offset } => {
                *offset >= 1.0 && offset.is_finite()
            }
            RhoSchedule::Geometric { rho0, ratio } => in_unit(*rho0) && ratio.abs() < 1.0,
            RhoSchedule::Explicit { values, tail } => {
                values.iter().all(|r| in_unit(*r)) && in_unit(*tail)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Range(format!("invalid rho schedule {self:?}")))
        }
    }

    pub fn rho_at(&self, n: usize) -> f64 {
        match self {
            RhoSchedule::Const(r) => *r,
            RhoSchedule::InverseSqrt { offset } => 1.0 / (n as f64 + offset).sqrt(),
            RhoSchedule::Harmonic { offset } => 1.0 / (n as f64 + offset),
            RhoSchedule::Geometric { rho0, ratio } => {
                rho0 * ratio.powi(n.min(i32::MAX as usize) as i32)
            }
            RhoSchedule::Explicit { values, tail } => values.get(n).copied().unwrap_or(*tail),
        }
    }

    pub fn limit(&self) -> f64 {
        match self {
            RhoSchedule::Const(r) => *r,
            RhoSchedule::InverseSqrt { .. }
            | RhoSchedule::Harmonic { .. }
            | RhoSchedule::Geometric { .. } => 0.0,
            RhoSchedule::Explicit { tail, .. } => *tail,
        }
    }

    /// `sup_n |ρₙ|`.
    pub fn sup_abs(&self) -> f64 {
        match self {
            RhoSchedule::Const(r) => r.abs(),
            RhoSchedule::InverseSqrt { offset } => 1.0 / offset.sqrt(),
            RhoSchedule::Harmonic { offset } => 1.0 / offset,
            RhoSchedule::Geometric { rho0, .. } => rho0.abs(),
            RhoSchedule::Explicit { values, tail } => {
                values.iter().map(|r| r.abs()).fold(tail.abs(), f64::max)
            }
        }
    }
}
