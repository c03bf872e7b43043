//! Hellinger-sum dichotomy for coupled-bit schedules.
//!
//! For strongly positive measure sequences, the sum of squared Hellinger
//! distances decides whether the two measures share random sequences (finite
//! sum) or share none (infinite sum). Applied to the ρ-family against the
//! product of its marginals, the per-position distance has a closed form, and
//! each built-in schedule family is classified analytically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{MeasureSeq, RhoSchedule};
use crate::scalar::Scalar;

/// Partial sums reported by [`classify_schedule`] unless a length is given.
pub const DEFAULT_PARTIAL_TERMS: usize = 1000;

/// Squared Hellinger distance between `rho_joint(ρ)` and the product of its
/// (uniform) marginals: `2 − √(1+ρ) − √(1−ρ)`.
///
/// Evaluated as `2ρ² / ((a+b)(1+a)(1+b))` with `a = √(1+ρ)`, `b = √(1−ρ)`,
/// which is the same quantity without cancellation near `ρ = 0`.
pub fn hellinger_sq_coupled<T: Scalar>(rho: T) -> Result<T> {
    if !(rho.abs() <= T::one()) {
        return Err(Error::Range(format!("rho = {rho} outside [-1, 1]")));
    }
    let a = (T::one() + rho).sqrt();
    let b = (T::one() - rho).sqrt();
    let two = T::lit(2.0);
    Ok(two * rho * rho / ((a + b) * (T::one() + a) * (T::one() + b)))
}

/// Cumulative sums of [`hellinger_sq_coupled`]`(ρₙ)` for `n < terms`.
///
/// Terms are evaluated in parallel; accumulation is sequential in index order.
pub fn hellinger_partial_sums(schedule: &RhoSchedule, terms: usize) -> Result<Vec<f64>> {
    if terms == 0 {
        return Err(Error::Range("need at least one term".into()));
    }
    schedule.validate()?;
    let sq: Vec<f64> = (0..terms)
        .into_par_iter()
        .map(|n| hellinger_sq_coupled(schedule.rho_at(n)).expect("validated schedule"))
        .collect();
    let mut acc = 0.0;
    Ok(sq
        .into_iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumTag {
    SumConverges,
    SumDiverges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Decided from the exact form of the terms.
    ClosedForm,
    /// Decided by comparison with a series of known behavior.
    BoundCertified,
}

/// `sup H²(ρ)/ρ²` over `|ρ| ≤ 1`, attained at `|ρ| = 1`.
pub const H2_OVER_RHO2_MAX: f64 = 0.585_786_437_626_904_9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyVerdict {
    pub tag: SumTag,
    pub basis: Basis,
    pub partial_sums: Vec<f64>,
    /// Upper bound on the infinite sum, for convergent schedules.
    pub bound: Option<f64>,
    /// False when some `|ρₙ| = 1`, which breaks strong positivity.
    pub strongly_positive: bool,
    pub interpretation: String,
}

const CONVERGES: &str = "sum of squared Hellinger distances converges: a pair is random for the coupled measure \
     iff it is random for the product of its marginals";
const DIVERGES: &str = "sum of squared Hellinger distances diverges: no pair is random for both the coupled \
     measure and the product of its marginals, so a coupled random pair is not independently random";
const NOT_POSITIVE: &str = " (schedule reaches |rho| = 1, so the measures are not strongly positive and the \
     dichotomy does not apply)";

/// Analytic classification of a schedule; `partial_sums` has
/// [`DEFAULT_PARTIAL_TERMS`] entries.
pub fn classify_schedule(schedule: &RhoSchedule) -> Result<DichotomyVerdict> {
    classify_schedule_with(schedule, DEFAULT_PARTIAL_TERMS)
}

pub fn classify_schedule_with(schedule: &RhoSchedule, terms: usize) -> Result<DichotomyVerdict> {
    schedule.validate().map_err(|e| Error::Unclassifiable(e.to_string()))?;
    let c = H2_OVER_RHO2_MAX;
    let (tag, basis, bound) = match schedule {
        RhoSchedule::Const(r) if *r == 0.0 => (SumTag::SumConverges, Basis::ClosedForm, Some(0.0)),
        RhoSchedule::Const(_) => (SumTag::SumDiverges, Basis::ClosedForm, None),
        // ρₙ² = 1/(n+c): harmonic series.
        RhoSchedule::InverseSqrt { .. } => (SumTag::SumDiverges, Basis::BoundCertified, None),
        // Σ 1/(n+c)² ≤ 1/c² + 1/c.
        RhoSchedule::Harmonic { offset } => (
            SumTag::SumConverges,
            Basis::BoundCertified,
            Some(c * (1.0 / (offset * offset) + 1.0 / offset)),
        ),
        RhoSchedule::Geometric { rho0, ratio } => (
            SumTag::SumConverges,
            Basis::BoundCertified,
            Some(c * rho0 * rho0 / (1.0 - ratio * ratio)),
        ),
        RhoSchedule::Explicit { values, tail } => {
            if *tail == 0.0 {
                let head: f64 = values
                    .iter()
                    .map(|&r| hellinger_sq_coupled(r).expect("validated schedule"))
                    .sum();
                (SumTag::SumConverges, Basis::ClosedForm, Some(head * (1.0 + 1e-12)))
            } else {
                (SumTag::SumDiverges, Basis::ClosedForm, None)
            }
        }
    };
    let strongly_positive = schedule.sup_abs() < 1.0;
    let mut interpretation = match tag {
        SumTag::SumConverges => CONVERGES.to_string(),
        SumTag::SumDiverges => DIVERGES.to_string(),
    };
    if !strongly_positive {
        interpretation.push_str(NOT_POSITIVE);
    }
    Ok(DichotomyVerdict {
        tag,
        basis,
        partial_sums: hellinger_partial_sums(schedule, terms.max(1))?,
        bound,
        strongly_positive,
        interpretation,
    })
}

/// Smallest per-symbol probability, observed over the first positions and,
/// when known, over all positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityMargin {
    pub observed: f64,
    pub infimum: Option<f64>,
}

pub fn strong_positivity_margin(m: &MeasureSeq, terms: usize) -> Result<PositivityMargin> {
    if terms == 0 {
        return Err(Error::Range("need at least one position".into()));
    }
    let observed = (0..terms).map(|n| m.at(n).min_prob()).fold(1.0, f64::min);
    let infimum = match m {
        MeasureSeq::Constant(p) => p.min_prob(),
        MeasureSeq::Rho(s) => (1.0 - s.sup_abs()) / 4.0,
        MeasureSeq::Tabulated { head, tail } => head.iter().map(|p| p.min_prob()).fold(tail.min_prob(), f64::min),
    };
    Ok(PositivityMargin { observed, infimum: Some(infimum) })
}
