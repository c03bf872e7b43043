//! Billingsley mutual dimension: mutual normalizability, the binary
//! `(β₁, β₂)`-equivalence solver and the mutual divergence formula.

use crate::error::{Error, Result};
use crate::estimate::DensityTrace;
use crate::info::{cross_entropy, mutual_information};
use crate::measures::{JointPmf, Pmf};
use crate::scalar::Scalar;

/// Inputs of the binary equivalence solver.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceProblem<T = f64> {
    pub alpha1: Pmf<T>,
    pub beta1: Pmf<T>,
    pub beta2: Pmf<T>,
}

/// Which ordering of `(β₁, β₂)` holds. At most one can.
///
/// 1. `β₂(0) < β₁(1) < β₁(0) < β₂(1)`
/// 2. `β₂(1) < β₁(0) < β₁(1) < β₂(0)`
/// 3. `β₂(0) < β₁(0) < β₁(1) < β₂(1)`
/// 4. `β₂(1) < β₁(1) < β₁(0) < β₂(0)`
/// 5. `β₁` uniform and `β₂` not uniform
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionId {
    One,
    Two,
    Three,
    Four,
    Five,
    None,
}

impl ConditionId {
    pub fn number(self) -> Option<u8> {
        match self {
            ConditionId::One => Some(1),
            ConditionId::Two => Some(2),
            ConditionId::Three => Some(3),
            ConditionId::Four => Some(4),
            ConditionId::Five => Some(5),
            ConditionId::None => None,
        }
    }
}

fn binary_positive<T: Scalar>(name: &str, b: &Pmf<T>) -> Result<()> {
    if b.k() != 2 {
        return Err(Error::UnsupportedAlphabet(format!("{name} has {} symbols; solver is binary", b.k())));
    }
    if !(b.min_prob() > T::zero()) {
        return Err(Error::Range(format!("{name} must be strictly positive")));
    }
    Ok(())
}

fn increasing<T: Scalar>(chain: [T; 4]) -> bool {
    chain.windows(2).all(|p| p[0] < p[1])
}

pub fn check_conditions<T: Scalar>(beta1: &Pmf<T>, beta2: &Pmf<T>) -> Result<ConditionId> {
    binary_positive("beta1", beta1)?;
    binary_positive("beta2", beta2)?;
    let (a0, a1) = (beta1.prob(0), beta1.prob(1));
    let (b0, b1) = (beta2.prob(0), beta2.prob(1));
    let id = if increasing([b0, a1, a0, b1]) {
        ConditionId::One
    } else if increasing([b1, a0, a1, b0]) {
        ConditionId::Two
    } else if increasing([b0, a0, a1, b1]) {
        ConditionId::Three
    } else if increasing([b1, a1, a0, b0]) {
        ConditionId::Four
    } else if beta1.is_uniform(T::PROB_EQ_TOL) && !beta2.is_uniform(T::PROB_EQ_TOL) {
        ConditionId::Five
    } else {
        ConditionId::None
    };
    Ok(id)
}

/// `f(x) = (x·log(β₁(1)/β₁(0)) + log(β₂(1)/β₁(1))) / log(β₂(1)/β₂(0))`.
pub fn f_map<T: Scalar>(x: T, beta1: &Pmf<T>, beta2: &Pmf<T>) -> Result<T> {
    binary_positive("beta1", beta1)?;
    binary_positive("beta2", beta2)?;
    if beta2.is_uniform(T::PROB_EQ_TOL) {
        return Err(Error::ZeroDenominator("beta2 is uniform".into()));
    }
    let slope = (beta1.prob(1) / beta1.prob(0)).log2();
    let intercept = (beta2.prob(1) / beta1.prob(1)).log2();
    let denom = (beta2.prob(1) / beta2.prob(0)).log2();
    Ok((x * slope + intercept) / denom)
}

/// True when `Σ a₁ log 1/b₁ = Σ a₂ log 1/b₂` within `T::BITS_EQ_TOL`.
pub fn is_equivalent<T: Scalar>(a1: &Pmf<T>, a2: &Pmf<T>, b1: &Pmf<T>, b2: &Pmf<T>) -> Result<bool> {
    let c1 = cross_entropy(a1, b1)?.value();
    let c2 = cross_entropy(a2, b2)?.value();
    Ok(c1.is_finite() && c2.is_finite() && (c1 - c2).abs() <= T::BITS_EQ_TOL)
}

/// The unique binary `α₂` that is `(β₁, β₂)`-equivalent to `α₁`.
pub fn equivalent_measure<T: Scalar>(prob: &EquivalenceProblem<T>) -> Result<Pmf<T>> {
    if prob.alpha1.k() != 2 {
        return Err(Error::UnsupportedAlphabet("alpha1 must be binary".into()));
    }
    if check_conditions(&prob.beta1, &prob.beta2)? == ConditionId::None {
        return Err(Error::NoSolution("(beta1, beta2) satisfies none of the five orderings".into()));
    }
    let a0 = f_map(prob.alpha1.prob(0), &prob.beta1, &prob.beta2)?;
    let alpha2 = Pmf::new(vec![a0, T::one() - a0])?;
    if !is_equivalent(&prob.alpha1, &alpha2, &prob.beta1, &prob.beta2)? {
        return Err(Error::NoSolution("solution failed the cross-entropy check".into()));
    }
    Ok(alpha2)
}

/// `ℓ_{β₁}(u[..n]) / ℓ_{β₂}(w[..n])` at each schedule point.
pub fn normalizability_ratio_trace(
    u: &[u8],
    w: &[u8],
    beta1: &Pmf<f64>,
    beta2: &Pmf<f64>,
    schedule: &[usize],
) -> Result<DensityTrace> {
    for (name, b) in [("beta1", beta1), ("beta2", beta2)] {
        if !(b.min_prob() > 0.0) {
            return Err(Error::Range(format!("{name} must be strictly positive")));
        }
    }
    if let Some(&n) = schedule.iter().find(|&&n| n == 0 || n > u.len() || n > w.len()) {
        return Err(Error::InsufficientData(format!("schedule point {n} outside the words")));
    }
    let ratios = schedule
        .iter()
        .map(|&n| {
            let lu = prefix_self_information(&u[..n], beta1)?;
            let lw = prefix_self_information(&w[..n], beta2)?;
            Ok(lu / lw)
        })
        .collect::<Result<Vec<_>>>()?;
    DensityTrace::unbounded(schedule.to_vec(), ratios)
}

/// Self-information via symbol counts: `Σ_s count(s)·log 1/β(s)`.
fn prefix_self_information(w: &[u8], beta: &Pmf<f64>) -> Result<f64> {
    let mut counts = vec![0u64; beta.k()];
    for &s in w {
        *counts
            .get_mut(s as usize)
            .ok_or(Error::SymbolOutOfRange { symbol: s as usize, alphabet: beta.k() })? += 1;
    }
    Ok(crate::scalar::compensated_sum(
        counts.iter().zip(beta.probs()).map(|(&c, &b)| -(c as f64) * b.log2()),
    ))
}

/// Billingsley mutual dimension of a coupled random pair drawn from `alpha`:
/// `I(α₁:α₂) / (𝓗(α₁) + 𝓓(α₁‖β₁))`.
///
/// The marginals must be `(β₁, β₂)`-equivalent; the value is then the same
/// with `(α₂, β₂)` in the denominator.
pub fn billingsley_mdim<T: Scalar>(alpha: &JointPmf<T>, beta1: &Pmf<T>, beta2: &Pmf<T>) -> Result<T> {
    for (name, b) in [("beta1", beta1), ("beta2", beta2)] {
        if !(b.min_prob() > T::zero()) {
            return Err(Error::Range(format!("{name} must be strictly positive")));
        }
    }
    let (a1, a2) = (alpha.first(), alpha.second());
    if !is_equivalent(a1, a2, beta1, beta2)? {
        return Err(Error::NotNormalizable(
            "marginals are not (beta1, beta2)-equivalent".into(),
        ));
    }
    let mi = mutual_information(alpha).value();
    let d1 = cross_entropy(a1, beta1)?.value();
    let d2 = cross_entropy(a2, beta2)?.value();
    if d1 == T::zero() {
        return Err(Error::ZeroDenominator("cross-entropy of alpha1 against beta1 is 0".into()));
    }
    let v1 = mi / d1;
    let v2 = mi / d2;
    if (v1 - v2).abs() > T::BITS_EQ_TOL {
        return Err(Error::NotNormalizable(format!("denominators disagree: {v1} vs {v2}")));
    }
    Ok(v1)
}
