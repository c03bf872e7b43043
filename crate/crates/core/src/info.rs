//! Exact information quantities. All logarithms are base 2.
//!
//! Terms with zero probability mass contribute nothing (`0·log 0 = 0`). A
//! divergence against a pmf that misses part of the support is `+∞`, carried
//! as an infinite [`Bits`] value rather than an error so results compose.
//! Sums run in ascending symbol order with compensated accumulation.

use crate::error::{Error, Result};
use crate::measures::{JointPmf, MeasureSeq, Pmf, PositionPmf};
use crate::scalar::{compensated_sum, Scalar};

/// An information quantity in bits. May be `±∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Bits<T = f64>(pub T);

impl<T: Scalar> Bits<T> {
    pub fn value(self) -> T {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

fn same_alphabet<T: Scalar>(a: &Pmf<T>, b: &Pmf<T>) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::Dimension(format!("pmfs on {} and {} symbols", a.k(), b.k())));
    }
    Ok(())
}

fn entropy_of<T: Scalar>(p: &[T]) -> T {
    compensated_sum(
        p.iter()
            .filter(|&&x| x > T::zero())
            .map(|&x| -x * x.log2()),
    )
}

/// Shannon entropy `𝓗(α) = Σ α(a) log 1/α(a)`.
pub fn entropy<T: Scalar>(a: &Pmf<T>) -> Bits<T> {
    Bits(entropy_of(a.probs()))
}

/// Entropy of a joint table viewed as one pmf on `k²` symbols.
pub fn joint_entropy<T: Scalar>(j: &JointPmf<T>) -> Bits<T> {
    Bits(entropy_of(j.probs()))
}

/// Mutual information `I(α₁:α₂) = Σ α(a,b) log α(a,b)/(α₁(a)α₂(b))`.
pub fn mutual_information<T: Scalar>(j: &JointPmf<T>) -> Bits<T> {
    let k = j.k();
    let (m1, m2) = (j.first(), j.second());
    let terms = (0..k * k).filter_map(|i| {
        let p = j.probs()[i];
        (p > T::zero()).then(|| p * (p / (m1.prob(i / k) * m2.prob(i % k))).log2())
    });
    Bits(compensated_sum(terms).max(T::zero()))
}

/// Kullback-Leibler divergence `𝓓(α‖β)`; `+∞` when `β` misses support of `α`.
pub fn kl_divergence<T: Scalar>(a: &Pmf<T>, b: &Pmf<T>) -> Result<Bits<T>> {
    same_alphabet(a, b)?;
    let mut terms = Vec::with_capacity(a.k());
    for (&x, &y) in a.probs().iter().zip(b.probs()) {
        if x > T::zero() {
            if y == T::zero() {
                return Ok(Bits(T::infinity()));
            }
            terms.push(x * (x / y).log2());
        }
    }
    Ok(Bits(compensated_sum(terms).max(T::zero())))
}

/// Cross-entropy `Σ α(a) log 1/β(a) = 𝓗(α) + 𝓓(α‖β)`.
pub fn cross_entropy<T: Scalar>(a: &Pmf<T>, b: &Pmf<T>) -> Result<Bits<T>> {
    same_alphabet(a, b)?;
    let mut terms = Vec::with_capacity(a.k());
    for (&x, &y) in a.probs().iter().zip(b.probs()) {
        if x > T::zero() {
            if y == T::zero() {
                return Ok(Bits(T::infinity()));
            }
            terms.push(-x * y.log2());
        }
    }
    Ok(Bits(compensated_sum(terms)))
}

/// Self-information `ℓ_β(w) = Σᵢ log 1/β(w[i])`; `+∞` if some symbol of `w`
/// has probability zero.
pub fn self_information<T: Scalar>(b: &Pmf<T>, w: &[u8]) -> Result<Bits<T>> {
    let costs: Vec<T> = b.probs().iter().map(|&x| -x.log2()).collect();
    let mut terms = Vec::with_capacity(w.len());
    for &s in w {
        let s = s as usize;
        let c = *costs.get(s).ok_or(Error::SymbolOutOfRange { symbol: s, alphabet: b.k() })?;
        terms.push(c);
    }
    Ok(Bits(compensated_sum(terms)))
}

/// Pointwise mutual information `log μ(u,w)/(μ₁(u)μ₂(w))` under a pair
/// measure, accumulated per position. `-∞` when the pair has probability 0.
pub fn pointwise_mi(m: &MeasureSeq, u: &[u8], w: &[u8]) -> Result<Bits<f64>> {
    if !m.is_joint() {
        return Err(Error::Dimension("pointwise mutual information needs a pair measure".into()));
    }
    if u.len() != w.len() {
        return Err(Error::Dimension(format!("words of lengths {} and {}", u.len(), w.len())));
    }
    let k = m.sigma();
    let mut terms = Vec::with_capacity(u.len());
    for (n, (&a, &b)) in u.iter().zip(w).enumerate() {
        let (a, b) = (a as usize, b as usize);
        if a >= k || b >= k {
            return Err(Error::SymbolOutOfRange { symbol: a.max(b), alphabet: k });
        }
        let pos = m.at(n);
        let PositionPmf::Joint(j) = pos.as_ref() else {
            unreachable!("pair measure yields joint pmfs")
        };
        let joint = j.get(a, b);
        if joint == 0.0 {
            return Ok(Bits(f64::NEG_INFINITY));
        }
        terms.push((joint / (j.first().prob(a) * j.second().prob(b))).log2());
    }
    Ok(Bits(compensated_sum(terms)))
}

/// Hellinger distance `√(Σ (√α₁(a) − √α₂(a))²)`, in `[0, √2]`. Dimensionless.
pub fn hellinger<T: Scalar>(a: &Pmf<T>, b: &Pmf<T>) -> Result<T> {
    same_alphabet(a, b)?;
    let sq = compensated_sum(a.probs().iter().zip(b.probs()).map(|(&x, &y)| {
        let d = x.sqrt() - y.sqrt();
        d * d
    }));
    Ok(sq.sqrt())
}
