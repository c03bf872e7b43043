use std::borrow::Cow;

use super::{rho_joint, JointPmf, Pmf, RhoSchedule};
use crate::error::{Error, Result};

/// Per-position pmf of a longitudinal product: on `Σ` or on `Σ × Σ`.
#[derive(Debug, Clone, PartialEq)]
pub enum PositionPmf {
    Single(Pmf<f64>),
    Joint(JointPmf<f64>),
}

impl PositionPmf {
    pub fn is_joint(&self) -> bool {
        matches!(self, PositionPmf::Joint(_))
    }

    /// `|Σ|`.
    pub fn sigma(&self) -> usize {
        match self {
            PositionPmf::Single(p) => p.k(),
            PositionPmf::Joint(j) => j.k(),
        }
    }

    /// Number of symbols the pmf is defined on: `k` or `k²`.
    pub fn alphabet_size(&self) -> usize {
        self.flat_probs().len()
    }

    /// Probabilities indexed by symbol; joint tables use [`pair_symbol`].
    pub fn flat_probs(&self) -> &[f64] {
        match self {
            PositionPmf::Single(p) => p.probs(),
            PositionPmf::Joint(j) => j.probs(),
        }
    }

    pub fn min_prob(&self) -> f64 {
        self.flat_probs().iter().copied().fold(1.0, f64::min)
    }

    fn same_shape(&self, other: &PositionPmf) -> bool {
        self.is_joint() == other.is_joint() && self.sigma() == other.sigma()
    }
}

impl From<Pmf<f64>> for PositionPmf {
    fn from(p: Pmf<f64>) -> Self {
        PositionPmf::Single(p)
    }
}

impl From<JointPmf<f64>> for PositionPmf {
    fn from(j: JointPmf<f64>) -> Self {
        PositionPmf::Joint(j)
    }
}

/// Index of the pair `(a, b)` in the product alphabet: `a·k + b`.
#[inline]
pub fn pair_symbol(a: usize, b: usize, k: usize) -> usize {
    a * k + b
}

/// Encodes two equal-length words over `Σ` as one word over `Σ × Σ`.
pub fn pair_word(u: &[u8], w: &[u8], k: usize) -> Result<Vec<u16>> {
    if u.len() != w.len() {
        return Err(Error::Dimension(format!("pair of lengths {} and {}", u.len(), w.len())));
    }
    u.iter()
        .zip(w)
        .map(|(&a, &b)| {
            let (a, b) = (a as usize, b as usize);
            if a >= k || b >= k {
                return Err(Error::SymbolOutOfRange { symbol: a.max(b), alphabet: k });
            }
            Ok(pair_symbol(a, b, k) as u16)
        })
        .collect()
}

/// Probability of a cylinder, with its base-2 logarithm accumulated separately
/// so that long words keep a usable value after the linear product underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    pub prob: f64,
    pub log2: f64,
}

/// Longitudinal product measure `μ[α⃗]`, restricted to variants whose limit
/// pmf is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSeq {
    /// The same pmf at every position.
    Constant(PositionPmf),
    /// The coupled-bit family `rho_joint(ρₙ)`.
    Rho(RhoSchedule),
    /// Listed pmfs for the first positions, then `tail` forever.
    Tabulated { head: Vec<PositionPmf>, tail: PositionPmf },
}

impl MeasureSeq {
    pub fn constant(p: impl Into<PositionPmf>) -> Self {
        MeasureSeq::Constant(p.into())
    }

    pub fn rho_family(schedule: RhoSchedule) -> Result<Self> {
        schedule.validate()?;
        Ok(MeasureSeq::Rho(schedule))
    }

    pub fn tabulated(head: Vec<PositionPmf>, tail: PositionPmf) -> Result<Self> {
        if let Some(bad) = head.iter().position(|p| !p.same_shape(&tail)) {
            return Err(Error::Dimension(format!("tabulated position {bad} differs in shape from tail")));
        }
        Ok(MeasureSeq::Tabulated { head, tail })
    }

    pub fn is_joint(&self) -> bool {
        match self {
            MeasureSeq::Constant(p) => p.is_joint(),
            MeasureSeq::Rho(_) => true,
            MeasureSeq::Tabulated { tail, .. } => tail.is_joint(),
        }
    }

    /// `|Σ|`.
    pub fn sigma(&self) -> usize {
        match self {
            MeasureSeq::Constant(p) => p.sigma(),
            MeasureSeq::Rho(_) => 2,
            MeasureSeq::Tabulated { tail, .. } => tail.sigma(),
        }
    }

    /// Symbols per position: `k`, or `k²` for pair measures.
    pub fn alphabet_size(&self) -> usize {
        let k = self.sigma();
        if self.is_joint() {
            k * k
        } else {
            k
        }
    }

    /// The pmf `α⁽ⁿ⁾`.
    pub fn at(&self, n: usize) -> Cow<'_, PositionPmf> {
        match self {
            MeasureSeq::Constant(p) => Cow::Borrowed(p),
            MeasureSeq::Rho(s) => Cow::Owned(PositionPmf::Joint(
                rho_joint(s.rho_at(n)).expect("validated schedule"),
            )),
            MeasureSeq::Tabulated { head, tail } => Cow::Borrowed(head.get(n).unwrap_or(tail)),
        }
    }

    /// `α⁽ⁿ⁾(symbol)` without materializing the pmf.
    pub fn symbol_prob(&self, n: usize, symbol: usize) -> f64 {
        match self {
            MeasureSeq::Rho(s) => {
                let rho = s.rho_at(n);
                if symbol == 0 || symbol == 3 {
                    (1.0 + rho) / 4.0
                } else {
                    (1.0 - rho) / 4.0
                }
            }
            _ => self.at(n).flat_probs()[symbol],
        }
    }

    /// The pmf the sequence converges to.
    pub fn limit(&self) -> PositionPmf {
        match self {
            MeasureSeq::Constant(p) => p.clone(),
            MeasureSeq::Rho(s) => PositionPmf::Joint(rho_joint(s.limit()).expect("validated schedule")),
            MeasureSeq::Tabulated { tail, .. } => tail.clone(),
        }
    }

    /// `μ[α⃗](w) = ∏ α⁽ⁿ⁾(w[n])` for a word of flat symbols.
    pub fn cylinder_prob<I>(&self, symbols: I) -> Result<Cylinder>
    where
        I: IntoIterator<Item = usize>,
    {
        let size = self.alphabet_size();
        let mut prob = 1.0;
        let mut log2 = 0.0;
        for (n, s) in symbols.into_iter().enumerate() {
            if s >= size {
                return Err(Error::SymbolOutOfRange { symbol: s, alphabet: size });
            }
            let p = self.symbol_prob(n, s);
            prob *= p;
            log2 += p.log2();
        }
        Ok(Cylinder { prob, log2 })
    }

    /// Same per-position marginals, coupled independently.
    pub fn independent_counterpart(&self) -> Result<MeasureSeq> {
        let decouple = |p: &PositionPmf| match p {
            PositionPmf::Joint(j) => Ok(PositionPmf::Joint(j.product_of_marginals())),
            PositionPmf::Single(_) => Err(Error::Dimension("measure is not on a pair alphabet".into())),
        };
        match self {
            MeasureSeq::Constant(p) => Ok(MeasureSeq::Constant(decouple(p)?)),
            MeasureSeq::Rho(_) => {
                let u = Pmf::uniform(2)?;
                Ok(MeasureSeq::Constant(PositionPmf::Joint(super::product(&u, &u)?)))
            }
            MeasureSeq::Tabulated { head, tail } => Ok(MeasureSeq::Tabulated {
                head: head.iter().map(decouple).collect::<Result<_>>()?,
                tail: decouple(tail)?,
            }),
        }
    }
}
