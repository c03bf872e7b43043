//! Probability measures on finite alphabets, pair alphabets and sequence space.
//!
//! A [`Pmf`] lives on `Σ = {0, …, k-1}`; a [`JointPmf`] lives on `Σ × Σ` and
//! carries its two marginals. Longitudinal product measures are described by
//! [`MeasureSeq`], one pmf per position.

mod rho;
mod seq;
mod spec;

pub use rho::RhoSchedule;
pub use seq::{pair_symbol, pair_word, Cylinder, MeasureSeq, PositionPmf};
pub use spec::{MeasureKind, MeasureSpec, RhoSpec};

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};

/// Largest supported alphabet `|Σ|`.
pub const MAX_ALPHABET: usize = 256;

/// Probability mass function on an alphabet of size `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<T = f64> {
    p: Vec<T>,
}

impl<T: Scalar> Pmf<T> {
    /// Validates `p` as a pmf on `p.len()` symbols.
    ///
    /// Entries must lie in `[0, 1]` and sum to one within `T::SUM_TOL`; a sum
    /// inside the tolerance but not exactly one is renormalized.
    pub fn new(p: Vec<T>) -> Result<Self> {
        check_alphabet(p.len())?;
        Self::validated(p)
    }

    fn validated(mut p: Vec<T>) -> Result<Self> {
        for (i, &x) in p.iter().enumerate() {
            if !(x >= T::zero() && x <= T::one()) {
                return Err(Error::InvalidPmf(format!("entry {i} = {x} not in [0,1]")));
            }
        }
        let total = compensated_sum(p.iter().copied());
        if (total - T::one()).abs() > T::SUM_TOL {
            return Err(Error::InvalidPmf(format!("entries sum to {total}")));
        }
        if total != T::one() {
            for x in p.iter_mut() {
                *x = *x / total;
            }
        }
        Ok(Self { p })
    }

    /// Wraps values already known to form a pmf (sums of a validated pmf).
    pub(crate) fn from_sums(p: Vec<T>) -> Self {
        Self { p }
    }

    pub fn uniform(k: usize) -> Result<Self> {
        check_alphabet(k)?;
        let v = T::one() / T::from_usize(k).unwrap();
        Ok(Self { p: vec![v; k] })
    }

    pub fn point_mass(k: usize, symbol: usize) -> Result<Self> {
        check_alphabet(k)?;
        if symbol >= k {
            return Err(Error::SymbolOutOfRange { symbol, alphabet: k });
        }
        let mut p = vec![T::zero(); k];
        p[symbol] = T::one();
        Ok(Self { p })
    }

    /// Binary pmf `(p0, 1 - p0)`.
    pub fn binary(p0: T) -> Result<Self> {
        Self::new(vec![p0, T::one() - p0])
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn probs(&self) -> &[T] {
        &self.p
    }

    pub fn prob(&self, symbol: usize) -> T {
        self.p[symbol]
    }

    pub fn min_prob(&self) -> T {
        self.p.iter().copied().fold(T::one(), T::min)
    }

    /// True when every symbol has probability at least `delta`.
    pub fn strongly_positive(&self, delta: T) -> bool {
        self.p.iter().all(|&x| x >= delta)
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.k() == other.k() && self.p.iter().zip(&other.p).all(|(a, b)| (*a - *b).abs() <= tol)
    }

    pub fn is_uniform(&self, tol: T) -> bool {
        let u = T::one() / T::from_usize(self.k()).unwrap();
        self.p.iter().all(|&x| (x - u).abs() <= tol)
    }

    /// Converts to another scalar type, revalidating the result.
    pub fn cast<U: Scalar>(&self) -> Result<Pmf<U>> {
        Pmf::new(self.p.iter().map(|x| U::lit(x.as_f64())).collect())
    }
}

/// Probability mass function on the pair alphabet `Σ × Σ`, stored row-major.
///
/// Entry `(a, b)` sits at index `a·k + b`. Marginals are computed once at
/// construction; for [`product`] they are the factors themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf<T = f64> {
    k: usize,
    p: Vec<T>,
    first: Pmf<T>,
    second: Pmf<T>,
}

impl<T: Scalar> JointPmf<T> {
    /// Validates a row-major `k × k` table.
    pub fn new(k: usize, p: Vec<T>) -> Result<Self> {
        check_alphabet(k)?;
        if p.len() != k * k {
            return Err(Error::Dimension(format!(
                "joint table has {} entries, expected {}",
                p.len(),
                k * k
            )));
        }
        let p = Pmf::validated(p)?.p;
        let first = (0..k)
            .map(|a| compensated_sum((0..k).map(|b| p[a * k + b])))
            .collect();
        let second = (0..k)
            .map(|b| compensated_sum((0..k).map(|a| p[a * k + b])))
            .collect();
        Ok(Self { k, p, first: Pmf::from_sums(first), second: Pmf::from_sums(second) })
    }

    /// Builds from nested rows.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("joint table must be square".into()));
        }
        Self::new(k, rows.iter().flatten().copied().collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, a: usize, b: usize) -> T {
        self.p[a * self.k + b]
    }

    /// Row-major entries, indexed by [`pair_symbol`].
    pub fn probs(&self) -> &[T] {
        &self.p
    }

    pub fn first(&self) -> &Pmf<T> {
        &self.first
    }

    pub fn second(&self) -> &Pmf<T> {
        &self.second
    }

    /// First (row sums) and second (column sums) marginals.
    pub fn marginals(&self) -> (Pmf<T>, Pmf<T>) {
        (self.first.clone(), self.second.clone())
    }

    /// The table viewed as a pmf on `k²` symbols.
    pub fn flatten(&self) -> Pmf<T> {
        Pmf { p: self.p.clone() }
    }

    /// The independent coupling of this table's marginals.
    pub fn product_of_marginals(&self) -> JointPmf<T> {
        product(&self.first, &self.second).expect("marginals share an alphabet")
    }

    pub fn min_prob(&self) -> T {
        self.p.iter().copied().fold(T::one(), T::min)
    }

    pub fn cast<U: Scalar>(&self) -> Result<JointPmf<U>> {
        JointPmf::new(self.k, self.p.iter().map(|x| U::lit(x.as_f64())).collect())
    }
}

/// Independent coupling: entry `(a, b)` is `p1(a)·p2(b)`.
pub fn product<T: Scalar>(p1: &Pmf<T>, p2: &Pmf<T>) -> Result<JointPmf<T>> {
    if p1.k() != p2.k() {
        return Err(Error::Dimension(format!(
            "product of pmfs on {} and {} symbols",
            p1.k(),
            p2.k()
        )));
    }
    let k = p1.k();
    let mut p = Vec::with_capacity(k * k);
    for &x in p1.probs() {
        for &y in p2.probs() {
            p.push(x * y);
        }
    }
    Ok(JointPmf { k, p, first: p1.clone(), second: p2.clone() })
}

/// Binary coupling with diagonal `(1+ρ)/4` and off-diagonal `(1-ρ)/4`.
pub fn rho_joint<T: Scalar>(rho: T) -> Result<JointPmf<T>> {
    if !(rho.abs() <= T::one()) {
        return Err(Error::Range(format!("rho = {rho} outside [-1, 1]")));
    }
    let four = T::lit(4.0);
    let diag = (T::one() + rho) / four;
    let off = (T::one() - rho) / four;
    JointPmf::new(2, vec![diag, off, off, diag])
}

fn check_alphabet(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidPmf(format!("alphabet size {k} < 2")));
    }
    if k > MAX_ALPHABET {
        return Err(Error::Capacity(format!("alphabet size {k} > {MAX_ALPHABET}")));
    }
    Ok(())
}
