//! Seeded sampling from longitudinal products, frequency-balanced words and
//! the base-k real representation of a word.
//!
//! All randomness comes from ChaCha20 keyed by a [`Seed`], with independent
//! purposes drawing from distinct stream ids. Position `i` of a sampled word
//! consumes exactly one uniform variate, so outputs are a pure function of
//! `(measure, length, seed)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{MeasureSeq, MeasureSpec, Pmf};

/// Generator identity recorded in provenance. Bump the suffix whenever the
/// mapping from seed to output changes.
pub const PRNG_NAME: &str = "chacha20/rand_chacha-0.3/stream-v1";

/// Stream ids used by this crate.
pub mod streams {
    pub const SAMPLE: u64 = 0;
    pub const EXPERIMENT_INPUTS: u64 = 1;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// One independent stream of uniform variates.
pub struct Stream(ChaCha20Rng);

impl Stream {
    pub fn new(seed: Seed, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed.0);
        rng.set_stream(stream);
        Stream(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub measure: MeasureSpec,
    pub seed: Seed,
    pub length: usize,
    pub prng: String,
    pub version: String,
}

impl Provenance {
    fn new(m: &MeasureSeq, seed: Seed, length: usize) -> Self {
        Provenance {
            measure: MeasureSpec::from_measure(m),
            seed,
            length,
            prng: PRNG_NAME.to_string(),
            version: crate::VERSION.to_string(),
        }
    }
}

/// A pair of equal-length words sampled jointly.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledWords {
    pub u: Vec<u8>,
    pub w: Vec<u8>,
    pub provenance: Provenance,
}

impl CoupledWords {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

/// Cumulative distribution for inverse-CDF sampling.
struct Cdf {
    cum: Vec<f64>,
    last_positive: usize,
}

impl Cdf {
    fn new(p: &[f64]) -> Self {
        let mut acc = 0.0;
        let cum = p
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect();
        let last_positive = p.iter().rposition(|&x| x > 0.0).unwrap_or(0);
        Cdf { cum, last_positive }
    }

    fn sample(&self, x: f64) -> usize {
        let i = self.cum.partition_point(|&c| c <= x);
        i.min(self.last_positive)
    }
}

fn for_each_symbol(m: &MeasureSeq, n: usize, seed: Seed, mut emit: impl FnMut(usize)) {
    let mut rng = Stream::new(seed, streams::SAMPLE);
    match m {
        MeasureSeq::Constant(p) => {
            let cdf = Cdf::new(p.flat_probs());
            for _ in 0..n {
                emit(cdf.sample(rng.next_f64()));
            }
        }
        MeasureSeq::Rho(s) => {
            for i in 0..n {
                let rho = s.rho_at(i);
                let diag = (1.0 + rho) / 4.0;
                let off = (1.0 - rho) / 4.0;
                let cdf = Cdf::new(&[diag, off, off, diag]);
                emit(cdf.sample(rng.next_f64()));
            }
        }
        MeasureSeq::Tabulated { head, tail } => {
            let head: Vec<Cdf> = head.iter().map(|p| Cdf::new(p.flat_probs())).collect();
            let tail = Cdf::new(tail.flat_probs());
            for i in 0..n {
                emit(head.get(i).unwrap_or(&tail).sample(rng.next_f64()));
            }
        }
    }
}

/// Samples `n` positions of a pair measure; position `i` is drawn from `α⁽ⁱ⁾`.
pub fn sample_coupled(m: &MeasureSeq, n: usize, seed: Seed) -> Result<CoupledWords> {
    if !m.is_joint() {
        return Err(Error::Dimension("sample_coupled needs a measure on a pair alphabet".into()));
    }
    let k = m.sigma();
    let mut u = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for_each_symbol(m, n, seed, |s| {
        u.push((s / k) as u8);
        w.push((s % k) as u8);
    });
    Ok(CoupledWords { u, w, provenance: Provenance::new(m, seed, n) })
}

/// Samples `n` positions of a measure on a single alphabet.
pub fn sample_word(m: &MeasureSeq, n: usize, seed: Seed) -> Result<Vec<u8>> {
    if m.is_joint() {
        return Err(Error::Dimension("sample_word needs a measure on a single alphabet".into()));
    }
    let mut out = Vec::with_capacity(n);
    for_each_symbol(m, n, seed, |s| out.push(s as u8));
    Ok(out)
}

/// Provenance for a word sampled with [`sample_word`].
pub fn word_provenance(m: &MeasureSeq, n: usize, seed: Seed) -> Provenance {
    Provenance::new(m, seed, n)
}

/// A word whose symbol frequencies track `a` as closely as a greedy rule can.
///
/// Step `i` emits the symbol with the largest deficit `a(s)·(i+1) − count(s)`,
/// ties to the smallest symbol. Every prefix of length `m` has
/// `|count(s) − m·a(s)| ≤ k` for every symbol.
pub fn freq_sequence(a: &Pmf<f64>, n: usize) -> Vec<u8> {
    let k = a.k();
    let mut counts = vec![0u64; k];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let target = (i + 1) as f64;
        let mut best = 0;
        let mut best_deficit = f64::NEG_INFINITY;
        for (s, &c) in counts.iter().enumerate() {
            let deficit = a.prob(s) * target - c as f64;
            if deficit > best_deficit {
                best = s;
                best_deficit = deficit;
            }
        }
        counts[best] += 1;
        out.push(best as u8);
    }
    out
}

/// The exact value `Σ w[i]·k^-(i+1)` of a word read as base-k digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRepresentation {
    pub value: BigRational,
}

impl RealRepresentation {
    /// Decimal expansion truncated to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let numer = self.value.numer();
        let denom = self.value.denom();
        let (int, mut rem) = numer.div_rem(denom);
        let mut s = int.to_string();
        if digits > 0 {
            s.push('.');
            let ten = BigInt::from(10);
            for _ in 0..digits {
                rem *= &ten;
                let (d, r) = rem.div_rem(denom);
                s.push_str(&d.to_string());
                rem = r;
            }
        }
        s
    }
}

pub fn real_representation(w: &[u8], k: usize) -> Result<RealRepresentation> {
    if w.is_empty() {
        return Err(Error::InsufficientData("real representation of the empty word".into()));
    }
    if !(2..=crate::measures::MAX_ALPHABET).contains(&k) {
        return Err(Error::UnsupportedAlphabet(format!("alphabet size {k}")));
    }
    let base = BigInt::from(k);
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    for &d in w {
        if d as usize >= k {
            return Err(Error::SymbolOutOfRange { symbol: d as usize, alphabet: k });
        }
        numer = numer * &base + BigInt::from(d);
        denom *= &base;
    }
    Ok(RealRepresentation { value: BigRational::new(numer, denom) })
}
