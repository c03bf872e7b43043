//! Empirical information-density estimators.
//!
//! Kolmogorov complexity is not computable, so densities are estimated from
//! finite prefixes in two ways: block plug-in entropies, and code lengths of a
//! [`Compressor`] (the adaptive Krichevsky–Trofimov coder by default). Both
//! estimate the joint quantity on the product-alphabet word `a·k + b`.
//! Limits inferior and superior are approximated by the minimum and maximum
//! of a [`DensityTrace`] over the tail half of a geometric prefix schedule.

use std::io::Write;
use std::process::{Command, Stdio};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genseq::CoupledWords;
use crate::measures::{pair_word, MeasureSeq};
use crate::scalar::compensated_sum;

/// Largest block table, in cells: `alphabet^block_len ≤ 2^24`.
pub const MAX_BLOCK_CELLS: usize = 1 << 24;

/// Slack around `[0, 1]` allowed for raw densities.
pub const DENSITY_SLACK: f64 = 0.1;

/// A code-length functional standing in for Kolmogorov complexity.
pub trait Compressor: Send + Sync {
    fn name(&self) -> String;

    /// Code length in bits of a word over `{0, …, alphabet-1}`.
    fn code_length(&self, symbols: &[u16], alphabet: usize) -> Result<f64>;
}

/// Adaptive Krichevsky–Trofimov code length.
#[derive(Debug, Clone, Copy, Default)]
pub struct KtCoder;

impl Compressor for KtCoder {
    fn name(&self) -> String {
        "kt".into()
    }

    fn code_length(&self, symbols: &[u16], alphabet: usize) -> Result<f64> {
        kt_code_length(symbols, alphabet)
    }
}

/// Pipes the word through an external program and counts output bytes.
///
/// Symbols are written one byte each, or as little-endian `u16` when the
/// alphabet exceeds 256 symbols.
#[derive(Debug, Clone)]
pub struct ExternalCompressor {
    pub program: String,
    pub args: Vec<String>,
}

impl Compressor for ExternalCompressor {
    fn name(&self) -> String {
        std::iter::once(self.program.as_str())
            .chain(self.args.iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn code_length(&self, symbols: &[u16], alphabet: usize) -> Result<f64> {
        let bytes: Vec<u8> = if alphabet <= 256 {
            symbols.iter().map(|&s| s as u8).collect()
        } else {
            symbols.iter().flat_map(|s| s.to_le_bytes()).collect()
        };
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Compressor(format!("{}: {e}", self.program)))?;
        let mut stdin = child.stdin.take().expect("piped stdin");
        let writer = std::thread::spawn(move || stdin.write_all(&bytes));
        let out = child.wait_with_output()?;
        writer
            .join()
            .map_err(|_| Error::Compressor("writer thread panicked".into()))??;
        if !out.status.success() {
            return Err(Error::Compressor(format!("{} exited with {}", self.program, out.status)));
        }
        Ok(8.0 * out.stdout.len() as f64)
    }
}

fn check_symbols<S: Copy + Into<usize>>(w: &[S], alphabet: usize) -> Result<()> {
    match w.iter().map(|&s| s.into()).find(|&s| s >= alphabet) {
        Some(symbol) => Err(Error::SymbolOutOfRange { symbol, alphabet }),
        None => Ok(()),
    }
}

/// `Σᵢ log₂ [(i + k/2) / (countᵢ(w[i]) + 1/2)]`.
pub fn kt_code_length<S: Copy + Into<usize>>(w: &[S], k: usize) -> Result<f64> {
    check_symbols(w, k)?;
    let mut counts = vec![0u64; k];
    let half_k = k as f64 / 2.0;
    let terms = w.iter().enumerate().map(|(i, &s)| {
        let s: usize = s.into();
        let c = counts[s];
        counts[s] += 1;
        (i as f64 + half_k).log2() - (c as f64 + 0.5).log2()
    });
    Ok(compensated_sum(terms))
}

/// Entropy in bits of the empirical distribution of counts. Counts are summed
/// in sorted order so the value depends only on the multiset of counts.
fn entropy_of_counts(mut counts: Vec<u32>) -> f64 {
    counts.retain(|&c| c > 0);
    counts.sort_unstable();
    let n: f64 = counts.iter().map(|&c| c as f64).sum();
    compensated_sum(counts.iter().map(|&c| {
        let c = c as f64;
        c / n * (n / c).log2()
    }))
}

/// Plug-in entropy (bits per block) of the non-overlapping blocks of length
/// `block_len`. A trailing partial block is ignored.
pub fn block_entropy<S: Copy + Into<usize>>(w: &[S], alphabet: usize, block_len: usize) -> Result<f64> {
    if block_len == 0 {
        return Err(Error::Range("block length must be positive".into()));
    }
    let cells = alphabet
        .checked_pow(block_len as u32)
        .filter(|&c| c <= MAX_BLOCK_CELLS)
        .ok_or_else(|| {
            Error::Capacity(format!("{alphabet}^{block_len} block table exceeds 2^24 cells"))
        })?;
    if w.len() < block_len {
        return Err(Error::InsufficientData(format!(
            "word of length {} has no block of length {block_len}",
            w.len()
        )));
    }
    check_symbols(w, alphabet)?;
    let mut counts = vec![0u32; cells];
    for block in w.chunks_exact(block_len) {
        let idx = block.iter().fold(0usize, |acc, &s| acc * alphabet + s.into());
        counts[idx] += 1;
    }
    Ok(entropy_of_counts(counts))
}

/// Block plug-in entropy rate in bits per symbol.
pub fn plugin_entropy_rate(w: &[u8], k: usize, block_len: usize) -> Result<f64> {
    Ok(block_entropy(w, k, block_len)? / block_len as f64)
}

/// How a density is estimated.
#[derive(Clone, Copy)]
pub enum Method<'a> {
    Plugin { block_len: usize },
    Compressor(&'a dyn Compressor),
}

impl Method<'_> {
    pub fn name(&self) -> String {
        match self {
            Method::Plugin { .. } => "plugin".into(),
            Method::Compressor(c) => c.name(),
        }
    }

    pub fn block_len(&self) -> Option<usize> {
        match self {
            Method::Plugin { block_len } => Some(*block_len),
            Method::Compressor(_) => None,
        }
    }
}

impl core::fmt::Debug for Method<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Method::Plugin { block_len } => write!(f, "Plugin({block_len})"),
            Method::Compressor(c) => write!(f, "Compressor({})", c.name()),
        }
    }
}

/// A density normalized by `log₂ k`, with its clamp to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub raw: f64,
    pub clamped: f64,
}

impl Density {
    fn new(raw: f64) -> Self {
        Density { raw, clamped: raw.clamp(0.0, 1.0) }
    }
}

fn widen(w: &[u8]) -> Vec<u16> {
    w.iter().map(|&s| s as u16).collect()
}

/// Mutual information density of `(u, w)` over `Σ = {0, …, k-1}`.
///
/// Plug-in: `[Ĥ(u) + Ĥ(w) − Ĥ(u×w)] / (L·log₂ k)` with block entropies of
/// length `L`. Compressor: `[C(u) + C(w) − C(u×w)] / (|u|·log₂ k)`.
pub fn mi_density(u: &[u8], w: &[u8], k: usize, method: Method<'_>) -> Result<Density> {
    if u.len() != w.len() {
        return Err(Error::Dimension(format!("words of lengths {} and {}", u.len(), w.len())));
    }
    if u.is_empty() {
        return Err(Error::InsufficientData("empty words".into()));
    }
    let pair = pair_word(u, w, k)?;
    let log_k = (k as f64).log2();
    let raw = match method {
        Method::Plugin { block_len } => {
            let hu = block_entropy(u, k, block_len)?;
            let hw = block_entropy(w, k, block_len)?;
            let hp = block_entropy(&pair, k * k, block_len)?;
            ((hu + hw) - hp) / (block_len as f64 * log_k)
        }
        Method::Compressor(c) => {
            let cu = c.code_length(&widen(u), k)?;
            let cw = c.code_length(&widen(w), k)?;
            let cp = c.code_length(&pair, k * k)?;
            ((cu + cw) - cp) / (u.len() as f64 * log_k)
        }
    };
    Ok(Density::new(raw))
}

/// Entropy density (dimension proxy) of a single word.
pub fn entropy_density(w: &[u8], k: usize, method: Method<'_>) -> Result<Density> {
    if w.is_empty() {
        return Err(Error::InsufficientData("empty word".into()));
    }
    let log_k = (k as f64).log2();
    let raw = match method {
        Method::Plugin { block_len } => plugin_entropy_rate(w, k, block_len)? / log_k,
        Method::Compressor(c) => c.code_length(&widen(w), k)? / (w.len() as f64 * log_k),
    };
    Ok(Density::new(raw))
}

/// Values indexed by an increasing schedule of prefix lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTrace {
    schedule: Vec<usize>,
    values: Vec<f64>,
}

impl DensityTrace {
    /// A trace of densities; values must lie within `[-0.1, 1.1]`.
    pub fn new(schedule: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values
            .iter()
            .find(|v| !(-DENSITY_SLACK..=1.0 + DENSITY_SLACK).contains(*v))
        {
            return Err(Error::Range(format!("density {v} outside [-0.1, 1.1]")));
        }
        Self::unbounded(schedule, values)
    }

    /// A trace of arbitrary finite values, such as self-information ratios.
    pub fn unbounded(schedule: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if schedule.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} schedule points but {} values",
                schedule.len(),
                values.len()
            )));
        }
        if schedule.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Range("schedule must be strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Range("trace values must be finite".into()));
        }
        Ok(DensityTrace { schedule, values })
    }

    pub fn schedule(&self) -> &[usize] {
        &self.schedule
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<(usize, f64)> {
        Some((*self.schedule.last()?, *self.values.last()?))
    }

    /// Values over the second half of the schedule.
    pub fn tail_half(&self) -> &[f64] {
        &self.values[self.values.len() / 2..]
    }
}

/// Prefix lengths `ceil(1024·1.3ʲ)` up to `n_max`, closed with `n_max` itself.
pub fn geometric_schedule(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for j in 0.. {
        let n = (1024.0 * 1.3f64.powi(j)).ceil() as usize;
        if n > n_max {
            break;
        }
        if out.last() != Some(&n) {
            out.push(n);
        }
    }
    if out.last() != Some(&n_max) && n_max > 0 {
        out.push(n_max);
    }
    out
}

/// Raw densities at every schedule point; prefixes are evaluated in parallel.
fn trace_with<F>(schedule: &[usize], eval: F) -> Result<Vec<Density>>
where
    F: Fn(usize) -> Result<Density> + Sync,
{
    schedule.par_iter().map(|&n| eval(n)).collect()
}

/// [`mi_density`] over a prefix schedule. Returns the trace of raw values and
/// the per-point densities (raw and clamped).
pub fn mi_density_trace(
    u: &[u8],
    w: &[u8],
    k: usize,
    method: Method<'_>,
    schedule: &[usize],
) -> Result<(DensityTrace, Vec<Density>)> {
    if let Some(&n) = schedule.iter().find(|&&n| n > u.len() || n > w.len()) {
        return Err(Error::InsufficientData(format!("schedule point {n} beyond word length")));
    }
    let points = trace_with(schedule, |n| mi_density(&u[..n], &w[..n], k, method))?;
    let trace = DensityTrace::new(schedule.to_vec(), points.iter().map(|d| d.raw).collect())?;
    Ok((trace, points))
}

/// [`entropy_density`] over a prefix schedule.
pub fn entropy_density_trace(
    w: &[u8],
    k: usize,
    method: Method<'_>,
    schedule: &[usize],
) -> Result<(DensityTrace, Vec<Density>)> {
    if let Some(&n) = schedule.iter().find(|&&n| n > w.len()) {
        return Err(Error::InsufficientData(format!("schedule point {n} beyond word length")));
    }
    let points = trace_with(schedule, |n| entropy_density(&w[..n], k, method))?;
    let trace = DensityTrace::new(schedule.to_vec(), points.iter().map(|d| d.raw).collect())?;
    Ok((trace, points))
}

/// `(lower, upper)`: min and max over the tail half of the trace, clamped to
/// `[0, 1]`.
pub fn dimension_estimate(trace: &DensityTrace) -> Result<(f64, f64)> {
    if trace.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "dimension estimate needs at least 4 trace points, got {}",
            trace.len()
        )));
    }
    let tail = trace.tail_half();
    let lower = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0)))
}

/// Capital in bits, `log₂ μ_num(prefix)/μ_den(prefix)`, of the likelihood-ratio
/// martingale after each prefix of `cw`. Entry 0 is the empty prefix.
///
/// Entry `i` is entry `i-1` plus the log ratio at position `i-1`.
pub fn likelihood_ratio_log(num: &MeasureSeq, den: &MeasureSeq, cw: &CoupledWords) -> Result<Vec<f64>> {
    if !num.is_joint() || !den.is_joint() {
        return Err(Error::Dimension("likelihood ratio needs pair measures".into()));
    }
    if num.sigma() != den.sigma() {
        return Err(Error::Dimension("measures on different alphabets".into()));
    }
    let k = num.sigma();
    let pair = pair_word(&cw.u, &cw.w, k)?;
    let mut out = Vec::with_capacity(pair.len() + 1);
    let mut capital = 0.0f64;
    out.push(capital);
    for (i, &s) in pair.iter().enumerate() {
        let s = s as usize;
        let p_den = den.symbol_prob(i, s);
        if p_den == 0.0 {
            return Err(Error::SingularMeasure(format!(
                "denominator gives probability 0 to observed pair at position {i}"
            )));
        }
        capital += (num.symbol_prob(i, s) / p_den).log2();
        out.push(capital);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genseq::{sample_coupled, sample_word, Seed};
    use crate::info::entropy;
    use crate::measures::{product, rho_joint, Pmf, RhoSchedule};

    fn fair_bits(n: usize, seed: u64) -> Vec<u8> {
        let m = MeasureSeq::constant(Pmf::uniform(2).unwrap());
        sample_word(&m, n, Seed(seed)).unwrap()
    }

    #[test]
    fn kt_examples() {
        let zeros = vec![0u8; 1024];
        let len = kt_code_length(&zeros, 2).unwrap();
        assert!(len <= 1024f64.log2() + 2.0, "{len}");
        assert_eq!(kt_code_length::<u8>(&[], 2).unwrap(), 0.0);
        assert!(kt_code_length(&[2u8], 2).is_err());
    }

    #[test]
    fn kt_first_symbol_costs_log_k() {
        assert_eq!(kt_code_length(&[0u8], 2).unwrap(), 1.0);
        assert_eq!(kt_code_length(&[3u8], 4).unwrap(), 2.0);
    }

    #[test]
    fn kt_rate_on_fair_bits() {
        let w = fair_bits(1_000_000, 3);
        let rate = kt_code_length(&w, 2).unwrap() / 1e6;
        assert!((0.999..=1.001).contains(&rate), "{rate}");
    }

    #[test]
    fn kt_stays_near_empirical_entropy() {
        let p = Pmf::new(vec![0.2, 0.5, 0.3]).unwrap();
        let w = sample_word(&MeasureSeq::constant(p), 100_000, Seed(9)).unwrap();
        let n = w.len() as f64;
        let empirical = block_entropy(&w, 3, 1).unwrap() * n;
        let kt = kt_code_length(&w, 3).unwrap();
        let slack = 2.0 * 3.0 * n.log2();
        assert!(kt >= empirical - slack && kt <= empirical + slack);
        assert!(kt >= empirical);
    }

    #[test]
    fn plugin_rate_examples() {
        assert_eq!(plugin_entropy_rate(&vec![0u8; 4096], 2, 8).unwrap(), 0.0);
        let rate = plugin_entropy_rate(&fair_bits(1_000_000, 1), 2, 8).unwrap();
        assert!((rate - 1.0).abs() < 0.01, "{rate}");

        let biased = Pmf::new(vec![0.75, 0.25]).unwrap();
        let w = sample_word(&MeasureSeq::constant(biased.clone()), 1_000_000, Seed(2)).unwrap();
        let rate = plugin_entropy_rate(&w, 2, 8).unwrap();
        assert!((rate - entropy(&biased).value()).abs() < 0.01, "{rate}");
    }

    #[test]
    fn plugin_capacity_and_short_words() {
        assert!(matches!(plugin_entropy_rate(&[0u8; 100], 2, 25), Err(Error::Capacity(_))));
        assert!(matches!(plugin_entropy_rate(&[0u8; 100], 256, 4), Err(Error::Capacity(_))));
        assert!(plugin_entropy_rate(&[0u8; 100], 256, 3).is_ok());
        assert!(matches!(plugin_entropy_rate(&[0u8; 3], 2, 4), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn mi_density_examples() {
        let u = fair_bits(100_000, 4);
        let d = mi_density(&u, &u, 2, Method::Plugin { block_len: 4 }).unwrap();
        assert!((d.raw - 1.0).abs() < 0.02);

        let w = fair_bits(1_000_000, 5);
        let v = fair_bits(1_000_000, 6);
        let d = mi_density(&w, &v, 2, Method::Plugin { block_len: 4 }).unwrap();
        assert!(d.raw >= 0.0 && d.raw <= 0.01, "{d:?}");

        let m = MeasureSeq::constant(rho_joint(0.5).unwrap());
        let cw = sample_coupled(&m, 1_000_000, Seed(7)).unwrap();
        let d = mi_density(&cw.u, &cw.w, 2, Method::Plugin { block_len: 4 }).unwrap();
        assert!((d.raw - 0.188_721_875_540_867).abs() < 0.01, "{d:?}");

        assert!(matches!(
            mi_density(&u[..10], &u[..11], 2, Method::Plugin { block_len: 4 }),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn kt_route_detects_coupling() {
        let m = MeasureSeq::constant(rho_joint(0.5).unwrap());
        let cw = sample_coupled(&m, 200_000, Seed(8)).unwrap();
        let d = mi_density(&cw.u, &cw.w, 2, Method::Compressor(&KtCoder)).unwrap();
        assert!((d.raw - 0.188_721_875_540_867).abs() < 0.01, "{d:?}");
    }

    #[test]
    fn plugin_mi_identities() {
        let m = MeasureSeq::constant(rho_joint(0.3).unwrap());
        let cw = sample_coupled(&m, 50_000, Seed(12)).unwrap();
        for block_len in [1, 3, 4, 6] {
            let method = Method::Plugin { block_len };
            let a = mi_density(&cw.u, &cw.w, 2, method).unwrap();
            let b = mi_density(&cw.w, &cw.u, 2, method).unwrap();
            assert_eq!(a, b);
            let self_mi = mi_density(&cw.u, &cw.u, 2, method).unwrap().raw;
            let rate = plugin_entropy_rate(&cw.u, 2, block_len).unwrap();
            assert!((self_mi - rate).abs() < 1e-9);
        }
    }

    #[test]
    fn external_compressor_adapter() {
        let cat = ExternalCompressor { program: "cat".into(), args: vec![] };
        assert_eq!(cat.code_length(&[0, 1, 1], 2).unwrap(), 24.0);
        assert_eq!(cat.code_length(&[0, 1, 1], 300).unwrap(), 48.0);
        let missing = ExternalCompressor { program: "/nonexistent/zip".into(), args: vec![] };
        assert!(matches!(missing.code_length(&[0], 2), Err(Error::Compressor(_))));
    }

    #[test]
    fn schedule_shape() {
        let s = geometric_schedule(1_000_000);
        assert_eq!(&s[..3], &[1024, 1332, 1731]);
        assert_eq!(*s.last().unwrap(), 1_000_000);
        assert!(s.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(geometric_schedule(1024), vec![1024]);
        assert_eq!(geometric_schedule(500), vec![500]);
    }

    #[test]
    fn dimension_estimate_examples() {
        let sched: Vec<usize> = (1..=8).collect();
        let t = DensityTrace::new(sched.clone(), vec![0.3; 8]).unwrap();
        assert_eq!(dimension_estimate(&t).unwrap(), (0.3, 0.3));

        let alt = vec![0.9, 0.0, 0.7, 0.5, 0.2, 0.4, 0.2, 0.4];
        let t = DensityTrace::new(sched.clone(), alt).unwrap();
        assert_eq!(dimension_estimate(&t).unwrap(), (0.2, 0.4));

        let dec = vec![0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1];
        let t = DensityTrace::new(sched, dec).unwrap();
        assert_eq!(dimension_estimate(&t).unwrap(), (0.1, 0.4));

        let short = DensityTrace::new(vec![1, 2, 3], vec![0.1; 3]).unwrap();
        assert!(matches!(dimension_estimate(&short), Err(Error::InsufficientData(_))));

        let neg = DensityTrace::new((1..=4).collect(), vec![-0.05; 4]).unwrap();
        assert_eq!(dimension_estimate(&neg).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn trace_invariants() {
        assert!(DensityTrace::new(vec![2, 1], vec![0.1, 0.2]).is_err());
        assert!(DensityTrace::new(vec![1, 2], vec![0.1, 1.5]).is_err());
        assert!(DensityTrace::unbounded(vec![1, 2], vec![0.1, 1.5]).is_ok());
        assert!(DensityTrace::new(vec![1], vec![0.1, 0.2]).is_err());
    }

    #[test]
    fn mi_trace_over_schedule() {
        let m = MeasureSeq::constant(rho_joint(0.8).unwrap());
        let cw = sample_coupled(&m, 100_000, Seed(1)).unwrap();
        let sched = geometric_schedule(100_000);
        let (trace, points) = mi_density_trace(&cw.u, &cw.w, 2, Method::Plugin { block_len: 4 }, &sched).unwrap();
        assert_eq!(trace.len(), sched.len());
        assert_eq!(points.len(), sched.len());
        assert!(mi_density_trace(&cw.u, &cw.w, 2, Method::Plugin { block_len: 4 }, &[200_000]).is_err());
    }

    #[test]
    fn likelihood_ratio_examples() {
        let m = MeasureSeq::constant(rho_joint(0.4).unwrap());
        let cw = sample_coupled(&m, 1000, Seed(3)).unwrap();
        assert!(likelihood_ratio_log(&m, &m, &cw).unwrap().iter().all(|&x| x == 0.0));

        let coupled = MeasureSeq::constant(rho_joint(1.0).unwrap());
        let u = Pmf::uniform(2).unwrap();
        let indep = MeasureSeq::constant(product(&u, &u).unwrap());
        let cw = sample_coupled(&coupled, 500, Seed(4)).unwrap();
        let lr = likelihood_ratio_log(&coupled, &indep, &cw).unwrap();
        assert_eq!(lr.len(), 501);
        assert_eq!(*lr.last().unwrap(), 500.0);

        let cw = sample_coupled(&indep, 500, Seed(4)).unwrap();
        assert!(matches!(likelihood_ratio_log(&indep, &coupled, &cw), Err(Error::SingularMeasure(_))));
    }

    #[test]
    fn likelihood_ratio_telescopes() {
        let num = MeasureSeq::rho_family(RhoSchedule::InverseSqrt { offset: 2.0 }).unwrap();
        let den = num.independent_counterpart().unwrap();
        let cw = sample_coupled(&num, 10_000, Seed(5)).unwrap();
        let lr = likelihood_ratio_log(&num, &den, &cw).unwrap();
        for i in 1..lr.len() {
            let s = (cw.u[i - 1] * 2 + cw.w[i - 1]) as usize;
            let step = (num.symbol_prob(i - 1, s) / den.symbol_prob(i - 1, s)).log2();
            assert_eq!(lr[i], lr[i - 1] + step);
        }
    }
}
