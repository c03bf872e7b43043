//! Named batch experiments. Each seed's words are estimated and compared
//! against a closed-form target taken from the calculators.
//!
//! A report is a pure function of its config and the crate version; seeds run
//! concurrently but results are assembled in seed order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::billingsley::{equivalent_measure, normalizability_ratio_trace, EquivalenceProblem};
use crate::error::{Error, Result};
use crate::estimate::{
    dimension_estimate, geometric_schedule, likelihood_ratio_log, mi_density_trace, Density, DensityTrace,
    ExternalCompressor, KtCoder, Method,
};
use crate::genseq::{freq_sequence, sample_coupled, streams, Seed, Stream, PRNG_NAME};
use crate::info::{cross_entropy, mutual_information, self_information};
use crate::measures::{product, MeasureKind, MeasureSeq, MeasureSpec, Pmf, PositionPmf, RhoSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentName {
    /// Mutual dimension of a coupled pair equals `I(α₁:α₂)/log|Σ|` of the limit pmf.
    #[serde(rename = "theorem-3.5")]
    MutualDimension,
    /// Independently random pairs have mutual dimension 0.
    #[serde(rename = "corollary-3.9-independent")]
    Independent,
    /// `ρₙ = 1/√(n+2)`: mutual dimension 0, yet not independently random.
    #[serde(rename = "corollary-3.14-counterexample")]
    Counterexample,
    /// Self-information rate of a frequency sequence equals the cross-entropy.
    #[serde(rename = "freq-divergence")]
    FreqDivergence,
    /// Equivalent frequency sequences are mutually normalizable.
    #[serde(rename = "normalizability")]
    Normalizability,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 5] = [
        ExperimentName::MutualDimension,
        ExperimentName::Independent,
        ExperimentName::Counterexample,
        ExperimentName::FreqDivergence,
        ExperimentName::Normalizability,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::MutualDimension => "theorem-3.5",
            ExperimentName::Independent => "corollary-3.9-independent",
            ExperimentName::Counterexample => "corollary-3.14-counterexample",
            ExperimentName::FreqDivergence => "freq-divergence",
            ExperimentName::Normalizability => "normalizability",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum EstimatorSpec {
    Plugin { block_len: usize },
    Kt,
    External { program: String, #[serde(default)] args: Vec<String> },
}

impl Default for EstimatorSpec {
    fn default() -> Self {
        EstimatorSpec::Plugin { block_len: 4 }
    }
}

impl EstimatorSpec {
    pub fn with_method<R>(&self, f: impl FnOnce(Method<'_>) -> R) -> R {
        match self {
            EstimatorSpec::Plugin { block_len } => f(Method::Plugin { block_len: *block_len }),
            EstimatorSpec::Kt => f(Method::Compressor(&KtCoder)),
            EstimatorSpec::External { program, args } => {
                let c = ExternalCompressor { program: program.clone(), args: args.clone() };
                f(Method::Compressor(&c))
            }
        }
    }
}

/// Measures for a normalizability control run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSpec {
    pub alpha1: Vec<f64>,
    pub alpha2: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_dir: Option<PathBuf>,
}

/// Experiment configuration. Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
    pub n_max: usize,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub estimator: EstimatorSpec,
    /// Tolerance of the primary check; each experiment has a default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Largest allowed `upper − lower` of a seed's dimension estimate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread_tolerance: Option<f64>,
    /// Smallest fraction of seeds with positive likelihood-ratio capital.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_positive_fraction: Option<f64>,
    /// Relative tolerance on the mean likelihood-ratio capital.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lr_relative_tolerance: Option<f64>,
    /// Alphabet size for generated pmfs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta2: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<ControlSpec>,
    /// Smallest allowed `|ratio − 1|` for the control pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

impl ExperimentConfig {
    /// A config with defaults for everything but the essentials.
    pub fn new(experiment: ExperimentName, n_max: usize, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            experiment,
            measure: None,
            n_max,
            seeds,
            estimator: EstimatorSpec::default(),
            tolerance: None,
            spread_tolerance: None,
            min_positive_fraction: None,
            lr_relative_tolerance: None,
            k: None,
            alpha1: None,
            alpha2: None,
            beta1: None,
            beta2: None,
            control: None,
            control_margin: None,
            workers: None,
            output: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Config("n_max must be positive".into()));
        }
        if let Some(m) = &self.measure {
            m.to_measure()?;
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be positive".into()));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON serialization.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub formula: String,
    /// Absent when the target differs per seed.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SeedResult {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_clamped: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_lr_bits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub count: usize,
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

impl Aggregate {
    /// `None` for an empty slice.
    pub fn of(values: &[f64]) -> Option<Self> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Some(Aggregate {
            count: n,
            mean,
            stddev: var.sqrt(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: ExperimentName,
    pub config_hash: String,
    pub version: String,
    pub prng: String,
    pub n_max: usize,
    pub estimator: String,
    pub target: Target,
    pub tolerance: f64,
    pub seeds: Vec<SeedResult>,
    /// Over the seeds that produced a value.
    pub aggregate: Option<Aggregate>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ExperimentReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One CSV row of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub prefix_len: usize,
    pub raw: f64,
    pub clamped: f64,
}

impl TraceRow {
    pub fn from_densities(trace: &DensityTrace, points: &[Density]) -> Vec<TraceRow> {
        trace
            .schedule()
            .iter()
            .zip(points)
            .map(|(&n, d)| TraceRow { prefix_len: n, raw: d.raw, clamped: d.clamped })
            .collect()
    }

    pub fn from_unbounded(trace: &DensityTrace) -> Vec<TraceRow> {
        trace
            .schedule()
            .iter()
            .zip(trace.values())
            .map(|(&n, &v)| TraceRow { prefix_len: n, raw: v, clamped: v })
            .collect()
    }
}

/// CSV with columns `prefix_len,density_raw,density_clamped,method,block_len`.
pub fn trace_csv(rows: &[TraceRow], method: &str, block_len: Option<usize>) -> String {
    let mut s = String::from("prefix_len,density_raw,density_clamped,method,block_len\n");
    let bl = block_len.map(|b| b.to_string()).unwrap_or_default();
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.prefix_len, r.raw, r.clamped, method, bl));
    }
    s
}

/// A finished run: the report plus per-seed trace CSVs.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub report: ExperimentReport,
    pub traces: Vec<(u64, String)>,
}

impl ExperimentRun {
    /// Writes the report and traces to the paths named in the config.
    pub fn write_outputs(&self, output: &OutputSpec) -> Result<()> {
        if let Some(path) = &output.report {
            std::fs::write(path, self.report.to_json())?;
        }
        if let Some(dir) = &output.trace_dir {
            std::fs::create_dir_all(dir)?;
            for (seed, csv) in &self.traces {
                let name = format!("{}_seed{}.csv", self.report.experiment.as_str(), seed);
                std::fs::write(dir.join(name), csv)?;
            }
        }
        Ok(())
    }
}

struct SeedOutcome {
    result: SeedResult,
    trace: Option<String>,
}

const DEFAULT_SPREAD_TOL: f64 = 0.02;
const DEFAULT_POSITIVE_FRACTION: f64 = 0.95;
const DEFAULT_LR_RELATIVE_TOL: f64 = 0.5;
const DEFAULT_CONTROL_MARGIN: f64 = 0.05;

fn pmf_field(v: &Option<Vec<f64>>, name: &str, default: &[f64]) -> Result<Pmf<f64>> {
    Pmf::new(v.clone().unwrap_or_else(|| default.to_vec()))
        .map_err(|e| Error::Config(format!("{name}: {e}")))
}

fn joint_measure(cfg: &ExperimentConfig, default: MeasureSpec) -> Result<MeasureSeq> {
    let m = cfg.measure.clone().unwrap_or(default).to_measure()?;
    if !m.is_joint() {
        return Err(Error::Config("experiment needs a measure on a pair alphabet".into()));
    }
    Ok(m)
}

fn rho_spec(rho: RhoSpec) -> MeasureSpec {
    MeasureSpec { kind: MeasureKind::Rho, k: None, p: None, rho: Some(rho), joint: None, head: None, tail: None }
}

fn limit_density(m: &MeasureSeq) -> f64 {
    match m.limit() {
        PositionPmf::Joint(j) => mutual_information(&j).value() / (j.k() as f64).log2(),
        PositionPmf::Single(_) => unreachable!("joint measure"),
    }
}

fn run_seeds<F>(cfg: &ExperimentConfig, per_seed: F) -> Result<Vec<SeedOutcome>>
where
    F: Fn(u64) -> Result<SeedOutcome> + Sync,
{
    let go = || {
        cfg.seeds
            .par_iter()
            .map(|&seed| {
                per_seed(seed).unwrap_or_else(|e| SeedOutcome {
                    result: SeedResult { seed, error: Some(e.to_string()), ..Default::default() },
                    trace: None,
                })
            })
            .collect::<Vec<_>>()
    };
    match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            Ok(pool.install(go))
        }
        None => Ok(go()),
    }
}

/// Samples one seed, traces the mutual information density and optionally the
/// likelihood-ratio capital against the independent coupling.
fn coupled_seed(cfg: &ExperimentConfig, m: &MeasureSeq, seed: u64, with_lr: bool) -> Result<SeedOutcome> {
    let cw = sample_coupled(m, cfg.n_max, Seed(seed))?;
    let schedule = geometric_schedule(cfg.n_max);
    let k = m.sigma();
    let (trace, points, name, block_len) = cfg.estimator.with_method(|method| {
        mi_density_trace(&cw.u, &cw.w, k, method, &schedule)
            .map(|(t, p)| (t, p, method.name(), method.block_len()))
    })?;
    let (n_last, raw) = trace.last().expect("nonempty schedule");
    debug_assert_eq!(n_last, cfg.n_max);
    let (lower, upper) = match dimension_estimate(&trace) {
        Ok((l, u)) => (Some(l), Some(u)),
        Err(_) => (None, None),
    };
    let log_lr_bits = if with_lr {
        let den = m.independent_counterpart()?;
        Some(*likelihood_ratio_log(m, &den, &cw)?.last().expect("nonempty"))
    } else {
        None
    };
    let csv = trace_csv(&TraceRow::from_densities(&trace, &points), &name, block_len);
    Ok(SeedOutcome {
        result: SeedResult {
            seed,
            value: Some(raw),
            value_clamped: Some(raw.clamp(0.0, 1.0)),
            lower,
            upper,
            log_lr_bits,
            ..Default::default()
        },
        trace: Some(csv),
    })
}

fn check(name: &str, observed: f64, expected: f64, tolerance: f64, pass: bool) -> Check {
    Check { name: name.into(), observed, expected, tolerance, pass }
}

fn seeds_ok(results: &[SeedResult]) -> Check {
    let failed = results.iter().filter(|r| r.error.is_some()).count();
    check("all seeds completed", failed as f64, 0.0, 0.0, failed == 0)
}

fn max_spread(results: &[SeedResult]) -> f64 {
    results
        .iter()
        .filter_map(|r| Some(r.upper? - r.lower?))
        .fold(f64::NAN, |a, b| if a.is_nan() || b > a { b } else { a })
}

/// Runs an experiment. Per-seed failures are recorded in the report.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRun> {
    cfg.validate()?;
    let estimator = match &cfg.estimator {
        EstimatorSpec::Plugin { block_len } => format!("plugin(block_len={block_len})"),
        EstimatorSpec::Kt => "kt".into(),
        EstimatorSpec::External { program, args } => format!("external({program} {})", args.join(" ")),
    };
    let (target, tolerance, outcomes, mut checks) = match cfg.experiment {
        ExperimentName::MutualDimension | ExperimentName::Independent => {
            let independent = cfg.experiment == ExperimentName::Independent;
            let m = if independent && cfg.measure.is_none() {
                let a1 = pmf_field(&cfg.alpha1, "alpha1", &[0.5, 0.5])?;
                let a2 = pmf_field(&cfg.alpha2, "alpha2", &[0.5, 0.5])?;
                MeasureSeq::constant(product(&a1, &a2)?)
            } else {
                joint_measure(cfg, rho_spec(RhoSpec::Const { rho: 0.5 }))?
            };
            let target_value = limit_density(&m);
            let target = Target {
                formula: "I(alpha1:alpha2)/log2|Sigma| of the limit pmf".into(),
                value: Some(target_value),
            };
            let tol = cfg.tolerance.unwrap_or(0.01);
            let outcomes = run_seeds(cfg, |seed| coupled_seed(cfg, &m, seed, false))?;
            let results: Vec<SeedResult> = outcomes.iter().map(|o| o.result.clone()).collect();
            let mean = mean_of(&results, |r| r.value);
            let mut checks = vec![seeds_ok(&results)];
            if independent {
                checks.push(check("mean density at most target + tolerance", mean, target_value, tol, mean <= target_value + tol));
            } else {
                checks.push(check("mean density within tolerance", mean, target_value, tol, (mean - target_value).abs() <= tol));
                let spread_tol = cfg.spread_tolerance.unwrap_or(DEFAULT_SPREAD_TOL);
                let spread = max_spread(&results);
                checks.push(check("max dimension spread (upper - lower)", spread, 0.0, spread_tol, spread <= spread_tol));
            }
            (target, tol, outcomes, checks)
        }
        ExperimentName::Counterexample => {
            let m = joint_measure(cfg, rho_spec(RhoSpec::InvSqrt { offset: 2.0 }))?;
            let target_value = limit_density(&m);
            let target = Target {
                formula: "I(alpha1:alpha2)/log2|Sigma| of the limit pmf".into(),
                value: Some(target_value),
            };
            let tol = cfg.tolerance.unwrap_or(0.01);
            let outcomes = run_seeds(cfg, |seed| coupled_seed(cfg, &m, seed, true))?;
            let results: Vec<SeedResult> = outcomes.iter().map(|o| o.result.clone()).collect();
            let mean = mean_of(&results, |r| r.value);
            let lr_target = expected_log_lr(&m, cfg.n_max);
            let lrs: Vec<f64> = results.iter().filter_map(|r| r.log_lr_bits).collect();
            let positive = lrs.iter().filter(|&&x| x > 0.0).count() as f64 / cfg.seeds.len() as f64;
            let lr_mean = Aggregate::of(&lrs).map_or(f64::NAN, |a| a.mean);
            let frac = cfg.min_positive_fraction.unwrap_or(DEFAULT_POSITIVE_FRACTION);
            let rel = cfg.lr_relative_tolerance.unwrap_or(DEFAULT_LR_RELATIVE_TOL);
            let checks = vec![
                seeds_ok(&results),
                check("mean density at most target + tolerance", mean, target_value, tol, mean <= target_value + tol),
                check("fraction of seeds with positive log-LR", positive, frac, 0.0, positive >= frac),
                check(
                    "mean log-LR bits vs sum_n I(alpha^(n))",
                    lr_mean,
                    lr_target,
                    rel * lr_target,
                    (lr_mean - lr_target).abs() <= rel * lr_target,
                ),
            ];
            (target, tol, outcomes, checks)
        }
        ExperimentName::FreqDivergence => freq_divergence(cfg)?,
        ExperimentName::Normalizability => normalizability(cfg)?,
    };
    let (results, traces): (Vec<SeedResult>, Vec<Option<String>>) =
        outcomes.into_iter().map(|o| (o.result, o.trace)).unzip();
    let values: Vec<f64> = results.iter().filter_map(|r| r.value).collect();
    if values.is_empty() && !checks.iter().any(|c| !c.pass) {
        checks.push(check("at least one seed produced a value", 0.0, 1.0, 0.0, false));
    }
    let pass = checks.iter().all(|c| c.pass);
    let report = ExperimentReport {
        experiment: cfg.experiment,
        config_hash: cfg.hash(),
        version: crate::VERSION.into(),
        prng: PRNG_NAME.into(),
        n_max: cfg.n_max,
        estimator,
        target,
        tolerance,
        aggregate: Aggregate::of(&values),
        seeds: results.clone(),
        checks,
        pass,
    };
    let traces = results
        .iter()
        .zip(traces)
        .filter_map(|(r, t)| Some((r.seed, t?)))
        .collect();
    Ok(ExperimentRun { report, traces })
}

fn mean_of(results: &[SeedResult], f: impl Fn(&SeedResult) -> Option<f64>) -> f64 {
    let v: Vec<f64> = results.iter().filter_map(f).collect();
    Aggregate::of(&v).map_or(f64::NAN, |a| a.mean)
}

/// `Σ_{n<N} I(α₁⁽ⁿ⁾:α₂⁽ⁿ⁾)`, the expected log-likelihood ratio of the coupled
/// measure against the independent coupling of its marginals.
pub fn expected_log_lr(m: &MeasureSeq, n: usize) -> f64 {
    let terms: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| match m.at(i).as_ref() {
            PositionPmf::Joint(j) => mutual_information(j).value(),
            PositionPmf::Single(_) => 0.0,
        })
        .collect();
    crate::scalar::compensated_sum(terms)
}

type Outcomes = (Target, f64, Vec<SeedOutcome>, Vec<Check>);

/// Draws a pmf on `k` symbols with every weight in `[floor, 1]` before normalizing.
fn random_pmf(rng: &mut Stream, k: usize, floor: f64) -> Result<Pmf<f64>> {
    let w: Vec<f64> = (0..k).map(|_| floor + (1.0 - floor) * rng.next_f64()).collect();
    let s: f64 = w.iter().sum();
    Pmf::new(w.iter().map(|x| x / s).collect())
}

fn freq_divergence(cfg: &ExperimentConfig) -> Result<Outcomes> {
    let k = cfg.k.unwrap_or(2);
    let tol = cfg.tolerance.unwrap_or(1e-3);
    let fixed = match (&cfg.alpha1, &cfg.beta1) {
        (Some(a), Some(b)) => Some((Pmf::new(a.clone())?, Pmf::new(b.clone())?)),
        (None, None) => None,
        _ => return Err(Error::Config("give both alpha1 and beta1, or neither".into())),
    };
    let schedule = geometric_schedule(cfg.n_max);
    let outcomes = run_seeds(cfg, |seed| {
        let (alpha, beta) = match &fixed {
            Some(pair) => pair.clone(),
            None => {
                let mut rng = Stream::new(Seed(seed), streams::EXPERIMENT_INPUTS);
                (random_pmf(&mut rng, k, 0.0)?, random_pmf(&mut rng, k, 0.05)?)
            }
        };
        let w = freq_sequence(&alpha, cfg.n_max);
        let ce = cross_entropy(&alpha, &beta)?.value();
        let rates = schedule
            .iter()
            .map(|&n| Ok(self_information(&beta, &w[..n])?.value() / n as f64))
            .collect::<Result<Vec<_>>>()?;
        let trace = DensityTrace::unbounded(schedule.clone(), rates)?;
        let value = trace.last().expect("nonempty").1;
        Ok(SeedOutcome {
            result: SeedResult { seed, value: Some(value), target: Some(ce), ..Default::default() },
            trace: Some(trace_csv(&TraceRow::from_unbounded(&trace), "self-information-rate", None)),
        })
    })?;
    let results: Vec<&SeedResult> = outcomes.iter().map(|o| &o.result).collect();
    let worst = results
        .iter()
        .filter_map(|r| Some((r.value? - r.target?).abs()))
        .fold(0.0, f64::max);
    let mut checks = vec![seeds_ok(&results.iter().map(|r| (*r).clone()).collect::<Vec<_>>())];
    checks.push(check("max |l_beta(w)/|w| - cross_entropy(alpha,beta)|", worst, 0.0, tol, worst <= tol));
    let target = Target { formula: "cross_entropy(alpha,beta) per seed".into(), value: None };
    Ok((target, tol, outcomes, checks))
}

fn normalizability(cfg: &ExperimentConfig) -> Result<Outcomes> {
    let tol = cfg.tolerance.unwrap_or(1e-3);
    let alpha1 = pmf_field(&cfg.alpha1, "alpha1", &[0.5, 0.5])?;
    let beta1 = pmf_field(&cfg.beta1, "beta1", &[0.4, 0.6])?;
    let beta2 = pmf_field(&cfg.beta2, "beta2", &[0.2, 0.8])?;
    let alpha2 = match &cfg.alpha2 {
        Some(a) => Pmf::new(a.clone())?,
        None => equivalent_measure(&EquivalenceProblem {
            alpha1: alpha1.clone(),
            beta1: beta1.clone(),
            beta2: beta2.clone(),
        })?,
    };
    let control = cfg.control.clone().unwrap_or(ControlSpec {
        alpha1: vec![0.9, 0.1],
        alpha2: vec![0.9, 0.1],
        beta1: beta1.probs().to_vec(),
        beta2: beta2.probs().to_vec(),
    });
    let margin = cfg.control_margin.unwrap_or(DEFAULT_CONTROL_MARGIN);
    let schedule = geometric_schedule(cfg.n_max);
    let ratio = |a1: &Pmf<f64>, a2: &Pmf<f64>, b1: &Pmf<f64>, b2: &Pmf<f64>| -> Result<DensityTrace> {
        let u = freq_sequence(a1, cfg.n_max);
        let w = freq_sequence(a2, cfg.n_max);
        normalizability_ratio_trace(&u, &w, b1, b2, &schedule)
    };
    let c = (
        Pmf::new(control.alpha1)?,
        Pmf::new(control.alpha2)?,
        Pmf::new(control.beta1)?,
        Pmf::new(control.beta2)?,
    );
    let outcomes = run_seeds(cfg, |seed| {
        let trace = ratio(&alpha1, &alpha2, &beta1, &beta2)?;
        let control_trace = ratio(&c.0, &c.1, &c.2, &c.3)?;
        Ok(SeedOutcome {
            result: SeedResult {
                seed,
                value: Some(trace.last().expect("nonempty").1),
                target: Some(1.0),
                control_value: Some(control_trace.last().expect("nonempty").1),
                ..Default::default()
            },
            trace: Some(trace_csv(&TraceRow::from_unbounded(&trace), "self-information-ratio", None)),
        })
    })?;
    let results: Vec<SeedResult> = outcomes.iter().map(|o| o.result.clone()).collect();
    let worst = results.iter().filter_map(|r| Some((r.value? - 1.0).abs())).fold(0.0, f64::max);
    let control_gap = results
        .iter()
        .filter_map(|r| Some((r.control_value? - 1.0).abs()))
        .fold(f64::INFINITY, f64::min);
    let control_limit = cross_entropy(&c.0, &c.2)?.value() / cross_entropy(&c.1, &c.3)?.value();
    let checks = vec![
        seeds_ok(&results),
        check("max |ratio - 1| for the equivalent pair", worst, 0.0, tol, worst <= tol),
        check("min |ratio - 1| for the control pair", control_gap, (control_limit - 1.0).abs(), margin, control_gap >= margin),
    ];
    let target = Target {
        formula: "l_beta1(u)/l_beta2(w) -> 1 for (beta1,beta2)-equivalent frequencies".into(),
        value: Some(1.0),
    };
    Ok((target, tol, outcomes, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in ExperimentName::ALL {
            assert_eq!(ExperimentName::parse(e.as_str()).unwrap(), e);
            let json = serde_json::to_string(&e).unwrap();
            assert_eq!(json, format!("\"{}\"", e.as_str()));
        }
        assert!(ExperimentName::parse("no-such-experiment").is_err());
    }

    #[test]
    fn config_rejects_unknown_fields() {
        let ok = r#"{"experiment":"theorem-3.5","n_max":5000,"seeds":[1]}"#;
        assert!(ExperimentConfig::from_json(ok).is_ok());
        let bad = r#"{"experiment":"theorem-3.5","n_max":5000,"seeds":[1],"colour":"red"}"#;
        assert!(ExperimentConfig::from_json(bad).is_err());
        let no_seeds = r#"{"experiment":"theorem-3.5","n_max":5000,"seeds":[]}"#;
        assert!(matches!(ExperimentConfig::from_json(no_seeds), Err(Error::Config(_))));
        let bad_measure = r#"{"experiment":"theorem-3.5","n_max":5,"seeds":[1],"measure":{"kind":"rho","rho":{"family":"const","rho":3}}}"#;
        assert!(ExperimentConfig::from_json(bad_measure).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::new(ExperimentName::MutualDimension, 10_000, vec![1, 2]);
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.seeds.push(3);
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn small_mutual_dimension_run() {
        let mut cfg = ExperimentConfig::new(ExperimentName::MutualDimension, 20_000, vec![1, 2, 3]);
        cfg.tolerance = Some(0.05);
        cfg.spread_tolerance = Some(0.2);
        let run = run_experiment(&cfg).unwrap();
        assert!(run.report.pass, "{}", run.report.to_json());
        assert_eq!(run.traces.len(), 3);
        assert!(run.traces[0].1.starts_with("prefix_len,density_raw,density_clamped,method,block_len\n1024,"));
        assert_eq!(run.report.seeds.iter().map(|s| s.seed).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn seed_errors_do_not_abort_run() {
        let mut cfg = ExperimentConfig::new(ExperimentName::MutualDimension, 5_000, vec![1, 2]);
        cfg.estimator = EstimatorSpec::Plugin { block_len: 13 };
        let run = run_experiment(&cfg).unwrap();
        assert!(!run.report.pass);
        assert!(run.report.seeds.iter().all(|s| s.error.as_deref().unwrap_or("").contains("capacity")));
        assert_eq!(run.report.seeds.len(), 2);
    }

    #[test]
    fn independent_needs_pair_measure() {
        let mut cfg = ExperimentConfig::new(ExperimentName::Independent, 5_000, vec![1]);
        cfg.measure = Some(MeasureSpec::from_json(r#"{"kind":"pmf","p":[0.5,0.5]}"#).unwrap());
        assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn expected_log_lr_of_constant_coupling() {
        let m = MeasureSeq::rho_family(crate::measures::RhoSchedule::Const(1.0)).unwrap();
        assert_eq!(expected_log_lr(&m, 100), 100.0);
    }

    #[test]
    fn outputs_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = ExperimentConfig::new(ExperimentName::Normalizability, 10_000, vec![0]);
        let out = OutputSpec { report: Some(dir.path().join("r.json")), trace_dir: Some(dir.path().join("t")) };
        cfg.output = Some(out.clone());
        let run = run_experiment(&cfg).unwrap();
        run.write_outputs(&out).unwrap();
        let written = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
        assert_eq!(written, run.report.to_json());
        assert!(dir.path().join("t/normalizability_seed0.csv").exists());
    }
}
