//! generate, estimate, solve-equivalence, billingsley, kakutani, experiment.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use mutdim::billingsley::{billingsley_mdim, check_conditions, equivalent_measure, EquivalenceProblem};
use mutdim::estimate::{dimension_estimate, entropy_density_trace, geometric_schedule, mi_density_trace, Method};
use mutdim::experiment::{run_experiment, trace_csv, EstimatorSpec, ExperimentConfig, ExperimentName, OutputSpec, TraceRow};
use mutdim::genseq::{freq_sequence, sample_coupled, sample_word, word_provenance, Seed, PRNG_NAME};
use mutdim::kakutani::{classify_schedule_with, hellinger_partial_sums, strong_positivity_margin, DEFAULT_PARTIAL_TERMS};
use mutdim::measures::{MeasureSeq, MeasureSpec, Pmf};
use serde_json::json;

use crate::args::{self, JointArgs, MeasureArgs, ScheduleArgs};
use crate::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One byte per symbol; a pair writes two bytes per position.
    Bytes,
    /// One line of digits per word.
    Digits,
    /// One `a b` line per position of a pair.
    Pairs,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    measure: MeasureArgs,
    /// Deterministic frequency sequence for this pmf instead of sampling.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["rho_const", "measure"])]
    freq: Option<Vec<f64>>,
    #[arg(short = 'n', long)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Bytes)]
    format: Format,
    /// Output file; a `<out>.provenance.json` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn digit_line(w: &[u8]) -> Result<String> {
    w.iter()
        .map(|&s| char::from_digit(s as u32, 36).context("symbol too large for digit format"))
        .collect()
}

fn encode(u: &[u8], w: Option<&[u8]>, format: Format) -> Result<Vec<u8>> {
    Ok(match (format, w) {
        (Format::Bytes, None) => u.to_vec(),
        (Format::Bytes, Some(w)) => u.iter().zip(w).flat_map(|(&a, &b)| [a, b]).collect(),
        (Format::Digits, None) => format!("{}\n", digit_line(u)?).into_bytes(),
        (Format::Digits, Some(w)) => format!("{}\n{}\n", digit_line(u)?, digit_line(w)?).into_bytes(),
        (Format::Pairs, Some(w)) => {
            let mut s = String::with_capacity(u.len() * 4);
            for (a, b) in u.iter().zip(w) {
                s.push_str(&format!("{a} {b}\n"));
            }
            s.into_bytes()
        }
        (Format::Pairs, None) => bail!("pairs format needs a pair measure"),
    })
}

fn sidecar(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".provenance.json");
    PathBuf::from(s)
}

pub fn generate(a: GenerateArgs) -> Result<Status> {
    let (bytes, provenance) = if let Some(f) = &a.freq {
        let alpha = args::pmf(f, "freq")?;
        let w = freq_sequence(&alpha, a.length);
        let prov = json!({
            "construction": "freq",
            "alpha": alpha.probs(),
            "length": a.length,
            "version": mutdim::VERSION,
        });
        (encode(&w, None, a.format)?, prov)
    } else if a.measure.given() {
        let m = a.measure.to_measure()?;
        if m.is_joint() {
            let cw = sample_coupled(&m, a.length, Seed(a.seed))?;
            (encode(&cw.u, Some(&cw.w), a.format)?, serde_json::to_value(&cw.provenance)?)
        } else {
            let w = sample_word(&m, a.length, Seed(a.seed))?;
            let prov = word_provenance(&m, a.length, Seed(a.seed));
            (encode(&w, None, a.format)?, serde_json::to_value(&prov)?)
        }
    } else {
        bail!("give --rho-const, --measure or --freq");
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?;
            let mut p = serde_json::to_string_pretty(&provenance)?;
            p.push('\n');
            std::fs::write(sidecar(path), p)?;
        }
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(Status::Ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Plugin,
    Kt,
}

#[derive(Args)]
pub struct EstimateArgs {
    /// Input file written by `generate --format digits|pairs|bytes`.
    #[arg(long, conflicts_with_all = ["rho_const", "measure"])]
    input: Option<PathBuf>,
    /// Format of `--input`.
    #[arg(long, value_enum, default_value_t = Format::Digits)]
    input_format: Format,
    /// Alphabet size of `--input`; inferred from the largest symbol if absent.
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Treat a bytes input as a single word rather than a pair.
    #[arg(long)]
    single: bool,
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(short = 'n', long)]
    length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Plugin)]
    method: MethodArg,
    #[arg(long, default_value_t = 4)]
    block_len: usize,
    /// JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

enum Words {
    Single(Vec<u8>),
    Pair(Vec<u8>, Vec<u8>),
}

fn read_words(path: &Path, format: Format, single: bool) -> Result<Words> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    match format {
        Format::Bytes if single => Ok(Words::Single(data)),
        Format::Bytes => {
            if data.len() % 2 != 0 {
                bail!("pair bytes input has odd length");
            }
            Ok(Words::Pair(data.iter().step_by(2).copied().collect(), data.iter().skip(1).step_by(2).copied().collect()))
        }
        Format::Digits => {
            let text = String::from_utf8(data).context("digits input is not UTF-8")?;
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            match lines.as_slice() {
                [w] => Ok(Words::Single(args::parse_word(w.trim())?)),
                [u, w] => Ok(Words::Pair(args::parse_word(u.trim())?, args::parse_word(w.trim())?)),
                _ => bail!("digits input needs one or two lines, found {}", lines.len()),
            }
        }
        Format::Pairs => {
            let text = String::from_utf8(data).context("pairs input is not UTF-8")?;
            let (mut u, mut w) = (Vec::new(), Vec::new());
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let mut it = line.split_whitespace().map(str::parse::<u8>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(a)), Some(Ok(b)), None) => {
                        u.push(a);
                        w.push(b);
                    }
                    _ => bail!("line {}: expected two symbols", i + 1),
                }
            }
            Ok(Words::Pair(u, w))
        }
    }
}

pub fn estimate(a: EstimateArgs) -> Result<Status> {
    let (words, k) = if let Some(path) = &a.input {
        let words = read_words(path, a.input_format, a.single)?;
        let max = match &words {
            Words::Single(w) => w.iter().max(),
            Words::Pair(u, w) => u.iter().chain(w).max(),
        };
        let inferred = max.map_or(2, |&m| (m as usize + 1).max(2));
        let k = a.k.unwrap_or(inferred);
        if k < inferred {
            bail!("-k {k} is smaller than the largest symbol + 1 ({inferred})");
        }
        (words, k)
    } else {
        let n = a.length.context("-n is required when sampling")?;
        let m = a.measure.to_measure()?;
        let words = if m.is_joint() {
            let cw = sample_coupled(&m, n, Seed(a.seed))?;
            Words::Pair(cw.u, cw.w)
        } else {
            Words::Single(sample_word(&m, n, Seed(a.seed))?)
        };
        (words, m.sigma())
    };
    let method = match a.method {
        MethodArg::Plugin => Method::Plugin { block_len: a.block_len },
        MethodArg::Kt => Method::Compressor(&mutdim::estimate::KtCoder),
    };
    let (quantity, (trace, points)) = match &words {
        Words::Single(w) => ("entropy-density", entropy_density_trace(w, k, method, &geometric_schedule(w.len()))?),
        Words::Pair(u, w) => {
            if u.len() != w.len() {
                bail!("pair words differ in length");
            }
            ("mi-density", mi_density_trace(u, w, k, method, &geometric_schedule(u.len()))?)
        }
    };
    let rows = TraceRow::from_densities(&trace, &points);
    if a.json {
        let (lower, upper) = dimension_estimate(&trace).map_or((None, None), |(l, u)| (Some(l), Some(u)));
        let trace_json: Vec<_> = rows
            .iter()
            .map(|r| json!({ "prefix_len": r.prefix_len, "density_raw": r.raw, "density_clamped": r.clamped }))
            .collect();
        args::print_json(&json!({
            "quantity": quantity,
            "method": method.name(),
            "block_len": method.block_len(),
            "k": k,
            "trace": trace_json,
            "dimension_lower": lower,
            "dimension_upper": upper,
            "version": mutdim::VERSION,
            "prng": PRNG_NAME,
        }))?;
    } else {
        print!("{}", trace_csv(&rows, &method.name(), method.block_len()));
    }
    Ok(Status::Ok)
}

/// Pmf flags, or a JSON file whose fields are measure descriptions.
#[derive(Args)]
pub struct SolveArgs {
    #[arg(long, value_delimiter = ',')]
    alpha1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    beta1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    beta2: Option<Vec<f64>>,
    /// JSON object `{"alpha1": <measure>, "beta1": <measure>, "beta2": <measure>}`.
    #[arg(long, conflicts_with_all = ["alpha1", "beta1", "beta2"])]
    config: Option<PathBuf>,
}

fn pmf_of_spec(v: &serde_json::Value, name: &str) -> Result<Pmf<f64>> {
    let spec: MeasureSpec = serde_json::from_value(v.get(name).cloned().with_context(|| format!("missing `{name}`"))?)
        .with_context(|| format!("`{name}`"))?;
    match spec.to_measure()? {
        MeasureSeq::Constant(mutdim::measures::PositionPmf::Single(p)) => Ok(p),
        _ => bail!("`{name}` must be a pmf measure"),
    }
}

fn pmf_spec(p: &Pmf<f64>) -> MeasureSpec {
    MeasureSpec::from_measure(&MeasureSeq::constant(p.clone()))
}

pub fn solve(a: SolveArgs) -> Result<Status> {
    let (alpha1, beta1, beta2) = match &a.config {
        Some(path) => {
            let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            (pmf_of_spec(&v, "alpha1")?, pmf_of_spec(&v, "beta1")?, pmf_of_spec(&v, "beta2")?)
        }
        None => {
            let get = |v: &Option<Vec<f64>>, n: &str| -> Result<Pmf<f64>> {
                args::pmf(v.as_deref().with_context(|| format!("--{n} is required"))?, n)
            };
            (get(&a.alpha1, "alpha1")?, get(&a.beta1, "beta1")?, get(&a.beta2, "beta2")?)
        }
    };
    let condition = check_conditions(&beta1, &beta2)?;
    let alpha2 = equivalent_measure(&EquivalenceProblem { alpha1: alpha1.clone(), beta1: beta1.clone(), beta2: beta2.clone() })?;
    args::print_json(&json!({
        "alpha2": pmf_spec(&alpha2),
        "condition": condition.number(),
        "inputs": { "alpha1": pmf_spec(&alpha1), "beta1": pmf_spec(&beta1), "beta2": pmf_spec(&beta2) },
    }))?;
    Ok(Status::Ok)
}

#[derive(Args)]
pub struct BillingsleyArgs {
    #[command(flatten)]
    joint: JointArgs,
    #[arg(long, value_delimiter = ',')]
    beta1: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    beta2: Vec<f64>,
}

pub fn billingsley(a: BillingsleyArgs) -> Result<Status> {
    let j = a.joint.to_joint()?;
    let v = billingsley_mdim(&j, &args::pmf(&a.beta1, "beta1")?, &args::pmf(&a.beta2, "beta2")?)?;
    let mut inputs = a.joint.inputs();
    inputs["beta1"] = json!(a.beta1);
    inputs["beta2"] = json!(a.beta2);
    args::print_json(&json!({ "quantity": "billingsley-mdim", "value": v, "inputs": inputs }))?;
    Ok(Status::Ok)
}

#[derive(Subcommand)]
pub enum Kakutani {
    /// Converge/diverge verdict for the Hellinger sum of a schedule.
    Classify {
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = DEFAULT_PARTIAL_TERMS)]
        terms: usize,
        /// Also write the partial sums as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Partial sums of squared Hellinger distances as CSV.
    Sums {
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = DEFAULT_PARTIAL_TERMS)]
        terms: usize,
    },
    /// Smallest per-symbol probability of the schedule's measures.
    Margin {
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = DEFAULT_PARTIAL_TERMS)]
        terms: usize,
    },
}

fn sums_csv(sums: &[f64]) -> String {
    let mut s = String::from("n,partial_sum\n");
    for (i, v) in sums.iter().enumerate() {
        s.push_str(&format!("{},{}\n", i + 1, v));
    }
    s
}

pub fn kakutani(k: Kakutani) -> Result<Status> {
    match k {
        Kakutani::Classify { schedule, terms, csv } => {
            let v = classify_schedule_with(&schedule.schedule()?, terms)?;
            if let Some(path) = csv {
                std::fs::write(path, sums_csv(&v.partial_sums))?;
            }
            args::print_json(&json!({
                "schedule": schedule.spec()?,
                "tag": v.tag,
                "basis": v.basis,
                "terms": terms,
                "last_partial_sum": v.partial_sums.last(),
                "bound": v.bound,
                "strongly_positive": v.strongly_positive,
                "interpretation": v.interpretation,
                "version": mutdim::VERSION,
            }))?;
        }
        Kakutani::Sums { schedule, terms } => {
            print!("{}", sums_csv(&hellinger_partial_sums(&schedule.schedule()?, terms)?));
        }
        Kakutani::Margin { schedule, terms } => {
            let m = MeasureSeq::rho_family(schedule.schedule()?)?;
            let margin = strong_positivity_margin(&m, terms)?;
            args::print_json(&json!({ "schedule": schedule.spec()?, "terms": terms, "margin": margin }))?;
        }
    }
    Ok(Status::Ok)
}

#[derive(Args)]
pub struct ExperimentArgs {
    /// Experiment config JSON.
    #[arg(long, conflicts_with = "name")]
    config: Option<PathBuf>,
    /// Experiment name, when configuring by flags.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Comma-separated seeds, or a range `a..b`.
    #[arg(long)]
    seeds: Option<String>,
    #[command(flatten)]
    measure: MeasureArgs,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long)]
    block_len: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
    /// Report path; overrides the config.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for per-seed trace CSVs; overrides the config.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
        if a >= b {
            bail!("empty seed range {s}");
        }
        return Ok((a..b).collect());
    }
    s.split(',').map(|x| Ok(x.trim().parse()?)).collect()
}

pub fn experiment(a: ExperimentArgs) -> Result<Status> {
    let mut cfg = match (&a.config, &a.name) {
        (Some(path), None) => ExperimentConfig::from_file(path).with_context(|| format!("config {}", path.display()))?,
        (None, Some(name)) => {
            let n_max = a.n_max.context("--n-max is required with --name")?;
            let seeds = parse_seeds(a.seeds.as_deref().unwrap_or("0"))?;
            let mut cfg = ExperimentConfig::new(ExperimentName::parse(name)?, n_max, seeds);
            if a.measure.given() {
                cfg.measure = Some(MeasureSpec::from_measure(&a.measure.to_measure()?));
            }
            cfg
        }
        _ => bail!("give --config or --name"),
    };
    if let Some(m) = a.method {
        cfg.estimator = match m {
            MethodArg::Plugin => EstimatorSpec::Plugin { block_len: a.block_len.unwrap_or(4) },
            MethodArg::Kt => EstimatorSpec::Kt,
        };
    } else if let Some(b) = a.block_len {
        cfg.estimator = EstimatorSpec::Plugin { block_len: b };
    }
    if a.tolerance.is_some() {
        cfg.tolerance = a.tolerance;
    }
    if a.workers.is_some() {
        cfg.workers = a.workers;
    }
    if a.report.is_some() || a.trace_dir.is_some() {
        let mut out = cfg.output.take().unwrap_or(OutputSpec { report: None, trace_dir: None });
        out.report = a.report.or(out.report);
        out.trace_dir = a.trace_dir.or(out.trace_dir);
        cfg.output = Some(out);
    }
    cfg.validate()?;
    let run = run_experiment(&cfg)?;
    match &cfg.output {
        Some(out) => run.write_outputs(out)?,
        None => print!("{}", run.report.to_json()),
    }
    for c in &run.report.checks {
        eprintln!("{} {}: observed {} (expected {}, tolerance {})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.observed, c.expected, c.tolerance);
    }
    Ok(if run.report.pass { Status::Ok } else { Status::Failed })
}
