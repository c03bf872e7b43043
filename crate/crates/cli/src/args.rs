//! Shared argument parsing.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Args;
use mutdim::measures::{rho_joint, JointPmf, MeasureSeq, MeasureSpec, Pmf, RhoSchedule, RhoSpec};

/// A measure given inline as JSON or as a path to a JSON file.
pub fn load_measure_spec(arg: &str) -> Result<MeasureSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))?
    };
    Ok(MeasureSpec::from_json(&text)?)
}

pub fn pmf(v: &[f64], name: &str) -> Result<Pmf<f64>> {
    Pmf::new(v.to_vec()).with_context(|| format!("--{name}"))
}

/// Parses a word of single-character digits or letters (`0-9`, `a-z`).
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(36) {
            Some(d) => Ok(d as u8),
            None => bail!("bad symbol `{c}` in word"),
        })
        .collect()
}

/// A joint pmf from `--rho` or a flat row-major `--joint` table.
#[derive(Args, Clone, Debug)]
pub struct JointArgs {
    /// Coupling parameter of the binary rho-family.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "joint")]
    pub rho: Option<f64>,
    /// Row-major k×k joint table, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub joint: Option<Vec<f64>>,
}

impl JointArgs {
    pub fn to_joint(&self) -> Result<JointPmf<f64>> {
        match (&self.rho, &self.joint) {
            (Some(r), None) => Ok(rho_joint(*r)?),
            (None, Some(flat)) => {
                let k = (flat.len() as f64).sqrt().round() as usize;
                Ok(JointPmf::new(k, flat.clone())?)
            }
            _ => bail!("give exactly one of --rho or --joint"),
        }
    }

    pub fn inputs(&self) -> serde_json::Value {
        match (&self.rho, &self.joint) {
            (Some(r), _) => serde_json::json!({ "rho": r }),
            (_, Some(j)) => serde_json::json!({ "joint": j }),
            _ => serde_json::Value::Null,
        }
    }
}

/// Rho-schedule selection shared by the `kakutani` subcommands.
#[derive(Args, Clone, Debug)]
pub struct ScheduleArgs {
    /// One of const, inv_sqrt, harmonic, geometric, explicit.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub offset: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ratio: Option<f64>,
    /// Explicit head values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Option<Vec<f64>>,
    /// Constant value after the explicit head.
    #[arg(long, allow_hyphen_values = true)]
    pub tail: Option<f64>,
}

impl ScheduleArgs {
    pub fn spec(&self) -> Result<RhoSpec> {
        let need = |v: Option<f64>, name: &str| v.with_context(|| format!("--family {} needs --{name}", self.family));
        Ok(match self.family.as_str() {
            "const" => RhoSpec::Const { rho: need(self.rho, "rho")? },
            "inv_sqrt" => RhoSpec::InvSqrt { offset: need(self.offset, "offset")? },
            "harmonic" => RhoSpec::Harmonic { offset: need(self.offset, "offset")? },
            "geometric" => RhoSpec::Geometric { rho0: need(self.rho0, "rho0")?, ratio: need(self.ratio, "ratio")? },
            "explicit" => RhoSpec::Explicit {
                values: self.values.clone().context("--family explicit needs --values")?,
                tail: self.tail,
            },
            f => bail!("unknown family `{f}`"),
        })
    }

    pub fn schedule(&self) -> Result<RhoSchedule> {
        Ok(self.spec()?.to_schedule()?)
    }
}

/// Source of a measure for sampling commands.
#[derive(Args, Clone, Debug)]
pub struct MeasureArgs {
    /// Constant rho-family coupling.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "measure")]
    pub rho_const: Option<f64>,
    /// Measure description: inline JSON or a path to a JSON file.
    #[arg(long)]
    pub measure: Option<String>,
}

impl MeasureArgs {
    pub fn given(&self) -> bool {
        self.rho_const.is_some() || self.measure.is_some()
    }

    pub fn to_measure(&self) -> Result<MeasureSeq> {
        match (&self.rho_const, &self.measure) {
            (Some(r), None) => Ok(MeasureSeq::rho_family(RhoSchedule::Const(*r))?),
            (None, Some(m)) => Ok(load_measure_spec(m)?.to_measure()?),
            _ => bail!("give exactly one of --rho-const or --measure"),
        }
    }
}

pub fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}
