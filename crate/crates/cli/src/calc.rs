//! `calc`: exact quantities as `{quantity, value_bits, units, inputs}` JSON.

use anyhow::Result;
use clap::Subcommand;
use mutdim::info;
use mutdim::kakutani::hellinger_sq_coupled;
use mutdim::measures::{MeasureSeq, RhoSchedule};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{self, parse_word, JointArgs};
use crate::Status;

#[derive(Subcommand)]
pub enum Calc {
    /// Shannon entropy of a pmf.
    Entropy {
        #[arg(long, value_delimiter = ',')]
        pmf: Vec<f64>,
    },
    /// Entropy of a joint pmf.
    JointEntropy(JointArgs),
    /// Mutual information of a joint pmf.
    Mi(JointArgs),
    /// Kullback-Leibler divergence D(p‖q).
    Kl {
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
    },
    /// Cross-entropy H(p) + D(p‖q).
    CrossEntropy {
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
    },
    /// Self-information of a word under a product measure.
    SelfInfo {
        #[arg(long, value_delimiter = ',')]
        pmf: Vec<f64>,
        /// Word as symbol digits, e.g. 0110.
        #[arg(long)]
        word: String,
    },
    /// Pointwise mutual information of a pair of words under a constant coupling.
    Pmi {
        #[command(flatten)]
        joint: JointArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Hellinger distance between two pmfs.
    Hellinger {
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
    },
    /// Squared Hellinger distance between rho_joint(rho) and the uniform product.
    Hellinger2Coupled {
        #[arg(long, allow_hyphen_values = true)]
        rho: f64,
    },
}

#[derive(Serialize)]
struct Output {
    quantity: &'static str,
    /// `null` when the value is infinite.
    value_bits: Option<f64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    infinite: bool,
    units: &'static str,
    inputs: Value,
}

fn emit(quantity: &'static str, value: f64, units: &'static str, inputs: Value) -> Result<Status> {
    let finite = value.is_finite();
    args::print_json(&Output {
        quantity,
        value_bits: finite.then_some(value),
        infinite: value.is_infinite(),
        units,
        inputs,
    })?;
    Ok(Status::Ok)
}

pub fn run(c: Calc) -> Result<Status> {
    match c {
        Calc::Entropy { pmf } => {
            let v = info::entropy(&args::pmf(&pmf, "pmf")?).value();
            emit("entropy", v, "bits", json!({ "pmf": pmf }))
        }
        Calc::JointEntropy(j) => emit("joint-entropy", info::joint_entropy(&j.to_joint()?).value(), "bits", j.inputs()),
        Calc::Mi(j) => emit("mi", info::mutual_information(&j.to_joint()?).value(), "bits", j.inputs()),
        Calc::Kl { p, q } => {
            let v = info::kl_divergence(&args::pmf(&p, "p")?, &args::pmf(&q, "q")?)?.value();
            emit("kl", v, "bits", json!({ "p": p, "q": q }))
        }
        Calc::CrossEntropy { p, q } => {
            let v = info::cross_entropy(&args::pmf(&p, "p")?, &args::pmf(&q, "q")?)?.value();
            emit("cross-entropy", v, "bits", json!({ "p": p, "q": q }))
        }
        Calc::SelfInfo { pmf, word } => {
            let v = info::self_information(&args::pmf(&pmf, "pmf")?, &parse_word(&word)?)?.value();
            emit("self-info", v, "bits", json!({ "pmf": pmf, "word": word }))
        }
        Calc::Pmi { joint, u, w } => {
            let m = match joint.rho {
                Some(r) => MeasureSeq::rho_family(RhoSchedule::Const(r))?,
                None => MeasureSeq::constant(joint.to_joint()?),
            };
            let v = info::pointwise_mi(&m, &parse_word(&u)?, &parse_word(&w)?)?.value();
            let mut inputs = joint.inputs();
            inputs["u"] = json!(u);
            inputs["w"] = json!(w);
            emit("pmi", v, "bits", inputs)
        }
        Calc::Hellinger { p, q } => {
            let v = info::hellinger(&args::pmf(&p, "p")?, &args::pmf(&q, "q")?)?;
            emit("hellinger", v, "distance", json!({ "p": p, "q": q }))
        }
        Calc::Hellinger2Coupled { rho } => {
            emit("hellinger2-coupled", hellinger_sq_coupled(rho)?, "squared-distance", json!({ "rho": rho }))
        }
    }
}
