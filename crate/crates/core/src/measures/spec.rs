//! JSON description of measures used by config files and provenance records.
//!
//! ```json
//! {"kind": "pmf", "k": 2, "p": [0.75, 0.25]}
//! {"kind": "joint", "k": 2, "p": [0.375, 0.125, 0.125, 0.375]}
//! {"kind": "rho", "rho": {"family": "inv_sqrt", "offset": 2}}
//! {"kind": "tabulated", "k": 2, "joint": true, "head": [[...]], "tail": [...]}
//! ```

use serde::{Deserialize, Serialize};

use super::{JointPmf, MeasureSeq, Pmf, PositionPmf, RhoSchedule};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Pmf,
    Joint,
    Rho,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum RhoSpec {
    Const { rho: f64 },
    InvSqrt { offset: f64 },
    Harmonic { offset: f64 },
    Geometric { rho0: f64, ratio: f64 },
    Explicit { values: Vec<f64>, tail: Option<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub kind: MeasureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<RhoSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<f64>>,
}

impl RhoSpec {
    pub fn to_schedule(&self) -> Result<RhoSchedule> {
        let s = match self {
            RhoSpec::Const { rho } => RhoSchedule::Const(*rho),
            RhoSpec::InvSqrt { offset } => RhoSchedule::InverseSqrt { offset: *offset },
            RhoSpec::Harmonic { offset } => RhoSchedule::Harmonic { offset: *offset },
            RhoSpec::Geometric { rho0, ratio } => RhoSchedule::Geometric { rho0: *rho0, ratio: *ratio },
            RhoSpec::Explicit { values, tail } => RhoSchedule::Explicit {
                values: values.clone(),
                tail: tail.ok_or_else(|| {
                    Error::Unclassifiable("explicit schedule without a tail value".into())
                })?,
            },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_schedule(s: &RhoSchedule) -> Self {
        match s {
            RhoSchedule::Const(rho) => RhoSpec::Const { rho: *rho },
            RhoSchedule::InverseSqrt { offset } => RhoSpec::InvSqrt { offset: *offset },
            RhoSchedule::Harmonic { offset } => RhoSpec::Harmonic { offset: *offset },
            RhoSchedule::Geometric { rho0, ratio } => RhoSpec::Geometric { rho0: *rho0, ratio: *ratio },
            RhoSchedule::Explicit { values, tail } => {
                RhoSpec::Explicit { values: values.clone(), tail: Some(*tail) }
            }
        }
    }
}

fn position(joint: bool, k: Option<usize>, p: &[f64]) -> Result<PositionPmf> {
    if joint {
        let k = match k {
            Some(k) => k,
            None => (p.len() as f64).sqrt().round() as usize,
        };
        Ok(PositionPmf::Joint(JointPmf::new(k, p.to_vec())?))
    } else {
        if let Some(k) = k {
            if k != p.len() {
                return Err(Error::Dimension(format!("k = {k} but {} probabilities given", p.len())));
            }
        }
        Ok(PositionPmf::Single(Pmf::new(p.to_vec())?))
    }
}

fn missing(field: &str, kind: MeasureKind) -> Error {
    Error::Config(format!("measure of kind {kind:?} requires field `{field}`"))
}

impl MeasureSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_measure(&self) -> Result<MeasureSeq> {
        match self.kind {
            MeasureKind::Pmf | MeasureKind::Joint => {
                let p = self.p.as_ref().ok_or_else(|| missing("p", self.kind))?;
                Ok(MeasureSeq::Constant(position(self.kind == MeasureKind::Joint, self.k, p)?))
            }
            MeasureKind::Rho => {
                let rho = self.rho.as_ref().ok_or_else(|| missing("rho", self.kind))?;
                MeasureSeq::rho_family(rho.to_schedule()?)
            }
            MeasureKind::Tabulated => {
                let joint = self.joint.unwrap_or(false);
                let tail = self.tail.as_ref().ok_or_else(|| missing("tail", self.kind))?;
                let head = self
                    .head
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|p| position(joint, self.k, p))
                    .collect::<Result<Vec<_>>>()?;
                MeasureSeq::tabulated(head, position(joint, self.k, tail)?)
            }
        }
    }

    pub fn from_measure(m: &MeasureSeq) -> Self {
        let blank = |kind| MeasureSpec { kind, k: None, p: None, rho: None, joint: None, head: None, tail: None };
        match m {
            MeasureSeq::Constant(p) => MeasureSpec {
                k: Some(p.sigma()),
                p: Some(p.flat_probs().to_vec()),
                ..blank(if p.is_joint() { MeasureKind::Joint } else { MeasureKind::Pmf })
            },
            MeasureSeq::Rho(s) => MeasureSpec { rho: Some(RhoSpec::from_schedule(s)), ..blank(MeasureKind::Rho) },
            MeasureSeq::Tabulated { head, tail } => MeasureSpec {
                k: Some(tail.sigma()),
                joint: Some(tail.is_joint()),
                head: Some(head.iter().map(|p| p.flat_probs().to_vec()).collect()),
                tail: Some(tail.flat_probs().to_vec()),
                ..blank(MeasureKind::Tabulated)
            },
        }
    }
}
