//! JSON reports. Every rational is written as `"p/q"` in lowest terms with
//! `q > 0`, including integers (`"0/1"`, `"1/1"`).

use majority_core::oracle::OracleResult;
use majority_core::{BigInt, BigRational, SolveReport, VerifyReport};
use serde::Serialize;
use thiserror::Error;

pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected an exact rational \"p/q\", got {0:?}")]
pub struct RatioParseError(pub String);

/// Parses `p/q` or a bare integer `p`. Decimal notation is refused.
pub fn parse_ratio(text: &str) -> Result<BigRational, RatioParseError> {
    let err = || RatioParseError(text.to_string());
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (p, q) = text.split_once('/').unwrap_or((text, "1"));
    if !digits(p) || !digits(q) {
        return Err(err());
    }
    let p: BigInt = p.parse().map_err(|_| err())?;
    let q: BigInt = q.parse().map_err(|_| err())?;
    if q == BigInt::from(0) {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

#[derive(Debug, Serialize)]
pub struct SolveJson {
    pub k: usize,
    pub eta_bound: String,
    pub achieved_eta: String,
    pub per_vertex_f: Vec<String>,
    pub recolour_steps: Vec<usize>,
    pub components: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential_trace: Option<Vec<Vec<String>>>,
}

impl SolveJson {
    pub fn new(report: &SolveReport, with_trace: bool) -> Self {
        SolveJson {
            k: report.k,
            eta_bound: fmt_ratio(&report.eta_bound()),
            achieved_eta: fmt_ratio(&report.achieved_eta),
            per_vertex_f: report.per_vertex_f.iter().map(fmt_ratio).collect(),
            recolour_steps: report.recolour_steps(),
            components: report.component_sizes(),
            potential_trace: if with_trace {
                report
                    .potential_traces()
                    .map(|t| t.iter().map(|c| c.iter().map(fmt_ratio).collect()).collect())
            } else {
                None
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationJson {
    pub vertex: usize,
    pub same: usize,
    pub out_degree: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub ok: bool,
    pub eta: String,
    pub achieved_eta: String,
    pub violations: Vec<ViolationJson>,
    pub list_violations: Vec<usize>,
}

impl VerifyJson {
    pub fn new(report: &VerifyReport, eta: &BigRational) -> Self {
        VerifyJson {
            ok: report.ok,
            eta: fmt_ratio(eta),
            achieved_eta: fmt_ratio(&report.achieved_eta),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationJson {
                    vertex: v.vertex,
                    same: v.same,
                    out_degree: v.out_degree,
                })
                .collect(),
            list_violations: report.list_violations.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleJson {
    pub opt: String,
    pub enumerated: u64,
    pub witness: Vec<u64>,
}

impl OracleJson {
    pub fn new(result: &OracleResult) -> Self {
        OracleJson {
            opt: fmt_ratio(&result.opt),
            enumerated: result.enumerated,
            witness: result.witness.iter().map(|(_, c)| c).collect(),
        }
    }
}

/// One JSON object on a single line, newline-terminated.
pub fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types always serialize");
    s.push('\n');
    s
}
