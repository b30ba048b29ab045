//! Command drivers shared by the binary and the tests. Each command returns
//! its exit status, the JSON report and a plain-text summary.

pub mod parser;
pub mod report;
pub mod svg;

use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Error;
use crate::family::{analyze, PolyFamily};
use crate::invariants::{invariant_record_with, sigma_with_nu};
use crate::poly::{format_rat, MPoly, Rat, Var};
use crate::singular::infinity_candidates;

pub use parser::{parse, parse_rational, ParseError};

pub const DEFAULT_GRID: usize = 16;

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub json: String,
    pub summary: String,
    pub svg: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_INCONSISTENT };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn timestamp(enabled: bool) -> Option<String> {
    enabled.then(|| {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        format!("unix:{}", secs)
    })
}

/// Parses `text` and substitutes `t = at` when given.
fn plane_poly(text: &str, at: Option<&Rat>) -> Result<MPoly, Failure> {
    let p = parse(text)?;
    match at {
        Some(tau) => Ok(p.subst_rat(Var::T, tau)),
        None if p.involves(Var::T) => Err(input_error("the polynomial involves t; pass --at <value>")),
        None => Ok(p),
    }
}

pub struct InvariantsArgs<'a> {
    pub poly: &'a str,
    pub at: Option<Rat>,
    pub precision: Rat,
    pub timestamp: bool,
}

pub fn cmd_invariants(a: &InvariantsArgs) -> Result<Outcome, Failure> {
    let f = plane_poly(a.poly, a.at.as_ref())?;
    let rec = invariant_record_with(&f, &a.precision)?;
    let rep = report::InvariantsReport {
        tool: report::TOOL,
        version: report::VERSION,
        command: "invariants",
        input: a.poly.to_string(),
        at: a.at.as_ref().map(Into::into),
        record: report::record_json(&rec),
        timestamp: timestamp(a.timestamp),
    };
    Ok(Outcome { code: EXIT_OK, json: to_json(&rep), summary: report::record_summary(&rec), svg: None })
}

pub fn cmd_sigma(a: &InvariantsArgs) -> Result<Outcome, Failure> {
    let f = plane_poly(a.poly, a.at.as_ref())?;
    let degree = match f.total_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial.into()),
    };
    let points = sigma_with_nu(&f, &infinity_candidates(&f)?)?;
    let mut summary = format!("f = {}\n", f);
    if points.is_empty() {
        summary.push_str("Sigma = {}\n");
    }
    for (p, nu) in &points {
        summary.push_str(&format!("{} with nu = {}\n", p, nu));
    }
    let rep = report::SigmaReport {
        tool: report::TOOL,
        version: report::VERSION,
        command: "sigma",
        input: a.poly.to_string(),
        at: a.at.as_ref().map(Into::into),
        poly: f.to_string(),
        degree,
        points: points.iter().map(|(p, nu)| report::sigma_json(p, Some(*nu))).collect(),
        timestamp: timestamp(a.timestamp),
    };
    Ok(Outcome { code: EXIT_OK, json: to_json(&rep), summary, svg: None })
}

pub struct FamilyArgs<'a> {
    pub poly: &'a str,
    pub interval: (Rat, Rat),
    pub grid: usize,
    pub precision: Rat,
    pub timestamp: bool,
    pub svg: bool,
}

fn run_family(command: &'static str, a: &FamilyArgs) -> Result<Outcome, Failure> {
    if a.grid < 2 {
        return Err(input_error("--grid must be at least 2"));
    }
    let fam = PolyFamily::new(parse(a.poly)?, a.interval.clone())?;
    let analysis = analyze(&fam, Some(a.grid), &a.precision)?;
    let rep = report::family_report(command, a.poly, &analysis, a.grid, timestamp(a.timestamp));
    let code = report::family_exit_code(analysis.verdict.conclusion);
    let svg = match (&analysis.braid, a.svg) {
        (Some(b), true) => Some(svg::braid_svg(
            b,
            &fam.interval,
            &format!(
                "critical values of {} for t in [{}, {}]",
                fam.poly,
                format_rat(&fam.interval.0),
                format_rat(&fam.interval.1)
            ),
        )),
        _ => None,
    };
    Ok(Outcome { code, json: to_json(&rep), summary: report::family_summary(&analysis), svg })
}

pub fn cmd_family(a: &FamilyArgs) -> Result<Outcome, Failure> {
    run_family("family", a)
}

pub fn cmd_braid(a: &FamilyArgs) -> Result<Outcome, Failure> {
    run_family("braid", a)
}
