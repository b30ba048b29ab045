//! Structured reports. Exact values are serialized as strings: rationals as
//! `{"num", "den"}`, polynomials in canonical text form.

use serde::Serialize;

use crate::complex::{rat_to_f64, CRat};
use crate::family::{
    value_text, BraidData, Conclusion, ExceptionalSet, FamilyAnalysis, GenericCluster, Theorem,
};
use crate::invariants::{InvariantRecord, ValueSet, INTEGER_NAMES};
use crate::poly::{format_rat, Rat, Var};
use crate::roots::{RealRoot, RootBox};
use crate::singular::{Chart, SigmaPoint};

pub const TOOL: &str = "equising";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

fn decimal(r: &Rat) -> String {
    format!("{:e}", rat_to_f64(r))
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxJson {
    pub re: RatJson,
    pub im: RatJson,
    pub radius: RatJson,
    /// Convenience approximation of the center.
    pub approx: String,
}

impl BoxJson {
    fn new(center: &CRat, radius: &Rat) -> Self {
        BoxJson {
            re: (&center.re).into(),
            im: (&center.im).into(),
            radius: radius.into(),
            approx: format!("{} + {}i", decimal(&center.re), decimal(&center.im)),
        }
    }
}

impl From<&RootBox> for BoxJson {
    fn from(b: &RootBox) -> Self {
        BoxJson::new(&b.center, &b.radius)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterJson {
    /// Squarefree polynomial in `s` whose roots are the values.
    pub factor: String,
    pub count: usize,
    pub mu: u32,
    pub lambda: u32,
    pub boxes: Vec<BoxJson>,
}

fn clusters(vs: &ValueSet) -> Vec<ClusterJson> {
    vs.clusters
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let boxes = vs.boxes.boxes_of(i).map(BoxJson::from).collect();
            ClusterJson {
                factor: c.factor.display_in(Var::S),
                count: c.len(),
                mu: c.mu,
                lambda: c.lambda,
                boxes,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IntegersJson {
    pub mu: u32,
    pub lambda: u32,
    #[serde(rename = "#B")]
    pub b: u32,
    #[serde(rename = "#B_aff")]
    pub b_aff: u32,
    #[serde(rename = "#B_inf")]
    pub b_inf: u32,
    pub deg: u32,
}

impl From<[u32; 6]> for IntegersJson {
    fn from(v: [u32; 6]) -> Self {
        IntegersJson { mu: v[0], lambda: v[1], b: v[2], b_aff: v[3], b_inf: v[4], deg: v[5] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaJson {
    pub point: String,
    pub chart: &'static str,
    /// Defining polynomial of the cluster in the free coordinate of the chart.
    pub factor: String,
    pub count: usize,
    pub nu: Option<u32>,
}

fn chart_name(c: Chart) -> &'static str {
    match c {
        Chart::YOne => "y=1",
        Chart::XOne => "x=1",
    }
}

pub fn sigma_json(p: &SigmaPoint, nu: Option<u32>) -> SigmaJson {
    SigmaJson {
        point: p.to_string(),
        chart: chart_name(p.chart),
        factor: p.factor.display_in(Var::X),
        count: p.len(),
        nu,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShearJson {
    pub source: &'static str,
    pub target: &'static str,
    pub slope: RatJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordJson {
    pub poly: String,
    pub integers: IntegersJson,
    pub d: u32,
    pub k: u32,
    pub mu: u32,
    pub lambda: u32,
    /// `mu + lambda`: the generic fiber is homotopic to a wedge of this many circles.
    pub wedge: u32,
    pub b_aff: Vec<ClusterJson>,
    pub b_inf: Vec<ClusterJson>,
    pub b: Vec<ClusterJson>,
    pub sigma: Vec<SigmaJson>,
    pub shear: ShearJson,
    pub precision: RatJson,
}

pub fn record_json(r: &InvariantRecord) -> RecordJson {
    RecordJson {
        poly: r.poly.to_string(),
        integers: r.integers().into(),
        d: r.d,
        k: r.k,
        mu: r.mu,
        lambda: r.lambda,
        wedge: r.wedge,
        b_aff: clusters(&r.b_aff),
        b_inf: clusters(&r.b_inf),
        b: clusters(&r.b),
        sigma: r.sigma.iter().map(|(p, nu)| sigma_json(p, Some(*nu))).collect(),
        shear: ShearJson {
            source: r.shear_used.source.name(),
            target: r.shear_used.target.name(),
            slope: (&r.shear_used.slope).into(),
        },
        precision: (&r.precision).into(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: String,
    pub at: Option<RatJson>,
    pub record: RecordJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: String,
    pub at: Option<RatJson>,
    pub poly: String,
    pub degree: u32,
    pub points: Vec<SigmaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenericClusterJson {
    /// Polynomial in `s` and `t` whose roots in `s` are the values.
    pub factor: String,
    pub count: usize,
    pub mu: u32,
    pub lambda: u32,
    /// The values as rational functions of `t`, when they are.
    pub values: Option<Vec<String>>,
}

fn generic_clusters(cs: &[GenericCluster]) -> Vec<GenericClusterJson> {
    cs.iter()
        .map(|c| GenericClusterJson {
            factor: c.factor.to_string(),
            count: c.count,
            mu: c.mu,
            lambda: c.lambda,
            values: c.values.as_ref().map(|v| v.iter().map(value_text).collect()),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GenericJson {
    pub integers: IntegersJson,
    pub k: u32,
    pub b_aff: Vec<GenericClusterJson>,
    pub b_inf: Vec<GenericClusterJson>,
    pub b: Vec<GenericClusterJson>,
    pub sigma: Vec<SigmaNuJson>,
    pub samples: Vec<RatJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaNuJson {
    pub point: String,
    pub nu: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealRootJson {
    pub lo: RatJson,
    pub hi: RatJson,
    pub exact: Option<RatJson>,
    pub approx: String,
}

impl From<&RealRoot> for RealRootJson {
    fn from(r: &RealRoot) -> Self {
        RealRootJson {
            lo: (&r.lo).into(),
            hi: (&r.hi).into(),
            exact: r.exact.as_ref().map(Into::into),
            approx: decimal(&r.midpoint()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalJson {
    /// Squarefree polynomial in `t`.
    pub factor: String,
    pub tags: Vec<&'static str>,
    pub roots_in_interval: Vec<RealRootJson>,
}

fn exceptional_json(ex: &ExceptionalSet) -> Vec<ExceptionalJson> {
    ex.pieces
        .iter()
        .map(|p| ExceptionalJson {
            factor: p.factor.display_in(Var::T),
            tags: p.tags.iter().map(|t| t.as_str()).collect(),
            roots_in_interval: p.roots.iter().map(Into::into).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PointJson {
    pub t: RatJson,
    pub endpoint: bool,
    pub tags: Vec<&'static str>,
    pub record: Option<RecordJson>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub t_lo: RatJson,
    pub t_hi: RatJson,
    pub generic: IntegersJson,
    pub value: Option<IntegersJson>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstancyJson {
    pub name: &'static str,
    pub generic: u32,
    pub constant: bool,
    pub witnesses: Vec<WitnessJson>,
    pub unresolved: Vec<RealRootJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BirthJson {
    pub t: RatJson,
    pub born: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContinuityJson {
    pub status: &'static str,
    pub five_constant: bool,
    pub degree_constant: bool,
    pub sigma_constant: bool,
    pub nu_constant: bool,
    pub certified_by: Option<String>,
    pub births: Vec<BirthJson>,
    pub unresolved: Vec<RealRootJson>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrandPointJson {
    pub t: RatJson,
    #[serde(flatten)]
    pub value: BoxJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventJson {
    pub kind: &'static str,
    pub t_lo: RatJson,
    pub t_hi: RatJson,
    pub exceptional: Option<RatJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidJson {
    pub status: &'static str,
    pub samples: Vec<RatJson>,
    pub strands: Vec<Vec<StrandPointJson>>,
    pub events: Vec<EventJson>,
}

pub fn braid_json(b: &BraidData) -> BraidJson {
    BraidJson {
        status: b.status(),
        samples: b.samples.iter().map(Into::into).collect(),
        strands: b
            .strands
            .iter()
            .map(|s| {
                s.points
                    .iter()
                    .map(|p| StrandPointJson { t: (&p.t).into(), value: BoxJson::new(&p.center, &p.radius) })
                    .collect()
            })
            .collect(),
        events: b
            .events
            .iter()
            .map(|e| EventJson {
                kind: e.kind.as_str(),
                t_lo: (&e.lo).into(),
                t_hi: (&e.hi).into(),
                exceptional: e.exceptional.as_ref().map(Into::into),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisJson {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub theorem: Option<&'static str>,
    pub conclusion: &'static str,
    pub text: String,
    pub hypotheses: Vec<HypothesisJson>,
}

pub fn theorem_name(t: Theorem) -> &'static str {
    match t {
        Theorem::A => "A",
        Theorem::B => "B",
        Theorem::C => "C",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalJson {
    pub lo: RatJson,
    pub hi: RatJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: String,
    pub poly: String,
    pub interval: IntervalJson,
    pub grid: usize,
    pub precision: RatJson,
    pub generic: GenericJson,
    pub exceptional: Vec<ExceptionalJson>,
    pub points: Vec<PointJson>,
    pub constancy: Vec<ConstancyJson>,
    pub continuity: ContinuityJson,
    pub braid: Option<BraidJson>,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl FamilyReport {
    pub fn conclusion(&self) -> &'static str {
        self.verdict.conclusion
    }
}

pub fn family_report(
    command: &'static str,
    input: &str,
    a: &FamilyAnalysis,
    grid: usize,
    timestamp: Option<String>,
) -> FamilyReport {
    let g = &a.generic.record;
    let generic = GenericJson {
        integers: g.integers.into(),
        k: g.k,
        b_aff: generic_clusters(&g.b_aff),
        b_inf: generic_clusters(&g.b_inf),
        b: generic_clusters(&g.b),
        sigma: g.sigma.iter().map(|(p, nu)| SigmaNuJson { point: p.clone(), nu: *nu }).collect(),
        samples: g.samples.iter().map(Into::into).collect(),
    };
    let points = a
        .constancy
        .points
        .iter()
        .map(|p| PointJson {
            t: (&p.tau).into(),
            endpoint: p.endpoint,
            tags: p.tags.iter().map(|t| t.as_str()).collect(),
            record: p.outcome.as_ref().ok().map(record_json),
            error: p.outcome.as_ref().err().map(|e| e.to_string()),
        })
        .collect();
    let constancy = a
        .constancy
        .rows
        .iter()
        .map(|r| ConstancyJson {
            name: r.name,
            generic: r.generic,
            constant: r.constant,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    t_lo: (&w.lo).into(),
                    t_hi: (&w.hi).into(),
                    generic: w.generic.into(),
                    value: w.value.as_ref().ok().map(|v| (*v).into()),
                    error: w.value.as_ref().err().cloned(),
                })
                .collect(),
            unresolved: r.unresolved.iter().map(Into::into).collect(),
        })
        .collect();
    let c = &a.continuity;
    let continuity = ContinuityJson {
        status: c.status.as_str(),
        five_constant: c.hypotheses.five_constant,
        degree_constant: c.hypotheses.degree_constant,
        sigma_constant: c.hypotheses.sigma_constant,
        nu_constant: c.hypotheses.nu_constant,
        certified_by: c.hypotheses.certified_by.clone(),
        births: c
            .direct
            .births
            .iter()
            .map(|b| BirthJson { t: (&b.tau).into(), born: b.born.display_in(Var::S) })
            .collect(),
        unresolved: c.direct.unresolved.iter().map(Into::into).collect(),
        note: c.note.clone(),
    };
    let v = &a.verdict;
    FamilyReport {
        tool: TOOL,
        version: VERSION,
        command,
        input: input.to_string(),
        poly: a.family.poly.to_string(),
        interval: IntervalJson { lo: (&a.family.interval.0).into(), hi: (&a.family.interval.1).into() },
        grid,
        precision: (&a.precision).into(),
        generic,
        exceptional: exceptional_json(&a.generic.exceptional),
        points,
        constancy,
        continuity,
        braid: a.braid.as_ref().map(braid_json),
        verdict: VerdictJson {
            theorem: v.theorem.map(theorem_name),
            conclusion: v.conclusion.as_str(),
            text: v.text.clone(),
            hypotheses: v
                .hypotheses
                .iter()
                .map(|h| HypothesisJson { name: h.name.clone(), holds: h.holds, witness: h.witness.clone() })
                .collect(),
        },
        timestamp,
    }
}

/// Plain-text summary of a record.
pub fn record_summary(r: &InvariantRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!("f = {}\n", r.poly));
    for (name, v) in INTEGER_NAMES.iter().zip(r.integers()) {
        out.push_str(&format!("  {:<7} {}\n", name, v));
    }
    out.push_str(&format!("  k       {}\n", r.k));
    for (label, vs) in [("B_aff", &r.b_aff), ("B_inf", &r.b_inf), ("B", &r.b)] {
        out.push_str(&format!("  {} = {}\n", label, value_set_text(vs)));
    }
    if r.sigma.is_empty() {
        out.push_str("  Sigma = {}\n");
    }
    for (p, nu) in &r.sigma {
        out.push_str(&format!("  Sigma point {} with nu = {}\n", p, nu));
    }
    out
}

fn value_set_text(vs: &ValueSet) -> String {
    if vs.clusters.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = vs
        .clusters
        .iter()
        .map(|c| match c.rational() {
            Some(v) => format!("{} (mu_c = {}, lambda_c = {})", format_rat(&v), c.mu, c.lambda),
            None => format!(
                "roots of {} (mu_c = {}, lambda_c = {})",
                c.factor.display_in(Var::S),
                c.mu,
                c.lambda
            ),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Plain-text summary of a family analysis.
pub fn family_summary(a: &FamilyAnalysis) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "family f_t = {} for t in [{}, {}]\n",
        a.family.poly,
        format_rat(&a.family.interval.0),
        format_rat(&a.family.interval.1)
    ));
    let g = &a.generic.record;
    out.push_str("generic invariants:\n");
    for (name, v) in INTEGER_NAMES.iter().zip(g.integers) {
        out.push_str(&format!("  {:<7} {}\n", name, v));
    }
    for (label, cs) in [("B_aff", &g.b_aff), ("B_inf", &g.b_inf)] {
        let parts: Vec<String> = cs
            .iter()
            .map(|c| match &c.values {
                Some(v) => {
                    let vals: Vec<String> = v.iter().map(value_text).collect();
                    format!("{} (mu_c = {}, lambda_c = {})", vals.join(", "), c.mu, c.lambda)
                }
                None => format!("roots of {} (mu_c = {}, lambda_c = {})", c.factor, c.mu, c.lambda),
            })
            .collect();
        let text = if parts.is_empty() { "{}".into() } else { format!("{{{}}}", parts.join("; ")) };
        out.push_str(&format!("  {} = {}\n", label, text));
    }
    out.push_str("exceptional parameters in the interval:\n");
    let mut any = false;
    for p in &a.generic.exceptional.pieces {
        for r in &p.roots {
            any = true;
            let tags: Vec<&str> = p.tags.iter().map(|t| t.as_str()).collect();
            let at = match &r.exact {
                Some(e) => format!("t = {}", format_rat(e)),
                None => format!("t in [{}, {}] ({} = 0)", format_rat(&r.lo), format_rat(&r.hi), p.factor.display_in(Var::T)),
            };
            out.push_str(&format!("  {}: {}\n", at, tags.join(", ")));
        }
    }
    if !any {
        out.push_str("  none\n");
    }
    out.push_str("constancy:\n");
    for r in &a.constancy.rows {
        let state = if !r.constant {
            "jumps"
        } else if !r.unresolved.is_empty() {
            "unresolved"
        } else {
            "constant"
        };
        out.push_str(&format!("  {:<7} {:<10}", r.name, state));
        for w in &r.witnesses {
            match &w.value {
                Ok(v) => {
                    let i = INTEGER_NAMES.iter().position(|n| *n == r.name).unwrap_or(0);
                    out.push_str(&format!(" t = {}: {} -> {}", format_rat(&w.lo), r.generic, v[i]));
                }
                Err(e) => out.push_str(&format!(" t = {}: {}", format_rat(&w.lo), e)),
            }
        }
        out.push('\n');
    }
    out.push_str(&format!("B_inf continuity: {}", a.continuity.status.as_str()));
    if let Some(by) = &a.continuity.hypotheses.certified_by {
        out.push_str(&format!(" ({})", by));
    }
    if let Some(n) = &a.continuity.note {
        out.push_str(&format!(" ({})", n));
    }
    out.push('\n');
    if let Some(b) = &a.braid {
        out.push_str(&format!(
            "braid: {} strand(s) over {} samples, status {}\n",
            b.strands.len(),
            b.samples.len(),
            b.status()
        ));
        for e in &b.events {
            out.push_str(&format!(
                "  {} in t in [{}, {}]\n",
                e.kind.as_str(),
                format_rat(&e.lo),
                format_rat(&e.hi)
            ));
        }
    }
    let v = &a.verdict;
    out.push_str(&format!(
        "verdict: {}{}\n  {}\n",
        v.conclusion.as_str(),
        v.theorem.map(|t| format!(" (Theorem {})", theorem_name(t))).unwrap_or_default(),
        v.text
    ));
    out
}

/// Exit status for a family verdict: 0 for an equivalence, 3 otherwise.
pub fn family_exit_code(c: Conclusion) -> i32 {
    if c.is_equivalence() {
        0
    } else {
        3
    }
}
