//! Job runner behind the `horocone` binary.
//!
//! A job is a command plus a JSON payload. [`run`] returns the exit code and
//! the output document: `0` with a result document, `2` with a list of
//! violated invariants when the payload is well formed but describes invalid
//! objects, `1` with an error message when the payload is malformed.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cone::{ConePoint, IndexSet};
use crate::detour::DetourResult;
use crate::error::Error;
use crate::ext::ExtReal;
use crate::horo::{AnyBoundary, Descriptor, FunkBoundary, RevFunkBoundary};
use crate::isometry::{distortion, verify_hilbert_isometry, verify_thompson_isometry, ConeTransform, Distortion};
use crate::metrics::{funk_raw, hilbert_raw, reverse_funk_raw, thompson_raw};
use crate::nets::{
    approach, check_almost_geodesic, counterexample_harness, CounterexampleParams, CounterexampleReport, FiniteNet,
    GeodesicReport, MetricTag,
};
use crate::normed::{eval_dual_functional, legendre_fenchel, SignedVector, SupNormBoundary};
use crate::{Busemann, Horofunction, TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Dist,
    HoroEval,
    DetourTable,
    Classify,
    GeodesicCheck,
    LfTable,
    Counterexample,
    IsometryCheck,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Dist,
        Command::HoroEval,
        Command::DetourTable,
        Command::Classify,
        Command::GeodesicCheck,
        Command::LfTable,
        Command::Counterexample,
        Command::IsometryCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Dist => "dist",
            Command::HoroEval => "horo-eval",
            Command::DetourTable => "detour-table",
            Command::Classify => "classify",
            Command::GeodesicCheck => "geodesic-check",
            Command::LfTable => "lf-table",
            Command::Counterexample => "counterexample",
            Command::IsometryCheck => "isometry-check",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// One invocation: command, JSON payload text, output format, tolerance
/// override for descriptor validation, and the seed for sampled quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub payload: String,
    pub format: OutputFormat,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl JobSpec {
    pub fn new(command: Command, payload: impl Into<String>) -> Self {
        Self { command, payload: payload.into(), format: OutputFormat::Json, tol: None, seed: 0 }
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or(TOL)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub output: String,
}

// ---------------------------------------------------------------------------
// documents

/// A violated invariant, with the position of the offending item when the
/// payload holds several.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item: Option<usize>,
}

/// Exit code 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvalidDoc {
    pub status: String,
    pub command: Command,
    pub violations: Vec<Diagnostic>,
}

/// Exit code 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub status: String,
    pub command: Command,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceMatrices {
    pub funk: Vec<Vec<f64>>,
    pub revfunk: Vec<Vec<f64>>,
    pub hilbert: Vec<Vec<f64>>,
    pub thompson: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistDoc {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub funk: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub revfunk: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thompson: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<DistanceMatrices>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoroEvalDoc {
    pub kind: String,
    pub labels: Vec<String>,
    pub descriptor: Descriptor,
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetourTableDoc {
    pub kind: String,
    pub labels: Vec<String>,
    pub names: Vec<String>,
    /// `cost[i][j] = H(xi_i, xi_j)`.
    pub cost: Vec<Vec<ExtReal>>,
    pub metric: Vec<Vec<ExtReal>>,
    pub same_part: Vec<Vec<bool>>,
    pub singleton: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassItem {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub singleton: bool,
    pub canonical: Descriptor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyDoc {
    pub labels: Vec<String>,
    pub items: Vec<ClassItem>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicDoc {
    pub points: usize,
    pub dim: usize,
    pub report: GeodesicReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LfDoc {
    pub labels: Vec<String>,
    pub radius: f64,
    /// `-k` for `-delta_k`, `+k` for `+delta_k`.
    pub dual: Vec<String>,
    pub conjugate: Vec<ExtReal>,
    pub expected: Vec<ExtReal>,
    pub max_deviation: f64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleDoc {
    pub report: CounterexampleReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryDoc {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub hilbert_deviation: f64,
    pub thompson_deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<ConeTransform>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distortion: Option<Distortion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback_singletons: Option<bool>,
}

/// Every successful result document, tagged by `command`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Document {
    Dist(DistDoc),
    HoroEval(HoroEvalDoc),
    DetourTable(DetourTableDoc),
    Classify(ClassifyDoc),
    GeodesicCheck(GeodesicDoc),
    LfTable(LfDoc),
    Counterexample(CounterexampleDoc),
    IsometryCheck(IsometryDoc),
}

/// Any JSON document [`run`] can produce.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Ok(Box<Document>),
    Invalid(InvalidDoc),
    Error(ErrorDoc),
}

/// Parses an output document, dispatching on `status`.
pub fn parse_output(text: &str) -> serde_json::Result<Outcome> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("status").and_then(Value::as_str) {
        Some("invalid") => Ok(Outcome::Invalid(serde_json::from_value(v)?)),
        Some("error") => Ok(Outcome::Error(serde_json::from_value(v)?)),
        _ => Ok(Outcome::Ok(Box::new(serde_json::from_value(v)?))),
    }
}

/// Serializes a document the way [`run`] does.
pub fn render_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// failures

enum Failure {
    Malformed(String),
    Invalid(Vec<Diagnostic>),
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(diagnostics(&e, None))
    }
}

fn diagnostics(e: &Error, item: Option<usize>) -> Vec<Diagnostic> {
    match e {
        Error::InvalidDescriptor(vs) => vs
            .iter()
            .map(|v| {
                let code = serde_json::to_value(v)
                    .ok()
                    .and_then(|j| j.get("code").and_then(Value::as_str).map(str::to_owned))
                    .unwrap_or_default();
                Diagnostic { code, message: v.to_string(), item }
            })
            .collect(),
        other => {
            let code = match other {
                Error::DimensionMismatch { .. } => "dimension-mismatch",
                Error::NotPositive { .. } => "not-positive",
                Error::NotInterior { .. } => "not-interior",
                Error::InvalidCone(_) => "invalid-cone",
                Error::InvalidIndexSet(_) => "invalid-index-set",
                Error::Incompatible(_) => "incompatible",
                Error::InvalidTransform(_) => "invalid-transform",
                Error::EmptyGrid => "empty-grid",
                Error::InvalidArgument(_) => "invalid-argument",
                Error::InvalidDescriptor(_) => unreachable!(),
            };
            vec![Diagnostic { code: code.into(), message: other.to_string(), item }]
        }
    }
}

fn tagged<T>(r: crate::Result<T>, item: usize) -> Result<T, Failure> {
    r.map_err(|e| Failure::Invalid(diagnostics(&e, Some(item))))
}

type Out = Result<(Document, Option<String>), Failure>;

// ---------------------------------------------------------------------------
// entry point

pub fn run(spec: &JobSpec) -> RunOutput {
    let result =
        serde_json::from_str::<Value>(&spec.payload).map_err(Failure::from).and_then(|payload| dispatch(spec, payload));
    match result {
        Ok((doc, csv)) => match spec.format {
            OutputFormat::Json => RunOutput { exit_code: 0, output: render_json(&doc) },
            OutputFormat::Csv => match csv {
                Some(table) => RunOutput { exit_code: 0, output: table },
                None => error_output(spec, format!("{} has no tabular output; use --format json", spec.command.name())),
            },
        },
        Err(Failure::Malformed(message)) => error_output(spec, message),
        Err(Failure::Invalid(violations)) => RunOutput {
            exit_code: 2,
            output: render_json(&InvalidDoc { status: "invalid".into(), command: spec.command, violations }),
        },
    }
}

fn error_output(spec: &JobSpec, message: String) -> RunOutput {
    RunOutput {
        exit_code: 1,
        output: render_json(&ErrorDoc { status: "error".into(), command: spec.command, message }),
    }
}

fn dispatch(spec: &JobSpec, payload: Value) -> Out {
    if let Some(t) = spec.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Failure::Malformed(format!("tolerance must be finite and non-negative (got {t})")));
        }
    }
    match spec.command {
        Command::Dist => dist(parse(payload)?),
        Command::HoroEval => horo_eval(spec, parse(payload)?),
        Command::DetourTable => detour_table(spec, parse(payload)?),
        Command::Classify => classify(spec, payload),
        Command::GeodesicCheck => geodesic_check(spec, parse(payload)?),
        Command::LfTable => lf_table(spec, parse(payload)?),
        Command::Counterexample => counterexample(parse(payload)?),
        Command::IsometryCheck => isometry_check(spec, parse(payload)?),
    }
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, Failure> {
    Ok(serde_json::from_value(v)?)
}

/// Accepts a tagged descriptor, or infers the kind from the fields present:
/// `g` (reverse-Funk), `f` (Funk), `g` and `f` (Hilbert), `u` and `v` (sup-norm).
fn parse_descriptor(mut v: Value) -> Result<Descriptor, Failure> {
    if let Value::Object(map) = &mut v {
        if !map.contains_key("kind") {
            let has = |k: &str| map.contains_key(k);
            let kind = match (has("g"), has("f"), has("u") || has("v")) {
                (true, false, false) => "rev-funk",
                (false, true, false) => "funk",
                (true, true, false) => "hilbert",
                (false, false, true) => "sup-norm",
                _ => return Err(Failure::Malformed("descriptor needs a \"kind\"".into())),
            };
            map.insert("kind".into(), Value::String(kind.into()));
        }
    }
    parse(v)
}

fn labels_for(labels: Option<Vec<String>>, n: usize) -> Result<IndexSet, Failure> {
    let set = match labels {
        Some(l) => IndexSet::new(l)?,
        None => IndexSet::with_size(n)?,
    };
    if set.len() != n {
        return Err(Error::DimensionMismatch { expected: set.len(), got: n }.into());
    }
    Ok(set)
}

fn names_for(names: Option<Vec<String>>, prefix: &str, n: usize) -> Result<Vec<String>, Failure> {
    let names = names.unwrap_or_else(|| (0..n).map(|i| format!("{prefix}{i}")).collect());
    if names.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: names.len() }.into());
    }
    Ok(names)
}

// ---------------------------------------------------------------------------
// CSV

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn csv_table<T: std::fmt::Display>(corner: &str, columns: &[String], rows: &[(String, Vec<T>)]) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(corner.to_owned()).chain(columns.iter().cloned()).collect();
    out.push_str(&header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for (name, vals) in rows {
        let _ = write!(out, "{}", csv_field(name));
        for v in vals {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Shortest round-trip representation, as in the JSON output.
struct Num(f64);

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serde_json::to_string(&self.0).expect("finite number"))
    }
}

struct Ext(ExtReal);

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            ExtReal::Finite(x) => Num(x).fmt(f),
            other => other.fmt(f),
        }
    }
}

// ---------------------------------------------------------------------------
// commands

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistInput {
    labels: Option<Vec<String>>,
    x: Option<Vec<f64>>,
    y: Option<Vec<f64>>,
    points: Option<Vec<Vec<f64>>>,
    names: Option<Vec<String>>,
    /// Which matrix the CSV output holds (default Hilbert).
    metric: Option<MetricTag>,
}

fn dist(input: DistInput) -> Out {
    match (input.x, input.y, input.points) {
        (Some(x), Some(y), None) => {
            let labels = labels_for(input.labels, x.len())?;
            let (px, py) = (ConePoint::new(x)?, ConePoint::new(y)?);
            let d = |f: fn(&[f64], &[f64]) -> f64| f(px.coords(), py.coords());
            crate::error::check_dim(px.len(), py.len())?;
            let doc = DistDoc {
                labels: labels.labels().to_vec(),
                funk: Some(d(funk_raw)),
                revfunk: Some(d(reverse_funk_raw)),
                hilbert: Some(d(hilbert_raw)),
                thompson: Some(d(thompson_raw)),
                x: Some(px.into_coords()),
                y: Some(py.into_coords()),
                names: None,
                matrices: None,
            };
            Ok((Document::Dist(doc), None))
        }
        (None, None, Some(points)) => {
            let first = points.first().ok_or_else(|| Failure::Malformed("\"points\" is empty".into()))?;
            let labels = labels_for(input.labels, first.len())?;
            let names = names_for(input.names, "p", points.len())?;
            let pts: Vec<ConePoint> = points
                .into_iter()
                .enumerate()
                .map(|(i, p)| {
                    let p = tagged(ConePoint::new(p), i)?;
                    tagged(crate::error::check_dim(labels.len(), p.len()), i)?;
                    Ok(p)
                })
                .collect::<Result<_, Failure>>()?;
            let matrix = |f: fn(&[f64], &[f64]) -> f64| -> Vec<Vec<f64>> {
                pts.iter().map(|a| pts.iter().map(|b| f(a.coords(), b.coords())).collect()).collect()
            };
            let m = DistanceMatrices {
                funk: matrix(funk_raw),
                revfunk: matrix(reverse_funk_raw),
                hilbert: matrix(hilbert_raw),
                thompson: matrix(thompson_raw),
            };
            let chosen = match input.metric.unwrap_or(MetricTag::Hilbert) {
                MetricTag::Funk => &m.funk,
                MetricTag::ReverseFunk => &m.revfunk,
                MetricTag::Hilbert => &m.hilbert,
                MetricTag::Thompson => &m.thompson,
                MetricTag::SupNorm => return Err(Failure::Malformed("dist tables cover the cone metrics only".into())),
            };
            let rows: Vec<(String, Vec<Num>)> =
                names.iter().zip(chosen).map(|(n, r)| (n.clone(), r.iter().map(|v| Num(*v)).collect())).collect();
            let csv = csv_table("point", &names, &rows);
            let doc = DistDoc {
                labels: labels.labels().to_vec(),
                x: None,
                y: None,
                funk: None,
                revfunk: None,
                hilbert: None,
                thompson: None,
                names: Some(names),
                matrices: Some(m),
            };
            Ok((Document::Dist(doc), Some(csv)))
        }
        _ => Err(Failure::Malformed("dist needs either \"x\" and \"y\", or \"points\"".into())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HoroEvalInput {
    labels: Option<Vec<String>>,
    descriptor: Value,
    points: Vec<Vec<f64>>,
    names: Option<Vec<String>>,
}

fn horo_eval(spec: &JobSpec, input: HoroEvalInput) -> Out {
    let d = parse_descriptor(input.descriptor)?;
    let xi = d.build(spec.tol())?;
    let labels = labels_for(input.labels, xi.dim())?;
    let names = names_for(input.names, "p", input.points.len())?;
    let values: Vec<f64> =
        input.points.iter().enumerate().map(|(i, p)| tagged(xi.eval_point(p), i)).collect::<Result<_, Failure>>()?;
    let mut columns = labels.labels().to_vec();
    columns.push("value".into());
    let rows: Vec<(String, Vec<Num>)> = names
        .iter()
        .zip(input.points.iter().zip(&values))
        .map(|(n, (p, v))| (n.clone(), p.iter().chain(std::iter::once(v)).map(|x| Num(*x)).collect()))
        .collect();
    let csv = csv_table("point", &columns, &rows);
    let doc = HoroEvalDoc {
        kind: xi.kind().into(),
        labels: labels.labels().to_vec(),
        descriptor: xi.to_descriptor(),
        names,
        values,
    };
    Ok((Document::HoroEval(doc), Some(csv)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DetourTableInput {
    labels: Option<Vec<String>>,
    descriptors: Vec<Value>,
    names: Option<Vec<String>>,
}

fn build_all(spec: &JobSpec, raw: Vec<Value>) -> Result<Vec<AnyBoundary>, Failure> {
    let descriptors: Vec<Descriptor> = raw.into_iter().map(parse_descriptor).collect::<Result<_, _>>()?;
    let mut violations = Vec::new();
    let mut built = Vec::new();
    for (i, d) in descriptors.iter().enumerate() {
        match d.build(spec.tol()) {
            Ok(b) => built.push(b),
            Err(e) => violations.extend(diagnostics(&e, Some(i))),
        }
    }
    if violations.is_empty() {
        Ok(built)
    } else {
        Err(Failure::Invalid(violations))
    }
}

fn detour_table(spec: &JobSpec, input: DetourTableInput) -> Out {
    if input.descriptors.is_empty() {
        return Err(Failure::Malformed("\"descriptors\" is empty".into()));
    }
    let xs = build_all(spec, input.descriptors)?;
    let labels = labels_for(input.labels, xs[0].dim())?;
    let names = names_for(input.names, "xi", xs.len())?;
    let mut table: Vec<Vec<DetourResult>> = Vec::with_capacity(xs.len());
    for (i, a) in xs.iter().enumerate() {
        let row = xs.iter().map(|b| tagged(a.detour(b), i)).collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let cost: Vec<Vec<ExtReal>> = table.iter().map(|r| r.iter().map(|d| d.cost_forward).collect()).collect();
    let metric: Vec<Vec<ExtReal>> = table.iter().map(|r| r.iter().map(|d| d.metric).collect()).collect();
    let rows: Vec<(String, Vec<Ext>)> =
        names.iter().zip(&metric).map(|(n, r)| (n.clone(), r.iter().map(|v| Ext(*v)).collect())).collect();
    let csv = csv_table("descriptor", &names, &rows);
    let doc = DetourTableDoc {
        kind: xs[0].kind().into(),
        labels: labels.labels().to_vec(),
        same_part: metric.iter().map(|r| r.iter().map(|v| v.is_finite()).collect()).collect(),
        singleton: xs.iter().map(AnyBoundary::is_singleton).collect(),
        names,
        cost,
        metric,
    };
    Ok((Document::DetourTable(doc), Some(csv)))
}

fn classify(spec: &JobSpec, payload: Value) -> Out {
    let (labels, raw) = match payload {
        Value::Object(mut map) => {
            let labels: Option<Vec<String>> = match map.remove("labels") {
                Some(l) => Some(serde_json::from_value(l)?),
                None => None,
            };
            let raw = if let Some(ds) = map.remove("descriptors") {
                if !map.is_empty() {
                    return Err(Failure::Malformed("unexpected fields next to \"descriptors\"".into()));
                }
                serde_json::from_value::<Vec<Value>>(ds)?
            } else if let Some(d) = map.remove("descriptor") {
                if !map.is_empty() {
                    return Err(Failure::Malformed("unexpected fields next to \"descriptor\"".into()));
                }
                vec![d]
            } else {
                vec![Value::Object(map)]
            };
            (labels, raw)
        }
        _ => return Err(Failure::Malformed("classify needs a JSON object".into())),
    };
    if raw.is_empty() {
        return Err(Failure::Malformed("no descriptor given".into()));
    }
    let xs = build_all(spec, raw)?;
    let labels = labels_for(labels, xs[0].dim())?;
    let items = xs
        .iter()
        .map(|x| ClassItem {
            kind: x.kind().into(),
            variant: match x {
                AnyBoundary::Thompson(t) => Some(t.variant_name().into()),
                _ => None,
            },
            singleton: x.is_singleton(),
            canonical: x.to_descriptor(),
        })
        .collect();
    let doc = ClassifyDoc { labels: labels.labels().to_vec(), items };
    Ok((Document::Classify(doc), None))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeodesicInput {
    net: Option<FiniteNet>,
    approach: Option<Value>,
    steps: Option<usize>,
    burn_in: Option<usize>,
    /// Checks an approach net in another metric than its own.
    metric: Option<MetricTag>,
    epsilon: f64,
}

fn geodesic_check(spec: &JobSpec, input: GeodesicInput) -> Out {
    let net = match (input.net, input.approach) {
        (Some(net), None) => {
            if input.steps.is_some() || input.metric.is_some() {
                return Err(Failure::Malformed("\"steps\" and \"metric\" apply to approach nets only".into()));
            }
            let net = net.validated()?;
            match input.burn_in {
                Some(b) => net.with_burn_in(b),
                None => net,
            }
        }
        (None, Some(d)) => {
            let xi = parse_descriptor(d)?.build(spec.tol())?;
            let net = approach(&xi, input.steps.unwrap_or(1000))?;
            let burn_in = input.burn_in.unwrap_or(net.burn_in());
            let net = match input.metric {
                Some(m) => FiniteNet::new(net.points().to_vec(), m)?,
                None => net,
            };
            net.with_burn_in(burn_in)
        }
        _ => return Err(Failure::Malformed("geodesic-check needs exactly one of \"net\" and \"approach\"".into())),
    };
    let report = check_almost_geodesic(&net, input.epsilon)?;
    let doc = GeodesicDoc { points: net.len(), dim: net.dim(), report };
    Ok((Document::GeodesicCheck(doc), None))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LfInput {
    labels: Option<Vec<String>>,
    descriptor: Value,
    radius: Option<f64>,
}

/// Largest dimension for which the sampling grid (`7^n` points) is built.
const LF_MAX_DIM: usize = 6;

fn lf_table(spec: &JobSpec, input: LfInput) -> Out {
    let xi = match parse_descriptor(input.descriptor)?.build(spec.tol())? {
        AnyBoundary::SupNorm(s) => s,
        other => {
            return Err(Failure::Malformed(format!("lf-table needs a sup-norm descriptor (got {})", other.kind())))
        }
    };
    let n = xi.dim();
    if n > LF_MAX_DIM {
        return Err(Error::InvalidArgument(format!("lf-table supports n <= {LF_MAX_DIM} (got {n})")).into());
    }
    let radius = input.radius.unwrap_or(1e3);
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Failure::Malformed(format!("radius must be finite and positive (got {radius})")));
    }
    let labels = labels_for(input.labels, n)?;
    let duals: Vec<SignedVector> =
        [-1.0, 1.0].iter().flat_map(|&s| (0..n).map(move |k| SignedVector::dirac(n, k, s))).collect();
    let conjugate = supnorm_conjugate(&xi, &duals, radius)?;
    let expected: Vec<ExtReal> = duals.iter().map(|d| eval_dual_functional(&xi, d)).collect::<crate::Result<_>>()?;
    let mut max_deviation = 0.0_f64;
    let mut agree = true;
    for (c, e) in conjugate.iter().zip(&expected) {
        match (c, e) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => max_deviation = max_deviation.max((a - b).abs()),
            (a, b) => agree &= a == b,
        }
    }
    agree &= max_deviation <= 1e-6;
    let dual: Vec<String> =
        ["-", "+"].iter().flat_map(|s| labels.labels().iter().map(move |l| format!("{s}{l}"))).collect();
    let rows: Vec<(String, Vec<Ext>)> = ["-", "+"]
        .iter()
        .enumerate()
        .map(|(r, s)| (s.to_string(), conjugate[r * n..(r + 1) * n].iter().map(|v| Ext(*v)).collect()))
        .collect();
    let csv = csv_table("sign", labels.labels(), &rows);
    let doc = LfDoc { labels: labels.labels().to_vec(), radius, dual, conjugate, expected, max_deviation, agree };
    Ok((Document::LfTable(doc), Some(csv)))
}

/// The conjugate of `Phi` on the grid `{0, +-R/100, +-R/10, +-R}^n`, compared
/// with the grid at radius `10 R`; values still growing by more than `1e-6`
/// are reported as `+inf`.
pub fn supnorm_conjugate(xi: &SupNormBoundary, duals: &[SignedVector], radius: f64) -> crate::Result<Vec<ExtReal>> {
    let at = |r: f64| {
        let axis = [-r, -r / 10.0, -r / 100.0, 0.0, r / 100.0, r / 10.0, r];
        let grid = crate::normed::cartesian_grid(&axis, xi.dim());
        legendre_fenchel(|x| xi.value(x), &grid, duals).map(|t| t.values)
    };
    let (near, far) = (at(radius)?, at(10.0 * radius)?);
    Ok(near
        .into_iter()
        .zip(far)
        .map(|(a, b)| match (a, b) {
            (ExtReal::Finite(x), ExtReal::Finite(y)) if y - x > 1e-6 => ExtReal::PosInf,
            (_, ExtReal::PosInf) => ExtReal::PosInf,
            (a, _) => a,
        })
        .collect())
}

fn counterexample(p: CounterexampleParams) -> Out {
    let report = counterexample_harness(&p)?;
    Ok((Document::Counterexample(CounterexampleDoc { report }), None))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IsometryInput {
    dim: Option<usize>,
    samples: Option<usize>,
    pairs: Option<Vec<(Vec<f64>, Vec<f64>)>>,
    transform: Option<ConeTransform>,
}

fn isometry_check(spec: &JobSpec, input: IsometryInput) -> Out {
    let pairs: Vec<(ConePoint, ConePoint)> = match input.pairs {
        Some(raw) => raw
            .into_iter()
            .enumerate()
            .map(|(i, (x, y))| {
                let (x, y) = (tagged(ConePoint::new(x), i)?, tagged(ConePoint::new(y), i)?);
                tagged(crate::error::check_dim(x.len(), y.len()), i)?;
                Ok((x, y))
            })
            .collect::<Result<_, Failure>>()?,
        None => {
            let n = input.dim.unwrap_or(3);
            if n == 0 {
                return Err(Error::InvalidArgument("dim must be at least 1".into()).into());
            }
            random_pairs(n, input.samples.unwrap_or(1000), spec.seed)
        }
    };
    let dim = pairs.first().map_or(input.dim.unwrap_or(0), |p| p.0.len());
    let (distortion_report, pullback_singletons) = match &input.transform {
        Some(t) => {
            let d = distortion(t, &pairs)?;
            let mut ok = true;
            for k in 0..t.dim() {
                ok &= t.pullback_revfunk(&RevFunkBoundary::one_hot(t.dim(), k))?.is_singleton();
                ok &= t.pullback_funk(&FunkBoundary::one_finite(t.dim(), k))?.is_singleton();
            }
            (Some(d), Some(ok))
        }
        None => (None, None),
    };
    let doc = IsometryDoc {
        dim,
        samples: pairs.len(),
        seed: spec.seed,
        hilbert_deviation: verify_hilbert_isometry(&pairs)?,
        thompson_deviation: verify_thompson_isometry(&pairs)?,
        transform: input.transform,
        distortion: distortion_report,
        pullback_singletons,
    };
    Ok((Document::IsometryCheck(doc), None))
}

/// Pairs of points with coordinates `exp(U(-5, 5))`, from a seeded ChaCha8 stream.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(ConePoint, ConePoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| {
        ConePoint::new((0..n).map(|_| rng.gen_range(-5.0f64..5.0).exp()).collect()).expect("exp is positive")
    };
    (0..count).map(|_| (point(&mut rng), point(&mut rng))).collect()
}
