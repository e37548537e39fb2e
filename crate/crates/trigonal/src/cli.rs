//! JSON command-line front end: define a curve, compress point divisors,
//! reduce, add, invert, verify, and run the exhaustive census, all driven by
//! a single job object read from a file or standard input.
//!
//! The interface is built for scripting and regression fixtures. Output is
//! deterministic byte for byte — JSON keys are sorted, nothing carries a
//! timestamp — and field elements travel as decimal strings (rationals as
//! `"num/den"`), so fixtures stay readable and width-independent. Failures
//! split along one rule: if the *shape* of the invocation is wrong (bad
//! flags, unreadable input, malformed or unknown JSON fields) the exit code
//! is 2; if the shape is fine but the *values* refuse (singular curve,
//! special divisor, degenerate reduction) the exit code is 1 and the error
//! object carries the library's stable error code. Either way standard
//! output holds a single `{"error": {code, message, context}}` object.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::curve::{Curve, Family, Monomial, Point};
use crate::divisor::{rep_from_points_g, rep_from_points_g1, HRep, PointDivisor};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Fp, Rat};
use crate::linfun::{CurveFun, YLinFun};
use crate::oracle::{affine_points, check_reduction, exhaustive_class_census};
use crate::poly::Poly;
use crate::reduction::{add_divisors, invert_class, reduce_divisor, ReductionTrace};

/// Command-line flags. The job itself — command, curve, inputs — lives in
/// the JSON document; flags only steer I/O and presentation, and may also
/// be set in the job's `flags` object (an explicit command-line flag wins).
#[derive(Parser, Debug)]
#[command(
    name = "trigonal",
    version,
    about = "Exact divisor arithmetic on trigonal plane curves"
)]
pub struct Args {
    /// Read the JSON job from this file instead of standard input.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Include the step-by-step reduction trace in `reduce` and `add` output.
    #[arg(long)]
    pub trace: bool,

    /// Expand compressed representations into point lists where the field is
    /// small enough to enumerate (best effort: `null` when it is not).
    #[arg(long)]
    pub points: bool,

    /// Seed for randomized subcommands. Accepted for interface stability;
    /// every current subcommand is deterministic, so the value is unused.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,

    /// Output layout: compact `json` or indented `pretty`.
    #[arg(long, value_parser = ["json", "pretty"])]
    pub format: Option<String>,
}

/// One unit of work, schema-checked before anything runs. Unknown fields are
/// rejected at every level.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    command: Command,
    curve: CurveSpec,
    /// Affine points as `[x, y]` pairs of field-element strings.
    #[serde(default)]
    points: Vec<[String; 2]>,
    /// Compressed `(H, I)` representations.
    #[serde(default)]
    reps: Vec<RepSpec>,
    #[serde(default)]
    flags: Flags,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "kebab-case")]
enum Command {
    CurveCheck,
    Rep,
    Reduce,
    Add,
    Invert,
    Verify,
    Census,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::CurveCheck => "curve-check",
            Command::Rep => "rep",
            Command::Reduce => "reduce",
            Command::Add => "add",
            Command::Invert => "invert",
            Command::Verify => "verify",
            Command::Census => "census",
        }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CurveSpec {
    /// `"C1"` for (3, 3m+1) or `"C2"` for (3, 3m+2).
    family: String,
    m: u32,
    field: FieldJson,
    /// λ coefficients keyed by Sato weight, both sides as decimal strings.
    #[serde(default)]
    lambda: BTreeMap<String, String>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum FieldJson {
    /// `"rational"` selects ℚ.
    Named(String),
    /// `{"prime": "10007"}` selects F_p.
    Prime(PrimeField),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct PrimeField {
    prime: String,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RepSpec {
    #[serde(rename = "H")]
    h: Vec<String>,
    #[serde(rename = "I")]
    i: FunSpec,
}

/// A y-linear function `ay(x)·y + ax(x)`, both parts as little-endian
/// coefficient lists.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct FunSpec {
    ay: Vec<String>,
    ax: Vec<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields, default)]
struct Flags {
    trace: bool,
    points: bool,
    seed: Option<u64>,
    format: Option<String>,
}

/// Presentation options after merging command-line flags with the job's
/// `flags` object.
#[derive(Clone, Copy)]
struct Options {
    trace: bool,
    points: bool,
}

/// Entry point behind `main`: parse flags and the job, execute, print one
/// JSON value, return the exit code.
pub fn run() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            // clap renders its usage text on stderr; mirror the failure with
            // a structured object so scripted callers never scrape stderr.
            eprint!("{err}");
            return emit_usage(&format!("{}", err.kind()), "argv", "json");
        }
    };
    let fallback = args.format.clone().unwrap_or_else(|| "json".to_owned());

    let text = match read_input(&args.input) {
        Ok(text) => text,
        Err(message) => return emit_usage(&message, "input", &fallback),
    };
    let job: JobSpec = match serde_json::from_str(&text) {
        Ok(job) => job,
        Err(err) => return emit_usage(&format!("malformed job: {err}"), "input", &fallback),
    };

    let format = match args.format.clone().or_else(|| job.flags.format.clone()) {
        Some(f) if f == "json" || f == "pretty" => f,
        Some(other) => {
            let message = format!("unknown format `{other}` (expected json or pretty)");
            return emit_usage(&message, "flags", &fallback);
        }
        None => "json".to_owned(),
    };
    let options = Options {
        trace: args.trace || job.flags.trace,
        points: args.points || job.flags.points,
    };
    // --seed is accepted so fixture harnesses can pass one uniformly, but
    // every subcommand is deterministic; nothing draws from it.
    let _ = args.seed.or(job.flags.seed);

    let outcome = match parse_field(&job.curve.field) {
        Ok(FieldSpec::Rational) => execute::<Rat>(FieldSpec::Rational, &job, options),
        Ok(spec) => execute::<Fp>(spec, &job, options),
        Err(err) => Err(err),
    };
    match outcome {
        Ok(value) => {
            println!("{}", render_value(&value, &format));
            ExitCode::SUCCESS
        }
        Err(err) => emit_domain(&err, job.command.name(), &format),
    }
}

fn read_input(path: &Option<PathBuf>) -> std::result::Result<String, String> {
    match path {
        Some(file) => std::fs::read_to_string(file)
            .map_err(|err| format!("cannot read {}: {err}", file.display())),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|err| format!("cannot read standard input: {err}"))?;
            Ok(text)
        }
    }
}

fn parse_field(field: &FieldJson) -> Result<FieldSpec> {
    match field {
        FieldJson::Named(name) if name == "rational" => Ok(FieldSpec::rational()),
        FieldJson::Named(other) => Err(Error::InvalidParameter(format!(
            "unknown field `{other}` (expected \"rational\" or {{\"prime\": \"p\"}})"
        ))),
        FieldJson::Prime(p) => {
            let modulus: u64 = p.prime.parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "prime modulus `{}` is not a decimal integer",
                    p.prime
                ))
            })?;
            FieldSpec::prime(modulus)
        }
    }
}

/// Runs one schema-valid job over a fixed coefficient field.
fn execute<K: FieldElement>(spec: FieldSpec, job: &JobSpec, options: Options) -> Result<Value> {
    let curve = build_curve::<K>(spec, &job.curve)?;
    match job.command {
        Command::CurveCheck => curve_check(&curve, options),
        Command::Rep => rep_command(&curve, job, options),
        Command::Reduce => {
            let divisor = parse_points(&curve, &job.points)?;
            let (rep, trace) = reduce_divisor(&curve, &divisor)?;
            Ok(rep_output(&curve, &rep, options, Some(&trace)))
        }
        Command::Add => {
            let [a, b] = two_reps(job)?;
            let ra = parse_rep(&curve, a)?;
            let rb = parse_rep(&curve, b)?;
            let (rep, trace) = add_divisors(&curve, &ra, &rb)?;
            Ok(rep_output(&curve, &rep, options, Some(&trace)))
        }
        Command::Invert => {
            let rep = parse_rep(&curve, one_rep(job)?)?;
            let inverse = invert_class(&curve, &rep)?;
            Ok(rep_output(&curve, &inverse, options, None))
        }
        Command::Verify => verify_command(&curve, job),
        Command::Census => {
            let report = exhaustive_class_census(&curve)?;
            serde_json::to_value(&report)
                .map_err(|err| Error::InvalidParameter(format!("census serialization: {err}")))
        }
    }
}

fn build_curve<K: FieldElement>(spec: FieldSpec, cs: &CurveSpec) -> Result<Curve<K>> {
    let family = Family::from_name(&cs.family)?;
    let mut lambda = BTreeMap::new();
    for (weight, text) in &cs.lambda {
        let w: u64 = weight.parse().map_err(|_| {
            Error::InvalidParameter(format!("lambda key `{weight}` is not a Sato weight"))
        })?;
        lambda.insert(w, K::parse(&spec, text)?);
    }
    Curve::new(family, cs.m, &lambda, spec)
}

fn parse_points<K: FieldElement>(
    curve: &Curve<K>,
    raw: &[[String; 2]],
) -> Result<PointDivisor<K>> {
    let spec = curve.spec();
    let mut points = Vec::with_capacity(raw.len());
    for [x, y] in raw {
        points.push(Point::new(K::parse(&spec, x)?, K::parse(&spec, y)?));
    }
    PointDivisor::new(curve, points)
}

fn parse_rep<K: FieldElement>(curve: &Curve<K>, rep: &RepSpec) -> Result<HRep<K>> {
    let spec = curve.spec();
    let h = Poly::parse(&spec, &rep.h)?;
    let i = YLinFun::new(
        Poly::parse(&spec, &rep.i.ay)?,
        Poly::parse(&spec, &rep.i.ax)?,
    );
    HRep::new(curve, h, i)
}

fn one_rep(job: &JobSpec) -> Result<&RepSpec> {
    match job.reps.as_slice() {
        [rep] => Ok(rep),
        other => Err(Error::InvalidParameter(format!(
            "{} expects exactly one rep, got {}",
            job.command.name(),
            other.len()
        ))),
    }
}

fn two_reps(job: &JobSpec) -> Result<[&RepSpec; 2]> {
    match job.reps.as_slice() {
        [a, b] => Ok([a, b]),
        other => Err(Error::InvalidParameter(format!(
            "{} expects exactly two reps, got {}",
            job.command.name(),
            other.len()
        ))),
    }
}

fn curve_check<K: FieldElement>(curve: &Curve<K>, options: Options) -> Result<Value> {
    let monomials: Vec<String> = curve
        .monomial_basis(curve.genus() as usize + 2)
        .iter()
        .map(monomial_label)
        .collect();
    // Fields too large to scan accept the curve on trust, so the flag is
    // `null` there rather than a claim either way; a certified curve reports
    // `true` (a certified-singular one never constructs).
    let smooth = if curve.smooth_certified() {
        Value::Bool(true)
    } else {
        Value::Null
    };
    let mut out = json!({
        "family": curve.family().name(),
        "m": curve.m(),
        "s": curve.s(),
        "genus": curve.genus(),
        "gaps": curve.gap_sequence(),
        "monomials": monomials,
        "smooth": smooth,
    });
    if options.points {
        out["points"] = match affine_points(curve) {
            Ok(pts) => points_value(&pts),
            Err(_) => Value::Null,
        };
    }
    Ok(out)
}

fn rep_command<K: FieldElement>(curve: &Curve<K>, job: &JobSpec, options: Options) -> Result<Value> {
    let divisor = parse_points(curve, &job.points)?;
    let g = curve.genus() as usize;
    if divisor.degree() == g {
        let rep = rep_from_points_g(curve, &divisor)?;
        let mut out = json!({
            "H": poly_value(rep.h()),
            "I": fun_value(rep.i()),
            "kind": "reduced",
        });
        if options.points {
            out["points"] = expansion(curve, &rep);
        }
        Ok(out)
    } else if divisor.degree() == g + 1 {
        let rep = rep_from_points_g1(curve, &divisor)?;
        let mut out = json!({
            "F": poly_value(rep.f()),
            "G": fun_value(rep.g_fun()),
            "kind": "extended",
        });
        if options.points {
            out["points"] = match rep.points(curve) {
                Ok(div) => points_value(div.points()),
                Err(_) => Value::Null,
            };
        }
        Ok(out)
    } else {
        Err(Error::InvalidParameter(format!(
            "rep expects {g} or {} points, got {}",
            g + 1,
            divisor.degree()
        )))
    }
}

fn verify_command<K: FieldElement>(curve: &Curve<K>, job: &JobSpec) -> Result<Value> {
    let original = parse_points(curve, &job.points)?;
    let reduced = parse_rep(curve, one_rep(job)?)?;
    let verdict = check_reduction(curve, &original, &reduced)?;
    Ok(json!({
        "equivalent": verdict.equivalent,
        "kernel_dim": verdict.kernel_dim,
        "witness": match &verdict.witness {
            Some(fun) => curvefun_value(fun),
            None => Value::Null,
        },
    }))
}

/// Renders a reduced representation, with the trace and the point expansion
/// attached when the corresponding flags ask for them.
fn rep_output<K: FieldElement>(
    curve: &Curve<K>,
    rep: &HRep<K>,
    options: Options,
    trace: Option<&ReductionTrace<K>>,
) -> Value {
    let mut out = json!({
        "H": poly_value(rep.h()),
        "I": fun_value(rep.i()),
    });
    if options.trace {
        if let Some(trace) = trace {
            out["trace"] = trace_value(trace);
        }
    }
    if options.points {
        out["points"] = expansion(curve, rep);
    }
    out
}

fn expansion<K: FieldElement>(curve: &Curve<K>, rep: &HRep<K>) -> Value {
    match rep.points(curve) {
        Ok(div) => points_value(div.points()),
        Err(_) => Value::Null,
    }
}

fn poly_value<K: FieldElement>(poly: &Poly<K>) -> Value {
    Value::Array(poly.render().into_iter().map(Value::String).collect())
}

fn fun_value<K: FieldElement>(fun: &YLinFun<K>) -> Value {
    json!({ "ax": poly_value(fun.ax()), "ay": poly_value(fun.ay()) })
}

fn curvefun_value<K: FieldElement>(fun: &CurveFun<K>) -> Value {
    json!({
        "a0": poly_value(fun.a0()),
        "a1": poly_value(fun.a1()),
        "a2": poly_value(fun.a2()),
    })
}

fn point_value<K: FieldElement>(pt: &Point<K>) -> Value {
    json!([pt.x.render(), pt.y.render()])
}

fn points_value<K: FieldElement>(pts: &[Point<K>]) -> Value {
    Value::Array(pts.iter().map(point_value).collect())
}

fn monomial_label(m: &Monomial) -> String {
    let mut parts = Vec::new();
    match m.i {
        0 => {}
        1 => parts.push("x".to_owned()),
        i => parts.push(format!("x^{i}")),
    }
    match m.j {
        0 => {}
        1 => parts.push("y".to_owned()),
        j => parts.push(format!("y^{j}")),
    }
    if parts.is_empty() {
        "1".to_owned()
    } else {
        parts.join("*")
    }
}

/// Flattens a reduction trace into one chronological array of tagged
/// entries: stripped fibers first, then the loop steps, then free-form notes.
fn trace_value<K: FieldElement>(trace: &ReductionTrace<K>) -> Value {
    let mut entries = Vec::new();
    for fib in &trace.removed_fibers {
        let ys: Vec<String> = fib.ys.iter().map(FieldElement::render).collect();
        entries.push(json!({
            "kind": "fiber-removed",
            "x": fib.x.render(),
            "ys": ys,
        }));
    }
    for step in &trace.steps {
        entries.push(json!({
            "kind": "step",
            "F": poly_value(&step.f),
            "G": fun_value(&step.g_fun),
            "H": poly_value(&step.h),
            "I": fun_value(&step.i_fun),
            "H_tilde": poly_value(&step.h_tilde),
            "point": match &step.point {
                Some(pt) => point_value(pt),
                None => Value::Null,
            },
            "events": step.events,
        }));
    }
    for note in &trace.notes {
        entries.push(json!({ "kind": "note", "text": note }));
    }
    Value::Array(entries)
}

fn render_value(value: &Value, format: &str) -> String {
    if format == "pretty" {
        serde_json::to_string_pretty(value).expect("JSON rendering cannot fail")
    } else {
        serde_json::to_string(value).expect("JSON rendering cannot fail")
    }
}

fn error_value(code: &str, message: &str, context: &str) -> Value {
    json!({ "error": { "code": code, "message": message, "context": context } })
}

fn emit_usage(message: &str, context: &str, format: &str) -> ExitCode {
    let value = error_value("Usage", message, context);
    println!("{}", render_value(&value, format));
    ExitCode::from(2)
}

fn emit_domain(err: &Error, context: &str, format: &str) -> ExitCode {
    let value = error_value(err.code(), &err.to_string(), context);
    println!("{}", render_value(&value, format));
    ExitCode::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTIC: &str = r#"{
        "family": "C1", "m": 1,
        "field": {"prime": "7"},
        "lambda": {"12": "6"}
    }"#;

    fn job(command: &str, extra: &str) -> JobSpec {
        let text = format!(r#"{{"command": "{command}", "curve": {QUARTIC}{extra}}}"#);
        serde_json::from_str(&text).expect("test job parses")
    }

    fn plain() -> Options {
        Options {
            trace: false,
            points: false,
        }
    }

    #[test]
    fn unknown_fields_are_rejected_at_every_level() {
        let top = r#"{"command": "census", "curve": {"family": "C1", "m": 1,
            "field": {"prime": "7"}}, "extra": 1}"#;
        assert!(serde_json::from_str::<JobSpec>(top).is_err());
        let inner = r#"{"command": "census", "curve": {"family": "C1", "m": 1,
            "field": {"prime": "7"}, "extra": 1}}"#;
        assert!(serde_json::from_str::<JobSpec>(inner).is_err());
        let flag = r#"{"command": "census", "curve": {"family": "C1", "m": 1,
            "field": {"prime": "7"}}, "flags": {"loud": true}}"#;
        assert!(serde_json::from_str::<JobSpec>(flag).is_err());
    }

    #[test]
    fn curve_check_reports_structure() {
        let job = job("curve-check", "");
        let spec = parse_field(&job.curve.field).unwrap();
        let out = execute::<Fp>(spec, &job, plain()).unwrap();
        assert_eq!(out["genus"], 3);
        assert_eq!(out["s"], 4);
        assert_eq!(out["gaps"], json!([1, 2, 5]));
        assert_eq!(out["monomials"], json!(["1", "x", "y", "x^2", "x*y"]));
    }

    #[test]
    fn singular_curve_is_a_domain_error() {
        let text = r#"{"command": "curve-check", "curve":
            {"family": "C1", "m": 1, "field": {"prime": "7"}}}"#;
        let job: JobSpec = serde_json::from_str(text).unwrap();
        let spec = parse_field(&job.curve.field).unwrap();
        let err = execute::<Fp>(spec, &job, plain()).unwrap_err();
        assert_eq!(err.code(), "SingularCurve");
    }

    #[test]
    fn reduce_output_feeds_verify() {
        let points = r#", "points": [["0", "3"], ["1", "0"], ["2", "1"], ["5", "1"]]"#;
        let reduce = job("reduce", points);
        let spec = parse_field(&reduce.curve.field).unwrap();
        let out = execute::<Fp>(spec, &reduce, plain()).unwrap();

        let rep = serde_json::to_string(&json!({ "H": out["H"], "I": out["I"] })).unwrap();
        let verify = job("verify", &format!("{points}, \"reps\": [{rep}]"));
        let verdict = execute::<Fp>(spec, &verify, plain()).unwrap();
        assert_eq!(verdict["equivalent"], true);
    }

    #[test]
    fn rep_selects_the_form_by_degree() {
        let three = job("rep", r#", "points": [["0", "3"], ["2", "1"], ["5", "1"]]"#);
        let spec = parse_field(&three.curve.field).unwrap();
        let out = execute::<Fp>(spec, &three, plain()).unwrap();
        assert_eq!(out["kind"], "reduced");
        assert!(out["H"].is_array() && out["I"].is_object());

        let four = job(
            "rep",
            r#", "points": [["0", "3"], ["1", "0"], ["2", "1"], ["5", "1"]]"#,
        );
        let out = execute::<Fp>(spec, &four, plain()).unwrap();
        assert_eq!(out["kind"], "extended");
        assert!(out["F"].is_array() && out["G"].is_object());
    }

    #[test]
    fn add_and_invert_round_trip() {
        let rep_of = |pts: &str| {
            let j = job("rep", &format!(r#", "points": {pts}"#));
            let spec = parse_field(&j.curve.field).unwrap();
            let out = execute::<Fp>(spec, &j, plain()).unwrap();
            serde_json::to_string(&json!({ "H": out["H"], "I": out["I"] })).unwrap()
        };
        let a = rep_of(r#"[["0", "3"], ["2", "1"], ["5", "1"]]"#);
        let b = rep_of(r#"[["0", "5"], ["2", "2"], ["5", "4"]]"#);

        let sum = job("add", &format!(r#", "reps": [{a}, {b}]"#));
        let spec = parse_field(&sum.curve.field).unwrap();
        let out = execute::<Fp>(spec, &sum, plain()).unwrap();
        assert!(out["H"].is_array() && out["I"].is_object());

        let rep = serde_json::to_string(&json!({ "H": out["H"], "I": out["I"] })).unwrap();
        let inv = job("invert", &format!(r#", "reps": [{rep}]"#));
        let back = execute::<Fp>(spec, &inv, plain()).unwrap();
        let again = serde_json::to_string(&json!({ "H": back["H"], "I": back["I"] })).unwrap();
        let twice = job("invert", &format!(r#", "reps": [{again}]"#));
        let orig = execute::<Fp>(spec, &twice, plain()).unwrap();
        assert_eq!(orig["H"], out["H"]);
        assert_eq!(orig["I"], out["I"]);
    }

    #[test]
    fn census_serializes_with_sorted_keys() {
        let job = job("census", "");
        let spec = parse_field(&job.curve.field).unwrap();
        let out = execute::<Fp>(spec, &job, plain()).unwrap();
        let text = render_value(&out, "json");
        assert!(text.starts_with(r#"{"degenerate":"#));
        assert_eq!(out["passed"], 114);
        assert_eq!(out["total"], 467);
    }

    #[test]
    fn rendering_is_byte_stable() {
        let points = r#", "points": [["0", "3"], ["1", "0"], ["2", "1"], ["5", "1"]]"#;
        let job = job("reduce", points);
        let spec = parse_field(&job.curve.field).unwrap();
        let opts = Options {
            trace: true,
            points: true,
        };
        let first = render_value(&execute::<Fp>(spec, &job, opts).unwrap(), "json");
        let second = render_value(&execute::<Fp>(spec, &job, opts).unwrap(), "json");
        assert_eq!(first, second);
    }

    #[test]
    fn rational_curves_run_through_the_same_front_end() {
        let text = r#"{"command": "curve-check", "curve": {"family": "C1", "m": 1,
            "field": "rational", "lambda": {"12": "5", "6": "2"}}}"#;
        let job: JobSpec = serde_json::from_str(text).unwrap();
        let out = execute::<Rat>(FieldSpec::rational(), &job, plain()).unwrap();
        assert_eq!(out["genus"], 3);
    }

    #[test]
    fn field_values_reject_garbage() {
        assert!(parse_field(&FieldJson::Named("octonion".into())).is_err());
        let bad = PrimeField {
            prime: "10x".into(),
        };
        assert!(parse_field(&FieldJson::Prime(bad)).is_err());
    }
}
