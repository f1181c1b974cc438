//! Command-line front end.
//!
//! Reports go to standard output as JSON with sorted keys; diagnostics go to
//! standard error. Exit status 0 means success, 1 a failed validation or
//! hypothesis, 2 a usage, input or I/O error.

pub mod file;
pub mod report;
pub mod sweep;

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::families::{
    assemble, classify, family, normalize_frame, Classification, FamilyId, Normalization,
    FRAME_LABELS,
};
use crate::foliation::{analyze, conformal_adjoint_check, Split};
use crate::geometry::ricci;
use crate::hermitian::{adapted_structures, is_integrable};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::series::{horizontal_ricci_defect, NilSpec, SolSpec};
use crate::StructureConstants;

use file::LoadedAlgebra;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "liefol",
    version,
    about = "Curvature, foliation and Hermitian checks for Lie algebras with left-invariant metrics"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Exact rational arithmetic (default).
    #[arg(long, global = true, conflicts_with = "approx")]
    exact: bool,
    /// Floating-point arithmetic with a relative zero threshold.
    #[arg(long, global = true)]
    approx: bool,
    /// Zero threshold for loaded algebras in approximate mode.
    #[arg(long, global = true, value_name = "FLOAT")]
    tolerance: Option<f64>,
    /// Root seed of randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Draws per family in sweeps.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Compact single-line JSON (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra file and report foliation, Hermitian and Ricci data.
    Check {
        /// Algebra file, or `-` for standard input.
        file: String,
    },
    /// Normalize a 4-dimensional conformal foliation with minimal leaves and
    /// name its family.
    Classify {
        /// Algebra file, or `-` for standard input.
        file: String,
    },
    /// Emit a family member as an algebra file.
    Family {
        /// Family id, `g1` to `g20`.
        id: String,
        /// Free parameter, e.g. `--param lambda=1`; unspecified ones are 0.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Emit the Z↔W mirror image (g15, g16, g19 only).
        #[arg(long)]
        swap: bool,
    },
    /// Emit a member of the Nil or Sol series.
    Series {
        #[command(subcommand)]
        kind: SeriesKind,
    },
    /// Randomized invariant and round-trip checks over family members.
    Sweep {
        /// Family id or `all`.
        #[arg(long, default_value = "all")]
        family: String,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesKind {
    /// `[W, X_k] = X_{k+1}` in dimension n + 2.
    Nil {
        n: usize,
        #[command(flatten)]
        opts: SeriesOpts,
    },
    /// `[W, X_k] = α_k X_k` in dimension n + 1.
    Sol {
        /// Comma-separated rationals `α₁,…,α_n`.
        #[arg(allow_hyphen_values = true)]
        alphas: String,
        #[command(flatten)]
        opts: SeriesOpts,
    },
}

#[derive(Args, Debug)]
struct SeriesOpts {
    /// Horizontal part `{W, X₁, …, X_k}`; defaults to 1 when admissible.
    #[arg(long)]
    k: Option<usize>,
    /// Print Ricci and horizontal curvature data instead of the algebra file.
    #[arg(long)]
    report: bool,
}

/// How a command ended, before mapping to an exit status.
enum Failure {
    Usage(String),
    Failed(Value, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<file::FileError> for Failure {
    fn from(e: file::FileError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `argv` (including the program name) and runs the command.
/// `color` allows ANSI highlighting in pretty output.
pub fn run<I, S>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let text = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let pretty = cli.global.pretty;
    let result = dispatch(&cli, &echo, stdin);
    let (text, code) = match result {
        Ok(Emit::Report(v)) => (report::render(&v, pretty, color), EXIT_OK),
        Ok(Emit::Text(t)) => (t, EXIT_OK),
        Err(Failure::Failed(v, msg)) => {
            let _ = writeln!(stderr, "liefol: {msg}");
            (report::render(&v, pretty, color), EXIT_FAILED)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "liefol: error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        let _ = writeln!(stderr, "liefol: error: writing output: {e}");
        return EXIT_USAGE;
    }
    code
}

enum Emit {
    Report(Value),
    Text(String),
}

fn dispatch(cli: &Cli, echo: &[String], stdin: &mut dyn Read) -> Result<Emit, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file } => {
            let loaded = read_algebra(file, stdin)?;
            let mut rep = header(echo, g);
            let valid = if g.approx {
                check_into(&mut rep, &approx(&loaded.algebra, g), &loaded)?
            } else {
                check_into(&mut rep, &loaded.algebra, &loaded)?
            };
            finish(rep, valid, "Jacobi identity fails")
        }
        Command::Classify { file } => {
            let loaded = read_algebra(file, stdin)?;
            classify_command(echo, g, &loaded)
        }
        Command::Family { id, params, swap } => family_command(id, params, *swap, g.pretty),
        Command::Series { kind } => series_command(echo, g, kind),
        Command::Sweep { family } => {
            let families = if family == "all" {
                FamilyId::ALL.to_vec()
            } else {
                vec![family.parse::<FamilyId>()?]
            };
            let (body, failed) = if g.approx {
                sweep::sweep::<f64>(&families, g.samples, g.seed)
            } else {
                sweep::sweep::<Rational>(&families, g.samples, g.seed)
            };
            let mut rep = header(echo, g);
            rep.insert("sweep".into(), body);
            finish(rep, failed == 0, &format!("{failed} sweep checks failed"))
        }
    }
}

fn finish(rep: Map<String, Value>, ok: bool, msg: &str) -> Result<Emit, Failure> {
    if ok {
        Ok(Emit::Report(Value::Object(rep)))
    } else {
        Err(Failure::Failed(Value::Object(rep), msg.to_string()))
    }
}

fn header(echo: &[String], g: &GlobalArgs) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(echo));
    m.insert(
        "mode".into(),
        json!(if g.approx { "approx" } else { "exact" }),
    );
    m
}

fn approx(a: &StructureConstants<Rational>, g: &GlobalArgs) -> StructureConstants<f64> {
    let b = a.to_approx();
    match g.tolerance {
        Some(t) => b.with_tolerance(t),
        None => b,
    }
}

fn read_algebra(path: &str, stdin: &mut dyn Read) -> Result<LoadedAlgebra, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?;
    }
    let loaded = file::load(&text).map_err(|e| {
        let source = if path == "-" { "<stdin>" } else { path };
        Failure::Usage(format!("{source}: {e}"))
    })?;
    Ok(loaded)
}

/// Adds the `check` sections; returns whether the Jacobi identity holds.
fn check_into<T: Scalar>(
    rep: &mut Map<String, Value>,
    a: &StructureConstants<T>,
    loaded: &LoadedAlgebra,
) -> Result<bool, Failure> {
    let labels = &loaded.labels;
    let v = a.validate();
    rep.insert("dim".into(), json!(a.dim()));
    rep.insert("labels".into(), json!(labels));
    rep.insert("validation".into(), report::validation(&v, labels));
    if !v.valid {
        return Ok(false);
    }
    rep.insert(
        "ricci".into(),
        report::ricci(&ricci(a)?, labels, a.tolerance()),
    );
    if let Some(split) = &loaded.split {
        let f = analyze(a, split)?;
        let mut fol = report::foliation(&f);
        if let Value::Object(m) = &mut fol {
            m.insert("split".into(), report::split(split, labels));
            if f.vertical_integrable {
                m.insert(
                    "adjoint_conformal".into(),
                    json!(conformal_adjoint_check(a, split)?),
                );
            }
        }
        rep.insert("foliation".into(), fol);
        if a.dim() == 4 && split.vertical().len() == 2 {
            let (j1, j2) = adapted_structures::<T>(split)?;
            rep.insert(
                "hermitian".into(),
                json!({
                    "j1_integrable": is_integrable(a, &j1)?,
                    "j2_integrable": is_integrable(a, &j2)?,
                }),
            );
        }
        if split.horizontal().len() == 2 && f.is_conformal_minimal() {
            let d = horizontal_ricci_defect(a, split)?;
            rep.insert(
                "horizontal_ricci".into(),
                json!({
                    "diagonal_gap": report::scalar(&d.diagonal_gap),
                    "off_diagonal": report::scalar(&d.off_diagonal),
                }),
            );
        }
    }
    Ok(true)
}

fn is_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidAlgebra { .. }
            | Error::Hypothesis(_)
            | Error::ResidualsNonzero(_)
            | Error::ClassificationGap(_)
    )
}

fn classified<T: Scalar>(
    a: &StructureConstants<T>,
    split: &Split,
) -> crate::Result<(Normalization<T>, Classification<T>)> {
    a.ensure_valid()?;
    let n = normalize_frame(a, split)?;
    let c = classify(&n.params)?;
    Ok((n, c))
}

fn classify_command(
    echo: &[String],
    g: &GlobalArgs,
    loaded: &LoadedAlgebra,
) -> Result<Emit, Failure> {
    let mut rep = header(echo, g);
    if loaded.algebra.dim() != 4 {
        return Err(Failure::Usage(format!(
            "classify needs a 4-dimensional algebra, found dimension {}",
            loaded.algebra.dim()
        )));
    }
    let split = loaded.split.clone().unwrap_or_else(Split::standard_4d);
    rep.insert("split".into(), report::split(&split, &loaded.labels));
    let mut notes = Vec::new();
    let outcome = if g.approx {
        classified(&approx(&loaded.algebra, g), &split).map(|(n, c)| {
            (
                report::normalization(&n, &loaded.labels),
                report::classification(&c),
            )
        })
    } else {
        match classified(&loaded.algebra, &split) {
            Err(Error::IrrationalRotation) => {
                notes.push(
                    "normalizing rotation is irrational; fell back to approximate arithmetic",
                );
                rep.insert("mode".into(), json!("approx"));
                classified(&approx(&loaded.algebra, g), &split).map(|(n, c)| {
                    (
                        report::normalization(&n, &loaded.labels),
                        report::classification(&c),
                    )
                })
            }
            other => other.map(|(n, c)| {
                (
                    report::normalization(&n, &loaded.labels),
                    report::classification(&c),
                )
            }),
        }
    };
    if !notes.is_empty() {
        rep.insert("notes".into(), json!(notes));
    }
    match outcome {
        Ok((n, c)) => {
            rep.insert("normalization".into(), n);
            rep.insert("classification".into(), c);
            Ok(Emit::Report(Value::Object(rep)))
        }
        Err(e) if is_failure(&e) => {
            rep.insert("error".into(), json!(e.to_string()));
            Err(Failure::Failed(Value::Object(rep), e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

fn family_command(id: &str, params: &[String], swap: bool, pretty: bool) -> Result<Emit, Failure> {
    let id: FamilyId = id.parse()?;
    let names = id.param_names();
    let mut values = vec![Rational::from_i64(0); names.len()];
    for spec in params {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--param expects NAME=VALUE, got {spec:?}")))?;
        let k = names
            .iter()
            .position(|n| *n == name.trim())
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "{id} has no parameter {:?}; expected one of {}",
                    name.trim(),
                    names.join(", ")
                ))
            })?;
        values[k] = parse_rational(value)?;
    }
    let mut p = family(id, &values)?;
    if swap {
        if !id.has_mirror() {
            return Err(Failure::Usage(format!("{id} has no Z↔W mirror variant")));
        }
        p = p.swap_vertical()?;
    }
    let labels: Vec<String> = FRAME_LABELS.iter().map(|s| s.to_string()).collect();
    let f = file::to_file(&assemble(&p), Some(&labels), Some(&Split::standard_4d()));
    Ok(Emit::Text(file::save(&f, pretty)))
}

fn parse_alphas(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(Failure::from))
        .collect()
}

fn series_command(echo: &[String], g: &GlobalArgs, kind: &SeriesKind) -> Result<Emit, Failure> {
    let (name, a, labels, closed, opts, sol) = match kind {
        SeriesKind::Nil { n, opts } => {
            let spec = NilSpec::new(*n)?;
            (
                "nil",
                spec.algebra::<Rational>(),
                spec.labels(),
                spec.ricci_closed_form::<Rational>(),
                opts,
                None,
            )
        }
        SeriesKind::Sol { alphas, opts } => {
            let spec = SolSpec::new(parse_alphas(alphas)?)?;
            (
                "sol",
                spec.algebra(),
                spec.labels(),
                spec.ricci_closed_form(),
                opts,
                Some(spec),
            )
        }
    };
    let split_for = |k: usize| match kind {
        SeriesKind::Nil { n, .. } => NilSpec::new(*n)?.split(k),
        SeriesKind::Sol { .. } => sol.as_ref().expect("sol spec").split(k),
    };
    let split = match opts.k {
        Some(k) => Some(split_for(k)?),
        None => split_for(1).ok(),
    };
    if !opts.report {
        let f = file::to_file(&a, Some(&labels), split.as_ref());
        return Ok(Emit::Text(file::save(&f, g.pretty)));
    }

    let mut rep = header(echo, g);
    rep.insert("series".into(), json!(name));
    rep.insert("dim".into(), json!(a.dim()));
    let computed = ricci(&a)?;
    rep.insert("ricci".into(), report::ricci(&computed, &labels, 0.0));
    rep.insert(
        "ricci_closed_form".into(),
        report::labelled(&labels, &closed.diagonal()),
    );
    let agrees = computed == closed;
    rep.insert("closed_form_agrees".into(), json!(agrees));
    if let Some(split) = &split {
        let f = analyze(&a, split)?;
        let mut fol = report::foliation(&f);
        if let Value::Object(m) = &mut fol {
            m.insert("split".into(), report::split(split, &labels));
        }
        rep.insert("foliation".into(), fol);
        if let (Some(spec), Some(k)) = (&sol, split.horizontal().len().checked_sub(1)) {
            rep.insert(
                "within_stated_range".into(),
                json!(spec.within_stated_range(k)),
            );
        }
        match horizontal_ricci_defect(&a, split) {
            Ok(d) => {
                rep.insert("horizontal_gap".into(), report::scalar(&d.diagonal_gap));
                rep.insert(
                    "horizontal_off_diagonal".into(),
                    report::scalar(&d.off_diagonal),
                );
            }
            Err(e) => {
                rep.insert("horizontal_gap".into(), Value::Null);
                rep.insert("horizontal_gap_unavailable".into(), json!(e.to_string()));
            }
        }
    }
    finish(rep, agrees, "Ricci tensor differs from the closed form")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("liefol").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err, false);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn family_g1_derives_theta2() {
        let (code, out, _) = run_str(
            &[
                "family", "g1", "--param", "lambda=1", "--param", "r=1", "--param", "w1=1",
                "--param", "w2=0",
            ],
            "",
        );
        assert_eq!(code, 0);
        let l = file::load(&out).unwrap();
        assert_eq!(*l.algebra.get(1, 0, 3), Rational::from_i64(1));
    }

    #[test]
    fn nil_series_piped_into_check() {
        let (code, file_text, _) = run_str(&["series", "nil", "2", "--k", "1"], "");
        assert_eq!(code, 0);
        let (code, out, _) = run_str(&["check", "-"], &file_text);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["foliation"]["riemannian"], true);
        assert_eq!(v["foliation"]["minimal"], true);
        assert_eq!(v["foliation"]["totally_geodesic"], false);
    }

    #[test]
    fn abelian_check() {
        let text = r#"{"brackets":[],"dim":4,"split":{"vertical":[2,3]}}"#;
        let (code, out, _) = run_str(&["check", "-"], text);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        for key in [
            "conformal",
            "minimal",
            "riemannian",
            "totally_geodesic",
            "horizontal_integrable",
        ] {
            assert_eq!(v["foliation"][key], true, "{key}");
        }
        assert!(v["ricci"]["matrix"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|r| r.as_array().unwrap())
            .all(|x| x == "0"));
    }

    #[test]
    fn exit_codes() {
        let bad = r#"{"brackets":[{"coeffs":{"0":"2"},"i":0,"j":1},{"coeffs":{"0":"1"},"i":1,"j":2},{"coeffs":{"2":"1"},"i":0,"j":2}],"dim":3}"#;
        assert_eq!(run_str(&["check", "-"], bad).0, 1);
        assert_eq!(run_str(&["check", "-"], "{").0, 2);
        assert_eq!(run_str(&["check", "/nonexistent/file.json"], "").0, 2);
        assert_eq!(run_str(&["family", "g6", "--param", "z1=0"], "").0, 2);
        assert_eq!(run_str(&["family", "g99"], "").0, 2);
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn classify_rotated_member() {
        let (_, text, _) = run_str(
            &[
                "family", "g5", "--param", "alpha=1", "--param", "a=1", "--param", "b=1",
                "--param", "r=2",
            ],
            "",
        );
        let (code, out, err) = run_str(&["classify", "-"], &text);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["classification"]["family"], "g5");
        assert_eq!(v["classification"]["case"], "C");
    }

    #[test]
    fn classify_falls_back_when_rotation_is_irrational() {
        let text = r#"{"brackets":[{"coeffs":{"2":"1","3":"1"},"i":2,"j":3}],"dim":4}"#;
        let (code, out, err) = run_str(&["classify", "-"], text);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["mode"], "approx");
        assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn series_report_values() {
        let (code, out, _) = run_str(&["series", "sol", "5,1,-1", "--report"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["horizontal_gap"], "2");
        assert_eq!(v["closed_form_agrees"], true);
    }
}
