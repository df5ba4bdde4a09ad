//! Command-line front end. [`run`] takes the argument list and writes the
//! report; the binary only forwards the exit code.
//!
//! Exit codes: 0 success, 1 a negative mathematical answer (Jacobi
//! violation, not isomorphic, unresolved, failed orbit test), 2 usage or
//! input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{check_jacobi, derivation_algebra, derived_subalgebra, Algebra, JacobiReport};
use crate::catalog::{canonical, d7_equivalent, ClassLabel, D7Equivalence};
use crate::classify::{classify, invariant_signature, InvariantSignature, Status, Verdict};
use crate::exactlin::{parse_rational, Matrix, Rational};
use crate::exec::par_map;
use crate::io::{parse_algebra, parse_matrix, serialize_algebra, ParseMode};
use crate::transform::{change_basis_multilinear, random_basis_change, verify_isomorphism, TransitionMatrix};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "nlie", version, about = "Exact tools for n-Lie algebras of dimension n+1 and n+2")]
struct Cli {
    /// Machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Accept unreduced rationals and unsorted index tuples
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the generalized Jacobi identity
    Validate { file: PathBuf },
    /// Print the invariant signature
    Invariants { file: PathBuf },
    /// Dimension and basis of the derivation algebra
    Derinfo { file: PathBuf },
    /// Write the canonical table of a class
    Gen(GenArgs),
    /// Apply a basis change
    Transform {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a witness maps the first algebra onto the second
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Classify an algebra of dimension arity+1 or arity+2
    Classify {
        file: PathBuf,
        /// Show the normalization steps
        #[arg(long)]
        verbose: bool,
    },
    /// Classify random basis changes of an algebra and compare
    OrbitTest {
        file: PathBuf,
        #[arg(long, default_value_t = 25)]
        seeds: u64,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// First seed
        #[arg(long, env = "NLIE_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// List every class for an arity with its invariants
    Catalog {
        #[arg(long)]
        arity: usize,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    arity: usize,
    /// Family name, e.g. d3, c6, lem-d
    #[arg(long)]
    class: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Report text and exit code.
struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }

    fn neg(text: String) -> Self {
        Report { text, code: 1 }
    }

    fn with(text: String, ok: bool) -> Self {
        Report {
            text,
            code: if ok { 0 } else { 1 },
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            let _ = if code == 0 { out.write_all(s.as_bytes()) } else { err.write_all(s.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let _ = out.write_all(r.text.as_bytes());
            r.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidAlgebra(_) | Error::ArityBoundViolated { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn mode(cli: &Cli) -> ParseMode {
    if cli.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_or_return(path: &Option<PathBuf>, body: String, what: &str) -> Result<String, Error> {
    match path {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote {what} to {}\n", p.display()))
        }
        None => Ok(body),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Algebra, Error> {
    parse_algebra(&read(path)?, mode(cli))
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn tuple1(idx: &[usize]) -> String {
    let v: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", v.join(","))
}

fn vec_text(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", s.join(", "))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::from(
        m.to_rows()
            .iter()
            .map(|r| Value::from(r.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

fn violations_text(rep: &JacobiReport, out: &mut String) {
    let _ = writeln!(out, "Jacobi identity fails in {} instances:", rep.violations.len());
    for v in &rep.violations {
        let _ = writeln!(out, "  x={} y={} residual {}", tuple1(&v.x), tuple1(&v.y), vec_text(&v.residual));
    }
}

fn violations_json(rep: &JacobiReport) -> Value {
    Value::from(
        rep.violations
            .iter()
            .map(|v| {
                json!({
                    "x": v.x.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "y": v.y.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "residual": v.residual.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    )
}

/// Report for a Jacobi-violating input, or `None` if the identity holds.
fn jacobi_gate(cli: &Cli, a: &Algebra) -> Option<Report> {
    let rep = check_jacobi(a);
    if rep.is_valid() {
        return None;
    }
    Some(Report::neg(if cli.json {
        json_text(json!({"valid": false, "violations": violations_json(&rep)}))
    } else {
        let mut s = String::new();
        violations_text(&rep, &mut s);
        s
    }))
}

fn signature_json(s: &InvariantSignature) -> Value {
    json!({
        "arity": s.arity,
        "dim": s.dim,
        "dim_derived": s.dim_derived,
        "dim_center": s.dim_center,
        "dim_center_in_derived": s.dim_center_in_derived,
        "dim_der_algebra": s.dim_der_algebra,
        "central_summand_dim": s.central_summand_dim,
    })
}

fn signature_text(s: &InvariantSignature) -> String {
    format!(
        "arity {}\ndim {}\ndim A^1 = {}\ndim Z(A) = {}\ndim Z(A) ∩ A^1 = {}\ndim Der(A) = {}\ncentral summand dim = {}\n",
        s.arity, s.dim, s.dim_derived, s.dim_center, s.dim_center_in_derived, s.dim_der_algebra, s.central_summand_dim
    )
}

fn label_json(l: &ClassLabel) -> Value {
    let params: serde_json::Map<String, Value> =
        l.params().into_iter().map(|(k, v)| (k.to_string(), Value::from(v))).collect();
    json!({"family": l.family(), "params": params, "name": l.to_string()})
}

fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::FamilyOnly => "family-only",
        Status::Unresolved(_) => "unresolved",
    }
}

fn verdict_report(cli: &Cli, v: &Verdict, verbose: bool) -> Report {
    let ok = !matches!(v.status, Status::Unresolved(_));
    if cli.json {
        let mut o = json!({
            "status": status_name(&v.status),
            "label": v.label.as_ref().map(label_json),
            "witness": v.witness.as_ref().map(|w| matrix_json(w.matrix())),
        });
        if let Status::Unresolved(c) = &v.status {
            o["candidates"] = Value::from(c.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
        if verbose {
            o["steps"] = Value::from(
                v.steps
                    .iter()
                    .map(|s| json!({"note": s.note, "change": s.change.as_ref().map(|t| matrix_json(t.matrix()))}))
                    .collect::<Vec<_>>(),
            );
        }
        return Report::with(json_text(o), ok);
    }
    let mut s = String::new();
    match (&v.status, &v.label) {
        (Status::Exact, Some(l)) => {
            let _ = writeln!(s, "class {l} (exact)");
        }
        (Status::FamilyOnly, Some(l)) => {
            let _ = writeln!(s, "family {} (parameters need an irrational normalization)", l.family());
        }
        (Status::Unresolved(c), _) => {
            let names: Vec<String> = c.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "unresolved; signature candidates: {}", if names.is_empty() { "none".into() } else { names.join(", ") });
        }
        _ => {}
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "witness:");
        for r in w.matrix().to_rows() {
            let _ = writeln!(s, "  {}", vec_text(&r));
        }
    }
    if verbose {
        for (i, st) in v.steps.iter().enumerate() {
            let _ = writeln!(s, "step {}: {}", i + 1, st.note);
            if let Some(t) = &st.change {
                for r in t.matrix().to_rows() {
                    let _ = writeln!(s, "    {}", vec_text(&r));
                }
            }
        }
    }
    Report::with(s, ok)
}

fn param(s: &Option<String>, what: &str) -> Result<Option<Rational>, Error> {
    s.as_deref()
        .map(|v| parse_rational(v, false).map_err(|m| Error::InvalidParameter(format!("{what}: {m}"))))
        .transpose()
}

fn gen_label(g: &GenArgs) -> Result<ClassLabel, Error> {
    let stu = match (param(&g.s, "s")?, param(&g.t, "t")?, param(&g.u, "u")?) {
        (Some(s), Some(t), Some(u)) => Some((s, t, u)),
        (None, None, None) => None,
        _ => return Err(Error::InvalidParameter("d7 needs all of --s, --t, --u".into())),
    };
    ClassLabel::from_parts(&g.class, param(&g.alpha, "alpha")?, param(&g.beta, "beta")?, stu, g.r)
}

/// Same class up to the d7 parameter relation.
fn same_class(a: &ClassLabel, b: &ClassLabel) -> bool {
    match (a, b) {
        (ClassLabel::D7 { s, t, u }, ClassLabel::D7 { s: s2, t: t2, u: u2 }) => {
            matches!(d7_equivalent((s, t, u), (s2, t2, u2)), Ok(D7Equivalence::Equivalent(_)))
        }
        _ => a == b,
    }
}

struct OrbitRow {
    seed: u64,
    jacobi: bool,
    invariants: bool,
    label: Option<String>,
    agrees: bool,
}

fn orbit_test(cli: &Cli, a: &Algebra, seeds: u64, bound: u64, first: u64) -> Result<Report, Error> {
    if bound == 0 {
        return Err(Error::InvalidParameter("--bound must be at least 1".into()));
    }
    if let Some(r) = jacobi_gate(cli, a) {
        return Ok(r);
    }
    let n = a.arity();
    let sig = invariant_signature(a)?;
    let classifiable = n >= 3 && (a.dim() == n + 1 || a.dim() == n + 2);
    let base = if classifiable { classify(a)?.label } else { None };
    let list: Vec<u64> = (first..first + seeds).collect();
    let rows: Vec<Result<OrbitRow, Error>> = par_map(&list, |&seed| {
        let t = random_basis_change(a.dim(), seed, bound);
        let b = change_basis_multilinear(a, &t)?;
        let jacobi = check_jacobi(&b).is_valid();
        let invariants = jacobi && invariant_signature(&b)? == sig;
        let got = if classifiable && jacobi { classify(&b)?.label } else { None };
        let agrees = match (&base, &got) {
            (Some(x), Some(y)) => same_class(x, y),
            (None, None) => true,
            _ => false,
        };
        Ok(OrbitRow {
            seed,
            jacobi,
            invariants,
            label: got.map(|l| l.to_string()),
            agrees,
        })
    });
    let rows: Vec<OrbitRow> = rows.into_iter().collect::<Result<_, _>>()?;
    let failed = rows.iter().filter(|r| !(r.jacobi && r.invariants && r.agrees)).count();
    let text = if cli.json {
        json_text(json!({
            "base": base.as_ref().map(ToString::to_string),
            "seeds": seeds,
            "first_seed": first,
            "bound": bound,
            "failed": failed,
            "samples": rows.iter().map(|r| json!({
                "seed": r.seed, "jacobi": r.jacobi, "invariants": r.invariants,
                "label": r.label, "agrees": r.agrees,
            })).collect::<Vec<_>>(),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "base class: {}",
            base.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into())
        );
        for r in &rows {
            let _ = writeln!(
                s,
                "seed {}: jacobi {}, invariants {}, class {}{}",
                r.seed,
                if r.jacobi { "ok" } else { "FAIL" },
                if r.invariants { "ok" } else { "FAIL" },
                r.label.as_deref().unwrap_or("-"),
                if r.agrees { "" } else { " MISMATCH" }
            );
        }
        let _ = writeln!(s, "{} of {} samples passed", rows.len() - failed, rows.len());
        s
    };
    Ok(Report::with(text, failed == 0))
}

fn catalog_report(cli: &Cli, n: usize) -> Result<Report, Error> {
    let labels = ClassLabel::samples(n);
    let sigs: Vec<Result<InvariantSignature, Error>> =
        par_map(&labels, |l| canonical(n, l).and_then(|a| invariant_signature(&a)));
    let mut rows = Vec::with_capacity(labels.len());
    for (l, s) in labels.iter().zip(sigs) {
        rows.push((l, s?));
    }
    Ok(Report::ok(if cli.json {
        json_text(Value::from(
            rows.iter()
                .map(|(l, s)| json!({"class": label_json(l), "signature": signature_json(s)}))
                .collect::<Vec<_>>(),
        ))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "class            dim  A^1  Z  Z∩A^1  Der  central");
        for (l, g) in &rows {
            let _ = writeln!(
                s,
                "{:<16} {:>3}  {:>3}  {}  {:>5}  {:>3}  {:>7}",
                l.to_string(),
                g.dim,
                g.dim_derived,
                g.dim_center,
                g.dim_center_in_derived,
                g.dim_der_algebra,
                g.central_summand_dim
            );
        }
        s
    }))
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let a = load(cli, file)?;
            if let Some(r) = jacobi_gate(cli, &a) {
                return Ok(r);
            }
            Ok(Report::ok(if cli.json {
                json_text(json!({"valid": true, "violations": []}))
            } else {
                "valid: the generalized Jacobi identity holds\n".into()
            }))
        }
        Cmd::Invariants { file } => {
            let a = load(cli, file)?;
            if let Some(r) = jacobi_gate(cli, &a) {
                return Ok(r);
            }
            let s = invariant_signature(&a)?;
            Ok(Report::ok(if cli.json {
                json_text(signature_json(&s))
            } else {
                signature_text(&s)
            }))
        }
        Cmd::Derinfo { file } => {
            let a = load(cli, file)?;
            if let Some(r) = jacobi_gate(cli, &a) {
                return Ok(r);
            }
            let der = derivation_algebra(&a);
            Ok(Report::ok(if cli.json {
                json_text(json!({
                    "dim": der.dim,
                    "dim_derived": derived_subalgebra(&a).dim(),
                    "basis": der.basis.iter().map(matrix_json).collect::<Vec<_>>(),
                }))
            } else {
                format!("dim Der(A) = {}\n", der.dim)
            }))
        }
        Cmd::Gen(g) => {
            let label = gen_label(g)?;
            let a = canonical(g.arity, &label)?;
            Ok(Report::ok(write_or_return(&g.output, serialize_algebra(&a), &label.to_string())?))
        }
        Cmd::Transform { file, matrix, output } => {
            let a = load(cli, file)?;
            let t = TransitionMatrix::new(parse_matrix(&read(matrix)?, mode(cli))?)?;
            let b = change_basis_multilinear(&a, &t)?;
            Ok(Report::ok(write_or_return(output, serialize_algebra(&b), "transformed algebra")?))
        }
        Cmd::Iso { first, second, witness } => {
            let a = load(cli, first)?;
            let b = load(cli, second)?;
            let t = TransitionMatrix::new(parse_matrix(&read(witness)?, mode(cli))?)?;
            let ok = verify_isomorphism(&a, &b, &t)?;
            Ok(Report::with(
                if cli.json {
                    json_text(json!({"isomorphic": ok}))
                } else if ok {
                    "isomorphic: the witness maps the first table onto the second\n".into()
                } else {
                    "not isomorphic under this witness\n".into()
                },
                ok,
            ))
        }
        Cmd::Classify { file, verbose } => {
            let a = load(cli, file)?;
            if let Some(r) = jacobi_gate(cli, &a) {
                return Ok(r);
            }
            let v = classify(&a)?;
            Ok(verdict_report(cli, &v, *verbose))
        }
        Cmd::OrbitTest {
            file,
            seeds,
            bound,
            seed,
        } => {
            let a = load(cli, file)?;
            orbit_test(cli, &a, *seeds, *bound, *seed)
        }
        Cmd::Catalog { arity } => catalog_report(cli, *arity),
    }
}
