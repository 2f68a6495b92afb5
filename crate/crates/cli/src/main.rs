//! `starborel`: command-line front end for the star-product engine.
//!
//! Every expression argument is either inline text in the series grammar or
//! `@path` naming a UTF-8 file that holds it.

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use starborel::borel::{self, BorelSeries};
use starborel::locus::{self, Variety};
use starborel::numeric::RadiusMethod;
use starborel::poly_algebra::{self, UniOverPoly};
use starborel::random::DEFAULT_SEED;
use starborel::rational::{fmt_rational, parse_rational};
use starborel::suites::{self, Report};
use starborel::text::{names_in, parse_poly};
use starborel::{star, Error, FormalSeries, MultiPoly, Rational, StarKind, Truncation, VariableSet};

#[derive(Parser, Debug)]
#[command(name = "starborel", version, about = "Exact star products, Borel-plane operations and singular loci")]
struct Cli {
    /// Print a JSON record instead of canonical text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Window {
    /// Degrees of freedom N (variables p, q for N = 1, else p1..pN, q1..qN).
    #[arg(long, default_value_t = 1)]
    dof: usize,
    /// Highest power of the distinguished variable kept in the output.
    #[arg(long, default_value_t = 8)]
    trunc_t: u32,
    /// Highest total degree in the phase-space variables kept in the output.
    #[arg(long, default_value_t = 8)]
    trunc_xy: u32,
}

impl Window {
    fn out(&self) -> Truncation {
        Truncation::new(self.trunc_t, self.trunc_xy)
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    Standard,
    Moyal,
}

impl From<Kind> for StarKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Standard => StarKind::Standard,
            Kind::Moyal => StarKind::Moyal,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    Ratio,
    Root,
}

impl From<Method> for RadiusMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Ratio => RadiusMethod::Ratio,
            Method::Root => RadiusMethod::Root,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Star product f ⋆ g of two series in t, p.., q..
    Star {
        #[arg(long, value_enum, default_value_t = Kind::Standard)]
        kind: Kind,
        #[command(flatten)]
        window: Window,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Borel transform in t; the output variable is xi.
    Borel {
        #[command(flatten)]
        window: Window,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Inverse Borel transform of a series in xi; the output variable is t.
    Unborel {
        #[command(flatten)]
        window: Window,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Borel-plane star product of two series in xi, p.., q..
    BorelStar {
        #[arg(long, value_enum, default_value_t = Kind::Standard)]
        kind: Kind,
        #[command(flatten)]
        window: Window,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Transition operator T from the standard to the Moyal product.
    Transition {
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        window: Window,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Coefficientwise product of two series (variables inferred, xi first).
    Hadamard {
        /// Highest power of xi kept in the output.
        #[arg(long, default_value_t = 64)]
        trunc_t: u32,
        #[arg(allow_hyphen_values = true)]
        phi: String,
        #[arg(allow_hyphen_values = true)]
        psi: String,
    },
    /// The ⊙_ij pairing; xi is appended as the last variable.
    Odot {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        /// Name of the appended variable.
        #[arg(long, default_value = "xi")]
        xi: String,
        /// Distinguished variable of the input.
        #[arg(long, default_value = "t")]
        first: String,
        #[arg(long, default_value_t = 64)]
        trunc_t: u32,
        #[arg(long, default_value_t = 64)]
        trunc_xy: u32,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// A simple polynomial with the same zero set.
    SimplePoly {
        #[arg(long, default_value = "z1")]
        var: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Sylvester resultant in one variable.
    Resultant {
        #[arg(long, default_value = "z1")]
        var: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Candidate singular varieties.
    Locus {
        #[command(subcommand)]
        kind: LocusKind,
    },
    /// Run a packaged verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct PointArg {
    /// Membership query, e.g. `z=1/2,z2=0`.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Subcommand, Debug)]
enum LocusKind {
    /// Convolution locus of a germ singular on {P = 0} against a path end P̄.
    Conv {
        #[arg(long, default_value = "z1")]
        var: String,
        /// Endpoint P̄, a polynomial in the new variable and P's others.
        #[arg(long, allow_hyphen_values = true)]
        pbar: String,
        /// Name of P̄'s distinguished variable.
        #[arg(long, default_value = "z")]
        z: String,
        /// Remove a variable no leaf depends on.
        #[arg(long)]
        drop: Option<String>,
        #[command(flatten)]
        point: PointArg,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// {0} ∪ {s·t} for finite singular sets of two univariate germs.
    Hadamard1d {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        sf: String,
        #[arg(long, allow_hyphen_values = true)]
        sg: String,
        #[command(flatten)]
        point: PointArg,
    },
    /// Five-variable Hadamard locus from a p-simple P_f and q-simple Q_g in xi, q, p.
    Hadamard {
        #[command(flatten)]
        point: PointArg,
        #[arg(allow_hyphen_values = true)]
        pf: String,
        #[arg(allow_hyphen_values = true)]
        qg: String,
    },
    /// Locus of the ⊙_ij pairing for a germ singular on {P = 0}.
    Odot {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long, default_value = "xi")]
        xi: String,
        #[command(flatten)]
        point: PointArg,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Integral representations against the conjugation definitions.
    IntegralReps {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random inputs per representation.
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        trunc_t: u32,
        #[arg(long, default_value_t = 5)]
        trunc_xy: u32,
    },
    /// Radius estimates against locus distances.
    Radius {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random (q, p) points per family.
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Relative tolerance for the geometric family.
        #[arg(long, default_value_t = suites::GEOMETRIC_TOL)]
        tol: f64,
        /// Relative tolerance for the polylogarithmic family.
        #[arg(long, default_value_t = suites::POLYLOG_TOL)]
        polylog_tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Ratio)]
        method: Method,
    },
    /// The worked examples: star identities, divergent series, calculus, loci.
    Examples {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// What a command prints and how it exits.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let (code, out, err) = run(std::env::args_os());
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    if !out.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{out}");
    }
    if !err.is_empty() {
        let _ = writeln!(std::io::stderr().lock(), "{err}");
    }
    ExitCode::from(code)
}

/// Parses `argv` and executes the command: `(exit code, stdout, stderr)`.
fn run<I: IntoIterator<Item = OsString>>(argv: I) -> (u8, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() { (1, String::new(), rendered) } else { (0, rendered, String::new()) };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let body = if cli.json { o.json.to_string() } else { o.text };
            (o.code, body, String::new())
        }
        Err(e) => {
            let msg = format!("error: {e}");
            if cli.json {
                (1, json!({ "error": e.to_string() }).to_string(), msg)
            } else {
                (1, String::new(), msg)
            }
        }
    }
}

fn read_input(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::Invalid(format!("cannot read `{path}`: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn series_record(command: &str, s: &FormalSeries) -> Outcome {
    let terms: Vec<Value> = s
        .poly()
        .terms()
        .rev()
        .map(|(m, c)| json!({ "exponents": m.exps(), "coefficient": fmt_rational(c) }))
        .collect();
    Outcome::ok(
        s.to_string(),
        json!({
            "command": command,
            "result": s.to_string(),
            "variables": s.vars().names(),
            "window": [s.trunc().deg_t, s.trunc().deg_xy],
            "terms": terms,
        }),
    )
}

fn poly_record(command: &str, p: &MultiPoly) -> Outcome {
    Outcome::ok(p.to_string(), json!({ "command": command, "result": p.to_string(), "variables": p.vars().names() }))
}

/// Parses on the operand window that determines `out` exactly.
fn operand(arg: &str, vars: &VariableSet, out: Truncation) -> Result<FormalSeries, Error> {
    FormalSeries::parse(&read_input(arg)?, vars, star::required_input_window(out))
}

fn truncate(s: FormalSeries, out: Truncation) -> FormalSeries {
    let w = s.trunc().min(out);
    FormalSeries::new(s.into_poly(), w)
}

/// Variables mentioned by any of `inputs`, with `first` at index 0.
fn inferred(first: &str, inputs: &[&str]) -> Result<VariableSet, Error> {
    let mut names = Vec::new();
    for s in inputs {
        names.extend(names_in(s)?);
    }
    VariableSet::infer(first, &names)
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Star { kind, window, f, g } => {
            let vars = VariableSet::phase_space("t", window.dof);
            let out = window.out();
            let (f, g) = (operand(f, &vars, out)?, operand(g, &vars, out)?);
            Ok(series_record("star", &star::star_in_window((*kind).into(), &f, &g, out)?))
        }
        Command::Borel { window, f } => {
            let vars = VariableSet::phase_space(borel::T, window.dof);
            let f = FormalSeries::parse(&read_input(f)?, &vars, window.out())?;
            Ok(series_record("borel", borel::borel(&f)?.series()))
        }
        Command::Unborel { window, f } => {
            let vars = VariableSet::phase_space(borel::XI, window.dof);
            let f = BorelSeries::parse(&read_input(f)?, &vars, window.out())?;
            Ok(series_record("unborel", &borel::inverse_borel(&f)?))
        }
        Command::BorelStar { kind, window, f, g } => {
            let vars = VariableSet::phase_space(borel::XI, window.dof);
            let out = window.out();
            let f = BorelSeries::from_series(operand(f, &vars, out)?);
            let g = BorelSeries::from_series(operand(g, &vars, out)?);
            let h = borel::borel_star((*kind).into(), &f, &g)?;
            Ok(series_record("borel-star", &truncate(h.into_series(), out)))
        }
        Command::Transition { inverse, window, f } => {
            let vars = VariableSet::phase_space("t", window.dof);
            let out = window.out();
            let f = operand(f, &vars, out)?;
            Ok(series_record("transition", &truncate(star::transition_t(&f, *inverse)?, out)))
        }
        Command::Hadamard { trunc_t, phi, psi } => {
            let (a, b) = (read_input(phi)?, read_input(psi)?);
            let vars = inferred(borel::XI, &[&a, &b])?;
            let w = Truncation::new(*trunc_t, u32::MAX / 4);
            let (a, b) = (FormalSeries::parse(&a, &vars, w)?, FormalSeries::parse(&b, &vars, w)?);
            Ok(series_record("hadamard", &borel::hadamard(&a, &b)?))
        }
        Command::Odot { i, j, xi, first, trunc_t, trunc_xy, f } => {
            let text = read_input(f)?;
            let vars = inferred(first, &[&text, i, j])?;
            let f = FormalSeries::parse(&text, &vars, Truncation::new(*trunc_t, *trunc_xy))?;
            Ok(series_record("odot", &borel::odot_ij(&f, i, j, xi)?))
        }
        Command::SimplePoly { var, p } => {
            let text = read_input(p)?;
            let vars = inferred(var, &[&text])?;
            let u = UniOverPoly::new(&parse_poly(&text, &vars)?, var)?;
            Ok(poly_record("simple-poly", &poly_algebra::simple_decompose(&u)?.to_poly()))
        }
        Command::Resultant { var, p, q } => {
            let (a, b) = (read_input(p)?, read_input(q)?);
            let vars = inferred(var, &[&a, &b])?;
            let ua = UniOverPoly::new(&parse_poly(&a, &vars)?, var)?;
            let ub = UniOverPoly::new(&parse_poly(&b, &vars)?, var)?;
            Ok(poly_record("resultant", &poly_algebra::sylvester_resultant(&ua, &ub)?))
        }
        Command::Locus { kind } => locus_command(kind),
        Command::Verify { suite } => Ok(verify(suite)),
    }
}

fn locus_command(kind: &LocusKind) -> Result<Outcome, Error> {
    let (v, point, label) = match kind {
        LocusKind::Conv { var, pbar, z, drop, point, p } => {
            let (p, pbar) = (read_input(p)?, read_input(pbar)?);
            let pvars = inferred(var, &[&p])?;
            let others: Vec<&str> = pvars.names()[1..].iter().map(String::as_str).collect();
            let mut sources = vec![pbar.as_str()];
            let joined = others.join(" + ");
            if !others.is_empty() {
                sources.push(&joined);
            }
            let ovars = inferred(z, &sources)?;
            let (p, pbar) = (parse_poly(&p, &pvars)?, parse_poly(&pbar, &ovars)?);
            let mut v = locus::conv_locus(&p, var, &pbar)?;
            if let Some(d) = drop {
                v = locus::conv_locus_drop_variable(&v, d)?;
            }
            (v, point, "conv")
        }
        LocusKind::Hadamard1d { sf, sg, point } => {
            let v = locus::hadamard_locus_1d(&locus::parse_rational_list(sf)?, &locus::parse_rational_list(sg)?);
            (v, point, "hadamard1d")
        }
        LocusKind::Hadamard { point, pf, qg } => {
            let vars = VariableSet::phase_space(borel::XI, 1);
            let (pf, qg) = (parse_poly(&read_input(pf)?, &vars)?, parse_poly(&read_input(qg)?, &vars)?);
            (locus::hadamard_locus_5var(&pf, &qg)?, point, "hadamard")
        }
        LocusKind::Odot { i, j, xi, point, p } => {
            let text = read_input(p)?;
            let names = names_in(&text)?;
            let first = names.first().map(String::as_str).unwrap_or(i.as_str());
            let vars = inferred(first, &[&text, i, j])?;
            (locus::odot_locus(&parse_poly(&text, &vars)?, i, j, xi)?, point, "odot")
        }
    };
    let member = match &point.point {
        Some(spec) => Some(membership(&v, spec)?),
        None => None,
    };
    let mut text = v.to_string();
    if let Some(m) = member {
        text.push_str(&format!("\nmember={m}"));
    }
    let components: Vec<Value> = v
        .components()
        .iter()
        .map(|u| Value::Array(u.iter().map(|l| json!({ "label": l.label, "poly": l.poly.to_string() })).collect()))
        .collect();
    let json = json!({
        "command": format!("locus {label}"),
        "variables": v.vars().names(),
        "intersect": components,
        "member": member,
    });
    Ok(Outcome::ok(text, json))
}

/// `name=value,...`, every variable of the variety bound.
fn membership(v: &Variety, spec: &str) -> Result<bool, Error> {
    let mut bindings: Vec<(&str, Rational)> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected `name=value`, got `{part}`")))?;
        bindings.push((name.trim(), parse_rational(value.trim())?));
    }
    Ok(v.contains(&v.point(&bindings)?))
}

fn verify(suite: &Suite) -> Outcome {
    let report: Report = match suite {
        Suite::IntegralReps { seed, count, trunc_t, trunc_xy } => {
            suites::integral_reps(*seed, *count, Truncation::new(*trunc_t, *trunc_xy))
        }
        Suite::Radius { seed, points, tol, polylog_tol, method } => {
            suites::radius_with(*seed, *points, (*method).into(), *tol, *polylog_tol)
        }
        Suite::Examples { seed } => suites::examples(*seed),
    };
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let json = json!({ "suite": report.title, "passed": report.passed(), "checks": checks });
    Outcome { text: report.to_string(), json, code: if report.passed() { 0 } else { 2 } }
}
