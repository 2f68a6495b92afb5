//! Packaged verification suites. Each function runs one group of checks and
//! returns a [`Report`]; the acceptance test and `starborel verify` both
//! drive these.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::borel::{self, borel_star, borel_t, hadamard, BorelSeries};
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::integral_reps::{eval_That_rep, eval_borel_star_rep, eval_formulahigh, eval_moyal_rep, hadamard_contour};
use crate::locus::{self, Variety};
use crate::numeric::{self, RadiusMethod, Verdict};
use crate::poly::{Monomial, MultiPoly};
use crate::poly_algebra::{self, UniOverPoly};
use crate::random::Sampler;
use crate::rational::{self, int, ratio, Rational};
use crate::series::{FormalSeries, Truncation};
use crate::star::{self, StarKind};
use crate::text::parse_poly;
use crate::vars::VariableSet;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Records `outcome`; an error counts as a failure.
    pub fn record(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    fn expect_series(&mut self, name: &str, got: Result<FormalSeries>, want: &str) {
        self.record(
            name,
            got.and_then(|g| {
                let w = FormalSeries::parse(want, g.vars(), g.trunc())?;
                Ok((g == w, format!("got {g}, want {w}")))
            }),
        );
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{}/{} checks passed", n, self.checks.len())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn budget(report: &mut Report, name: &str, took: Duration, limit: Duration) {
    report.record(name, Ok((took <= limit, format!("{:.3} s (limit {} s)", took.as_secs_f64(), limit.as_secs_f64()))));
}

/// Star-product examples, the transition operator and the Moyal
/// commutation relations.
pub fn star_examples() -> Report {
    let mut r = Report::new("star-product examples");
    let (_, took) = timed(|| {
        let v1 = VariableSet::phase_space("t", 1);
        let w = Truncation::new(4, 4);
        let s = |text: &str| FormalSeries::parse(text, &v1, w);
        let st = |kind, a: &str, b: &str| star::star(kind, &s(a)?, &s(b)?);
        r.expect_series("(tp) *S (tq)", st(StarKind::Standard, "t*p", "t*q"), "t^2*p*q + t^3");
        r.expect_series("(tq) *S (tp)", st(StarKind::Standard, "t*q", "t*p"), "t^2*p*q");
        r.expect_series("(tp) *M (tq)", st(StarKind::Moyal, "t*p", "t*q"), "t^2*p*q + 1/2*t^3");
        r.expect_series("(tq) *M (tp)", st(StarKind::Moyal, "t*q", "t*p"), "t^2*p*q - 1/2*t^3");
        r.expect_series("T(t^2 p q)", s("t^2*p*q").and_then(|f| star::transition_t(&f, false)), "t^2*p*q - 1/2*t^3");
        r.expect_series("T^-1 T(t^2 p q)", s("t^2*p*q").and_then(|f| star::transition_t(&star::transition_t(&f, false)?, true)), "t^2*p*q");
        r.expect_series("[p, q]_M", s("p").and_then(|p| star::moyal_commutator(&p, &s("q")?)), "1");
        r.record("CCR at N = 3", ccr(3));
    });
    budget(&mut r, "runtime", took, Duration::from_secs(1));
    r
}

/// `[p_i, q_j]_M = δ_ij`, `[p_i, p_j]_M = [q_i, q_j]_M = 0`.
fn ccr(n: usize) -> Result<(bool, String)> {
    let vars = VariableSet::phase_space("t", n);
    let w = Truncation::new(2, 2);
    let names: Vec<String> = vars.names()[1..].to_vec();
    let mut bad = Vec::new();
    for a in &names {
        for b in &names {
            let got = star::moyal_commutator(&FormalSeries::parse(a, &vars, w)?, &FormalSeries::parse(b, &vars, w)?)?;
            let (ia, ib) = (&a[1..], &b[1..]);
            let want = match (&a[..1], &b[..1]) {
                ("p", "q") if ia == ib => Rational::one(),
                ("q", "p") if ia == ib => -Rational::one(),
                _ => Rational::zero(),
            };
            if got.poly() != &MultiPoly::constant(&vars, want) {
                bad.push(format!("[{a}, {b}] = {got}"));
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} brackets", names.len().pow(2)) } else { bad.join("; ") }))
}

/// `Σ_{j ≤ deg} x^j`, or `−Σ_{1 ≤ j ≤ deg} x^j/j` when `log` is set.
fn geometric_or_log(vars: &VariableSet, var: &str, deg: u32, log: bool) -> Result<MultiPoly> {
    let i = vars.index(var)?;
    let mut p = MultiPoly::zero(vars);
    for j in 0..=deg {
        let c = match (log, j) {
            (false, _) => Rational::one(),
            (true, 0) => continue,
            (true, j) => -ratio(1, j as i64),
        };
        p.add_term(Monomial::one(vars.len()).with(i, j), c);
    }
    Ok(p)
}

/// `Σ_{a+b ≤ e} C(a+k, k) C(b+k, k) p^a q^b`, the expansion of
/// `((1−p)(1−q))^{-k-1}` on the window.
fn inv_c_power(vars: &VariableSet, k: u32, e: u32) -> Result<MultiPoly> {
    let (pi, qi) = (vars.index("p")?, vars.index("q")?);
    let mut out = MultiPoly::zero(vars);
    for a in 0..=e {
        for b in 0..=(e - a) {
            let c = Rational::from_integer(rational::binomial(a + k, k) * rational::binomial(b + k, k));
            out.add_term(Monomial::one(vars.len()).with(pi, a).with(qi, b), c);
        }
    }
    Ok(out)
}

/// The Euler and logarithm star products against their closed forms on
/// the `(8, 8)` window, and their Borel images.
pub fn divergent_series() -> Report {
    let mut r = Report::new("divergent-series identities");
    let w = Truncation::new(8, 8);
    r.record("euler t-series", euler_t(w));
    r.record("log*log t-series", loglog_t(w));
    r.record("euler Borel image", euler_borel(w));
    r.record("log*log Borel image (Li2 coefficients)", loglog_borel(w));
    r.record("log(1-xi) hadamard log(1-xi) = Li2", li2_hadamard(40));
    r
}

fn family_product(w: Truncation, log: bool) -> Result<FormalSeries> {
    let vars = VariableSet::phase_space("t", 1);
    let input = star::required_input_window(w);
    let f = FormalSeries::new(geometric_or_log(&vars, "p", input.deg_xy, log)?, input);
    let g = FormalSeries::new(geometric_or_log(&vars, "q", input.deg_xy, log)?, input);
    star::star_in_window(StarKind::Standard, &f, &g, w)
}

fn t_power(vars: &VariableSet, k: u32) -> MultiPoly {
    MultiPoly::monomial(vars, Monomial::one(vars.len()).with(0, k), Rational::one())
}

fn euler_t(w: Truncation) -> Result<(bool, String)> {
    let got = family_product(w, false)?;
    let vars = got.vars().clone();
    let mut want = MultiPoly::zero(&vars);
    for k in 0..=w.deg_t {
        let term = &t_power(&vars, k) * &inv_c_power(&vars, k, w.deg_xy)?;
        want = &want + &term.scale(&rational::factorial_q(k));
    }
    let want = FormalSeries::new(want, w);
    Ok((got == want, format!("{} terms compared on {w}", want.poly().len())))
}

fn loglog_t(w: Truncation) -> Result<(bool, String)> {
    let got = family_product(w, true)?;
    let vars = got.vars().clone();
    let lp = geometric_or_log(&vars, "p", w.deg_xy, true)?;
    let lq = geometric_or_log(&vars, "q", w.deg_xy, true)?;
    let mut want = &lp * &lq;
    for k in 1..=w.deg_t {
        let c = rational::factorial_q(k - 1) / int(k as i64);
        want = &want + &(&t_power(&vars, k) * &inv_c_power(&vars, k - 1, w.deg_xy)?).scale(&c);
    }
    let want = FormalSeries::new(want, w);
    Ok((got == want, format!("{} terms compared on {w}", want.poly().len())))
}

/// `c = (1 − p)(1 − q)` over `vars`.
fn c_poly(vars: &VariableSet) -> Result<MultiPoly> {
    parse_poly("1 - p - q + p*q", vars)
}

fn euler_borel(w: Truncation) -> Result<(bool, String)> {
    let b = borel::borel(&family_product(w, false)?)?;
    let vars = b.vars().clone();
    // (c − ξ) B = 1 on the window, i.e. B = c^{-1} (1 − ξ/c)^{-1}.
    let lhs = &(&c_poly(&vars)? - &MultiPoly::var_at(&vars, 0)) * b.series().poly();
    let lhs = FormalSeries::new(lhs, w);
    Ok((lhs == FormalSeries::one(&vars, w), "(c - xi) * B = 1 on the window".into()))
}

fn loglog_borel(w: Truncation) -> Result<(bool, String)> {
    let b = borel::borel(&family_product(w, true)?)?;
    let vars = b.vars().clone();
    let c = c_poly(&vars)?;
    let coeffs = b.series().distinguished_coefficients();
    let lp = geometric_or_log(&vars, "p", w.deg_xy, true)?;
    let lq = geometric_or_log(&vars, "q", w.deg_xy, true)?;
    let mut ok = FormalSeries::new(coeffs[0].clone(), w) == FormalSeries::new(&lp * &lq, w);
    for (k, ck) in coeffs.iter().enumerate().skip(1) {
        let scaled = FormalSeries::new(&c.pow(k as u32) * ck, w);
        let want = FormalSeries::new(MultiPoly::constant(&vars, ratio(1, (k * k) as i64)), w);
        ok &= scaled == want;
    }
    Ok((ok, "xi^0 part is log(1-p)log(1-q); c^k * [xi^k] = 1/k^2 for k = 1..8".into()))
}

fn li2_hadamard(order: u32) -> Result<(bool, String)> {
    let vars = VariableSet::new(&[borel::XI])?;
    let w = Truncation::new(order, 0);
    let l = FormalSeries::new(geometric_or_log(&vars.extend(&["_"])?, borel::XI, order, true)?.embed(&vars)?, w);
    let li2 = FormalSeries::new(
        MultiPoly::from_terms(
            &vars,
            (1..=order).map(|k| (Monomial::from_exps(&[k as u16]), ratio(1, (k * k) as i64))),
        ),
        w,
    );
    let direct = hadamard(&l, &l)?;
    let contour = hadamard_contour(&l, &l)?;
    Ok((direct == li2 && contour == li2, format!("coefficients 1/k^2 through k = {order}, coefficientwise and by contour")))
}

/// Oracle equivalence of every integral representation with its
/// β-conjugation definition on `count` seeded inputs per operation.
pub fn integral_reps(seed: u64, count: usize, window: Truncation) -> Report {
    let mut r = Report::new(format!("integral representations (seed {seed}, {count} inputs each, window {window})"));
    let (_, took) = timed(|| {
        let mut s = Sampler::new(seed);
        let v1 = VariableSet::phase_space(borel::XI, 1);
        let v2 = VariableSet::phase_space(borel::XI, 2);
        let rand = |s: &mut Sampler, v: &VariableSet| BorelSeries::from_series(s.series(v, window, 4));

        r.record("regression: (xi p) * (xi q) has xi^3/3!", regression());
        let mut tally = |f: &mut dyn FnMut(&mut Sampler) -> Result<bool>| {
            let mut bad = 0usize;
            let mut first_err = None;
            for _ in 0..count {
                match f(&mut s) {
                    Ok(true) => {}
                    Ok(false) => bad += 1,
                    Err(e) => {
                        bad += 1;
                        first_err.get_or_insert(e);
                    }
                }
            }
            let detail = match first_err {
                Some(e) => format!("{bad}/{count} mismatches; first error: {e}"),
                None => format!("{}/{count} exact matches", count - bad),
            };
            (bad == 0, detail)
        };
        let mut results = Vec::new();
        results.push(("eval_borel_star_rep = borel_star(standard)", tally(&mut |s| {
            let (f, g) = (rand(s, &v1), rand(s, &v1));
            Ok(eval_borel_star_rep(&f, &g)? == borel_star(StarKind::Standard, &f, &g)?)
        })));
        results.push(("eval_moyal_rep = borel_star(moyal)", tally(&mut |s| {
            let (f, g) = (rand(s, &v1), rand(s, &v1));
            Ok(eval_moyal_rep(&f, &g)? == borel_star(StarKind::Moyal, &f, &g)?)
        })));
        results.push(("eval_That_rep = borel_T (both directions)", tally(&mut |s| {
            let f = rand(s, &v1);
            let inverse = s.coin();
            Ok(eval_That_rep(&f, inverse)? == borel_t(&f, inverse)?)
        })));
        results.push(("eval_formulahigh(r = 1) = borel_star", tally(&mut |s| {
            let (f, g) = (rand(s, &v1), rand(s, &v1));
            Ok(eval_formulahigh(&f, &g, 1)? == borel_star(StarKind::Standard, &f, &g)?)
        })));
        results.push(("eval_formulahigh(r = 2) = borel_star", tally(&mut |s| {
            let (f, g) = (rand(s, &v2), rand(s, &v2));
            Ok(eval_formulahigh(&f, &g, 2)? == borel_star(StarKind::Standard, &f, &g)?)
        })));
        let vx = VariableSet::new(&[borel::XI]).expect("one name");
        results.push(("hadamard_contour = hadamard", tally(&mut |s| {
            let w = Truncation::new(window.deg_t, 0);
            let (f, g) = (s.series(&vx, w, 5), s.series(&vx, w, 5));
            Ok(hadamard_contour(&f, &g)? == hadamard(&f, &g)?)
        })));
        for (name, (ok, detail)) in results {
            r.record(name, Ok((ok, detail)));
        }
    });
    budget(&mut r, "runtime", took, Duration::from_secs(60));
    r
}

fn regression() -> Result<(bool, String)> {
    let v = VariableSet::phase_space(borel::XI, 1);
    let w = Truncation::new(6, 6);
    let f = BorelSeries::parse("xi*p", &v, w)?;
    let g = BorelSeries::parse("xi*q", &v, w)?;
    let got = eval_borel_star_rep(&f, &g)?;
    let c3 = got.series().coeff(&[3, 0, 0]);
    Ok((c3 == ratio(1, 6), format!("got {got}; xi^3 coefficient {}", rational::fmt_rational(&c3))))
}

/// Associativity of both products and the intertwining property of `T` on
/// seeded polynomial inputs, one and two degrees of freedom.
pub fn associativity(seed: u64, count: usize) -> Report {
    let mut r = Report::new(format!("associativity and equivalence (seed {seed}, {count} cases per row)"));
    let mut s = Sampler::new(seed);
    // Wide x/y window so nothing is lost between the two multiplications.
    let w = Truncation::new(4, 40);
    let input = Truncation::new(2, 3);
    for n in [1usize, 2] {
        let vars = VariableSet::phase_space("t", n);
        let gen = |s: &mut Sampler| FormalSeries::new(s.series(&vars, input, 4).into_poly(), w);
        for kind in [StarKind::Standard, StarKind::Moyal] {
            let outcome = (0..count).try_fold(0usize, |bad, _| -> Result<usize> {
                let (f, g, h) = (gen(&mut s), gen(&mut s), gen(&mut s));
                let left = star::star(kind, &star::star(kind, &f, &g)?, &h)?;
                let right = star::star(kind, &f, &star::star(kind, &g, &h)?)?;
                Ok(bad + usize::from(left != right))
            });
            r.record(format!("(f*g)*h = f*(g*h), {kind}, N = {n}"), outcome.map(|bad| (bad == 0, format!("{}/{count} triples", count - bad))));
        }
        let outcome = (0..count).try_fold(0usize, |bad, _| -> Result<usize> {
            let (f, g) = (gen(&mut s), gen(&mut s));
            let left = star::transition_t(&star::standard_star(&f, &g)?, false)?;
            let right = star::moyal_star(&star::transition_t(&f, false)?, &star::transition_t(&g, false)?)?;
            Ok(bad + usize::from(left != right))
        });
        r.record(format!("T(f *S g) = Tf *M Tg, N = {n}"), outcome.map(|bad| (bad == 0, format!("{}/{count} pairs", count - bad))));
    }
    r
}

fn grid_value(s: &mut Sampler) -> Rational {
    const GRID: [(i64, i64); 7] = [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (1, 2), (-1, 2)];
    let (n, d) = GRID[s.index(GRID.len())];
    ratio(n, d)
}

/// Simple decomposition, gcd and resultant checks.
pub fn poly_calculus(seed: u64, samples: usize) -> Report {
    let mut r = Report::new(format!("polynomial calculus (seed {seed}, {samples} sample points per case)"));
    let vars = VariableSet::new(&["z1", "z2", "z3"]).expect("distinct names");
    let fixtures = [
        ("(z1-z2)^2 (z1+1)", "z1^3 + z1^2 - 2*z1^2*z2 - 2*z1*z2 + z1*z2^2 + z2^2"),
        ("(z1-z2)(z1+z2)", "z1^2 - z2^2"),
        ("z2^2 (degree 0)", "z2^2"),
        ("2 z2 z1 + 4 z2^2", "2*z2*z1 + 4*z2^2"),
        ("z3 (z1^2-z2)^2", "z3*z1^4 - 2*z3*z2*z1^2 + z3*z2^2"),
        ("(z1-z3)^3 (z1+z2)", "z1^4 + z1^3*z2 - 3*z1^3*z3 - 3*z1^2*z2*z3 + 3*z1^2*z3^2 + 3*z1*z2*z3^2 - z1*z3^3 - z2*z3^3"),
    ];
    let mut s = Sampler::new(seed);
    for (label, text) in fixtures {
        r.record(format!("simple_decompose {label}"), decompose_case(&vars, text, &mut s, samples));
    }
    r.record(
        "Res_z1(z1^2 - z2, 2 z1) = -4 z2",
        (|| {
            let p = UniOverPoly::new(&parse_poly("z1^2 - z2", &vars)?, "z1")?;
            let q = UniOverPoly::new(&parse_poly("2*z1", &vars)?, "z1")?;
            let res = poly_algebra::sylvester_resultant(&p, &q)?;
            Ok((res == parse_poly("-4*z2", &vars)?, format!("got {res}")))
        })(),
    );
    r.record(
        "Res_z1(z1 - z2, z1 + z2) = -2 z2",
        (|| {
            let p = UniOverPoly::new(&parse_poly("z1 - z2", &vars)?, "z1")?;
            let q = UniOverPoly::new(&parse_poly("z1 + z2", &vars)?, "z1")?;
            let res = poly_algebra::sylvester_resultant(&p, &q)?;
            Ok((res == parse_poly("-2*z2", &vars)?, format!("got {res}")))
        })(),
    );
    r.record(
        "content_primitive(2 z2 z1 + 4 z2^2)",
        (|| {
            let p = UniOverPoly::new(&parse_poly("2*z2*z1 + 4*z2^2", &vars)?, "z1")?;
            let (c, prim) = poly_algebra::content_primitive(&p)?;
            let ok = c == parse_poly("2*z2", &vars)? && prim.to_poly() == parse_poly("z1 + 2*z2", &vars)?;
            Ok((ok, format!("content {c}, primitive {}", prim.to_poly())))
        })(),
    );
    r
}

fn decompose_case(vars: &VariableSet, text: &str, s: &mut Sampler, samples: usize) -> Result<(bool, String)> {
    let p = UniOverPoly::new(&parse_poly(text, vars)?, "z1")?;
    let d = poly_algebra::simple_decompose(&p)?;
    let square_free = d.degree() == Some(0)
        || poly_algebra::gcd_over_fraction_field(&d, &d.derivative())?.degree() == Some(0);
    let (mut agree, mut zeros) = (0usize, 0usize);
    for _ in 0..samples {
        let pt: Vec<Rational> = (0..vars.len()).map(|_| grid_value(s)).collect();
        let (a, b) = (p.to_poly().eval(&pt).is_zero(), d.to_poly().eval(&pt).is_zero());
        agree += usize::from(a == b);
        zeros += usize::from(a);
    }
    let ok = square_free && agree == samples && zeros > 0;
    Ok((ok, format!("S = {}; square-free: {square_free}; zero sets agree at {agree}/{samples} points ({zeros} on the zero set)", d.to_poly())))
}

/// Convolution, Hadamard and five-variable loci of the worked examples.
pub fn loci(seed: u64) -> Report {
    let mut r = Report::new("singular loci of the worked examples");
    let pv = VariableSet::new(&["z1", "z2"]).expect("names");
    let ov = VariableSet::new(&["z", "z2"]).expect("names");
    let mut s = Sampler::new(seed);
    let grid: Vec<(Rational, Rational)> = (0..200).map(|_| (grid_value(&mut s), grid_value(&mut s))).collect();
    let conv = |p: &str, pbar: &str| locus::conv_locus(&parse_poly(p, &pv)?, "z1", &parse_poly(pbar, &ov)?);
    let agree = |v: &Variety, want: &MultiPoly| -> Result<(bool, String)> {
        let mut hits = 0usize;
        for (z, z2) in &grid {
            let pt = v.point(&[("z", z.clone()), ("z2", z2.clone())])?;
            if v.contains(&pt) != want.eval(&pt).is_zero() {
                return Ok((false, format!("disagreement at z = {z}, z2 = {z2}")));
            }
            hits += usize::from(v.contains(&pt));
        }
        Ok((hits > 0, format!("membership matches at {} grid points ({hits} inside)", grid.len())))
    };
    r.record(
        "linear branch: {z2 (z2 z + 1) = 0}",
        conv("z2*z1 + 1", "z").and_then(|v| agree(&v, &parse_poly("z2^2*z + z2", &ov)?)),
    );
    r.record(
        "quadratic branch: {z2 (z+1)(z+z2+1)(z2+1) = 0}",
        conv("z1^2 + z1*z2 + 2*z1 + z2 + 1", "z").and_then(|v| {
            let want = ["z2", "z + 1", "z + z2 + 1", "z2 + 1"]
                .iter()
                .try_fold(MultiPoly::one(&ov), |acc, f| Ok::<_, Error>(&acc * &parse_poly(f, &ov)?))?;
            agree(&v, &want)
        }),
    );
    r.record(
        "root branch restricts to z2 in {0, 1}",
        (|| {
            let p = parse_poly("-z1^2 + 2*z1*z2 - z1 - z2^2 + z2", &pv)?;
            let pbar = parse_poly("z2", &ov)?;
            let case = locus::conv_case(&p, "z1", &pbar)?;
            let v = locus::conv_locus_drop_variable(&locus::conv_locus(&p, "z1", &pbar)?, "z")?;
            let ok = case == locus::ConvCase::RootBranch
                && (-3..=3).all(|k| v.contains(&[int(k)]) == (k == 0 || k == 1))
                && !v.contains(&[ratio(1, 2)]);
            Ok((ok, format!("case {case:?}; locus {}", v.component_product(0))))
        })(),
    );
    r.record(
        "hadamard_locus_1d({1}, {1}) = {0, 1}",
        {
            let v = locus::hadamard_locus_1d(&[int(1)], &[int(1)]);
            let ok = (-4..=4).all(|k| v.contains(&[ratio(k, 2)]) == (k == 0 || k == 2));
            Ok((ok, format!("leaf {}", v.component_product(0))))
        },
    );
    r.record("Hadamard coincidence points lie in the 5-variable locus", hadamard_coincidences());
    r
}

fn hadamard_coincidences() -> Result<(bool, String)> {
    let hv = VariableSet::new(&["xi", "q", "p"])?;
    let a = parse_poly("3 - xi - q - p", &hv)?;
    let b = parse_poly("4 - xi - 2*q - p", &hv)?;
    let v = locus::hadamard_locus_5var(&a, &(&a * &b))?;
    let (q, p, xi2, xi3) = (ratio(1, 3), ratio(1, 5), ratio(1, 7), ratio(2, 9));
    let av = int(3) - &xi2 - &q - &p;
    let bv = int(4) - &xi2 - int(2) * &q - &p;
    let half = ratio(1, 2);
    let points = [
        ("A = 0", [half.clone(), xi2.clone(), xi3.clone(), q.clone(), int(3) - &xi2 - &q]),
        ("B = 0", [half.clone(), xi2.clone(), xi3.clone(), q.clone(), int(4) - &xi2 - int(2) * &q]),
        ("w1 = W1", [int(3) - &q - &p - &xi3 / &av, xi2.clone(), xi3.clone(), q.clone(), p.clone()]),
        ("w1 = W2", [int(3) - &q - &p - int(2) * &xi3 / &bv, xi2.clone(), xi3.clone(), q.clone(), p.clone()]),
        ("W1 = W2", [half.clone(), int(2) - &p, xi3.clone(), q.clone(), p.clone()]),
        ("xi3 = 0", [half.clone(), xi2.clone(), int(0), q.clone(), p.clone()]),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (label, pt) in &points {
        let exact = v.contains(pt);
        let approx = v.contains_approx(&pt.iter().map(rational::to_f64).collect::<Vec<_>>(), 1e-9);
        ok &= exact && approx;
        notes.push(format!("{label}: exact {exact}, numeric {approx}"));
    }
    let generic = [half, xi2, xi3, q, p];
    let outside = !v.contains(&generic);
    ok &= outside;
    notes.push(format!("generic point outside: {outside}"));
    Ok((ok, notes.join("; ")))
}

/// Relative radius tolerance for the geometric (Euler) family.
pub const GEOMETRIC_TOL: f64 = 1e-6;
/// Relative radius tolerance for the polylogarithmic (log⋆log) family.
pub const POLYLOG_TOL: f64 = 0.1;
/// Coefficient order used for the radius estimates.
pub const RADIUS_ORDER: u32 = 40;

/// Radius estimates of the Euler and log⋆log Borel images against the
/// distance to their locus, plus a negative control and the Hadamard
/// radius direction.
pub fn radius(seed: u64, points: usize) -> Report {
    radius_with(seed, points, RadiusMethod::Ratio, GEOMETRIC_TOL, POLYLOG_TOL)
}

/// [`radius`] with the estimator and tolerances overridden.
pub fn radius_with(seed: u64, points: usize, method: RadiusMethod, geometric_tol: f64, polylog_tol: f64) -> Report {
    let mut r = Report::new(format!("radius versus locus (seed {seed}, {points} points)"));
    let (_, took) = timed(|| {
        let mut s = Sampler::new(seed);
        let pts: Vec<Vec<(String, Rational)>> = (0..points)
            .map(|_| vec![("q".to_string(), s.rational_in(-0.5, 0.5, 9)), ("p".to_string(), s.rational_in(-0.5, 0.5, 9))])
            .collect();
        let exact = families::family_locus(&Rational::zero());
        let shifted = families::family_locus(&Rational::one());
        let n = RADIUS_ORDER;
        let rows = [
            (format!("euler, {method} method, order {n}, tol {geometric_tol:e}"), Family::Euler, &exact, geometric_tol, Verdict::Pass),
            (format!("log*log, {method} method, order {n}, tol {polylog_tol}"), Family::LogLog, &exact, polylog_tol, Verdict::Pass),
            ("negative control: euler against locus shifted by 1".to_string(), Family::Euler, &shifted, geometric_tol, Verdict::Fail),
        ];
        for (name, family, v, tol, expect) in rows {
            let reps = numeric::check_radius_vs_locus(families::at_point(family, n), v, &pts, method, tol);
            r.record(
                name,
                reps.map(|reps| {
                    let ok = reps.iter().all(|x| x.verdict == expect);
                    let worst = reps.iter().map(|x| x.relative_gap).fold(0.0, f64::max);
                    let lines: Vec<String> = reps.iter().map(ToString::to_string).collect();
                    (ok, format!("all {expect}: {ok}; worst gap {}\n    {}", rational::fmt_f64(worst), lines.join("\n    ")))
                }),
            );
        }
        r.record("hadamard radius direction R(f.g) >= R(f) R(g)", hadamard_direction(&mut s, 20));
    });
    budget(&mut r, "runtime", took, Duration::from_secs(30));
    r
}

/// Random convergent pairs with two geometric components each; the
/// dominant component sets the radius.
fn hadamard_direction(s: &mut Sampler, pairs: usize) -> Result<(bool, String)> {
    let series = |s: &mut Sampler| -> Vec<Rational> {
        let r0 = s.rational_in(0.5, 2.0, 7);
        let c0 = s.nonzero_rational(5, 3);
        let c1 = s.nonzero_rational(5, 3);
        let r1 = &r0 * int(4);
        (0..40)
            .map(|k| &c0 / rational::pow(&r0, k) + &c1 / rational::pow(&r1, k))
            .collect()
    };
    let mut worst = f64::INFINITY;
    for _ in 0..pairs {
        let (f, g) = (series(s), series(s));
        let (rf, rg, rfg, ok) = numeric::hadamard_radius_direction(&f, &g, RadiusMethod::Ratio, 1e-6)?;
        worst = worst.min(rfg / (rf * rg));
        if !ok {
            return Ok((false, format!("R(f.g) = {rfg} < R(f) R(g) = {}", rf * rg)));
        }
    }
    Ok((true, format!("{pairs} pairs; min R(f.g)/(R(f)R(g)) = {}", rational::fmt_f64(worst))))
}

/// Trapezoid Hadamard product against the exact one.
pub fn quadrature(seed: u64, count: usize) -> Report {
    let mut r = Report::new(format!("trapezoid Hadamard cross-check (seed {seed}, {count} pairs)"));
    let mut s = Sampler::new(seed);
    let exact = |a: &[Rational], b: &[Rational]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| rational::to_f64(&(x * y))).collect() };
    let max_err = |q: &[f64], e: &[f64]| q.iter().zip(e).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let pairs: Vec<(Vec<Rational>, Vec<Rational>)> = (0..count).map(|_| (s.dense(6), s.dense(6))).collect();
    r.record(
        "K = 32, degree 6: max error < 1e-12",
        pairs.iter().try_fold(0.0f64, |worst, (a, b)| Ok(worst.max(max_err(&numeric::quadrature_hadamard(a, b, 32)?, &exact(a, b)))))
            .map(|worst| (worst < 1e-12, format!("max error {worst:e}"))),
    );
    r.record(
        "K = 4, degree 6: aliasing detected",
        Ok(match numeric::quadrature_hadamard(&pairs[0].0, &pairs[0].1, 4) {
            Err(e @ Error::Aliasing { .. }) => (true, e.to_string()),
            other => (false, format!("expected an aliasing error, got {other:?}")),
        }),
    );
    r.record(
        "agreement stays at rounding level for every K > 12",
        Ok({
            let worst = (13..=64)
                .flat_map(|k| pairs.iter().map(move |(a, b)| (k, a, b)))
                .map(|(k, a, b)| max_err(&numeric::trapezoid_hadamard(a, b, k), &exact(a, b)))
                .fold(0.0, f64::max);
            (worst < 1e-12, format!("max error over K = 13..64: {worst:e}"))
        }),
    );
    r.record(
        "log(1-xi) . log(1-xi) by quadrature = 1/k^2",
        (|| {
            let l: Vec<Rational> = (0..=20).map(|k| if k == 0 { Rational::zero() } else { -ratio(1, k) }).collect();
            let q = numeric::quadrature_hadamard(&l, &l, 64)?;
            let worst = (1..=20).map(|k| (q[k] - 1.0 / (k * k) as f64).abs()).fold(0.0, f64::max);
            Ok((worst < 1e-12, format!("max error {worst:e} through k = 20")))
        })(),
    );
    r
}

/// `starborel verify examples`: every worked example.
pub fn examples(seed: u64) -> Report {
    let mut r = Report::new("worked examples");
    for part in [star_examples(), divergent_series(), poly_calculus(seed, 200), loci(seed)] {
        r.extend(part);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_rendering() {
        let mut r = Report::new("demo");
        r.record("ok", Ok((true, "fine".into())));
        r.record("bad", Err(Error::AllZeroTail));
        assert!(!r.passed());
        assert_eq!(r.to_string(), "== demo ==\nPASS ok: fine\nFAIL bad: error: coefficient tail is identically zero\n1/2 checks passed");
    }

    #[test]
    fn small_suites_pass() {
        for rep in [star_examples(), divergent_series(), poly_calculus(1, 50), loci(1), quadrature(1, 5)] {
            assert!(rep.passed(), "{rep}");
        }
    }
}
