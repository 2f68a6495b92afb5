//! Polynomials viewed as univariate in one variable over the remaining
//! ones: content and primitive part, gcd over the fraction field, simple
//! (square-free) decomposition, Sylvester resultants and discriminants, and
//! the shift and reciprocal transforms.
//!
//! The multivariate gcd is recursive: contents in a main variable, then a
//! subresultant remainder sequence on the primitive parts.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::Rational;
use crate::vars::VariableSet;

/// `P = Σ b_i(z_2..z_n) z_1^i` with the coefficients kept as polynomials
/// over the full variable set (free of `z_1`).
#[derive(Clone, Debug, PartialEq)]
pub struct UniOverPoly {
    var: usize,
    coeffs: Vec<MultiPoly>,
    vars: VariableSet,
}

impl UniOverPoly {
    pub fn new(p: &MultiPoly, var: &str) -> Result<Self> {
        let i = p.vars().index(var)?;
        Ok(Self::at(p, i))
    }

    pub fn at(p: &MultiPoly, var: usize) -> Self {
        Self { var, coeffs: p.coefficients_in(var), vars: p.vars().clone() }
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn var_name(&self) -> &str {
        self.vars.name(self.var)
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `b_M`; zero for the zero polynomial.
    pub fn leading(&self) -> MultiPoly {
        self.coeffs.last().cloned().unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_coefficients_in(&self.vars, self.var, &self.coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::at(&self.to_poly().derivative(self.var, 1), self.var)
    }
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    p.normalized()
}

/// The variable of smallest positive degree across both polynomials; low
/// main degree keeps the remainder sequence short.
fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.vars().len())
        .filter(|&i| a.uses_var(i) || b.uses_var(i))
        .min_by_key(|&i| a.degree_in(i).unwrap_or(0).max(b.degree_in(i).unwrap_or(0)))
}

/// Normalized gcd of a list of polynomials (zero entries ignored).
fn gcd_many<'a>(items: impl IntoIterator<Item = &'a MultiPoly>, vars: &VariableSet) -> MultiPoly {
    let mut g = MultiPoly::zero(vars);
    for c in items {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { normalize(c) } else { gcd(&g, c) };
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Content in `var`: the gcd of the coefficients, normalized.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    gcd_many(p.coefficients_in(var).iter(), p.vars())
}

fn div_exact(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.exact_div(b).expect("gcd divides its arguments")
}

/// `lc(b)^(deg a − deg b + 1) · a mod b` in `var`, exact.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var).unwrap_or(0);
    let lb = b.coefficients_in(var).pop().expect("nonzero divisor");
    let mut r = a.clone();
    let mut steps = (a.degree_in(var).unwrap_or(0) + 1).saturating_sub(db);
    while let Some(dr) = r.degree_in(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.coefficients_in(var).pop().expect("nonzero remainder");
        let shift = Monomial::one(a.vars().len()).with(var, dr - db);
        r = &(&r * &lb) - &(&lr * &b.mul_monomial(&shift, &Rational::one()));
        steps = steps.saturating_sub(1);
    }
    &r * &lb.pow(steps)
}

/// Multivariate gcd over the rationals, normalized to coprime integer
/// coefficients with a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.vars(), b.vars(), "gcd over different variable sets");
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let Some(x) = main_var(a, b) else {
        return MultiPoly::one(a.vars());
    };
    let (ca, cb) = (content_in(a, x), content_in(b, x));
    let c = gcd(&ca, &cb);
    let (mut u, mut v) = (div_exact(a, &ca), div_exact(b, &cb));
    if u.degree_in(x) < v.degree_in(x) {
        std::mem::swap(&mut u, &mut v);
    }
    // Subresultant sequence: the divisions by `g h^δ` are exact and keep
    // coefficient growth polynomial.
    let (mut g, mut h) = (MultiPoly::one(a.vars()), MultiPoly::one(a.vars()));
    while !v.is_zero() {
        let r = pseudo_remainder(&u, &v, x);
        if r.is_zero() {
            u = v;
            break;
        }
        if !r.uses_var(x) {
            // Coprime primitive parts.
            u = MultiPoly::one(a.vars());
            break;
        }
        let delta = u.degree_in(x).unwrap_or(0) - v.degree_in(x).unwrap_or(0);
        let next = div_exact(&r, &(&g * &h.pow(delta)));
        u = std::mem::replace(&mut v, next);
        g = u.coefficients_in(x).pop().expect("nonzero");
        h = if delta == 0 { h } else { div_exact(&g.pow(delta), &h.pow(delta - 1)) };
    }
    let u = if u.uses_var(x) { div_exact(&u, &content_in(&u, x)) } else { u };
    // `u` is primitive in x; if it does not involve x it is a unit here.
    let g = if u.uses_var(x) { &c * &u } else { c };
    normalize(&g)
}

/// `P = content · primitive`, where `content` is the gcd of the coefficients
/// (including the rational content) and `primitive` has coprime
/// coefficients with a positive leading rational.
pub fn content_primitive(p: &UniOverPoly) -> Result<(MultiPoly, UniOverPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = gcd_many(p.coeffs.iter(), &p.vars);
    let rest = div_exact(&p.to_poly(), &g);
    let (scale, prim) = rest.rational_content();
    Ok((g.scale(&scale), UniOverPoly::at(&prim, p.var)))
}

/// A gcd in `F[z_1]`, `F` the fraction field of the other variables,
/// returned denominator-free and primitive.
pub fn gcd_over_fraction_field(p: &UniOverPoly, q: &UniOverPoly) -> Result<UniOverPoly> {
    check_same(p, q)?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = gcd(&p.to_poly(), &q.to_poly());
    let (_, prim) = content_primitive(&UniOverPoly::at(&g, p.var))?;
    Ok(prim)
}

fn check_same(p: &UniOverPoly, q: &UniOverPoly) -> Result<()> {
    if p.vars != q.vars {
        return Err(Error::VariableMismatch { left: p.vars.to_string(), right: q.vars.to_string() });
    }
    if p.var != q.var {
        return Err(Error::Invalid(format!(
            "distinguished variables differ: `{}` vs `{}`",
            p.var_name(),
            q.var_name()
        )));
    }
    Ok(())
}

/// A `z_1`-simple polynomial with the same zero set as `P`:
/// `content · pp / gcd(pp, ∂pp)`. The content (which carries the `b_M`
/// factors free of `z_1`) is kept, so `{b_M = 0}`-type sheets survive.
pub fn simple_decompose(p: &UniOverPoly) -> Result<UniOverPoly> {
    let (content, prim) = content_primitive(p)?;
    if prim.degree() == Some(0) {
        return Ok(UniOverPoly::at(&(&content * &prim.to_poly()), p.var));
    }
    let pp = prim.to_poly();
    let g = gcd(&pp, &pp.derivative(p.var, 1));
    let radical = div_exact(&pp, &g);
    let (_, radical) = radical.rational_content();
    Ok(UniOverPoly::at(&(&content * &radical), p.var))
}

/// True when `gcd(P, ∂P)` has degree 0 in the distinguished variable.
pub fn is_simple(p: &UniOverPoly) -> bool {
    match p.degree() {
        None => false,
        Some(0) => true,
        Some(_) => {
            let pp = p.to_poly();
            !gcd(&pp, &pp.derivative(p.var, 1)).uses_var(p.var)
        }
    }
}

/// Determinant of the Sylvester matrix of `P` (degree `m`) and `Q`
/// (degree `n`): `n` shifted rows of `P`'s coefficients followed by `m`
/// shifted rows of `Q`'s, coefficients in ascending order of degree.
pub fn sylvester_resultant(p: &UniOverPoly, q: &UniOverPoly) -> Result<MultiPoly> {
    check_same(p, q)?;
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if m == 0 && n == 0 {
        return Err(Error::DegenerateDegree("both polynomials have degree 0".into()));
    }
    let size = m + n;
    let zero = MultiPoly::zero(&p.vars);
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in p.coeffs.iter().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in q.coeffs.iter().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(determinant(rows, &p.vars))
}

/// Fraction-free Gaussian elimination (Bareiss) over polynomials.
pub fn determinant(mut a: Vec<Vec<MultiPoly>>, vars: &VariableSet) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(vars);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = div_exact(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign { -&det } else { det }
}

/// `Res_{z_1}(P, ∂_{z_1} P)`; vanishes where `P` has a repeated root or its
/// leading coefficient drops.
pub fn discriminant_locus(p: &UniOverPoly) -> Result<MultiPoly> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::DegenerateDegree(format!("degree 0 in `{}`", p.var_name()))),
        Some(_) => sylvester_resultant(p, &p.derivative()),
    }
}

/// `P(base + offset, …)`: the variable `var` is renamed to `base` (which may
/// equal `var`) and `offset` is appended as a new variable.
pub fn shift_transform(p: &MultiPoly, var: &str, base: &str, offset: &str) -> Result<MultiPoly> {
    if offset == base {
        return Err(Error::NameCollision(offset.to_string()));
    }
    let renamed = p.rename(var, base)?;
    if renamed.vars().contains(offset) {
        return Err(Error::NameCollision(offset.to_string()));
    }
    let vars = renamed.vars().extend(&[offset])?;
    let lifted = renamed.embed(&vars)?;
    let b = vars.index(base)?;
    let shifted = &MultiPoly::var_at(&vars, b) + &MultiPoly::var_at(&vars, vars.len() - 1);
    Ok(lifted.substitute(b, &shifted))
}

/// `z^M P(ξ/z, …)` with `M = deg_var P`: `var` is renamed to `xi` and `z` is
/// appended.
pub fn reciprocal_transform(p: &MultiPoly, var: &str, xi: &str, z: &str) -> Result<MultiPoly> {
    if xi == z {
        return Err(Error::NameCollision(z.to_string()));
    }
    let i = p.vars().index(var)?;
    let m = p.degree_in(i).unwrap_or(0);
    let renamed = p.rename(var, xi)?;
    if renamed.vars().contains(z) {
        return Err(Error::NameCollision(z.to_string()));
    }
    let vars = renamed.vars().extend(&[z])?;
    let zi = vars.len() - 1;
    let mut out = MultiPoly::zero(&vars);
    for (mono, c) in renamed.embed(&vars)?.terms() {
        let e = mono.get(i);
        out.add_term(mono.with(zi, m - e), c.clone());
    }
    Ok(out)
}

/// Leading coefficient of `p` in `var` as a polynomial; zero for zero.
pub fn leading_coefficient(p: &MultiPoly, var: usize) -> MultiPoly {
    p.coefficients_in(var).pop().unwrap_or_else(|| MultiPoly::zero(p.vars()))
}

/// `true` for a nonzero rational constant.
pub fn is_nonzero_constant(p: &MultiPoly) -> bool {
    p.is_constant() && !p.constant_term().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use crate::rational::ratio;

    fn zv() -> VariableSet {
        VariableSet::new(&["z1", "z2"]).unwrap()
    }

    fn p(text: &str) -> MultiPoly {
        parse_poly(text, &zv()).unwrap()
    }

    fn u(text: &str) -> UniOverPoly {
        UniOverPoly::new(&p(text), "z1").unwrap()
    }

    #[test]
    fn content_primitive_examples() {
        let (c, prim) = content_primitive(&u("2*z2*z1 + 4*z2^2")).unwrap();
        assert_eq!(c, p("2*z2"));
        assert_eq!(prim.to_poly(), p("z1 + 2*z2"));
        let (c, prim2) = content_primitive(&prim).unwrap();
        assert!(c.is_constant() && c.constant_term().is_one());
        assert_eq!(prim2, prim);
        assert!(content_primitive(&u("z1 - z1")).is_err());
    }

    #[test]
    fn multivariate_gcd() {
        let a = p("z1^2 - z2^2");
        let b = p("z1^2 + 2*z1*z2 + z2^2");
        assert_eq!(gcd(&a, &b), p("z1 + z2"));
        assert_eq!(gcd(&p("6*z2^2"), &p("4*z2*z1")), p("z2"));
        assert!(gcd(&p("z1 - z2"), &p("z1 + z2")).is_constant());
    }

    #[test]
    fn fraction_field_gcd_examples() {
        let pp = &(&p("z1 - z2") * &p("z1 - z2")) * &p("z1 + 1");
        let dp = pp.derivative(0, 1);
        let g = gcd_over_fraction_field(&UniOverPoly::at(&pp, 0), &UniOverPoly::at(&dp, 0)).unwrap();
        assert_eq!(g.to_poly(), p("z1 - z2"));
        let g0 = gcd_over_fraction_field(&u("2*z2*z1 + 4*z2^2"), &u("0")).unwrap();
        assert_eq!(g0.to_poly(), p("z1 + 2*z2"));
        let g1 = gcd_over_fraction_field(&u("z1 - z2"), &u("z1 + z2")).unwrap();
        assert_eq!(g1.degree(), Some(0));
        assert!(gcd_over_fraction_field(&u("0"), &u("0")).is_err());
    }

    #[test]
    fn simple_decompose_examples() {
        let pp = &(&p("z1 - z2") * &p("z1 - z2")) * &p("z1 + 1");
        let s = simple_decompose(&UniOverPoly::at(&pp, 0)).unwrap();
        assert_eq!(s.to_poly(), &p("z1 - z2") * &p("z1 + 1"));
        let already = p("z1^2 - z2^2");
        assert_eq!(simple_decompose(&UniOverPoly::at(&already, 0)).unwrap().to_poly(), already);
        assert_eq!(simple_decompose(&u("z2^2")).unwrap().to_poly(), p("z2^2"));
        assert!(is_simple(&s));
        assert!(!is_simple(&UniOverPoly::at(&pp, 0)));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(sylvester_resultant(&u("z1^2 - z2"), &u("2*z1")).unwrap(), p("-4*z2"));
        assert_eq!(sylvester_resultant(&u("z1 - z2"), &u("z1 + z2")).unwrap(), p("-2*z2"));
        let q = u("z1^2 + z2*z1 - 3");
        assert!(sylvester_resultant(&q, &q).unwrap().is_zero());
        assert_eq!(discriminant_locus(&u("z1^2 - z2")).unwrap(), p("-4*z2"));
        assert!(discriminant_locus(&u("z2 + 1")).is_err());
        assert!(sylvester_resultant(&u("z2"), &u("3")).is_err());
    }

    #[test]
    fn determinant_needs_pivoting() {
        let v = zv();
        let c = |n: i64| MultiPoly::constant(&v, ratio(n, 1));
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(determinant(m, &v), c(-1));
    }

    #[test]
    fn transforms() {
        let base = p("z1^2 - z2");
        let s = shift_transform(&base, "z1", "p", "z").unwrap();
        let sv = VariableSet::new(&["p", "z2", "z"]).unwrap();
        assert_eq!(s, parse_poly("p^2 + 2*p*z + z^2 - z2", &sv).unwrap());
        let r = reciprocal_transform(&base, "z1", "xi", "z").unwrap();
        let rv = VariableSet::new(&["xi", "z2", "z"]).unwrap();
        assert_eq!(r, parse_poly("xi^2 - z2*z^2", &rv).unwrap());
        assert!(matches!(shift_transform(&base, "z1", "p", "z2"), Err(Error::NameCollision(_))));
        assert!(matches!(reciprocal_transform(&base, "z1", "z2", "z"), Err(Error::NameCollision(_))));

        let simple = p("z1^2 - z2^2");
        let sh = shift_transform(&simple, "z1", "p", "z").unwrap();
        for var in ["p", "z"] {
            assert!(!discriminant_locus(&UniOverPoly::new(&sh, var).unwrap()).unwrap().is_zero());
        }
        let rc = reciprocal_transform(&simple, "z1", "xi", "z").unwrap();
        assert!(!discriminant_locus(&UniOverPoly::new(&rc, "z").unwrap()).unwrap().is_zero());
    }
}
