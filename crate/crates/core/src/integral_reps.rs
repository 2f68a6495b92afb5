//! Exact evaluation of the integral representations of the Borel-plane
//! operations. Each `eval_*` builds its integrand as a polynomial in
//! auxiliary variables and then performs every integral symbolically:
//!
//! * a `θ`-average `∫ dθ/2π` over `X = s e^{-iθ}`, `Y = s e^{iθ}` keeps the
//!   balanced monomials `X^a Y^a` and maps them to `ξ_k^a` (`s² = ξ_k`), so no
//!   square root ever appears;
//! * a contour integral is a single Laurent coefficient (see [`LaurentSlice`]);
//! * nested integrals `∫_0^{ξ-ξ_1-…}` are antiderivatives evaluated at a
//!   polynomial upper limit.
//!
//! These paths share nothing with [`crate::borel`] beyond the polynomial
//! type, which makes them usable as oracles for it.

use crate::error::{Error, Result};
use crate::laurent::LaurentSlice;
use crate::poly::MultiPoly;
use crate::rational;
use crate::series::FormalSeries;
use crate::borel::BorelSeries;
use crate::vars::VariableSet;

/// Auxiliary variable names that cannot clash with the caller's.
struct Scratch {
    vars: VariableSet,
}

impl Scratch {
    /// `base` followed by fresh names derived from `extra`.
    fn new(base: &VariableSet, extra: &[String]) -> Result<(Self, Vec<String>)> {
        let mut names: Vec<String> = base.names().to_vec();
        let mut fresh = Vec::with_capacity(extra.len());
        for e in extra {
            let mut n = format!("_{e}");
            while names.contains(&n) {
                n.push('_');
            }
            names.push(n.clone());
            fresh.push(n);
        }
        Ok((Self { vars: VariableSet::new(&names)? }, fresh))
    }

    fn idx(&self, name: &str) -> usize {
        self.vars.index(name).expect("scratch variable exists")
    }

    fn var(&self, name: &str) -> MultiPoly {
        MultiPoly::var_at(&self.vars, self.idx(name))
    }

    /// `f` with its distinguished variable renamed to `as_name`, over the
    /// scratch set.
    fn lift(&self, f: &FormalSeries, as_name: &str) -> Result<MultiPoly> {
        f.poly().rename(f.vars().distinguished(), as_name)?.embed(&self.vars)
    }
}

fn check_pair(f: &BorelSeries, g: &BorelSeries, dof: usize) -> Result<()> {
    if f.vars() != g.vars() {
        return Err(Error::VariableMismatch { left: f.vars().to_string(), right: g.vars().to_string() });
    }
    check_dof(f, dof)
}

fn check_dof(f: &BorelSeries, dof: usize) -> Result<()> {
    if f.vars().dof() != dof {
        return Err(Error::Invalid(format!(
            "representation needs {dof} degree(s) of freedom, got {}",
            f.vars().dof()
        )));
    }
    Ok(())
}

/// Termwise `(1/2π)∫_0^{2π} dθ` with `x = s e^{-iθ}`, `y = s e^{iθ}`:
/// keeps `x^a y^a` and rewrites it as `target^a`.
pub fn theta_average(h: &MultiPoly, x: usize, y: usize, target: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(h.vars());
    for (m, c) in h.terms() {
        let a = m.get(x);
        if a == m.get(y) {
            let m2 = m.with(x, 0).with(y, 0);
            let e = m2.get(target);
            out.add_term(m2.with(target, e + a), c.clone());
        }
    }
    out
}

/// `∫_0^ξ dx_1 ∫_0^{ξ-x_1} dx_2 … ∫_0^{ξ-x_1-…-x_{k-1}} dx_k h`.
fn nested_integrals(h: MultiPoly, s: &Scratch, xi: &str, xs: &[String]) -> MultiPoly {
    let mut h = h;
    for k in (0..xs.len()).rev() {
        let mut upper = s.var(xi);
        for x in &xs[..k] {
            upper = &upper - &s.var(x);
        }
        h = h.integrate_to(s.idx(&xs[k]), &upper);
    }
    h
}

fn finish(h: MultiPoly, s: &Scratch, xi: &str, order: u32, like: &[&BorelSeries]) -> Result<BorelSeries> {
    let d = h.derivative(s.idx(xi), order);
    let base = like[0].vars();
    let trunc = like.iter().fold(like[0].trunc(), |w, f| w.min(f.trunc()));
    Ok(BorelSeries::from_series(FormalSeries::new(d.embed(base)?, trunc)))
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|k| format!("{prefix}{k}")).collect()
}

/// `d³/dξ³ ∫_0^ξ dξ_1 ∫_0^{ξ-ξ_1} dξ_2 ∫_0^{ξ-ξ_1-ξ_2} dξ_3
/// ⟨f̂(ξ_1, q, p + √ξ_3 e^{-iθ}) ĝ(ξ_2, q + √ξ_3 e^{iθ}, p)⟩_θ`, one degree of freedom.
pub fn eval_borel_star_rep(f: &BorelSeries, g: &BorelSeries) -> Result<BorelSeries> {
    check_pair(f, g, 1)?;
    let base = f.vars();
    let xi = base.distinguished().to_string();
    let (s, fresh) = Scratch::new(base, &["xi1".into(), "xi2".into(), "xi3".into(), "X".into(), "Y".into()])?;
    let [x1, x2, x3, bx, by] = <[String; 5]>::try_from(fresh).expect("five names");
    let (q, p) = base.conjugate_pairs()?[0];
    let (q, p) = (base.name(q).to_string(), base.name(p).to_string());

    let ff = s.lift(f.series(), &x1)?.substitute(s.idx(&p), &(&s.var(&p) + &s.var(&bx)));
    let gg = s.lift(g.series(), &x2)?.substitute(s.idx(&q), &(&s.var(&q) + &s.var(&by)));
    let h = theta_average(&(&ff * &gg), s.idx(&bx), s.idx(&by), s.idx(&x3));
    let h = nested_integrals(h, &s, &xi, &[x1, x2, x3]);
    finish(h, &s, &xi, 3, &[f, g])
}

/// `d⁴/dξ⁴ ∫∫∫∫ (1/2πi)² ∮∮ f̂(ξ_1, q+z_1, p+z_2) ĝ(ξ_2, q + ξ_4/(2z_2), p − ξ_3/(2z_1)) dz_1/z_1 dz_2/z_2`.
pub fn eval_moyal_rep(f: &BorelSeries, g: &BorelSeries) -> Result<BorelSeries> {
    check_pair(f, g, 1)?;
    let base = f.vars();
    let xi = base.distinguished().to_string();
    let extra: Vec<String> = ["xi1", "xi2", "xi3", "xi4", "z1", "u1", "z2", "u2"].iter().map(|s| s.to_string()).collect();
    let (s, fresh) = Scratch::new(base, &extra)?;
    let [x1, x2, x3, x4, z1, u1, z2, u2] = <[String; 8]>::try_from(fresh).expect("eight names");
    let (q, p) = base.conjugate_pairs()?[0];
    let (q, p) = (base.name(q).to_string(), base.name(p).to_string());
    let half = rational::ratio(1, 2);

    let ff = s.lift(f.series(), &x1)?;
    let ff = ff.substitute(s.idx(&q), &(&s.var(&q) + &s.var(&z1)));
    let ff = ff.substitute(s.idx(&p), &(&s.var(&p) + &s.var(&z2)));
    let gg = s.lift(g.series(), &x2)?;
    let gg = gg.substitute(s.idx(&q), &(&s.var(&q) + &(&s.var(&x4) * &s.var(&u2)).scale(&half)));
    let gg = gg.substitute(s.idx(&p), &(&s.var(&p) - &(&s.var(&x3) * &s.var(&u1)).scale(&half)));
    let h = &ff * &gg;

    // Two dz/z contours: the z^0 coefficient in each pair.
    let inner = LaurentSlice::collapse(&h, s.idx(&z1), s.idx(&u1))?.mean();
    let (z2i, u2i) = (inner.vars().index(&z2)?, inner.vars().index(&u2)?);
    let h = LaurentSlice::collapse(&inner, z2i, u2i)?.mean().embed(&s.vars)?;

    let h = nested_integrals(h, &s, &xi, &[x1, x2, x3, x4]);
    finish(h, &s, &xi, 4, &[f, g])
}

/// `d/dξ ∫_0^ξ dξ_1 (1/2πi)∮ f̂(ξ−ξ_1, q+z, p ∓ ξ_1/(2z)) dz/z`; the upper
/// sign gives `T̂`, the lower `T̂^{-1}`.
#[allow(non_snake_case)]
pub fn eval_That_rep(f: &BorelSeries, inverse: bool) -> Result<BorelSeries> {
    check_dof(f, 1)?;
    let base = f.vars();
    let xi = base.distinguished().to_string();
    let extra: Vec<String> = ["xi0", "xi1", "z", "u"].iter().map(|s| s.to_string()).collect();
    let (s, fresh) = Scratch::new(base, &extra)?;
    let [x0, x1, z, u] = <[String; 4]>::try_from(fresh).expect("four names");
    let (q, p) = base.conjugate_pairs()?[0];
    let (q, p) = (base.name(q).to_string(), base.name(p).to_string());
    let w = rational::ratio(if inverse { 1 } else { -1 }, 2);

    let ff = s.lift(f.series(), &x0)?;
    let ff = ff.substitute(s.idx(&x0), &(&s.var(&xi) - &s.var(&x1)));
    let ff = ff.substitute(s.idx(&q), &(&s.var(&q) + &s.var(&z)));
    let ff = ff.substitute(s.idx(&p), &(&s.var(&p) + &(&s.var(&x1) * &s.var(&u)).scale(&w)));
    let h = LaurentSlice::collapse(&ff, s.idx(&z), s.idx(&u))?.mean().embed(&s.vars)?;
    let h = nested_integrals(h, &s, &xi, &[x1]);
    finish(h, &s, &xi, 1, &[f])
}

/// The `r`-degree-of-freedom representation of `*_S`:
/// `d^{r+2}/dξ^{r+2} ∫…∫ ⟨f̂(ξ_{r+1}, q, p + √ξ e^{-iθ}) ĝ(ξ_{r+2}, q + √ξ e^{iθ}, p)⟩_{θ_1…θ_r}`
/// with the `j`-th angle paired with `ξ_j`.
pub fn eval_formulahigh(f: &BorelSeries, g: &BorelSeries, r: usize) -> Result<BorelSeries> {
    if r == 0 {
        return Err(Error::Invalid("formula needs r >= 1".into()));
    }
    check_pair(f, g, r)?;
    let base = f.vars();
    let xi = base.distinguished().to_string();
    let mut extra = names("xi", 1..=r + 2);
    extra.extend(names("X", 1..=r));
    extra.extend(names("Y", 1..=r));
    let (s, fresh) = Scratch::new(base, &extra)?;
    let xs = &fresh[..r + 2];
    let bx = &fresh[r + 2..2 * r + 2];
    let by = &fresh[2 * r + 2..];
    let pairs = base.conjugate_pairs()?;

    let mut ff = s.lift(f.series(), &xs[r])?;
    let mut gg = s.lift(g.series(), &xs[r + 1])?;
    for (j, &(q, p)) in pairs.iter().enumerate() {
        let (q, p) = (base.name(q), base.name(p));
        ff = ff.substitute(s.idx(p), &(&s.var(p) + &s.var(&bx[j])));
        gg = gg.substitute(s.idx(q), &(&s.var(q) + &s.var(&by[j])));
    }
    let mut h = &ff * &gg;
    for j in 0..r {
        h = theta_average(&h, s.idx(&bx[j]), s.idx(&by[j]), s.idx(&xs[j]));
    }
    let h = nested_integrals(h, &s, &xi, xs);
    finish(h, &s, &xi, r as u32 + 2, &[f, g])
}

/// `(1/2πi)∮ φ(z) ψ(ξ/z) dz/z` for univariate series, as the `z^{-1}`
/// coefficient of `φ(z) ψ(ξ/z) / z`.
pub fn hadamard_contour(phi: &FormalSeries, psi: &FormalSeries) -> Result<FormalSeries> {
    if phi.vars() != psi.vars() {
        return Err(Error::VariableMismatch { left: phi.vars().to_string(), right: psi.vars().to_string() });
    }
    if phi.vars().len() != 1 {
        return Err(Error::Invalid("hadamard_contour takes univariate series".into()));
    }
    let base = phi.vars();
    let xi = base.distinguished().to_string();
    let (s, fresh) = Scratch::new(base, &["z".into(), "u".into()])?;
    let [z, u] = <[String; 2]>::try_from(fresh).expect("two names");
    let a = phi.poly().embed(&s.vars)?.substitute(s.idx(&xi), &s.var(&z));
    let b = psi.poly().embed(&s.vars)?.substitute(s.idx(&xi), &(&s.var(&xi) * &s.var(&u)));
    let integrand = &(&a * &b) * &s.var(&u);
    let res = LaurentSlice::collapse(&integrand, s.idx(&z), s.idx(&u))?.residue();
    Ok(FormalSeries::new(res.embed(base)?, phi.trunc().min(psi.trunc())))
}
