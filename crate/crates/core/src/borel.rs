//! The Borel plane: the formal Borel transform `β: t^n ↦ ξ^n/n!`, the
//! Borel-star products and transition operator obtained by conjugating with
//! `β`, the Hadamard product, and the `⊙_ij` pairing.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::{self, Rational};
use crate::series::{FormalSeries, Truncation};
use crate::star::{self, StarKind};
use crate::vars::VariableSet;

/// Default name of the Borel-plane variable.
pub const XI: &str = "xi";
/// Default name of the deformation parameter.
pub const T: &str = "t";

/// A formal series read as the Borel image of a `t`-series; its
/// distinguished variable plays the role of `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BorelSeries(FormalSeries);

impl BorelSeries {
    pub fn from_series(s: FormalSeries) -> Self {
        BorelSeries(s)
    }

    pub fn parse(input: &str, vars: &VariableSet, trunc: Truncation) -> Result<Self> {
        FormalSeries::parse(input, vars, trunc).map(BorelSeries)
    }

    pub fn series(&self) -> &FormalSeries {
        &self.0
    }

    pub fn into_series(self) -> FormalSeries {
        self.0
    }

    pub fn vars(&self) -> &VariableSet {
        self.0.vars()
    }

    pub fn trunc(&self) -> Truncation {
        self.0.trunc()
    }
}

impl std::fmt::Display for BorelSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Multiplies the coefficient of `var0^n` by `weight(n)` and renames the
/// distinguished variable.
fn reweight(f: &FormalSeries, name: &str, weight: impl Fn(u32) -> Rational) -> Result<FormalSeries> {
    let vars = f.vars().with_distinguished(name)?;
    let mut out = MultiPoly::zero(&vars);
    for (m, c) in f.poly().terms() {
        out.add_term(m.clone(), c * weight(m.get(0)));
    }
    Ok(FormalSeries::new(out, f.trunc()))
}

/// `β`, with the distinguished variable renamed to `xi`.
pub fn borel(f: &FormalSeries) -> Result<BorelSeries> {
    borel_named(f, XI)
}

pub fn borel_named(f: &FormalSeries, xi: &str) -> Result<BorelSeries> {
    reweight(f, xi, |n| Rational::from_integer(rational::factorial(n)).recip()).map(BorelSeries)
}

/// `β^{-1}`, with the distinguished variable renamed to `t`.
pub fn inverse_borel(f: &BorelSeries) -> Result<FormalSeries> {
    inverse_borel_named(f, T)
}

pub fn inverse_borel_named(f: &BorelSeries, t: &str) -> Result<FormalSeries> {
    reweight(&f.0, t, rational::factorial_q)
}

/// Runs a `t`-plane operation conjugated by `β`, keeping the caller's name
/// for the Borel variable. The scratch name for `t` avoids collisions.
fn conjugate<F>(inputs: &[&BorelSeries], op: F) -> Result<BorelSeries>
where
    F: FnOnce(&[FormalSeries]) -> Result<FormalSeries>,
{
    let xi = inputs[0].vars().distinguished().to_string();
    let t = scratch_name(inputs[0].vars(), "t");
    let tilde: Vec<FormalSeries> = inputs.iter().map(|f| inverse_borel_named(f, &t)).collect::<Result<_>>()?;
    borel_named(&op(&tilde)?, &xi)
}

fn scratch_name(vars: &VariableSet, base: &str) -> String {
    let mut name = format!("_{base}");
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// `f̂ *_S ĝ` or `f̂ *_M ĝ`: `β(β^{-1}f̂ ⋆ β^{-1}ĝ)`.
pub fn borel_star(kind: StarKind, f: &BorelSeries, g: &BorelSeries) -> Result<BorelSeries> {
    if f.vars() != g.vars() {
        return Err(Error::VariableMismatch { left: f.vars().to_string(), right: g.vars().to_string() });
    }
    conjugate(&[f, g], |s| star::star(kind, &s[0], &s[1]))
}

/// `T̂ = β T β^{-1}`, or `T̂^{-1}`.
pub fn borel_t(f: &BorelSeries, inverse: bool) -> Result<BorelSeries> {
    conjugate(&[f], |s| star::transition_t(&s[0], inverse))
}

/// Closed coefficient formula for `*_S`:
/// `Σ m! n! / (m+n+|k|)! / k! (∂_p^k f_m)(∂_q^k g_n) ξ^{m+n+|k|}`.
/// Kept independent of [`borel_star`] so the two can check each other.
pub fn borel_star_closed_form(f: &BorelSeries, g: &BorelSeries) -> Result<BorelSeries> {
    if f.vars() != g.vars() {
        return Err(Error::VariableMismatch { left: f.vars().to_string(), right: g.vars().to_string() });
    }
    let pairs = f.vars().conjugate_pairs()?;
    let w = f.trunc().min(g.trunc());
    let vars = f.vars();
    let fm = f.series().distinguished_coefficients();
    let gn = g.series().distinguished_coefficients();
    let mut acc = MultiPoly::zero(vars);
    for (m, fm) in fm.iter().enumerate() {
        if fm.is_zero() {
            continue;
        }
        for (n, gn) in gn.iter().enumerate() {
            if gn.is_zero() || m + n > w.deg_t as usize {
                continue;
            }
            let budget = w.deg_t as usize - m - n;
            let mut ks = vec![0u32; pairs.len()];
            closed_form_walk(&pairs, 0, &mut ks, budget as u32, fm.clone(), gn.clone(), m as u32, n as u32, &mut acc);
        }
    }
    Ok(BorelSeries(FormalSeries::new(acc, w)))
}

#[allow(clippy::too_many_arguments)]
fn closed_form_walk(
    pairs: &[(usize, usize)],
    j: usize,
    ks: &mut [u32],
    budget: u32,
    fd: MultiPoly,
    gd: MultiPoly,
    m: u32,
    n: u32,
    acc: &mut MultiPoly,
) {
    if fd.is_zero() || gd.is_zero() {
        return;
    }
    if j == pairs.len() {
        let k: u32 = ks.iter().sum();
        let kfact = ks.iter().fold(Rational::from_integer(1.into()), |a, &k| a * rational::factorial_q(k));
        let c = rational::factorial_q(m) * rational::factorial_q(n) / (rational::factorial_q(m + n + k) * kfact);
        let prod = &fd * &gd;
        for (mono, v) in prod.terms() {
            acc.add_term(mono.with(0, m + n + k), v * &c);
        }
        return;
    }
    let (q, p) = pairs[j];
    let (mut fk, mut gk) = (fd, gd);
    for k in 0..=budget {
        ks[j] = k;
        closed_form_walk(pairs, j + 1, ks, budget - k, fk.clone(), gk.clone(), m, n, acc);
        fk = fk.derivative(p, 1);
        gk = gk.derivative(q, 1);
        if fk.is_zero() || gk.is_zero() {
            break;
        }
    }
    ks[j] = 0;
}

/// Coefficientwise product `Σ a_n b_n ξ^n` (for multivariate inputs, every
/// monomial is matched).
pub fn hadamard(phi: &FormalSeries, psi: &FormalSeries) -> Result<FormalSeries> {
    if phi.vars() != psi.vars() {
        return Err(Error::VariableMismatch { left: phi.vars().to_string(), right: psi.vars().to_string() });
    }
    let mut out = MultiPoly::zero(phi.vars());
    for (m, a) in phi.poly().terms() {
        let b = psi.poly().coeff(m);
        if !b.is_zero() {
            out.add_term(m.clone(), a * b);
        }
    }
    Ok(FormalSeries::new(out, phi.trunc().min(psi.trunc())))
}

/// `(⊙_ij F)(ξ, …) = Σ_a ∂_i^a ∂_j^a F / (a!)² · ξ^a`, with `ξ` appended as
/// a new last variable named `xi`.
pub fn odot_ij(f: &FormalSeries, i: &str, j: &str, xi: &str) -> Result<FormalSeries> {
    if i == j {
        return Err(Error::SameVariable(i.to_string()));
    }
    let vars = f.vars();
    let (ii, jj) = (vars.index(i)?, vars.index(j)?);
    if ii == 0 || jj == 0 {
        return Err(Error::DistinguishedBinding(vars.distinguished().to_string()));
    }
    if vars.contains(xi) {
        return Err(Error::NameCollision(xi.to_string()));
    }
    let out_vars = vars.extend(&[xi])?;
    let x = out_vars.len() - 1;
    let mut acc = MultiPoly::zero(&out_vars);
    let mut d = f.poly().embed(&out_vars)?;
    let mut a = 0u32;
    let mut afact = Rational::from_integer(1.into());
    while !d.is_zero() {
        let c = (&afact * &afact).recip();
        for (m, v) in d.terms() {
            acc.add_term(m.with(x, a), v * &c);
        }
        a += 1;
        afact *= rational::int(a as i64);
        d = d.derivative(ii, 1).derivative(jj, 1);
    }
    Ok(FormalSeries::new(acc, f.trunc()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn tvars() -> VariableSet {
        VariableSet::phase_space("t", 1)
    }

    fn xvars() -> VariableSet {
        VariableSet::phase_space("xi", 1)
    }

    fn ts(text: &str) -> FormalSeries {
        FormalSeries::parse(text, &tvars(), Truncation::new(6, 6)).unwrap()
    }

    fn xs(text: &str) -> BorelSeries {
        BorelSeries::parse(text, &xvars(), Truncation::new(6, 6)).unwrap()
    }

    fn uni(text: &str, n: u32) -> FormalSeries {
        FormalSeries::parse(text, &VariableSet::new(&["xi"]).unwrap(), Truncation::new(n, 0)).unwrap()
    }

    #[test]
    fn borel_of_simple_example() {
        assert_eq!(borel(&ts("t^2*p*q + t^3")).unwrap(), xs("1/2*xi^2*p*q + 1/6*xi^3"));
        assert_eq!(borel(&ts("1")).unwrap(), xs("1"));
    }

    #[test]
    fn inverse_round_trip() {
        let f = ts("3*t^5*p - t^2*q^3 + 7/3");
        assert_eq!(inverse_borel(&borel(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn borel_star_simple_examples() {
        assert_eq!(
            borel_star(StarKind::Standard, &xs("xi*p"), &xs("xi*q")).unwrap(),
            xs("1/2*xi^2*p*q + 1/6*xi^3")
        );
        let f = xs("xi^2*p*q - 5*q + 1/2*xi");
        assert_eq!(borel_star(StarKind::Standard, &f, &xs("1")).unwrap(), f);
        assert_eq!(borel_star(StarKind::Moyal, &xs("1"), &f).unwrap(), f);
    }

    #[test]
    fn closed_form_matches_conjugation() {
        let f = xs("xi^2*p^3 + xi*p*q - 2*p^2 + 1");
        let g = xs("q^4 - xi^3*q + 3*xi*p*q^2");
        assert_eq!(
            borel_star_closed_form(&f, &g).unwrap(),
            borel_star(StarKind::Standard, &f, &g).unwrap()
        );
        let v2 = VariableSet::phase_space("xi", 2);
        let w = Truncation::new(5, 5);
        let f = BorelSeries::parse("xi*p1*p2^2 + p1^2 - xi^2*q2", &v2, w).unwrap();
        let g = BorelSeries::parse("q1^2*q2 + xi*q1 + p2", &v2, w).unwrap();
        assert_eq!(
            borel_star_closed_form(&f, &g).unwrap(),
            borel_star(StarKind::Standard, &f, &g).unwrap()
        );
    }

    #[test]
    fn borel_transition() {
        let f = borel(&ts("t^2*p*q")).unwrap();
        assert_eq!(borel_t(&f, false).unwrap(), borel(&ts("t^2*p*q - 1/2*t^3")).unwrap());
        assert_eq!(borel_t(&xs("1"), true).unwrap(), xs("1"));
        let g = xs("xi^3*p^2*q + xi*q^3 - p");
        assert_eq!(borel_t(&borel_t(&g, true).unwrap(), false).unwrap(), g);
    }

    #[test]
    fn hadamard_examples() {
        let ones = uni("1 + xi + xi^2 + xi^3 + xi^4 + xi^5", 5);
        let f = uni("3 - 2*xi^2 + 1/7*xi^5", 5);
        assert_eq!(hadamard(&ones, &f).unwrap(), f);
        assert_eq!(hadamard(&uni("xi + xi^2", 4), &uni("xi", 4)).unwrap(), uni("xi", 4));
        // log(1-xi) ⊙ log(1-xi) = Li2
        let n = 10;
        let vars = VariableSet::new(&["xi"]).unwrap();
        let log = FormalSeries::new(
            MultiPoly::from_terms(&vars, (1..=n).map(|k| (crate::Monomial::from_exps(&[k as u16]), ratio(-1, k as i64)))),
            Truncation::new(n, 0),
        );
        let li2 = hadamard(&log, &log).unwrap();
        for k in 1..=n {
            assert_eq!(li2.coeff(&[k as u16]), ratio(1, (k * k) as i64));
        }
        // ξ d/dξ Li2 = -log(1-ξ)
        let d = li2.partial_derivative("xi", 1).unwrap();
        for k in 0..n {
            assert_eq!(d.coeff(&[k as u16]), ratio(1, k as i64 + 1));
        }
    }

    #[test]
    fn odot_examples() {
        let vars = VariableSet::new(&["x", "zi", "zj", "w"]).unwrap();
        let w = Truncation::new(4, 6);
        let f = FormalSeries::parse("zi*zj", &vars, w).unwrap();
        let out = odot_ij(&f, "zi", "zj", "xi").unwrap();
        let ov = vars.extend(&["xi"]).unwrap();
        assert_eq!(out, FormalSeries::parse("zi*zj + xi", &ov, w).unwrap());
        let g = FormalSeries::parse("w^2*zj + x", &vars, w).unwrap();
        assert_eq!(odot_ij(&g, "zi", "zj", "xi").unwrap().poly(), &g.poly().embed(&ov).unwrap());
        assert!(matches!(odot_ij(&f, "zi", "zi", "xi"), Err(Error::SameVariable(_))));
    }
}
