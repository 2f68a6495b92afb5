//! Standard and Moyal star products on `Q[[t, p_1..p_N, q_1..q_N]]`, the
//! Moyal commutator, and the transition operator `T` intertwining them.
//!
//! Both products are `mu ∘ exp(t B)` for a bidifferential operator
//! `B = Σ w_i ∂_{a_i} ⊗ ∂_{b_i}`:
//!
//! * standard: `B = Σ_j ∂_{p_j} ⊗ ∂_{q_j}`
//! * Moyal:    `B = ½ Σ_j (∂_{p_j} ⊗ ∂_{q_j} − ∂_{q_j} ⊗ ∂_{p_j})`
//!
//! The exponential is summed exactly: the t-window bounds the number of
//! derivatives and the operands are polynomials, so every sum is finite.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::{self, Rational};
use crate::series::{FormalSeries, Truncation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarKind {
    Standard,
    Moyal,
}

impl FromStr for StarKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "S" | "s" => Ok(StarKind::Standard),
            "moyal" | "M" | "m" => Ok(StarKind::Moyal),
            other => Err(Error::Invalid(format!("unknown star kind `{other}`"))),
        }
    }
}

impl fmt::Display for StarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarKind::Standard => "standard",
            StarKind::Moyal => "moyal",
        })
    }
}

/// One term `w ∂_left ⊗ ∂_right` of a bidifferential operator.
#[derive(Clone, Debug)]
struct Pairing {
    left: usize,
    right: usize,
    weight: Rational,
}

fn pairings(kind: StarKind, pairs: &[(usize, usize)]) -> Vec<Pairing> {
    let mut out = Vec::new();
    for &(q, p) in pairs {
        match kind {
            StarKind::Standard => out.push(Pairing { left: p, right: q, weight: Rational::one() }),
            StarKind::Moyal => {
                out.push(Pairing { left: p, right: q, weight: rational::ratio(1, 2) });
                out.push(Pairing { left: q, right: p, weight: rational::ratio(-1, 2) });
            }
        }
    }
    out
}

/// Adds `coeff * t^shift * f * g` to `acc`, keeping only terms in `window`.
fn accumulate(acc: &mut MultiPoly, f: &MultiPoly, g: &MultiPoly, shift: u32, coeff: &Rational, window: Truncation) {
    let keep = |m: &Monomial| m.get(0) + shift <= window.deg_t && m.rest_degree() <= window.deg_xy;
    let prod = f.mul_filtered(g, keep);
    for (m, c) in prod.terms() {
        acc.add_term(m.with(0, m.get(0) + shift), c * coeff);
    }
}

struct BiExp<'a> {
    ops: &'a [Pairing],
    window: Truncation,
    acc: MultiPoly,
}

impl BiExp<'_> {
    fn walk(&mut self, i: usize, f: MultiPoly, g: MultiPoly, tpow: u32, coeff: Rational) {
        if i == self.ops.len() {
            accumulate(&mut self.acc, &f, &g, tpow, &coeff, self.window);
            return;
        }
        let op = &self.ops[i];
        let (mut fd, mut gd, mut c) = (f, g, coeff);
        let mut n = 0u32;
        while tpow + n <= self.window.deg_t && !fd.is_zero() && !gd.is_zero() {
            self.walk(i + 1, fd.clone(), gd.clone(), tpow + n, c.clone());
            n += 1;
            fd = fd.derivative(op.left, 1);
            gd = gd.derivative(op.right, 1);
            c = c * &op.weight / rational::int(n as i64);
        }
    }
}

fn bidifferential_exp(f: &MultiPoly, g: &MultiPoly, ops: &[Pairing], window: Truncation) -> MultiPoly {
    let mut e = BiExp { ops, window, acc: MultiPoly::zero(f.vars()) };
    e.walk(0, f.clone(), g.clone(), 0, Rational::one());
    e.acc
}

fn check_pair(f: &FormalSeries, g: &FormalSeries) -> Result<Vec<(usize, usize)>> {
    if f.vars() != g.vars() {
        return Err(Error::VariableMismatch { left: f.vars().to_string(), right: g.vars().to_string() });
    }
    f.vars().conjugate_pairs()
}

/// `f ⋆ g` on the common window of the operands.
pub fn star(kind: StarKind, f: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    star_in_window(kind, f, g, f.trunc().min(g.trunc()))
}

/// `f ⋆ g` restricted to `window` (which is intersected with the operands'
/// common window). Useful when only a few output coefficients are needed.
pub fn star_in_window(kind: StarKind, f: &FormalSeries, g: &FormalSeries, window: Truncation) -> Result<FormalSeries> {
    let pairs = check_pair(f, g)?;
    let window = window.min(f.trunc()).min(g.trunc());
    let ops = pairings(kind, &pairs);
    let poly = bidifferential_exp(f.poly(), g.poly(), &ops, window);
    Ok(FormalSeries::new(poly, window))
}

pub fn standard_star(f: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    star(StarKind::Standard, f, g)
}

pub fn moyal_star(f: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    star(StarKind::Moyal, f, g)
}

/// `[f, g]_M = (f ⋆_M g − g ⋆_M f) / t`. The t-window drops by one.
pub fn moyal_commutator(f: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    let diff = moyal_star(f, g)?.sub(&moyal_star(g, f)?)?;
    let w = diff.trunc();
    if w.deg_t == 0 {
        return Err(Error::WindowOverflow("commutator needs deg_t >= 1".into()));
    }
    let mut out = MultiPoly::zero(diff.vars());
    for (m, c) in diff.poly().terms() {
        debug_assert!(m.get(0) > 0, "commutator has a t^0 term");
        out.add_term(m.with(0, m.get(0) - 1), c.clone());
    }
    Ok(FormalSeries::new(out, Truncation::new(w.deg_t - 1, w.deg_xy)))
}

/// `{f, g} = Σ_j ∂_{p_j} f ∂_{q_j} g − ∂_{q_j} f ∂_{p_j} g`.
pub fn poisson_bracket(f: &FormalSeries, g: &FormalSeries) -> Result<FormalSeries> {
    let pairs = check_pair(f, g)?;
    let trunc = f.trunc().min(g.trunc());
    let mut acc = MultiPoly::zero(f.vars());
    for (q, p) in pairs {
        acc = &acc + &(&f.poly().derivative(p, 1) * &g.poly().derivative(q, 1));
        acc = &acc - &(&f.poly().derivative(q, 1) * &g.poly().derivative(p, 1));
    }
    Ok(FormalSeries::new(acc, trunc))
}

/// `T = exp(−(t/2) Σ_j ∂_{q_j} ∂_{p_j})`, or its inverse with the sign flipped.
pub fn transition_t(f: &FormalSeries, inverse: bool) -> Result<FormalSeries> {
    let pairs = f.vars().conjugate_pairs()?;
    let w = f.trunc();
    let weight = if inverse { rational::ratio(1, 2) } else { rational::ratio(-1, 2) };
    let mut acc = MultiPoly::zero(f.vars());
    let one = MultiPoly::one(f.vars());
    transition_walk(&pairs, 0, f.poly().clone(), 0, Rational::one(), &weight, w, &one, &mut acc);
    Ok(FormalSeries::new(acc, w))
}

#[allow(clippy::too_many_arguments)]
fn transition_walk(
    pairs: &[(usize, usize)],
    i: usize,
    f: MultiPoly,
    tpow: u32,
    coeff: Rational,
    weight: &Rational,
    window: Truncation,
    one: &MultiPoly,
    acc: &mut MultiPoly,
) {
    if i == pairs.len() {
        accumulate(acc, &f, one, tpow, &coeff, window);
        return;
    }
    let (q, p) = pairs[i];
    let (mut fd, mut c) = (f, coeff);
    let mut n = 0u32;
    while tpow + n <= window.deg_t && !fd.is_zero() {
        transition_walk(pairs, i + 1, fd.clone(), tpow + n, c.clone(), weight, window, one, acc);
        n += 1;
        fd = fd.derivative(q, 1).derivative(p, 1);
        c = c * weight / rational::int(n as i64);
    }
}

/// Operand window needed for a star product or `T` of genuinely infinite
/// series to be exact on `out`: each power of `t` consumes up to two degrees
/// of the phase-space variables.
pub fn required_input_window(out: Truncation) -> Truncation {
    Truncation::new(out.deg_t, out.deg_xy + 2 * out.deg_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSet;

    fn phase(n: usize) -> VariableSet {
        VariableSet::phase_space("t", n)
    }

    fn s(text: &str) -> FormalSeries {
        FormalSeries::parse(text, &phase(1), Truncation::new(6, 6)).unwrap()
    }

    #[test]
    fn simple_standard_examples() {
        assert_eq!(standard_star(&s("t*p"), &s("t*q")).unwrap(), s("t^2*p*q + t^3"));
        assert_eq!(standard_star(&s("t*q"), &s("t*p")).unwrap(), s("t^2*p*q"));
    }

    #[test]
    fn simple_moyal_examples() {
        assert_eq!(moyal_star(&s("t*p"), &s("t*q")).unwrap(), s("t^2*p*q + 1/2*t^3"));
        assert_eq!(moyal_star(&s("t*q"), &s("t*p")).unwrap(), s("t^2*p*q - 1/2*t^3"));
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(moyal_commutator(&s("p"), &s("q")).unwrap(), s("1"));
        let f = s("p^2*q + t*q^3");
        assert!(moyal_commutator(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn transition_examples() {
        assert_eq!(transition_t(&s("t^2*p*q"), false).unwrap(), s("t^2*p*q - 1/2*t^3"));
        assert_eq!(transition_t(&s("1"), false).unwrap(), s("1"));
        let lhs = transition_t(&standard_star(&s("t*p"), &s("t*q")).unwrap(), false).unwrap();
        let rhs = moyal_star(
            &transition_t(&s("t*p"), false).unwrap(),
            &transition_t(&s("t*q"), false).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, s("t^2*p*q + 1/2*t^3"));
    }

    #[test]
    fn inverse_transition_round_trip() {
        let f = s("p^3*q^2 + 2*t*p*q - q");
        let back = transition_t(&transition_t(&f, true).unwrap(), false).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn needs_phase_space() {
        let v = VariableSet::new(&["t", "x"]).unwrap();
        let f = FormalSeries::one(&v, Truncation::new(2, 2));
        assert!(standard_star(&f, &f).is_err());
        let g = FormalSeries::one(&phase(2), Truncation::new(2, 2));
        assert!(matches!(standard_star(&s("p"), &g), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("moyal".parse::<StarKind>().unwrap(), StarKind::Moyal);
        assert!("kontsevich".parse::<StarKind>().is_err());
    }
}
