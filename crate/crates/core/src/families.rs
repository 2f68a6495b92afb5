//! The two divergent families with closed-form Borel images, evaluated at a
//! fixed phase-space point, and the loci their radii are compared against.
//!
//! At `(q_0, p_0)` the series are re-expanded in `P = p − p_0`, `Q = q − q_0`
//! and multiplied by the standard star product. Only the `P = Q = 0` part of
//! the product is kept, which is the value of the star product at the point.

use num_traits::One;

use crate::borel;
use crate::error::{Error, Result};
use crate::locus::Variety;
use crate::poly::{Monomial, MultiPoly};
use crate::rational::{self, Rational};
use crate::series::{FormalSeries, Truncation};
use crate::star::{self, StarKind};
use crate::text::parse_poly;
use crate::vars::VariableSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(1 − p)^{-1} ⋆ (1 − q)^{-1}`.
    Euler,
    /// `log(1 − p) ⋆ log(1 − q)`.
    LogLog,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Euler => "euler",
            Family::LogLog => "log*log",
        })
    }
}

/// Taylor coefficients at `x_0` of `(1 − x)^{-1}` or of `log(1 − x)` minus
/// its constant term, up to degree `deg`.
fn recentred(family: Family, x0: &Rational, deg: u32) -> Result<Vec<Rational>> {
    let base = Rational::one() - x0;
    if base <= Rational::from_integer(0.into()) {
        return Err(Error::Invalid("point must satisfy x < 1".into()));
    }
    Ok((0..=deg)
        .map(|j| match family {
            Family::Euler => rational::pow(&base, j + 1).recip(),
            Family::LogLog if j == 0 => Rational::from_integer(0.into()),
            Family::LogLog => -(rational::pow(&base, j) * rational::int(j as i64)).recip(),
        })
        .collect())
}

/// Borel-plane coefficients `a_0..a_order` of `β(f ⋆_S g)` at `(q_0, p_0)`.
pub fn borel_coefficients(family: Family, q0: &Rational, p0: &Rational, order: u32) -> Result<Vec<Rational>> {
    let vars = VariableSet::phase_space(borel::T, 1);
    let out = Truncation::new(order, 0);
    let input = star::required_input_window(out);
    let series_in = |name: &str, x0: &Rational| -> Result<FormalSeries> {
        let i = vars.index(name)?;
        let coeffs = recentred(family, x0, input.deg_xy)?;
        let mut p = MultiPoly::zero(&vars);
        for (j, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial::one(vars.len()).with(i, j as u32), c);
        }
        Ok(FormalSeries::new(p, input))
    };
    let f = series_in("p", p0)?;
    let g = series_in("q", q0)?;
    let prod = star::star_in_window(StarKind::Standard, &f, &g, out)?;
    let b = borel::borel(&prod)?;
    Ok(b.series().distinguished_coefficients().iter().map(MultiPoly::constant_term).collect())
}

/// [`borel_coefficients`] as a function of a `q`/`p` binding, for
/// [`crate::numeric::check_radius_vs_locus`].
pub fn at_point(family: Family, order: u32) -> impl Fn(&[(&str, Rational)]) -> Result<Vec<Rational>> {
    move |b: &[(&str, Rational)]| {
        let get = |name: &str| {
            b.iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Invalid(format!("no value for `{name}`")))
        };
        borel_coefficients(family, &get("q")?, &get("p")?, order)
    }
}

/// Closed form of [`borel_coefficients`]: `c^{-k-1}` (Euler) and `c^{-k}/k²`
/// for `k ≥ 1` (log⋆log), with `c = (1 − p_0)(1 − q_0)`.
pub fn closed_form_coefficients(family: Family, q0: &Rational, p0: &Rational, order: u32) -> Vec<Rational> {
    let c = (Rational::one() - p0) * (Rational::one() - q0);
    (0..=order)
        .map(|k| match family {
            Family::Euler => rational::pow(&c, k + 1).recip(),
            Family::LogLog if k == 0 => Rational::from_integer(0.into()),
            Family::LogLog => (rational::pow(&c, k) * rational::int((k * k) as i64)).recip(),
        })
        .collect()
}

/// Over `(xi, q, p)`: the origin together with the pole/branch point
/// `ξ = (1 − p)(1 − q)` of either Borel image, optionally displaced by
/// `shift` along `ξ` (negative controls).
pub fn family_locus(shift: &Rational) -> Variety {
    let vars = VariableSet::new(&[borel::XI, "q", "p"]).expect("distinct names");
    let sheet = parse_poly("xi - 1 + p + q - p*q", &vars).expect("valid literal");
    let sheet = &sheet - &MultiPoly::constant(&vars, shift.clone());
    let mut v = Variety::new(&vars);
    v.add_union(vec![
        ("origin".into(), MultiPoly::var_at(&vars, 0)),
        ("singular-sheet".into(), sheet),
    ])
    .expect("nonzero leaves");
    v
}
