//! Truncated multivariate formal power series.
//!
//! A [`FormalSeries`] is a finite window onto an infinite series: every
//! retained term has degree at most `deg_t` in the distinguished variable and
//! total degree at most `deg_xy` in the remaining ones. Ring operations are
//! exact on the window. Operations that differentiate, substitute or
//! integrate between limits read the stored terms as an exact polynomial;
//! callers that model a genuinely infinite series must supply enough of it
//! (see [`crate::star::required_input_window`]).

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::Rational;
use crate::text;
use crate::vars::VariableSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub deg_t: u32,
    pub deg_xy: u32,
}

impl Truncation {
    pub const fn new(deg_t: u32, deg_xy: u32) -> Self {
        Self { deg_t, deg_xy }
    }

    pub fn min(self, other: Truncation) -> Truncation {
        Truncation::new(self.deg_t.min(other.deg_t), self.deg_xy.min(other.deg_xy))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.get(0) <= self.deg_t && m.rest_degree() <= self.deg_xy
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg_t={}, deg_xy={})", self.deg_t, self.deg_xy)
    }
}

#[derive(Clone, Debug)]
pub struct FormalSeries {
    poly: MultiPoly,
    trunc: Truncation,
}

impl FormalSeries {
    /// Wraps `poly`, discarding every term outside the window.
    pub fn new(mut poly: MultiPoly, trunc: Truncation) -> Self {
        poly.retain(|m| trunc.contains(m));
        Self { poly, trunc }
    }

    pub fn zero(vars: &VariableSet, trunc: Truncation) -> Self {
        Self::new(MultiPoly::zero(vars), trunc)
    }

    pub fn one(vars: &VariableSet, trunc: Truncation) -> Self {
        Self::new(MultiPoly::one(vars), trunc)
    }

    pub fn parse(input: &str, vars: &VariableSet, trunc: Truncation) -> Result<Self> {
        Ok(Self::new(text::parse_poly(input, vars)?, trunc))
    }

    pub fn vars(&self) -> &VariableSet {
        self.poly.vars()
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rational {
        self.poly.coeff(&Monomial::from_exps(exps))
    }

    /// Degree of the zero series is `None` (read: minus infinity).
    pub fn degree(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    /// Lowers the window; never raises it.
    pub fn truncate(&self, trunc: Truncation) -> Self {
        Self::new(self.poly.clone(), self.trunc.min(trunc))
    }

    /// Coefficient of `var0^n` for `n = 0..=deg_t`, each a polynomial in the
    /// remaining variables.
    pub fn distinguished_coefficients(&self) -> Vec<MultiPoly> {
        let mut c = self.poly.coefficients_in(0);
        c.resize(self.trunc.deg_t as usize + 1, MultiPoly::zero(self.vars()));
        c
    }

    fn check_vars(&self, other: &FormalSeries) -> Result<()> {
        if self.vars() != other.vars() {
            return Err(Error::VariableMismatch {
                left: self.vars().to_string(),
                right: other.vars().to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_vars(other)?;
        Ok(Self::new(&self.poly + &other.poly, self.trunc.min(other.trunc)))
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_vars(other)?;
        Ok(Self::new(&self.poly - &other.poly, self.trunc.min(other.trunc)))
    }

    pub fn mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let poly = self.poly.mul_filtered(&other.poly, |m| trunc.contains(m));
        Ok(Self { poly, trunc })
    }

    pub fn scale(&self, c: &Rational) -> FormalSeries {
        Self { poly: self.poly.scale(c), trunc: self.trunc }
    }

    pub fn neg(&self) -> FormalSeries {
        self.scale(&-Rational::from_integer(1.into()))
    }

    /// `d^order/d var^order`. The window shrinks by `order` in the affected
    /// degree so the result stays exact.
    pub fn partial_derivative(&self, var: &str, order: u32) -> Result<FormalSeries> {
        let i = self.vars().index(var)?;
        let trunc = shrink(self.trunc, i, order)?;
        Ok(Self::new(self.poly.derivative(i, order), trunc))
    }

    /// Antiderivative vanishing at `var = 0`; the window grows by one in the
    /// affected degree.
    pub fn integrate(&self, var: &str) -> Result<FormalSeries> {
        let i = self.vars().index(var)?;
        let mut trunc = self.trunc;
        if i == 0 {
            trunc.deg_t += 1;
        } else {
            trunc.deg_xy += 1;
        }
        Ok(Self::new(self.poly.antiderivative(i), trunc))
    }

    /// `∫_0^upper f d(var)` with a polynomial upper limit. The stored terms
    /// are integrated as an exact polynomial; a result that does not fit the
    /// window is reported instead of being cut.
    pub fn integrate_to(&self, var: &str, upper: &FormalSeries) -> Result<FormalSeries> {
        self.check_vars(upper)?;
        let i = self.vars().index(var)?;
        let poly = self.poly.integrate_to(i, &upper.poly);
        let trunc = self.trunc.min(upper.trunc);
        if let Some((m, _)) = poly.terms().find(|(m, _)| !trunc.contains(m)) {
            return Err(Error::WindowOverflow(format!(
                "integral up to {} produces degree {:?} outside {}",
                upper.poly,
                m.exps(),
                trunc
            )));
        }
        Ok(Self { poly, trunc })
    }

    /// Substitutes rationals for some non-distinguished variables and drops
    /// them from the variable set.
    pub fn evaluate_partial(&self, bindings: &[(&str, Rational)]) -> Result<FormalSeries> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut idx = Vec::with_capacity(bindings.len());
        for (name, v) in bindings {
            let i = self.vars().index(name)?;
            if i == 0 {
                return Err(Error::DistinguishedBinding(name.to_string()));
            }
            idx.push((i, v.clone()));
        }
        let bound = self.poly.bind(&idx);
        let drop: Vec<usize> = idx.iter().map(|(i, _)| *i).collect();
        let vars = self.vars().without(&drop)?;
        Ok(Self::new(bound.embed(&vars)?, self.trunc))
    }

    /// Coefficient-wise comparison on the common window.
    pub fn eq_on_window(&self, other: &FormalSeries) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        let w = self.trunc.min(other.trunc);
        let diff = &self.poly - &other.poly;
        let equal = diff.terms().all(|(m, c)| !w.contains(m) || c.is_zero());
        equal
    }
}

impl PartialEq for FormalSeries {
    fn eq(&self, other: &Self) -> bool {
        self.eq_on_window(other)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn shrink(trunc: Truncation, i: usize, order: u32) -> Result<Truncation> {
    let cap = if i == 0 { trunc.deg_t } else { trunc.deg_xy };
    if order > cap {
        return Err(Error::WindowOverflow(format!(
            "derivative of order {order} exhausts window {trunc}"
        )));
    }
    Ok(if i == 0 {
        Truncation::new(cap - order, trunc.deg_xy)
    } else {
        Truncation::new(trunc.deg_t, cap - order)
    })
}
