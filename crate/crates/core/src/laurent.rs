//! Finite Laurent expansions in one contour variable.
//!
//! Integrands like `f(q + z) g(p + ξ/z)` are built as ordinary polynomials
//! in a pair of variables `(z, u)` with `u` standing for `1/z`; collapsing
//! `z^a u^b ↦ z^{a-b}` gives the Laurent expansion, from which contour
//! integrals are read off as single coefficients.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::poly::MultiPoly;
use crate::vars::VariableSet;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSlice {
    /// Coefficients live over the input variable set with `z` and `u`
    /// removed.
    vars: VariableSet,
    terms: BTreeMap<i64, MultiPoly>,
}

impl LaurentSlice {
    /// Collapses `poly` in the pair `(z, u = 1/z)` given by indices.
    pub fn collapse(poly: &MultiPoly, z: usize, u: usize) -> Result<Self> {
        let vars = poly.vars().without(&[z, u])?;
        let mut terms: BTreeMap<i64, MultiPoly> = BTreeMap::new();
        for (m, c) in poly.terms() {
            let e = m.get(z) as i64 - m.get(u) as i64;
            let rest = MultiPoly::monomial(poly.vars(), m.with(z, 0).with(u, 0), c.clone()).embed(&vars)?;
            let slot = terms.entry(e).or_insert_with(|| MultiPoly::zero(&vars));
            *slot = &*slot + &rest;
        }
        terms.retain(|_, p| !p.is_zero());
        Ok(Self { vars, terms })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn coeff(&self, e: i64) -> MultiPoly {
        self.terms.get(&e).cloned().unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// `(1/2πi) ∮ (·) dz`: the `z^{-1}` coefficient.
    pub fn residue(&self) -> MultiPoly {
        self.coeff(-1)
    }

    /// `(1/2πi) ∮ (·) dz/z`: the `z^0` coefficient.
    pub fn mean(&self) -> MultiPoly {
        self.coeff(0)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MultiPoly)> {
        self.terms.iter().map(|(e, p)| (*e, p))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by the smallest `z^N` (`N ≥ 0`) that makes the expansion a
    /// polynomial; returns the dense coefficients in `z` and `N`.
    pub fn clear_denominator(&self) -> (Vec<MultiPoly>, u32) {
        let shift = (-self.min_exponent().unwrap_or(0)).max(0);
        let top = self.max_exponent().unwrap_or(0) + shift;
        let mut coeffs = vec![MultiPoly::zero(&self.vars); top as usize + 1];
        for (e, p) in &self.terms {
            coeffs[(e + shift) as usize] = p.clone();
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        (coeffs, shift as u32)
    }
}
