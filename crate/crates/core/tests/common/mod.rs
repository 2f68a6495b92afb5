#![allow(dead_code)]

use proptest::prelude::*;
use starborel::rational::ratio;
use starborel::{FormalSeries, Monomial, MultiPoly, Truncation, VariableSet};

/// Sparse polynomials over `vars` with every exponent at most `max_exp`,
/// wrapped in `trunc` (terms outside it are dropped).
pub fn series(vars: VariableSet, trunc: Truncation, max_exp: u16, max_terms: usize) -> impl Strategy<Value = FormalSeries> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            let mut p = MultiPoly::zero(&vars);
            for (e, a, b) in terms {
                if a != 0 {
                    p.add_term(Monomial::from_exps(&e), ratio(a, b));
                }
            }
            FormalSeries::new(p, trunc)
        },
    )
}

/// Like [`series`] but without the distinguished variable: the first
/// exponent is always zero.
pub fn free_series(vars: VariableSet, trunc: Truncation, max_exp: u16, max_terms: usize) -> impl Strategy<Value = FormalSeries> {
    series(vars, trunc, max_exp, max_terms).prop_map(move |s| {
        let mut p = s.poly().clone();
        p.retain(|m| m.get(0) == 0);
        FormalSeries::new(p, trunc)
    })
}

pub fn poly(vars: VariableSet, max_exp: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    series(vars, Truncation::new(u32::MAX / 4, u32::MAX / 4), max_exp, max_terms).prop_map(|s| s.into_poly())
}
