//! Seeded random inputs for the verification suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Monomial, MultiPoly};
use crate::rational::{self, Rational};
use crate::series::{FormalSeries, Truncation};
use crate::vars::VariableSet;

/// Default seed of every randomized suite.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// `n/d` with `0 < |n| ≤ max_num`, `1 ≤ d ≤ max_den`.
    pub fn nonzero_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.rng.gen_range(1..=max_num) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let d = self.rng.gen_range(1..=max_den);
        rational::ratio(n, d)
    }

    /// `n/d` with `|n| ≤ max_num`, `1 ≤ d ≤ max_den`.
    pub fn rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let n = self.rng.gen_range(-max_num..=max_num);
        let d = self.rng.gen_range(1..=max_den);
        rational::ratio(n, d)
    }

    /// A monomial of the variable set whose first variable has degree at most
    /// `deg_t` and whose remaining variables have total degree at most
    /// `deg_xy`.
    pub fn monomial(&mut self, vars: &VariableSet, deg_t: u32, deg_xy: u32) -> Monomial {
        let mut e = vec![0u16; vars.len()];
        e[0] = self.rng.gen_range(0..=deg_t) as u16;
        let total = if vars.len() > 1 { self.rng.gen_range(0..=deg_xy) } else { 0 };
        for _ in 0..total {
            let i = self.rng.gen_range(1..vars.len());
            e[i] += 1;
        }
        Monomial::from_exps(&e)
    }

    /// A polynomial with up to `terms` random terms, kept inside `trunc`.
    pub fn series(&mut self, vars: &VariableSet, trunc: Truncation, terms: usize) -> FormalSeries {
        let mut p = MultiPoly::zero(vars);
        for _ in 0..terms {
            let m = self.monomial(vars, trunc.deg_t, trunc.deg_xy);
            p.add_term(m, self.nonzero_rational(5, 4));
        }
        FormalSeries::new(p, trunc)
    }

    /// A polynomial of total degree at most `deg` with up to `terms` terms.
    pub fn poly(&mut self, vars: &VariableSet, deg: u32, terms: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for _ in 0..terms {
            let mut e = vec![0u16; vars.len()];
            for _ in 0..self.rng.gen_range(0..=deg) {
                e[self.rng.gen_range(0..vars.len())] += 1;
            }
            p.add_term(Monomial::from_exps(&e), self.nonzero_rational(5, 3));
        }
        p
    }

    /// Dense univariate coefficients `a_0..a_deg` with a nonzero top.
    pub fn dense(&mut self, deg: usize) -> Vec<Rational> {
        let mut c: Vec<Rational> = (0..deg).map(|_| self.rational(9, 7)).collect();
        c.push(self.nonzero_rational(9, 7));
        c
    }

    /// A rational in the open interval `(lo, hi)` with denominator at most
    /// `max_den`.
    pub fn rational_in(&mut self, lo: f64, hi: f64, max_den: i64) -> Rational {
        loop {
            let d = self.rng.gen_range(2..=max_den);
            let n = self.rng.gen_range((lo * d as f64).ceil() as i64..=(hi * d as f64).floor() as i64);
            let r = rational::ratio(n, d);
            let f = rational::to_f64(&r);
            if f > lo && f < hi {
                return r;
            }
        }
    }
}
