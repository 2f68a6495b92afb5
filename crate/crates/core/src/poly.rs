//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded lexicographic: total degree first, then the exponent vector compared
//! lexicographically in variable-set order. Iteration is ascending; canonical
//! text output walks the map in reverse.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::vars::VariableSet;

pub type Exponent = u16;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[Exponent; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[Exponent]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[Exponent] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Total degree of every variable except index 0.
    pub fn rest_degree(&self) -> u32 {
        self.0.iter().skip(1).map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn with(&self, i: usize, e: u32) -> Self {
        let mut m = self.clone();
        m.0[i] = e as Exponent;
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: VariableSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &VariableSet) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VariableSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &VariableSet, name: &str) -> Result<Self> {
        let i = vars.index(name)?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: &VariableSet, i: usize) -> Self {
        let m = Monomial::one(vars.len()).with(i, 1);
        Self::monomial(vars, m, Rational::one())
    }

    pub fn monomial(vars: &VariableSet, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(vars: &VariableSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    /// Ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.vars.len());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.get(i)).max()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.get(i) > 0)
    }

    pub fn retain<F: FnMut(&Monomial) -> bool>(&mut self, mut keep: F) {
        self.terms.retain(|m, _| keep(m));
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect(),
        }
    }

    /// Product restricted to monomials accepted by `keep`. `keep` must be
    /// downward closed for the result to equal the truncated full product.
    pub fn mul_filtered<F: Fn(&Monomial) -> bool>(&self, other: &Self, keep: F) -> Self {
        self.check_same_vars(other);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            if !keep(ma) {
                continue;
            }
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `d^order / d(var_i)^order`, exact.
    pub fn derivative(&self, i: usize, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e < order {
                continue;
            }
            let falling: BigInt = (e - order + 1..=e).fold(BigInt::one(), |acc, k| acc * k);
            out.add_term(m.with(i, e - order), c * Rational::from_integer(falling));
        }
        out
    }

    /// Antiderivative in `var_i` vanishing on `var_i = 0`.
    pub fn antiderivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            out.add_term(m.with(i, e + 1), c / rational::int(e as i64 + 1));
        }
        out
    }

    /// `∫_0^upper d(var_i)`, with `upper` a polynomial over the same variables.
    pub fn integrate_to(&self, i: usize, upper: &MultiPoly) -> Self {
        self.antiderivative(i).substitute(i, upper)
    }

    /// Replaces `var_i` by the polynomial `value` (same variable set).
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Self {
        self.check_same_vars(value);
        let groups = self.coefficients_in(i);
        let mut out = Self::zero(&self.vars);
        let mut power = Self::one(&self.vars);
        for (e, coeff) in groups.iter().enumerate() {
            if e > 0 {
                power = &power * value;
            }
            if !coeff.is_zero() {
                out = &out + &(coeff * &power);
            }
        }
        out
    }

    /// Binds some variables to rationals; bound variables disappear from the
    /// terms but stay in the variable set.
    pub fn bind(&self, values: &[(usize, Rational)]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (i, v) in values {
                let e = m.get(*i);
                if e > 0 {
                    c2 *= rational::pow(v, e);
                    m2 = m2.with(*i, 0);
                }
            }
            out.add_term(m2, c2);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= rational::pow(&point[i], e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps().iter().enumerate().fold(rational::to_f64(c), |acc, (i, &e)| acc * point[i].powi(e as i32))
            })
            .sum()
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .enumerate()
                    .fold(Complex64::new(rational::to_f64(c), 0.0), |acc, (i, &e)| acc * point[i].powi(e as i32))
            })
            .sum()
    }

    /// Sum of absolute values of the terms at `point`; the natural scale for
    /// deciding whether a float evaluation is "zero".
    pub fn abs_scale_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .enumerate()
                    .fold(rational::to_f64(c).abs(), |acc, (i, &e)| acc * point[i].abs().powi(e as i32))
            })
            .sum()
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &VariableSet) -> Result<Self> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.try_index(name) {
                Some(j) => map.push(Some(j)),
                None if self.uses_var(i) => return Err(Error::UnknownVariable(name.clone())),
                None => map.push(None),
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps: SmallVec<[Exponent; 8]> = SmallVec::from_elem(0, target.len());
            for (i, &e) in m.exps().iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] += e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Same terms, variable set with one name changed.
    pub fn rename(&self, from: &str, to: &str) -> Result<Self> {
        let vars = self.vars.rename(from, to)?;
        Ok(Self { vars, terms: self.terms.clone() })
    }

    /// Dense coefficient list in `var_i`: entry `e` is the coefficient of
    /// `var_i^e`, a polynomial free of `var_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let e = m.get(i) as usize;
            out[e].add_term(m.with(i, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &VariableSet, i: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                out.add_term(m.with(i, m.get(i) + e as u32), v.clone());
            }
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_same_vars(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits off the rational content: `self = scale * normalized` where
    /// `normalized` has coprime integer coefficients and a positive leading
    /// coefficient.
    pub fn rational_content(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scale = Rational::new(num_gcd, den_lcm);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        let inv = Rational::one() / &scale;
        (scale, self.scale(&inv))
    }

    pub fn normalized(&self) -> MultiPoly {
        self.rational_content().1
    }

    fn check_same_vars(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets: {} vs {}",
            self.vars,
            other.vars
        );
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_filtered(rhs, |_| true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}
