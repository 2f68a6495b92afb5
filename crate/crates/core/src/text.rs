//! The repo-wide text grammar for series and polynomials.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | name ['^' integer]
//! ```
//!
//! Whitespace is insignificant. Canonical output lists terms in descending
//! graded-lexicographic order and factors in variable-set order.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::{self, Rational};
use crate::vars::VariableSet;

/// A parsed term before it is attached to a variable set.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub coeff: Rational,
    pub powers: Vec<(String, u32)>,
}

pub fn parse_terms(input: &str) -> Result<Vec<RawTerm>> {
    Parser { src: input.as_bytes(), pos: 0 }.expr()
}

/// Every variable name mentioned in `input`, in order of first appearance.
pub fn names_in(input: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for t in parse_terms(input)? {
        for (n, _) in t.powers {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

pub fn parse_poly(input: &str, vars: &VariableSet) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero(vars);
    for t in parse_terms(input)? {
        let mut m = Monomial::one(vars.len());
        for (name, e) in &t.powers {
            let i = vars.index(name)?;
            m = m.with(i, m.get(i) + e);
        }
        p.add_term(m, t.coeff);
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rational::one()
            }
            None => return self.err("empty expression"),
            _ => Rational::one(),
        };
        loop {
            let mut t = self.term()?;
            t.coeff *= &sign;
            terms.push(t);
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut t = RawTerm { coeff: Rational::one(), powers: Vec::new() };
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => t.coeff *= self.number()?,
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.ident();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.integer()?
                    } else {
                        1
                    };
                    t.powers.push((name, e));
                }
                Some(c) => return self.err(format!("expected a factor, found `{}`", c as char)),
                None => return self.err("expected a factor"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<u32> {
        let d = self.digits()?;
        d.parse().or_else(|_| self.err("exponent too large"))
    }

    fn number(&mut self) -> Result<Rational> {
        let num = self.digits()?.to_string();
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.digits()?.to_string()
        } else {
            "1".to_string()
        };
        rational::parse_rational(&format!("{num}/{den}")).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { pos: self.pos, msg },
            other => other,
        })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

fn fmt_monomial(m: &Monomial, vars: &VariableSet) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.name(i), e)),
        }
    }
    parts.join("*")
}

/// Canonical form; `0` for the zero polynomial.
pub fn format_poly(p: &MultiPoly) -> String {
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&rational::fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&fmt_monomial(m, p.vars()));
        } else {
            out.push_str(&rational::fmt_rational(&mag));
            out.push('*');
            out.push_str(&fmt_monomial(m, p.vars()));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// Parses with variables inferred from the text; `first` becomes index 0.
pub fn parse_poly_inferred(input: &str, first: &str) -> Result<MultiPoly> {
    let names = names_in(input)?;
    let vars = VariableSet::infer(first, &names)?;
    parse_poly(input, &vars)
}
