//! Candidate singular varieties for convolution, Hadamard and `⊙_ij`
//! expressions, as intersections of unions of labelled polynomial zero
//! sets.
//!
//! Every construction returns a superset of the true singular set: roots
//! are never materialized, and conditions quantified over roots are folded
//! into leading coefficients, constant coefficients and discriminants.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentSlice;
use crate::poly::MultiPoly;
use crate::poly_algebra::{self, UniOverPoly};
use crate::rational::{self, Rational};
use crate::vars::VariableSet;

#[derive(Clone, Debug, PartialEq)]
pub struct Leaf {
    pub label: String,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variety {
    vars: VariableSet,
    /// Intersection over the outer list of unions over the inner lists. An
    /// empty inner list is the empty set; an empty outer list is the whole
    /// space.
    components: Vec<Vec<Leaf>>,
}

impl Variety {
    /// The whole space over `vars`.
    pub fn new(vars: &VariableSet) -> Self {
        Self { vars: vars.clone(), components: Vec::new() }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn components(&self) -> &[Vec<Leaf>] {
        &self.components
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Leaf> {
        self.components.iter().flatten()
    }

    /// Intersects with the union of `leaves`. Nonzero constant leaves are
    /// dropped (their zero set is empty), duplicates are merged, and a leaf
    /// that is identically zero is rejected.
    pub fn add_union(&mut self, leaves: Vec<(String, MultiPoly)>) -> Result<()> {
        let mut union: Vec<Leaf> = Vec::new();
        for (label, poly) in leaves {
            if poly.is_zero() {
                return Err(Error::IdenticallyZeroLeaf(label));
            }
            if poly.is_constant() {
                continue;
            }
            let poly = poly.embed(&self.vars)?.normalized();
            if union.iter().any(|l| l.poly == poly) {
                continue;
            }
            union.push(Leaf { label, poly });
        }
        self.components.push(union);
        Ok(())
    }

    /// Product of the leaves of component `k`: a single polynomial with the
    /// same zero set as the union.
    pub fn component_product(&self, k: usize) -> MultiPoly {
        self.components[k].iter().fold(MultiPoly::one(&self.vars), |acc, l| &acc * &l.poly)
    }

    /// Orders a name→value binding as a point of this variety's space.
    pub fn point(&self, bindings: &[(&str, Rational)]) -> Result<Vec<Rational>> {
        let mut pt: Vec<Option<Rational>> = vec![None; self.vars.len()];
        for (name, v) in bindings {
            pt[self.vars.index(name)?] = Some(v.clone());
        }
        pt.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Invalid(format!("no value for `{}`", self.vars.name(i)))))
            .collect()
    }

    /// Exact membership at a rational point.
    pub fn contains(&self, point: &[Rational]) -> bool {
        self.components
            .iter()
            .all(|u| u.iter().any(|l| l.poly.eval(point).is_zero()))
    }

    /// Float membership: a leaf vanishes when `|P(x)| ≤ tol · Σ|terms|`.
    pub fn contains_approx(&self, point: &[f64], tol: f64) -> bool {
        self.components.iter().all(|u| {
            u.iter().any(|l| l.poly.eval_f64(point).abs() <= tol * l.poly.abs_scale_f64(point))
        })
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "intersect {{")?;
        for union in &self.components {
            writeln!(f, "  union {{")?;
            for leaf in union {
                writeln!(f, "    cond \"{}\": {}", leaf.label, leaf.poly)?;
            }
            writeln!(f, "  }}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvCase {
    /// `P(P̄, z_2, …)` is not identically zero.
    Generic,
    /// `P̄` is itself a root branch: `P(P̄, z_2, …) ≡ 0`.
    RootBranch,
}

/// `P(P̄, z_2, …)` over `P̄`'s variables.
fn compose_endpoint(p: &MultiPoly, var: &str, pbar: &MultiPoly) -> Result<MultiPoly> {
    let out = pbar.vars();
    if out.contains(var) {
        return Err(Error::NameCollision(var.to_string()));
    }
    let work = out.extend(&[var])?;
    let lifted = p.embed(&work)?;
    let composed = lifted.substitute(work.len() - 1, &pbar.embed(&work)?);
    composed.embed(out)
}

pub fn conv_case(p: &MultiPoly, var: &str, pbar: &MultiPoly) -> Result<ConvCase> {
    Ok(if compose_endpoint(p, var, pbar)?.is_zero() { ConvCase::RootBranch } else { ConvCase::Generic })
}

/// Candidate singular locus of a convolution whose integrand has the
/// `var`-simple singular polynomial `P` and whose endpoint map is `P̄`. The
/// result lives over `P̄`'s variable set, which must contain every other
/// variable of `P`.
pub fn conv_locus(p: &MultiPoly, var: &str, pbar: &MultiPoly) -> Result<Variety> {
    let up = UniOverPoly::new(p, var)?;
    if up.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !poly_algebra::is_simple(&up) {
        return Err(Error::NotSimple(var.to_string()));
    }
    let origin = vec![Rational::zero(); pbar.vars().len()];
    if !pbar.eval(&origin).is_zero() {
        return Err(Error::NotVanishingAtOrigin);
    }
    let out = pbar.vars();
    let vi = up.var();
    let mut leaves = vec![
        ("leading".to_string(), up.leading().embed(out)?),
        ("origin".to_string(), p.substitute(vi, &MultiPoly::zero(p.vars())).embed(out)?),
    ];
    if up.degree() > Some(0) {
        leaves.push(("disc".to_string(), poly_algebra::discriminant_locus(&up)?.embed(out)?));
    }
    let endpoint = compose_endpoint(p, var, pbar)?;
    if !endpoint.is_zero() {
        leaves.push(("endpoint".to_string(), endpoint));
    }
    let mut v = Variety::new(out);
    v.add_union(leaves)?;
    Ok(v)
}

/// The same variety with `var` removed; every leaf must be free of it.
pub fn conv_locus_drop_variable(v: &Variety, var: &str) -> Result<Variety> {
    let i = v.vars.index(var)?;
    for leaf in v.leaves() {
        if leaf.poly.uses_var(i) {
            return Err(Error::LeafDependsOn { label: leaf.label.clone(), var: var.to_string() });
        }
    }
    let vars = v.vars.remove(&[i])?;
    let components = v
        .components
        .iter()
        .map(|u| {
            u.iter()
                .map(|l| Ok(Leaf { label: l.label.clone(), poly: l.poly.embed(&vars)? }))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Variety { vars, components })
}

/// `{ξ = 0} ∪ {ξ = s·t : s ∈ S_f, t ∈ S_g}` as the single leaf `ξ ∏(ξ − st)`.
pub fn hadamard_locus_1d(sf: &[Rational], sg: &[Rational]) -> Variety {
    let vars = VariableSet::new(&["xi"]).expect("valid name");
    let xi = MultiPoly::var_at(&vars, 0);
    let mut products: Vec<Rational> = Vec::new();
    for s in sf {
        for t in sg {
            let st = s * t;
            if !products.contains(&st) {
                products.push(st);
            }
        }
    }
    let poly = products
        .iter()
        .fold(xi.clone(), |acc, st| &acc * &(&xi - &MultiPoly::constant(&vars, st.clone())));
    let mut v = Variety::new(&vars);
    v.add_union(vec![("origin-and-products".into(), poly)]).expect("nonzero leaf");
    v
}

/// Names of the five-variable Hadamard space.
pub const HADAMARD_VARS: [&str; 5] = ["xi1", "xi2", "xi3", "q", "p"];

/// Candidate locus for the Hadamard part `F(ξ_1, ξ_2, ξ_3, q, p)` built from
/// a `p`-simple `P_f(ξ, q, p)` and a `q`-simple `Q_g(ξ, q, p)` (each input's
/// distinguished variable is its `ξ`).
///
/// With `A(z) = P_f(ξ_1, q, p + z)` and `B(z) = z^N Q_g(ξ_2, q + ξ_3/z, p)`,
/// `N = deg_q Q_g`, the polynomial `W = A·B` has `M + N` distinct nonzero
/// roots off the union of: its leading and constant `z`-coefficients, the
/// discriminants of `A` and `B`, their resultant, and `ξ_3 = 0`. Since
/// `Disc(AB) = Disc(A) Disc(B) Res(A, B)²`, the three middle leaves cut out
/// exactly `{disc_z W = 0}` without expanding it.
pub fn hadamard_locus_5var(pf: &MultiPoly, qg: &MultiPoly) -> Result<Variety> {
    let (a, b) = hadamard_parts(pf, qg)?;
    let out = VariableSet::new(&HADAMARD_VARS)?;
    let zi = a.vars().index("z")?;
    let (ua, ub) = (UniOverPoly::at(&a, zi), UniOverPoly::at(&b, zi));
    let uw = UniOverPoly::at(&(&a * &b), zi);
    let mut leaves = vec![
        ("leading_z".to_string(), uw.leading().embed(&out)?),
        ("constant_z".to_string(), uw.coeffs()[0].embed(&out)?),
    ];
    for (label, u) in [("disc_z(A)", &ua), ("disc_z(B)", &ub)] {
        if u.degree() > Some(0) {
            leaves.push((label.to_string(), poly_algebra::discriminant_locus(u)?.embed(&out)?));
        }
    }
    if ua.degree() > Some(0) || ub.degree() > Some(0) {
        leaves.push(("res_z(A,B)".to_string(), poly_algebra::sylvester_resultant(&ua, &ub)?.embed(&out)?));
    }
    leaves.push(("xi3".to_string(), MultiPoly::var(&out, "xi3")?));
    let mut v = Variety::new(&out);
    v.add_union(leaves)?;
    Ok(v)
}

/// `(A, B)` of [`hadamard_locus_5var`] over `(xi1, xi2, xi3, q, p, z)`,
/// after checking simplicity of the inputs.
pub fn hadamard_parts(pf: &MultiPoly, qg: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    let out = VariableSet::new(&HADAMARD_VARS)?;
    let pf = pf.rename(pf.vars().distinguished(), "xi1")?.embed(&out)?;
    let qg = qg.rename(qg.vars().distinguished(), "xi2")?.embed(&out)?;
    let (qi, pi) = (out.index("q")?, out.index("p")?);
    for (poly, var) in [(&pf, pi), (&qg, qi)] {
        let u = UniOverPoly::at(poly, var);
        if u.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly_algebra::is_simple(&u) {
            return Err(Error::NotSimple(out.name(var).to_string()));
        }
    }
    let a = poly_algebra::shift_transform(&pf, "p", "p", "z")?;
    let b = poly_algebra::shift_transform(&qg, "q", "q", "_w")?;
    let b = poly_algebra::reciprocal_transform(&b, "_w", "_s", "z")?;
    let s_idx = b.vars().index("_s")?;
    let xi3 = MultiPoly::var(b.vars(), "xi3")?;
    let b = b.substitute(s_idx, &xi3).embed(a.vars())?;
    Ok((a, b))
}

/// `W = A·B` of [`hadamard_locus_5var`], for root-count cross-checks.
pub fn hadamard_w(pf: &MultiPoly, qg: &MultiPoly) -> Result<MultiPoly> {
    let (a, b) = hadamard_parts(pf, qg)?;
    Ok(&a * &b)
}

/// `Q(z) = z^N P(…, z_i + z, …, z_j + ξ/z, …)` over `P`'s variables plus `ξ`
/// (named `xi`) and `z`, with `N ≥ 0` minimal.
pub fn odot_q(p: &MultiPoly, i: &str, j: &str, xi: &str) -> Result<(MultiPoly, u32)> {
    if i == j {
        return Err(Error::SameVariable(i.to_string()));
    }
    let base = p.vars();
    let (ii, jj) = (base.index(i)?, base.index(j)?);
    let zname = fresh(base, "z");
    let uname = fresh(base, "u");
    if base.contains(xi) {
        return Err(Error::NameCollision(xi.to_string()));
    }
    let work = base.extend(&[xi, zname.as_str(), uname.as_str()])?;
    let (x, z, u) = (work.len() - 3, work.len() - 2, work.len() - 1);
    let v = |k: usize| MultiPoly::var_at(&work, k);
    let lifted = p.embed(&work)?;
    let lifted = lifted.substitute(ii, &(&v(ii) + &v(z)));
    let lifted = lifted.substitute(jj, &(&v(jj) + &(&v(x) * &v(u))));
    let slice = LaurentSlice::collapse(&lifted, z, u)?;
    let (coeffs, n) = slice.clear_denominator();
    let qvars = slice.vars().extend(&[zname.as_str()])?;
    let lifted: Vec<MultiPoly> = coeffs.iter().map(|c| c.embed(&qvars)).collect::<Result<_>>()?;
    Ok((MultiPoly::from_coefficients_in(&qvars, qvars.len() - 1, &lifted), n))
}

fn fresh(vars: &VariableSet, base: &str) -> String {
    let mut n = format!("_{base}");
    while vars.contains(&n) {
        n.push('_');
    }
    n
}

/// Candidate locus for `⊙_ij` applied to a germ singular on `{P = 0}`:
/// leading and constant `z`-coefficients of `Q` and its `z`-discriminant,
/// over `P`'s variables plus `xi`.
pub fn odot_locus(p: &MultiPoly, i: &str, j: &str, xi: &str) -> Result<Variety> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, _) = odot_q(p, i, j, xi)?;
    let out = p.vars().extend(&[xi])?;
    let zi = q.vars().len() - 1;
    let uq = UniOverPoly::at(&q, zi);
    let mut leaves = vec![
        ("leading_z".to_string(), uq.leading().embed(&out)?),
        ("constant_z".to_string(), uq.coeffs()[0].embed(&out)?),
    ];
    if uq.degree() > Some(0) {
        leaves.push(("disc_z".to_string(), poly_algebra::discriminant_locus(&uq)?.embed(&out)?));
    }
    let mut v = Variety::new(&out);
    v.add_union(leaves)?;
    Ok(v)
}

/// Convenience for tests and the CLI: parses `a,b,c` into rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(rational::parse_rational).collect()
}
