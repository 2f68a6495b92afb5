//! Floating-point cross-checks: univariate root finding, radius-of-convergence
//! estimates, distance from the origin to a locus along `ξ`, and a trapezoid
//! evaluation of the Hadamard contour integral.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::borel::XI;
use crate::error::{Error, Result};
use crate::locus::Variety;
use crate::poly::MultiPoly;
use crate::rational::{self, Rational};
use crate::series::FormalSeries;

/// Minimum number of nonzero coefficients a radius estimate will look at.
pub const MIN_NONZERO: usize = 8;
/// Number of trailing ratios averaged by the ratio method.
pub const RATIO_WINDOW: usize = 5;

/// Roots of `Σ c_i x^i` (ascending coefficients, trailing zeros allowed).
/// Exact zero roots are split off; the rest are eigenvalues of the companion
/// matrix (Aberth iteration if the Schur form fails to converge), then a few
/// Newton steps on the original polynomial.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    let zeros = c.iter().take_while(|x| **x == 0.0).count();
    let mut out = vec![Complex64::zero(); zeros.min(c.len().saturating_sub(1))];
    let c = &c[zeros.min(c.len())..];
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    let lead = c[n];
    if n == 1 {
        out.push(Complex64::new(-c[0] / lead, 0.0));
        return out;
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let cc: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let eig: Vec<Complex64> = match Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&cc),
    };
    out.extend(eig.into_iter().map(|z| polish(&cc, z)));
    out
}

const SCHUR_MAX_ITER: usize = 10_000;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let (mut f, mut df) = (Complex64::zero(), Complex64::zero());
    for &a in c.iter().rev() {
        df = df * z + f;
        f = f * z + a;
    }
    (f, df)
}

/// Simultaneous root iteration, started on a circle of the Cauchy radius.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n].norm();
    let radius = 1.0 + c[..n].iter().map(|a| a.norm() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (f, df) = horner(c, z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (f, df) = horner(c, z);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusMethod {
    /// Mean of `|a_j/a_k|^{1/(k−j)}` over the last few consecutive nonzero
    /// pairs.
    Ratio,
    /// `|a_k|^{−1/k}` at the largest nonzero `k`.
    Root,
}

impl FromStr for RadiusMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(Self::Ratio),
            "root" => Ok(Self::Root),
            _ => Err(Error::Invalid(format!("unknown radius method `{s}` (expected ratio|root)"))),
        }
    }
}

impl fmt::Display for RadiusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ratio => "ratio",
            Self::Root => "root",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    /// Max minus min of the averaged ratios (ratio method), or the change
    /// from the previous nonzero order (root method).
    pub spread: f64,
    pub order_used: usize,
}

/// `ln |r|` without overflowing on huge numerators or denominators.
fn ln_abs(r: &Rational) -> f64 {
    fn ln_big(n: &num_bigint::BigInt) -> f64 {
        let shift = n.bits().saturating_sub(60);
        let top: f64 = rational::to_f64(&Rational::from_integer(n.abs() >> shift as usize));
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

pub fn radius_estimate(coeffs: &[Rational], method: RadiusMethod) -> Result<RadiusEstimate> {
    let nz: Vec<usize> = (0..coeffs.len()).filter(|&k| !coeffs[k].is_zero()).collect();
    if nz.is_empty() {
        return Err(Error::AllZeroTail);
    }
    if nz.len() < MIN_NONZERO {
        return Err(Error::TooFewCoefficients { needed: MIN_NONZERO, found: nz.len() });
    }
    // A series whose last nonzero coefficient sits well before the end of the
    // data is a polynomial on this window: no finite radius to estimate.
    let last = *nz.last().expect("nonempty");
    if coeffs.len() - 1 - last >= RATIO_WINDOW {
        return Err(Error::AllZeroTail);
    }
    match method {
        RadiusMethod::Ratio => {
            let vals: Vec<f64> = nz
                .windows(2)
                .rev()
                .take(RATIO_WINDOW)
                .map(|w| {
                    let gap = (w[1] - w[0]) as f64;
                    ((ln_abs(&coeffs[w[0]]) - ln_abs(&coeffs[w[1]])) / gap).exp()
                })
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let max = vals.iter().cloned().fold(f64::MIN, f64::max);
            let min = vals.iter().cloned().fold(f64::MAX, f64::min);
            Ok(RadiusEstimate { value: mean, spread: max - min, order_used: last })
        }
        RadiusMethod::Root => {
            let at = |k: usize| (-ln_abs(&coeffs[k]) / k as f64).exp();
            let value = at(last);
            let prev = nz.iter().rev().nth(1).copied().filter(|&k| k > 0);
            let spread = prev.map_or(0.0, |k| (value - at(k)).abs());
            Ok(RadiusEstimate { value, spread, order_used: last })
        }
    }
}

/// Coefficients `a_0..a_n` of a univariate series in its distinguished
/// variable.
pub fn univariate_coefficients(s: &FormalSeries) -> Result<Vec<Rational>> {
    if s.vars().len() != 1 {
        return Err(Error::Invalid(format!("expected a univariate series, got variables {}", s.vars())));
    }
    Ok(s.distinguished_coefficients().iter().map(MultiPoly::constant_term).collect())
}

/// Smallest modulus of a root in `ξ` of the variety once every other
/// variable is bound, ignoring `ξ = 0` (the germs are regular at the
/// origin). Roots of the first component are kept only if every other
/// component also vanishes there. `+∞` if there is no such root.
pub fn locus_distance_xi(v: &Variety, bindings: &[(&str, Rational)]) -> Result<f64> {
    let xi = v.vars().index(XI)?;
    let bound: Vec<(usize, Rational)> =
        bindings.iter().map(|(n, r)| Ok((v.vars().index(n)?, r.clone()))).collect::<Result<_>>()?;
    let mut per_component: Vec<Vec<Vec<f64>>> = Vec::new();
    for union in v.components() {
        let mut leaves = Vec::new();
        for leaf in union {
            let p = leaf.poly.bind(&bound);
            if let Some(other) = (0..v.vars().len()).find(|&i| i != xi && p.uses_var(i)) {
                return Err(Error::Invalid(format!("no binding for `{}`", v.vars().name(other))));
            }
            if p.is_zero() {
                return Err(Error::IdenticallyZeroLeaf(leaf.label.clone()));
            }
            let mut dense: Vec<f64> = p.coefficients_in(xi).iter().map(|c| rational::to_f64(&c.constant_term())).collect();
            let lowest = dense.iter().position(|c| *c != 0.0).unwrap_or(0);
            dense.drain(..lowest);
            leaves.push(dense);
        }
        per_component.push(leaves);
    }
    let Some((first, rest)) = per_component.split_first() else {
        return Err(Error::Invalid("the variety is the whole space".into()));
    };
    let vanishes = |c: &[f64], z: Complex64| {
        let (mut f, mut scale) = (Complex64::zero(), 0.0);
        for &a in c.iter().rev() {
            f = f * z + a;
            scale = scale * z.norm() + a.abs();
        }
        f.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
    };
    let mut best = f64::INFINITY;
    for z in first.iter().flat_map(|c| roots(c)) {
        if rest.iter().all(|u| u.iter().any(|c| vanishes(c, z))) {
            best = best.min(z.norm());
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusReport {
    pub point: Vec<(String, Rational)>,
    pub estimate: f64,
    pub spread: f64,
    pub method: RadiusMethod,
    pub order_used: usize,
    pub locus_distance: f64,
    pub relative_gap: f64,
    pub verdict: Verdict,
}

impl fmt::Display for RadiusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.point.iter().map(|(n, v)| format!("{n}={}", rational::fmt_rational(v))).collect();
        write!(
            f,
            "point=({}) estimate={} locus={} gap={} verdict={}",
            pt.join(", "),
            rational::fmt_f64(self.estimate),
            rational::fmt_f64(self.locus_distance),
            rational::fmt_f64(self.relative_gap),
            self.verdict
        )
    }
}

/// For each point, estimates the radius of the `ξ`-series produced by
/// `series` and compares it with [`locus_distance_xi`]. A point passes iff
/// the relative gap is within `tol` and the estimate does not exceed the
/// locus distance by more than `tol` (the locus is a superset, so the true
/// radius may not be larger than the distance to it).
pub fn check_radius_vs_locus<F>(
    series: F,
    v: &Variety,
    points: &[Vec<(String, Rational)>],
    method: RadiusMethod,
    tol: f64,
) -> Result<Vec<RadiusReport>>
where
    F: Fn(&[(&str, Rational)]) -> Result<Vec<Rational>>,
{
    points
        .iter()
        .map(|pt| {
            let b: Vec<(&str, Rational)> = pt.iter().map(|(n, r)| (n.as_str(), r.clone())).collect();
            let est = radius_estimate(&series(&b)?, method)?;
            let dist = locus_distance_xi(v, &b)?;
            let gap = if dist > 0.0 && dist.is_finite() {
                (est.value - dist).abs() / dist
            } else {
                f64::INFINITY
            };
            let ok = gap <= tol && est.value <= dist * (1.0 + tol);
            Ok(RadiusReport {
                point: pt.clone(),
                estimate: est.value,
                spread: est.spread,
                method,
                order_used: est.order_used,
                locus_distance: dist,
                relative_gap: gap,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        })
        .collect()
}

/// Trapezoid rule for `(1/2π) ∫ φ(e^{is}) ψ(ξ e^{−is}) ds` with `K` nodes,
/// returned as the coefficients of `ξ^n`. Exact up to rounding once `K`
/// exceeds every Fourier mode `|j − n|` that occurs, which
/// `K > deg φ + deg ψ` guarantees; smaller `K` is rejected as aliasing.
pub fn quadrature_hadamard(phi: &[Rational], psi: &[Rational], nodes: usize) -> Result<Vec<f64>> {
    let deg = |c: &[Rational]| c.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
    let highest = deg(phi) + deg(psi);
    if nodes <= highest {
        return Err(Error::Aliasing { nodes, highest });
    }
    Ok(trapezoid_hadamard(phi, psi, nodes))
}

/// [`quadrature_hadamard`] without the aliasing guard.
pub fn trapezoid_hadamard(phi: &[Rational], psi: &[Rational], nodes: usize) -> Vec<f64> {
    let a: Vec<f64> = phi.iter().map(rational::to_f64).collect();
    let b: Vec<f64> = psi.iter().map(rational::to_f64).collect();
    let zs: Vec<Complex64> = (0..nodes).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64)).collect();
    let phi_at: Vec<Complex64> =
        zs.iter().map(|&z| a.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)).collect();
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let sum: Complex64 = zs.iter().zip(&phi_at).map(|(z, f)| f * z.powi(-(n as i32))).sum();
            b[n] * sum.re / nodes as f64
        })
        .collect()
}

/// Radii of `φ`, `ψ` and `φ ⊙ ψ` by the same method, and whether
/// `R_{φ⊙ψ} ≥ R_φ R_ψ (1 − rel_tol)`.
pub fn hadamard_radius_direction(
    phi: &[Rational],
    psi: &[Rational],
    method: RadiusMethod,
    rel_tol: f64,
) -> Result<(f64, f64, f64, bool)> {
    let prod: Vec<Rational> = phi.iter().zip(psi).map(|(a, b)| a * b).collect();
    let rf = radius_estimate(phi, method)?.value;
    let rg = radius_estimate(psi, method)?.value;
    let rfg = radius_estimate(&prod, method)?.value;
    Ok((rf, rg, rfg, rfg >= rf * rg * (1.0 - rel_tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locus::hadamard_locus_1d;
    use crate::rational::{int, ratio};
    use crate::vars::VariableSet;

    #[test]
    fn zero_roots_and_nilpotent_companions() {
        assert_eq!(roots(&[0.0, 0.0, 1.0]), vec![Complex64::zero(); 2]);
        let r = roots(&[0.0, -1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|z| (z * (z * z - 1.0)).norm() < 1e-12));
    }

    #[test]
    fn aberth_matches_companion() {
        // (x - 1)(x - 2)(x^2 + 1)
        let c = [2.0, -3.0, 3.0, -3.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let mut got: Vec<Complex64> = aberth(&c);
        got.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        let want = [Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < 1e-10, "{g} vs {w}");
        }
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn roots_of_small_polynomials() {
        let mut r = roots(&[6.0, -5.0, 1.0]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!(close(r[0].re, 2.0, 1e-12) && close(r[1].re, 3.0, 1e-12));
        let r = roots(&[1.0, 0.0, 1.0]);
        assert!(r.iter().all(|z| close(z.norm(), 1.0, 1e-12) && z.re.abs() < 1e-12));
        assert!(roots(&[5.0]).is_empty());
        assert_eq!(roots(&[2.0, 4.0, 0.0]), vec![Complex64::new(-0.5, 0.0)]);
    }

    #[test]
    fn roots_backward_error_degree_20() {
        // Wilkinson-like but well separated: roots k/4, k = 1..20.
        let mut c = vec![1.0];
        for k in 1..=20 {
            let r = k as f64 / 4.0;
            let mut next = vec![0.0; c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i] -= a * r;
                next[i + 1] += a;
            }
            c = next;
        }
        for z in roots(&c) {
            let (mut f, mut scale) = (Complex64::zero(), 0.0);
            for &a in c.iter().rev() {
                f = f * z + a;
                scale = scale * z.norm() + a.abs();
            }
            assert!(f.norm() <= 1e-10 * scale, "backward error {}", f.norm() / scale);
        }
    }

    #[test]
    fn geometric_radius_is_exact() {
        let c: Vec<Rational> = (0..20).map(|k| rational::pow(&int(3), k)).collect();
        let e = radius_estimate(&c, RadiusMethod::Ratio).unwrap();
        assert!(close(e.value, 1.0 / 3.0, 1e-14));
        assert!(e.spread.abs() < 1e-14);
        let e = radius_estimate(&c, RadiusMethod::Root).unwrap();
        assert!(close(e.value, 1.0 / 3.0, 1e-12));
    }

    #[test]
    fn dilogarithm_radius_within_ten_percent() {
        let c: Vec<Rational> =
            std::iter::once(int(0)).chain((1..=40).map(|k| ratio(1, k * k))).collect();
        let e = radius_estimate(&c, RadiusMethod::Ratio).unwrap();
        assert!((e.value - 1.0).abs() < 0.1, "{}", e.value);
        assert_eq!(e.order_used, 40);
    }

    #[test]
    fn radius_errors() {
        let zeros = vec![int(0); 12];
        assert_eq!(radius_estimate(&zeros, RadiusMethod::Ratio), Err(Error::AllZeroTail));
        let few: Vec<Rational> = (0..5).map(|_| int(1)).collect();
        assert!(matches!(radius_estimate(&few, RadiusMethod::Ratio), Err(Error::TooFewCoefficients { .. })));
        let mut poly: Vec<Rational> = (0..10).map(|_| int(1)).collect();
        poly.extend(vec![int(0); 10]);
        assert_eq!(radius_estimate(&poly, RadiusMethod::Root), Err(Error::AllZeroTail));
    }

    #[test]
    fn even_series_uses_gapped_ratios() {
        // Σ 4^k ξ^{2k} has radius 1/2.
        let c: Vec<Rational> =
            (0..30).map(|n| if n % 2 == 0 { rational::pow(&int(4), n / 2) } else { int(0) }).collect();
        let e = radius_estimate(&c[..29], RadiusMethod::Ratio).unwrap();
        assert!(close(e.value, 0.5, 1e-12));
    }

    #[test]
    fn locus_distance_examples() {
        let vars = VariableSet::new(&["xi", "q", "p"]).unwrap();
        let euler = crate::text::parse_poly("xi - 1 + p + q - p*q", &vars).unwrap();
        let mut v = Variety::new(&vars);
        v.add_union(vec![("pole".into(), euler), ("origin".into(), MultiPoly::var(&vars, "xi").unwrap())])
            .unwrap();
        let d = locus_distance_xi(&v, &[("q", ratio(1, 3)), ("p", ratio(1, 2))]).unwrap();
        assert!(close(d, 1.0 / 3.0, 1e-14));

        let h = hadamard_locus_1d(&[int(1)], &[int(1)]);
        assert!(close(locus_distance_xi(&h, &[]).unwrap(), 1.0, 1e-14));
        assert_eq!(locus_distance_xi(&hadamard_locus_1d(&[], &[int(1)]), &[]).unwrap(), f64::INFINITY);

        let mut empty = Variety::new(&VariableSet::new(&["xi"]).unwrap());
        assert!(locus_distance_xi(&empty, &[]).is_err());
        empty.add_union(Vec::new()).unwrap();
        assert_eq!(locus_distance_xi(&empty, &[]).unwrap(), f64::INFINITY);

        let mut zero_leaf = Variety::new(&vars);
        zero_leaf.add_union(vec![("q".into(), crate::text::parse_poly("q*xi - q", &vars).unwrap())]).unwrap();
        assert!(matches!(
            locus_distance_xi(&zero_leaf, &[("q", int(0)), ("p", int(0))]),
            Err(Error::IdenticallyZeroLeaf(_))
        ));
    }

    #[test]
    fn intersection_keeps_common_roots() {
        let vars = VariableSet::new(&["xi"]).unwrap();
        let p = |s: &str| crate::text::parse_poly(s, &vars).unwrap();
        let mut v = Variety::new(&vars);
        v.add_union(vec![("a".into(), p("xi^2 - 4*xi + 3"))]).unwrap();
        v.add_union(vec![("b".into(), p("xi - 3")), ("c".into(), p("xi + 5"))]).unwrap();
        assert!(close(locus_distance_xi(&v, &[]).unwrap(), 3.0, 1e-12));
    }

    #[test]
    fn report_line_format() {
        let vars = VariableSet::new(&["xi", "q", "p"]).unwrap();
        let mut v = Variety::new(&vars);
        v.add_union(vec![("pole".into(), crate::text::parse_poly("xi - 2", &vars).unwrap())]).unwrap();
        let pts = vec![vec![("q".to_string(), int(0)), ("p".to_string(), ratio(1, 2))]];
        let series = |_: &[(&str, Rational)]| Ok((0..20).map(|k| rational::pow(&ratio(1, 2), k)).collect());
        let reps = check_radius_vs_locus(series, &v, &pts, RadiusMethod::Ratio, 1e-6).unwrap();
        assert_eq!(reps[0].verdict, Verdict::Pass);
        assert_eq!(reps[0].to_string(), "point=(q=0, p=1/2) estimate=2 locus=2 gap=0 verdict=pass");
    }

    #[test]
    fn quadrature_matches_and_aliases() {
        let phi: Vec<Rational> = (0..7).map(|k| ratio(k + 1, 3)).collect();
        let psi: Vec<Rational> = (0..7).map(|k| ratio(2 - k, 5)).collect();
        let q = quadrature_hadamard(&phi, &psi, 32).unwrap();
        for n in 0..7 {
            assert!((q[n] - rational::to_f64(&(&phi[n] * &psi[n]))).abs() < 1e-12);
        }
        assert_eq!(quadrature_hadamard(&phi, &psi, 4), Err(Error::Aliasing { nodes: 4, highest: 12 }));
    }

    #[test]
    fn hadamard_radius_is_at_least_the_product() {
        let f: Vec<Rational> = (0..40).map(|k| rational::pow(&ratio(3, 2), k) + int(1)).collect();
        let g: Vec<Rational> = (0..40).map(|k| rational::pow(&ratio(5, 4), k)).collect();
        let (rf, rg, rfg, ok) = hadamard_radius_direction(&f, &g, RadiusMethod::Ratio, 1e-6).unwrap();
        assert!(ok, "{rf} {rg} {rfg}");
    }
}
