//! Invariants of the series ring, the star products and the Borel plane.

mod common;

use common::{free_series, series};
use proptest::prelude::*;
use starborel::borel::{self, borel_star, hadamard, odot_ij, BorelSeries};
use starborel::rational::{self, ratio, to_f64, Rational};
use starborel::star::{self, StarKind};
use starborel::{FormalSeries, MultiPoly, Truncation, VariableSet};

fn v(n: usize) -> VariableSet {
    VariableSet::phase_space("t", n)
}

fn kind() -> impl Strategy<Value = StarKind> {
    prop_oneof![Just(StarKind::Standard), Just(StarKind::Moyal)]
}

/// Wide enough in the phase-space degree that nothing is lost between
/// chained products of the small inputs below.
const WIDE: Truncation = Truncation::new(4, 40);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(
        f in series(v(1), Truncation::new(3, 4), 4, 6),
        g in series(v(1), Truncation::new(3, 4), 4, 6),
        h in series(v(1), Truncation::new(3, 4), 4, 6),
    ) {
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
    }

    #[test]
    fn mixed_partials_commute(f in series(v(2), Truncation::new(3, 6), 3, 8)) {
        for (a, b) in [("p1", "q1"), ("p1", "q2"), ("t", "p2")] {
            let ab = f.partial_derivative(a, 1).unwrap().partial_derivative(b, 1).unwrap();
            let ba = f.partial_derivative(b, 1).unwrap().partial_derivative(a, 1).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn integrate_then_differentiate(f in series(v(1), Truncation::new(4, 4), 4, 8)) {
        for var in ["t", "p", "q"] {
            let back = f.integrate(var).unwrap().partial_derivative(var, 1).unwrap();
            prop_assert_eq!(back.trunc(), f.trunc());
            prop_assert_eq!(back, f.clone());
        }
    }

    #[test]
    fn evaluate_partial_commutes_with_ring_ops(
        f in series(v(1), Truncation::new(3, 40), 3, 6),
        g in series(v(1), Truncation::new(3, 40), 3, 6),
        a in -5i64..=5,
        b in 1i64..=3,
    ) {
        let at = [("p", ratio(a, b))];
        let ev = |s: &FormalSeries| s.evaluate_partial(&at).unwrap();
        prop_assert_eq!(ev(&f.add(&g).unwrap()), ev(&f).add(&ev(&g)).unwrap());
        prop_assert_eq!(ev(&f.mul(&g).unwrap()), ev(&f).mul(&ev(&g)).unwrap());
    }

    #[test]
    fn star_is_associative(
        k in kind(),
        n in 1usize..=2,
        seed in any::<u64>(),
    ) {
        let mut s = starborel::random::Sampler::new(seed);
        let mut gen = || FormalSeries::new(s.series(&v(n), Truncation::new(2, 3), 4).into_poly(), WIDE);
        let (f, g, h) = (gen(), gen(), gen());
        let left = star::star(k, &star::star(k, &f, &g).unwrap(), &h).unwrap();
        let right = star::star(k, &f, &star::star(k, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn moyal_commutator_deforms_poisson_bracket(
        f in free_series(v(1), WIDE, 3, 5),
        g in free_series(v(1), WIDE, 3, 5),
    ) {
        let c = star::moyal_commutator(&f, &g).unwrap();
        let t0: MultiPoly = c.distinguished_coefficients()[0].clone();
        let pb = star::poisson_bracket(&f, &g).unwrap();
        prop_assert_eq!(FormalSeries::new(t0, c.trunc()), pb);
    }

    #[test]
    fn transition_intertwines_the_products(n in 1usize..=2, seed in any::<u64>()) {
        let mut s = starborel::random::Sampler::new(seed);
        let mut gen = || FormalSeries::new(s.series(&v(n), Truncation::new(2, 3), 4).into_poly(), WIDE);
        let (f, g) = (gen(), gen());
        let left = star::transition_t(&star::standard_star(&f, &g).unwrap(), false).unwrap();
        let right = star::moyal_star(&star::transition_t(&f, false).unwrap(), &star::transition_t(&g, false).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_of_polynomials_is_polynomial(
        k in kind(),
        f in series(v(1), Truncation::new(2, 4), 3, 5),
        g in series(v(1), Truncation::new(2, 4), 3, 5),
    ) {
        // Raising the t-window adds no terms: the product is a polynomial.
        let lift = |s: &FormalSeries, w| FormalSeries::new(s.poly().clone(), w);
        let small = star::star(k, &lift(&f, Truncation::new(20, 40)), &lift(&g, Truncation::new(20, 40))).unwrap();
        let large = star::star(k, &lift(&f, Truncation::new(30, 40)), &lift(&g, Truncation::new(30, 40))).unwrap();
        prop_assert_eq!(small.poly(), large.poly());
    }

    #[test]
    fn unit_is_neutral(k in kind(), f in series(v(2), Truncation::new(3, 4), 3, 8)) {
        let one = FormalSeries::one(f.vars(), f.trunc());
        prop_assert_eq!(star::star(k, &one, &f).unwrap(), f.clone());
        prop_assert_eq!(star::star(k, &f, &one).unwrap(), f);
    }

    #[test]
    fn transition_inverse_pair(f in series(v(2), Truncation::new(4, 6), 3, 8)) {
        let there = star::transition_t(&f, false).unwrap();
        prop_assert_eq!(star::transition_t(&there, true).unwrap(), f.clone());
        let back = star::transition_t(&f, true).unwrap();
        prop_assert_eq!(star::transition_t(&back, false).unwrap(), f);
    }

    #[test]
    fn borel_round_trip_and_linearity(
        f in series(v(1), Truncation::new(6, 4), 6, 8),
        g in series(v(1), Truncation::new(6, 4), 6, 8),
        c in -4i64..=4,
    ) {
        let bf = borel::borel(&f).unwrap();
        prop_assert_eq!(borel::inverse_borel(&bf).unwrap(), f.clone());
        let combo = f.add(&g.scale(&rational::int(c))).unwrap();
        let lhs = borel::borel(&combo).unwrap().into_series();
        let rhs = bf.series().add(&borel::borel(&g).unwrap().series().scale(&rational::int(c))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn borel_star_is_associative(k in kind(), seed in any::<u64>()) {
        let mut s = starborel::random::Sampler::new(seed);
        let vx = VariableSet::phase_space("xi", 1);
        let mut gen = || BorelSeries::from_series(FormalSeries::new(s.series(&vx, Truncation::new(2, 3), 3).into_poly(), WIDE));
        let (f, g, h) = (gen(), gen(), gen());
        let left = borel_star(k, &borel_star(k, &f, &g).unwrap(), &h).unwrap();
        let right = borel_star(k, &f, &borel_star(k, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn borel_star_matches_closed_form(seed in any::<u64>(), n in 1usize..=2) {
        let mut s = starborel::random::Sampler::new(seed);
        let vx = VariableSet::phase_space("xi", n);
        let f = BorelSeries::from_series(s.series(&vx, Truncation::new(5, 5), 4));
        let g = BorelSeries::from_series(s.series(&vx, Truncation::new(5, 5), 4));
        prop_assert_eq!(borel_star(StarKind::Standard, &f, &g).unwrap(), borel::borel_star_closed_form(&f, &g).unwrap());
    }

    #[test]
    fn hadamard_symmetric_and_bilinear(
        a in series(VariableSet::new(&["xi"]).unwrap(), Truncation::new(8, 0), 8, 8),
        b in series(VariableSet::new(&["xi"]).unwrap(), Truncation::new(8, 0), 8, 8),
        c in series(VariableSet::new(&["xi"]).unwrap(), Truncation::new(8, 0), 8, 8),
        k in -3i64..=3,
    ) {
        prop_assert_eq!(hadamard(&a, &b).unwrap(), hadamard(&b, &a).unwrap());
        let lin = a.add(&b.scale(&rational::int(k))).unwrap();
        let rhs = hadamard(&a, &c).unwrap().add(&hadamard(&b, &c).unwrap().scale(&rational::int(k))).unwrap();
        prop_assert_eq!(hadamard(&lin, &c).unwrap(), rhs);
    }

    #[test]
    fn odot_is_symmetric_for_symmetric_input(g in series(VariableSet::new(&["t", "zi", "zj", "w"]).unwrap(), Truncation::new(2, 6), 3, 6)) {
        // Symmetrize G in (zi, zj).
        let vars = g.vars().clone();
        let swapped = MultiPoly::from_terms(
            &vars,
            g.poly().terms().map(|(m, c)| (m.with(1, m.get(2)).with(2, m.get(1)), c.clone())),
        );
        let f = FormalSeries::new(g.poly() + &swapped, g.trunc());
        prop_assert_eq!(odot_ij(&f, "zi", "zj", "xi").unwrap(), odot_ij(&f, "zj", "zi", "xi").unwrap());
    }
}

/// Geometric bound for products of Borel images whose coefficients satisfy
/// `|f_{m,a,b}| ≤ ρ^{-(m+a+b)}`: every output coefficient of `ξ^N q^α p^β`
/// is at most `(N+1)³ (α+1)(β+1) 2^{α+β} max(1, 4/ρ)^N ρ^{-(N+α+β)}`, and
/// for `T̂^{±1}` at most `(N+1) 2^{α+β} max(1, 2/ρ)^N ρ^{-(N+α+β)}`.
fn product_bound(n: u32, a: u32, b: u32, rho: f64) -> f64 {
    let (n, a, b) = (n as f64, a as f64, b as f64);
    (n + 1.0).powi(3) * (a + 1.0) * (b + 1.0) * 2f64.powf(a + b) * (4.0 / rho).max(1.0).powf(n) * rho.powf(-(n + a + b))
}

fn t_bound(n: u32, a: u32, b: u32, rho: f64) -> f64 {
    let (n, a, b) = (n as f64, a as f64, b as f64);
    (n + 1.0) * 2f64.powf(a + b) * (2.0 / rho).max(1.0).powf(n) * rho.powf(-(n + a + b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Convergence is preserved: bounded inputs give geometrically bounded
    /// outputs, checked through order 20 in ξ.
    #[test]
    fn geometric_bounds_are_preserved(seed in any::<u64>(), rho_den in 1i64..=3) {
        let mut s = starborel::random::Sampler::new(seed);
        let rho = ratio(1, rho_den);
        let vx = VariableSet::phase_space("xi", 1);
        let w = Truncation::new(20, 4);
        let mut gen = || {
            let raw = s.series(&vx, Truncation::new(10, 4), 6);
            // Rescale each coefficient into [-ρ^{-deg}, ρ^{-deg}].
            let p = MultiPoly::from_terms(&vx, raw.poly().terms().map(|(m, c)| {
                let unit = c / Rational::from_integer(5.into());
                (m.clone(), unit / rational::pow(&rho, m.degree()))
            }));
            BorelSeries::from_series(FormalSeries::new(p, w))
        };
        let (f, g) = (gen(), gen());
        let r = to_f64(&rho);
        let check = |out: &BorelSeries, bound: &dyn Fn(u32, u32, u32, f64) -> f64| {
            out.series().poly().terms().all(|(m, c)| to_f64(c).abs() <= bound(m.get(0), m.get(1), m.get(2), r) * (1.0 + 1e-12))
        };
        for k in [StarKind::Standard, StarKind::Moyal] {
            prop_assert!(check(&borel_star(k, &f, &g).unwrap(), &product_bound));
        }
        prop_assert!(check(&borel::borel_t(&f, false).unwrap(), &t_bound));
        prop_assert!(check(&borel::borel_t(&f, true).unwrap(), &t_bound));
    }
}
