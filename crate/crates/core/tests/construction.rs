use heun_ghf::che::INT_TOL;
use heun_ghf::ghf::DEFAULT_REL_TOL;
use heun_ghf::{
    c64, classify, ghf_coefficients, ghf_eval, ode_residual, shift_delta_exponent, solution_set,
    swap_singularities, CaseKind, CheParams, Complex64, Error, Route,
};
use proptest::prelude::*;

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..hi, lo..hi).prop_map(|(re, im)| Complex64::new(re, im))
}

#[test]
fn classification_table() {
    let k = |g: f64, d: f64, e: f64| classify(&CheParams::real(g, d, e, 1.0), INT_TOL).kind;
    assert_eq!(k(1.5, 0.0, 1.0), CaseKind::Kummer);
    assert_eq!(k(1.5, 0.0, 0.0), CaseKind::Bessel);
    assert_eq!(k(1.5, -2.0, 1.0), CaseKind::GhfDelta);
    assert_eq!(k(1.5, -2.0, 0.0), CaseKind::GhfDeltaEps0);
    assert_eq!(k(1.5, 3.0, 1.0), CaseKind::NeedsDeltaShift);
    assert_eq!(k(-1.0, 0.5, 1.0), CaseKind::NeedsSwap);
    assert_eq!(k(0.5, 1.0, 1.0), CaseKind::Exceptional);
    assert_eq!(k(0.5, 0.5, 1.0), CaseKind::Unsupported);
    assert_eq!(k(2.0, 1.0, 1.0), CaseKind::NeedsSwap);
}

#[test]
fn exceptional_and_unsupported_are_errors() {
    assert!(matches!(
        solution_set(&CheParams::real(0.5, 1.0, 1.0, 1.0)),
        Err(Error::Exceptional)
    ));
    assert!(matches!(
        solution_set(&CheParams::real(0.5, 0.5, 1.0, 1.0)),
        Err(Error::Unsupported)
    ));
}

#[test]
fn swap_is_an_involution() {
    let p = CheParams::new(c64(0.3, 1.0), c64(-2.0, 0.0), c64(0.4, -0.7), c64(1.2, 0.1))
        .with_q(c64(0.5, 0.5));
    assert_eq!(swap_singularities(&swap_singularities(&p)), p);
}

#[test]
fn delta_shift_exponent() {
    let p = CheParams::real(1.5, 3.0, 1.0, 2.0);
    let (s, exponent) = shift_delta_exponent(&p);
    assert_eq!(exponent, c64(-2.0, 0.0));
    assert_eq!(s.delta, c64(-1.0, 0.0));
}

#[test]
fn kummer_degeneration_is_exact() {
    let (g, e, a) = (c64(1.4, -0.3), c64(0.9, 0.5), c64(-0.2, 0.7));
    let set = solution_set(&CheParams::new(g, c64(0.0, 0.0), e, a)).unwrap();
    assert_eq!(set.solutions.len(), 1);
    let s = &set.solutions[0];
    assert_eq!(s.q, a);
    let got = ghf_coefficients(&s.ghf, 40).unwrap().coeffs;
    let mut want = c64(1.0, 0.0);
    for (n, c) in got.iter().enumerate() {
        if n > 0 {
            let m = (n - 1) as f64;
            want *= -e * (a / e + m) / ((g + m) * (m + 1.0));
        }
        assert!(
            (c - want).norm() <= 4.0 * f64::EPSILON * want.norm() * (n as f64 + 1.0),
            "n={n}"
        );
    }
}

fn parameters() -> impl Strategy<Value = (Complex64, Complex64, Complex64, usize)> {
    (
        complex(0.3, 1.5),
        complex(-1.0, 1.0),
        complex(-1.0, 1.0),
        0usize..=3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_route_satisfies_the_equation(
        (g, e, a, n) in parameters(),
        route in 0usize..4,
        delta_free in complex(0.2, 0.8),
    ) {
        let p = match route {
            0 => CheParams::new(g, c64(-(n as f64), 0.0), e, a),
            1 => CheParams::new(g, c64(n as f64 + 2.0, 0.0), e, a),
            2 => CheParams::new(c64(-(n as f64), 0.0), delta_free, e, a),
            _ => CheParams::new(c64(n as f64 + 2.0, 0.0), delta_free, e, a),
        };
        let set = solution_set(&p).unwrap();
        let expected = [Route::Direct, Route::DeltaShift, Route::Swap, Route::SwapShift][route];
        prop_assert_eq!(set.route, expected);
        let base: f64 = if route >= 2 { 1.0 } else { 0.0 };
        for s in set.valid() {
            let pq = set.params.with_q(s.q);
            for x in [0.1, 0.25, 0.5, 0.7, 0.9] {
                let z = c64((base - x).abs(), 0.0);
                let v = ghf_eval(&s.ghf, z, DEFAULT_REL_TOL).unwrap();
                let r = ode_residual(v.value, v.first, v.second, &pq, z).unwrap().norm();
                prop_assert!(r < 1e-8, "route {route}, z={z}, residual {r:e}");
            }
        }
    }

    #[test]
    fn classification_is_stable_under_tiny_noise(
        n in 0i64..5,
        noise in complex(-1e-11, 1e-11),
        g in complex(0.3, 1.5),
    ) {
        let exact = classify(&CheParams::new(g, c64(-(n as f64), 0.0), c64(1.0, 0.0), c64(1.0, 0.0)), INT_TOL);
        let noisy = classify(&CheParams::new(g, c64(-(n as f64), 0.0) + noise, c64(1.0, 0.0), c64(1.0, 0.0)), INT_TOL);
        prop_assert_eq!(exact.kind, noisy.kind);
        prop_assert_eq!(exact.n_value, noisy.n_value);
    }

    #[test]
    fn derivatives_match_finite_differences((g, e, a, n) in parameters(), route in 0usize..2) {
        let p = if route == 0 {
            CheParams::new(g, c64(-(n as f64), 0.0), e, a)
        } else {
            CheParams::new(g, c64(n as f64 + 2.0, 0.0), e, a)
        };
        let set = solution_set(&p).unwrap();
        let h = 1e-5;
        for s in set.valid() {
            for z in [c64(0.2, 0.1), c64(0.45, -0.2), c64(0.6, 0.0), c64(-0.3, 0.4), c64(0.8, 0.3)] {
                let f = |x: Complex64| ghf_eval(&s.ghf, x, DEFAULT_REL_TOL).unwrap();
                let v = f(z);
                let (fp, fm) = (f(z + h), f(z - h));
                let d1 = (fp.value - fm.value) / (2.0 * h);
                let d2 = (fp.first - fm.first) / (2.0 * h);
                prop_assert!((d1 - v.first).norm() <= 1e-6 * v.first.norm().max(1.0));
                prop_assert!((d2 - v.second).norm() <= 1e-6 * v.second.norm().max(1.0));
            }
        }
    }

    #[test]
    fn summation_terminates_far_from_the_base_point((g, e, a, n) in parameters()) {
        let set = solution_set(&CheParams::new(g, c64(-(n as f64), 0.0), e, a)).unwrap();
        for s in set.valid() {
            for r in [0.5, 2.0, 10.0] {
                let v = ghf_eval(&s.canonical_ghf, c64(r * 0.6, r * 0.8), DEFAULT_REL_TOL).unwrap();
                prop_assert!(v.value.is_finite() && v.terms < heun_ghf::ghf::MAX_TERMS);
            }
        }
    }
}
