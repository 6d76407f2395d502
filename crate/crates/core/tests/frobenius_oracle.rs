use heun_ghf::{
    c64, frobenius_coefficients, frobenius_eval, ghf_eval, ode_residual, CheParams, Error,
    GhfSolution,
};

fn params() -> CheParams {
    CheParams::new(c64(0.7, 0.2), c64(-0.4, 0.1), c64(1.1, -0.3), c64(0.5, 0.6))
        .with_q(c64(-0.3, 0.8))
}

#[test]
fn first_coefficients_in_closed_form() {
    let p = params();
    let (g, d, e, a, q) = (p.gamma, p.delta, p.epsilon, p.alpha, p.q.unwrap());
    let f = frobenius_coefficients(&p, 3).unwrap();
    let c = &f.coeffs.coeffs;
    assert_eq!(c[0], c64(1.0, 0.0));
    assert!((c[1] + q / g).norm() < 1e-15);
    let c2 = ((q - (g + d - e)) * q / g + a) / (2.0 * (g + 1.0));
    assert!((c[2] - c2).norm() < 1e-14);
}

#[test]
fn recurrence_audit() {
    let f = frobenius_coefficients(&params(), 80).unwrap();
    assert!(f.recurrence_residual() < 1e-13);
}

#[test]
fn kummer_coefficients_and_values() {
    let (g, e, a) = (c64(1.3, 0.4), c64(0.8, -0.2), c64(-0.6, 0.9));
    let p = CheParams::new(g, c64(0.0, 0.0), e, a).with_q(a);
    let f = frobenius_coefficients(&p, 51).unwrap();
    let kummer = GhfSolution::plain(vec![a / e], vec![g], -e);
    let mut term = c64(1.0, 0.0);
    // Forward recursion cancels for this minimal solution, so compare
    // against the largest coefficient rather than term by term.
    let sup = f.coeffs.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (n, c) in f.coeffs.coeffs.iter().enumerate() {
        if n > 0 {
            term *= kummer.ratio(n);
        }
        assert!((c - term).norm() <= 1e-13 * sup, "n={n}");
    }
    let z = c64(0.3, 0.0);
    let lhs = frobenius_eval(&f, z, 1e-15).unwrap();
    let rhs = ghf_eval(&kummer, z, 1e-17).unwrap();
    assert!((lhs - rhs.value).norm() < 1e-10);
    let v = ghf_eval(&kummer, c64(0.4, 0.0), 1e-17).unwrap();
    assert!(
        ode_residual(v.value, v.first, v.second, &p, c64(0.4, 0.0))
            .unwrap()
            .norm()
            < 1e-10
    );
}

#[test]
fn domain_and_input_errors() {
    let f = frobenius_coefficients(&params(), 40).unwrap();
    assert_eq!(
        frobenius_eval(&f, c64(0.0, 0.0), 1e-12).unwrap(),
        c64(1.0, 0.0)
    );
    assert!(matches!(
        frobenius_eval(&f, c64(1.5, 0.0), 1e-12),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        frobenius_coefficients(&params().without_q(), 10),
        Err(Error::MissingAccessory)
    ));
    let resonant = CheParams::real(-2.0, 0.5, 1.0, 1.0).with_q(c64(0.2, 0.0));
    assert!(matches!(
        frobenius_coefficients(&resonant, 10),
        Err(Error::Resonant(3))
    ));
    let p = params();
    let zero = c64(0.0, 0.0);
    assert_eq!(
        ode_residual(zero, zero, zero, &p, c64(0.4, 0.0)).unwrap(),
        zero
    );
    assert!(ode_residual(zero, zero, zero, &p, c64(1.0, 0.0)).is_err());
}

#[test]
fn perturbed_accessory_parameter_is_detected() {
    let p = CheParams::real(3.0, -1.0, 1.0, 1.0);
    let set = heun_ghf::solution_set(&p).unwrap();
    let q = set.valid().next().unwrap().q;
    let r = heun_ghf::verify::verify_with_q(&p, q + 1e-2).unwrap();
    let at_half = r.residuals.iter().find(|(z, _)| z.re == 0.5).unwrap().1;
    assert!(at_half > 1e-4, "{at_half:e}");
    assert!(!r.passed);
}
