use heun_ghf::lambert::{lambert_w, lambert_w_exp};
use proptest::prelude::*;

#[test]
fn reference_values() {
    assert_eq!(lambert_w(0.0).unwrap(), 0.0);
    assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
    assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_784).abs() < 1e-15);
    assert!((lambert_w(-(-1.0f64).exp()).unwrap() + 1.0).abs() < 1e-7);
}

#[test]
fn below_branch_point_is_a_domain_error() {
    assert!(lambert_w(-0.37).is_err());
}

proptest! {
    #[test]
    fn defining_identity(x in -0.367_879..50.0f64) {
        let w = lambert_w(x).unwrap();
        prop_assert!(w >= -1.0);
        prop_assert!((w * w.exp() - x).abs() <= 1e-14 * x.abs().max(1.0));
    }

    #[test]
    fn exp_argument_form(y in -30.0..700.0f64) {
        let w = lambert_w_exp(y);
        prop_assert!(w > 0.0);
        prop_assert!((w + w.ln() - y).abs() <= 1e-13 * y.abs().max(1.0));
    }
}
