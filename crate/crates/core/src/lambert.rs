//! Principal branch of the Lambert W function.

use crate::error::{Error, Result};
use num_complex::Complex64;

const BRANCH_POINT: f64 = -1.0 / std::f64::consts::E;

/// `w` with `w e^w = x`, `w ≥ -1`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if x.is_nan() || x < BRANCH_POINT - 1e-16 {
        return Err(Error::Domain(Complex64::new(x, 0.0)));
    }
    if x == 0.0 || x.is_infinite() {
        return Ok(x);
    }
    if x <= BRANCH_POINT {
        return Ok(-1.0);
    }
    let mut w = if x < -0.25 {
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        // Winitzki's approximation
        let l = x.ln_1p();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

/// `W(e^y)`, valid for any finite `y`, solving `w + ln w = y` directly when
/// `e^y` would lose precision or overflow.
pub fn lambert_w_exp(y: f64) -> f64 {
    if y < 1.0 {
        return lambert_w(y.exp()).expect("positive argument");
    }
    let mut w = y - y.ln();
    for _ in 0..64 {
        let f = w + w.ln() - y;
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let step = f / (d1 - f * d2 / (2.0 * d1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert_eq!(lambert_w(BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn defining_relation() {
        for &x in &[-0.3678, -0.3, -0.1, 1e-10, 0.5, 3.0, 10.0, 1e3, 1e10, 1e300] {
            let w = lambert_w(x).unwrap();
            assert!(w >= -1.0);
            assert!(
                (w * w.exp() - x).abs() <= 1e-14 * x.abs().max(1.0),
                "x = {x}"
            );
        }
    }

    #[test]
    fn below_branch_point() {
        assert!(lambert_w(-0.5).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn exp_form() {
        for &y in &[-30.0, -2.0, 0.0, 0.9, 1.0, 5.0, 10.0, 800.0] {
            let w = lambert_w_exp(y);
            assert!(
                (w + w.ln() - y).abs() <= 1e-14 * y.abs().max(1.0),
                "y = {y}"
            );
            if y < 700.0 {
                assert!((w - lambert_w(f64::exp(y)).unwrap()).abs() <= 1e-14 * w.max(1e-300));
            }
        }
    }
}
