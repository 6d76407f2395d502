//! Closed-form accessory conditions for `N = 0, 1, 2, 3`, transcribed
//! term by term. They serve as an independent check on
//! [`accessory_polynomial`](crate::pi_system::accessory_polynomial), which
//! never expands these expressions.

use num_complex::Complex64;

use crate::che::CheParams;

type C = Complex64;

/// ε ≠ 0 forms. Returns `None` for `n > 3`.
pub fn accessory_condition(n: usize, gamma: C, epsilon: C, alpha: C, q: C) -> Option<C> {
    let (g, e, a) = (gamma, epsilon, alpha);
    let v = match n {
        0 => q - a,
        1 => q * q - (2.0 * a + g - 1.0 + e) * q + a * (a + g + e),
        2 => {
            2.0 * (q - a) * (a + e)
                + (q - a - 2.0 * (g - 1.0 + e))
                    * (q * q - (2.0 * a + g - 2.0 + e) * q + a * (a + g + e))
        }
        3 => {
            let quad = q * q - (2.0 * a + g - 3.0 + e) * q + a * (a + g + e);
            3.0 * (a + 2.0 * e) * quad
                + (q - a - 3.0 * (g - 1.0 + e))
                    * (4.0 * (q - a) * (a + e) + (q - a - 2.0 * (g - 2.0 + e)) * quad)
        }
        _ => return None,
    };
    Some(v)
}

/// ε = 0 forms. Returns `None` for `n > 3`.
pub fn accessory_condition_eps0(n: usize, gamma: C, alpha: C, q: C) -> Option<C> {
    let (g, a) = (gamma, alpha);
    let v = match n {
        0 => q - a,
        1 => q * q - (2.0 * a + g - 1.0) * q + a * (a + g),
        2 => {
            2.0 * (q - a) * a
                + (2.0 + q - a - 2.0 * g) * (q * q - (2.0 * a + g - 2.0) * q + a * (a + g))
        }
        3 => {
            let quad = q * q - (2.0 * a + g - 3.0) * q + a * (a + g);
            3.0 * a * quad
                + (q - a - 3.0 * (g - 1.0)) * (4.0 * (q - a) * a + (q - a - 2.0 * (g - 2.0)) * quad)
        }
        _ => return None,
    };
    Some(v)
}

/// Picks the ε ≠ 0 or ε = 0 form for a canonical problem with `δ = -n`.
pub fn golden_condition(p: &CheParams, n: usize, q: C, epsilon_zero: bool) -> Option<C> {
    if epsilon_zero {
        accessory_condition_eps0(n, p.gamma, p.alpha, q)
    } else {
        accessory_condition(n, p.gamma, p.epsilon, p.alpha, q)
    }
}

/// Compares two polynomials in `q` up to a constant factor: evaluates both at
/// `points` and returns the largest relative deviation of the ratios from
/// their mean. `None` if the reference vanishes at a probe point.
pub fn ratio_spread(points: &[C], lhs: impl Fn(C) -> C, rhs: impl Fn(C) -> C) -> Option<f64> {
    let ratios: Vec<C> = points
        .iter()
        .map(|&q| {
            let r = rhs(q);
            (r.norm() > 0.0).then(|| lhs(q) / r)
        })
        .collect::<Option<_>>()?;
    let mean = ratios.iter().sum::<C>() / ratios.len() as f64;
    if mean.norm() == 0.0 {
        return None;
    }
    Some(
        ratios
            .iter()
            .map(|r| (r - mean).norm() / mean.norm())
            .fold(0.0, f64::max),
    )
}
