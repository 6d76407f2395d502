//! Frobenius recurrence about `z = 0` and the ODE residual operator.
//!
//! This module knows nothing about hypergeometric series; it is the
//! independent reference every constructed solution is checked against.

use num_complex::Complex64;

use crate::che::CheParams;
use crate::error::{Error, Result};
use crate::ghf::SeriesCoefficients;

/// Largest `|z|` accepted by [`frobenius_eval`].
pub const MAX_EVAL_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusExpansion {
    pub params: CheParams,
    pub mu: Complex64,
    pub coeffs: SeriesCoefficients,
    pub convergence_radius: f64,
}

struct Recurrence {
    gamma: Complex64,
    delta: Complex64,
    epsilon: Complex64,
    alpha: Complex64,
    q: Complex64,
}

impl Recurrence {
    fn r(&self, n: f64) -> Complex64 {
        n * (self.gamma - 1.0 + n)
    }

    fn q(&self, n: f64) -> Complex64 {
        self.q - (self.gamma + self.delta - self.epsilon - 1.0 + n) * n
    }

    fn p(&self, n: f64) -> Complex64 {
        -(self.alpha + self.epsilon * n)
    }
}

fn recurrence(p: &CheParams) -> Result<Recurrence> {
    let q = p.q.ok_or(Error::MissingAccessory)?;
    Ok(Recurrence {
        gamma: p.gamma,
        delta: p.delta,
        epsilon: p.epsilon,
        alpha: p.alpha,
        q,
    })
}

/// `c_0 … c_count` of the `μ = 0` solution by forward recursion
/// `R_n c_n + Q_(n-1) c_(n-1) + P_(n-2) c_(n-2) = 0`.
pub fn frobenius_coefficients(p: &CheParams, count: usize) -> Result<FrobeniusExpansion> {
    let rec = recurrence(p)?;
    let mut c = Vec::with_capacity(count + 1);
    c.push(Complex64::new(1.0, 0.0));
    for n in 1..=count {
        let nf = n as f64;
        let rn = rec.r(nf);
        if rn.norm() <= 1e-12 * nf * nf {
            return Err(Error::Resonant(n));
        }
        let mut acc = rec.q(nf - 1.0) * c[n - 1];
        if n >= 2 {
            acc += rec.p(nf - 2.0) * c[n - 2];
        }
        c.push(-acc / rn);
    }
    let coeffs = SeriesCoefficients {
        tail_estimate: tail(&c, 1.0),
        coeffs: c,
        radius: 1.0,
    };
    Ok(FrobeniusExpansion {
        params: *p,
        mu: Complex64::new(0.0, 0.0),
        coeffs,
        convergence_radius: 1.0,
    })
}

fn tail(c: &[Complex64], r: f64) -> f64 {
    let m = c.len();
    if m < 2 {
        return 0.0;
    }
    let last = c[m - 1].norm() * r.powi(m as i32 - 1);
    let prev = c[m - 2].norm() * r.powi(m as i32 - 2);
    if last == 0.0 {
        return 0.0;
    }
    let rho = last / prev;
    if prev > 0.0 && rho < 1.0 {
        last * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    }
}

impl FrobeniusExpansion {
    /// Largest `|R_n c_n + Q_(n-1) c_(n-1) + P_(n-2) c_(n-2)|` over the
    /// stored range, relative to the largest of the three terms.
    pub fn recurrence_residual(&self) -> f64 {
        let rec = match recurrence(&self.params) {
            Ok(r) => r,
            Err(_) => return f64::INFINITY,
        };
        let c = &self.coeffs.coeffs;
        let mut worst: f64 = 0.0;
        for n in 1..c.len() {
            let nf = n as f64;
            let t0 = rec.r(nf) * c[n];
            let t1 = rec.q(nf - 1.0) * c[n - 1];
            let t2 = if n >= 2 {
                rec.p(nf - 2.0) * c[n - 2]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let scale = t0.norm().max(t1.norm()).max(t2.norm());
            if scale > 0.0 {
                worst = worst.max((t0 + t1 + t2).norm() / scale);
            }
        }
        worst
    }
}

/// Partial sum of the stored series at `z`. Fails when `|z|` exceeds
/// [`MAX_EVAL_RADIUS`] or the tail bound exceeds `tol` relative to the sum.
pub fn frobenius_eval(f: &FrobeniusExpansion, z: Complex64, tol: f64) -> Result<Complex64> {
    if z.norm() > MAX_EVAL_RADIUS.min(f.convergence_radius) {
        return Err(Error::Domain(z));
    }
    let c = &f.coeffs.coeffs;
    let mut sum = Complex64::new(0.0, 0.0);
    for ck in c.iter().rev() {
        sum = sum * z + ck;
    }
    let estimate = tail(c, z.norm());
    if estimate > tol * sum.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::TailTooLarge { estimate, tol });
    }
    Ok(sum)
}

/// `u'' + (γ/z + δ/(z-1) + ε)u' + (αz - q)/(z(z-1)) u`, divided by
/// `max(|u''|, |u'|, |u|, 1)`.
pub fn ode_residual(
    u: Complex64,
    u_prime: Complex64,
    u_second: Complex64,
    p: &CheParams,
    z: Complex64,
) -> Result<Complex64> {
    let q = p.q.ok_or(Error::MissingAccessory)?;
    let zm1 = z - 1.0;
    if z.norm() == 0.0 || zm1.norm() == 0.0 {
        return Err(Error::Domain(z));
    }
    let raw = u_second
        + (p.gamma / z + p.delta / zm1 + p.epsilon) * u_prime
        + (p.alpha * z - q) / (z * zm1) * u;
    let scale = u_second.norm().max(u_prime.norm()).max(u.norm()).max(1.0);
    Ok(raw / scale)
}
