//! Driven two-state system with a Lambert-W level crossing.
//!
//! The system
//!
//! ```text
//! i ȧ1 = U e^(-iδ) a2,   i ȧ2 = U e^(iδ) a1
//! ```
//!
//! with `U = U0` and `δ_t = δ0 - (δ0 + δ1)/(1 + W(e^(-t/τ)))` reduces, via
//! `a2 = z^α1 e^(α0 z) u(z)` and `z = -W(e^(-t/τ))`, to a confluent Heun
//! equation with `δ = -1` whose accessory parameter lies in its spectrum.
//! The amplitude `a2` is therefore a single `2F2` series.

use std::fmt;

use num_complex::Complex64;

use crate::che::CheParams;
use crate::error::{Error, Result};
use crate::ghf::{cpow, ghf_eval, GhfSolution, DEFAULT_REL_TOL};
use crate::golden::accessory_condition;
use crate::lambert::lambert_w_exp;
use crate::pi_system::{accessory_spectrum, solve_auxiliary_parameters};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

/// Default finite-difference step, in units of τ.
pub const DEFAULT_FD_STEP: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStateConfig {
    pub u0: f64,
    pub delta0: f64,
    pub delta1: f64,
    pub tau: f64,
    pub sign1: Sign,
    pub sign0: Sign,
}

impl TwoStateConfig {
    pub fn new(
        u0: f64,
        delta0: f64,
        delta1: f64,
        tau: f64,
        sign1: Sign,
        sign0: Sign,
    ) -> Result<Self> {
        let c = TwoStateConfig {
            u0,
            delta0,
            delta1,
            tau,
            sign1,
            sign0,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, value: f64, reason: &'static str| {
            Err(Error::InvalidParameter {
                name,
                value: C::new(value, 0.0),
                reason,
            })
        };
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad("tau", self.tau, "must be positive and finite");
        }
        if !(self.u0 >= 0.0 && self.u0.is_finite()) {
            return bad("u0", self.u0, "must be non-negative and finite");
        }
        if !self.delta0.is_finite() {
            return bad("delta0", self.delta0, "must be finite");
        }
        if !self.delta1.is_finite() {
            return bad("delta1", self.delta1, "must be finite");
        }
        Ok(())
    }

    pub fn with_signs(mut self, sign1: Sign, sign0: Sign) -> Self {
        self.sign1 = sign1;
        self.sign0 = sign0;
        self
    }

    /// The four root-sign combinations, `(+,+)` first.
    pub fn sign_choices(&self) -> [TwoStateConfig; 4] {
        use Sign::*;
        [
            self.with_signs(Plus, Plus),
            self.with_signs(Plus, Minus),
            self.with_signs(Minus, Plus),
            self.with_signs(Minus, Minus),
        ]
    }

    /// `z(t) = -W(e^(-t/τ))`, a negative number increasing to 0.
    pub fn z(&self, t: f64) -> f64 {
        -lambert_w_exp(-t / self.tau)
    }

    /// `dz/dt = z / (τ (z - 1))`.
    pub fn dz_dt(&self, t: f64) -> f64 {
        let z = self.z(t);
        z / (self.tau * (z - 1.0))
    }

    /// Phase `δ(t) = ∫_0^t δ_t`, in closed form
    /// `-δ1 t - (δ0 + δ1) τ (W(e^(-t/τ)) - W(1))`.
    pub fn phase(&self, t: f64) -> f64 {
        let w = lambert_w_exp(-t / self.tau);
        let w1 = lambert_w_exp(0.0);
        -self.delta1 * t - (self.delta0 + self.delta1) * self.tau * (w - w1)
    }
}

/// `(U, δ_t)` at time `t`.
pub fn field_configuration(c: &TwoStateConfig, t: f64) -> (f64, f64) {
    let w = lambert_w_exp(-t / c.tau);
    (c.u0, c.delta0 - (c.delta0 + c.delta1) / (1.0 + w))
}

/// Resonance crossing `δ_t = 0`, at `t/τ = -δ1/δ0 - ln(δ1/δ0)`; exists only
/// when `δ1/δ0 > 0`.
pub fn crossing_time(c: &TwoStateConfig) -> Option<f64> {
    let r = c.delta1 / c.delta0;
    (r > 0.0 && r.is_finite()).then(|| -c.tau * (r + r.ln()))
}

/// Half-width of [`crossing_window`], in units of τ.
pub const CROSSING_HALF_WIDTH: f64 = 3.0;

/// `count` equally spaced times within `3τ` of the crossing, or of `t = 0`
/// when there is none.
pub fn crossing_window(c: &TwoStateConfig, count: usize) -> Vec<f64> {
    let centre = crossing_time(c).unwrap_or(0.0);
    let half = CROSSING_HALF_WIDTH * c.tau;
    match count {
        0 => Vec::new(),
        1 => vec![centre],
        _ => (0..count)
            .map(|k| centre - half + 2.0 * half * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Everything the reduction produces for one sign choice.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStateDerived {
    pub config: TwoStateConfig,
    pub alpha1: C,
    pub alpha0: C,
    /// Reduced equation, with `δ = -1` and its accessory parameter.
    pub che: CheParams,
    /// `2F2(a, 1+e; e, γ; -ε z)`.
    pub ghf: GhfSolution,
    /// First numerator parameter `a = α/ε`.
    pub a_param: C,
    pub e_param: C,
    /// The closed forms `a = (δ0δ1 - 4U0²)τ²/(2ε) + (γ-1)/2` and
    /// `e = α1 - iτδ1 + α0 - iτδ0`, for comparison with the derived values.
    pub a_closed_form: C,
    pub e_closed_form: C,
    /// `N = 1` accessory condition at `q`, relative to its term sizes.
    pub accessory_residual: f64,
    /// Distance from `q` to the nearest root of the computed spectrum,
    /// relative to `max(1, |q|)`.
    pub spectrum_distance: f64,
}

impl TwoStateDerived {
    pub fn a_discrepancy(&self) -> f64 {
        (self.a_param - self.a_closed_form).norm() / self.a_param.norm().max(1.0)
    }

    pub fn e_discrepancy(&self) -> f64 {
        (self.e_param - self.e_closed_form).norm() / self.e_param.norm().max(1.0)
    }
}

fn accessory_residual(p: &CheParams, q: C) -> f64 {
    let (g, e, a) = (p.gamma, p.epsilon, p.alpha);
    let value = accessory_condition(1, g, e, a, q).expect("N = 1 form");
    let b = 2.0 * a + g - 1.0 + e;
    let c = a * (a + g + e);
    let scale = (q * q).norm() + (b * q).norm() + c.norm();
    if scale > 0.0 {
        value.norm() / scale
    } else {
        value.norm()
    }
}

/// Builds the reduced equation for one sign choice and the `2F2` that solves
/// it. The auxiliary parameter comes from the spectrum machinery.
pub fn two_state_reduction(c: &TwoStateConfig) -> Result<TwoStateDerived> {
    c.validate()?;
    let (tau, d0, d1, u0) = (c.tau, c.delta0, c.delta1, c.u0);
    let root1 = (d1 * d1 + 4.0 * u0 * u0).sqrt();
    let root0 = (d0 * d0 + 4.0 * u0 * u0).sqrt();
    let alpha1 = I * tau / 2.0 * (d1 + c.sign1.value() * root1);
    let alpha0 = I * tau / 2.0 * (d0 + c.sign0.value() * root0);

    let gamma = 1.0 + 2.0 * alpha1 - I * tau * d1;
    let epsilon = 2.0 * alpha0 - I * tau * d0;
    if epsilon.norm() == 0.0 {
        return Err(Error::Config(
            "U0 = 0 and delta0 = 0 give epsilon = 0; the reduced series degenerates".into(),
        ));
    }
    let kappa = u0 * u0 * tau * tau;
    let alpha = 2.0 * alpha1 * alpha0 - I * tau * d1 * alpha0 - I * tau * d0 * alpha1 - 2.0 * kappa;
    let q = alpha + alpha0 + alpha1;
    let base = CheParams::new(gamma, C::new(-1.0, 0.0), epsilon, alpha);
    let che = base.with_q(q);

    let spectrum = accessory_spectrum(&base)?;
    let qscale = q.norm().max(1.0);
    let spectrum_distance = spectrum
        .roots
        .iter()
        .map(|r| (r.q - q).norm() / qscale)
        .fold(f64::INFINITY, f64::min);

    let aux = solve_auxiliary_parameters(&base, q)?;
    if !aux.flags.is_valid() {
        return Err(Error::Config(format!(
            "reduced equation {che} has no usable auxiliary parameter at q \
             (consistency residual {:.3e}, hazard {}, degenerate {})",
            aux.flags.consistency_residual, aux.flags.denominator_hazard, aux.flags.degenerate
        )));
    }
    let e_param = aux.e[0];
    let a_param = alpha / epsilon;
    let ghf = GhfSolution::plain(vec![a_param, 1.0 + e_param], vec![e_param, gamma], -epsilon);

    let a_closed_form =
        (d0 * d1 - 4.0 * u0 * u0) * tau * tau / (2.0 * epsilon) + (gamma - 1.0) / 2.0;
    let e_closed_form = alpha1 - I * tau * d1 + alpha0 - I * tau * d0;

    Ok(TwoStateDerived {
        config: *c,
        alpha1,
        alpha0,
        che,
        ghf,
        a_param,
        e_param,
        a_closed_form,
        e_closed_form,
        accessory_residual: accessory_residual(&base, q),
        spectrum_distance,
    })
}

/// `a2(z)` and `da2/dz`.
fn a2_and_derivative(d: &TwoStateDerived, z: C) -> Result<(C, C)> {
    let f = ghf_eval(&d.ghf, z, DEFAULT_REL_TOL)?;
    let g = cpow(z, d.alpha1) * (d.alpha0 * z).exp();
    let a2 = g * f.value;
    let da2 = g * (f.first + (d.alpha1 / z + d.alpha0) * f.value);
    Ok((a2, da2))
}

/// `a2(t)` alone.
pub fn amplitude_a2(d: &TwoStateDerived, t: f64) -> Result<C> {
    let z = C::new(d.config.z(t), 0.0);
    Ok(a2_and_derivative(d, z)?.0)
}

/// `(a1, a2)` at time `t`; `a1 = i ȧ2 e^(-iδ) / U0`.
pub fn amplitude_pair(d: &TwoStateDerived, t: f64) -> Result<(C, C)> {
    let c = &d.config;
    if c.u0 == 0.0 {
        return Err(Error::InvalidParameter {
            name: "u0",
            value: C::new(0.0, 0.0),
            reason: "a1 = i da2/dt e^(-i delta) / U0 is undefined",
        });
    }
    let zr = c.z(t);
    if zr == 0.0 {
        return Err(Error::Domain(C::new(zr, 0.0)));
    }
    let z = C::new(zr, 0.0);
    let (a2, da2_dz) = a2_and_derivative(d, z)?;
    let da2_dt = da2_dz * (zr / (c.tau * (zr - 1.0)));
    let a1 = I * da2_dt * C::from_polar(1.0, -c.phase(t)) / c.u0;
    Ok((a1, a2))
}

/// Residual of `ä2 - iδ_t ȧ2 + U0² a2` with five-point differences of step
/// `h` (absolute time units), relative to the largest of `|ä2|`, `|δ_t ȧ2|`,
/// `U0² |a2|` and `U0 |ȧ2|`.
pub fn amplitude_residual(d: &TwoStateDerived, t: f64, h: f64) -> Result<f64> {
    amplitude_residual_of(|s| amplitude_a2(d, s), &d.config, t, h)
}

/// [`amplitude_residual`] for any `a2(t)`, e.g. a superposition.
pub fn amplitude_residual_of<F>(a2: F, c: &TwoStateConfig, t: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<C>,
{
    let (fm2, fm1, f0, fp1, fp2) = (
        a2(t - 2.0 * h)?,
        a2(t - h)?,
        a2(t)?,
        a2(t + h)?,
        a2(t + 2.0 * h)?,
    );
    let first = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let second = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    let (u, delta_dot) = field_configuration(c, t);
    let drift = -I * delta_dot * first;
    let restoring = u * u * f0;
    // U0 |ȧ2| keeps the scale away from zero where a2 itself vanishes.
    let scale = second
        .norm()
        .max(drift.norm())
        .max(restoring.norm())
        .max(u * first.norm());
    let value = (second + drift + restoring).norm();
    Ok(if scale > 0.0 { value / scale } else { value })
}

/// `max | |a1|²+|a2|² - N(t0) | / N(t0)` over the grid, `t0` its first entry.
pub fn norm_drift<F>(amplitudes: F, grid: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<(C, C)>,
{
    let norm = |t: f64| -> Result<f64> {
        let (a1, a2) = amplitudes(t)?;
        Ok(a1.norm_sqr() + a2.norm_sqr())
    };
    let Some(&t0) = grid.first() else {
        return Ok(0.0);
    };
    let n0 = norm(t0)?;
    if n0 == 0.0 {
        return Err(Error::Config("zero norm at the first grid point".into()));
    }
    grid.iter().try_fold(
        0.0f64,
        |worst, &t| Ok(worst.max((norm(t)? - n0).abs() / n0)),
    )
}

/// Superposition of two fundamental solutions matching prescribed
/// amplitudes at `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSolution {
    pub parts: [TwoStateDerived; 2],
    pub weights: [C; 2],
}

impl GeneralSolution {
    /// Pairs the sign choice of `c` with the opposite choice of both signs.
    /// The two differ in their behaviour at `z → 0` and so are independent;
    /// mixed pairs can collapse to `α = 0` when both detunings vanish.
    pub fn matching(c: &TwoStateConfig, t0: f64, a1_0: C, a2_0: C) -> Result<Self> {
        let first = two_state_reduction(c)?;
        let second = two_state_reduction(&c.with_signs(c.sign1.flip(), c.sign0.flip()))?;
        let (x1, x2) = amplitude_pair(&first, t0)?;
        let (y1, y2) = amplitude_pair(&second, t0)?;
        let det = x1 * y2 - y1 * x2;
        let scale = (x1.norm() + x2.norm()) * (y1.norm() + y2.norm());
        if det.norm() <= 1e-12 * scale {
            return Err(Error::Config(
                "fundamental solutions are dependent at t0".into(),
            ));
        }
        let w1 = (a1_0 * y2 - y1 * a2_0) / det;
        let w2 = (x1 * a2_0 - a1_0 * x2) / det;
        Ok(GeneralSolution {
            parts: [first, second],
            weights: [w1, w2],
        })
    }

    pub fn config(&self) -> &TwoStateConfig {
        &self.parts[0].config
    }

    pub fn amplitude_a2(&self, t: f64) -> Result<C> {
        Ok(self.weights[0] * amplitude_a2(&self.parts[0], t)?
            + self.weights[1] * amplitude_a2(&self.parts[1], t)?)
    }

    pub fn amplitude_pair(&self, t: f64) -> Result<(C, C)> {
        let (x1, x2) = amplitude_pair(&self.parts[0], t)?;
        let (y1, y2) = amplitude_pair(&self.parts[1], t)?;
        Ok((
            self.weights[0] * x1 + self.weights[1] * y1,
            self.weights[0] * x2 + self.weights[1] * y2,
        ))
    }
}
