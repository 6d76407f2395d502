//! Parameters of the confluent Heun equation and the parameter maps that
//! bring every solvable integer-exponent case to the canonical form with
//! `δ = -N` and expansion at `z = 0`.

use std::fmt;

use num_complex::Complex64;

/// Default tolerance for deciding that a parameter is an integer.
pub const INT_TOL: f64 = 1e-9;

/// `(γ, δ, ε, α, q)` of
/// `u'' + (γ/z + δ/(z-1) + ε) u' + (αz - q)/(z(z-1)) u = 0`.
///
/// `q` is optional because it is usually the unknown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheParams {
    pub gamma: Complex64,
    pub delta: Complex64,
    pub epsilon: Complex64,
    pub alpha: Complex64,
    pub q: Option<Complex64>,
}

impl CheParams {
    pub fn new(gamma: Complex64, delta: Complex64, epsilon: Complex64, alpha: Complex64) -> Self {
        CheParams {
            gamma,
            delta,
            epsilon,
            alpha,
            q: None,
        }
    }

    pub fn real(gamma: f64, delta: f64, epsilon: f64, alpha: f64) -> Self {
        Self::new(gamma.into(), delta.into(), epsilon.into(), alpha.into())
    }

    pub fn with_q(mut self, q: Complex64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn without_q(mut self) -> Self {
        self.q = None;
        self
    }

    /// Exponents `{0, 1-γ}` at `z = 0`.
    pub fn exponents_at_zero(&self) -> [Complex64; 2] {
        [Complex64::new(0.0, 0.0), 1.0 - self.gamma]
    }

    /// Exponents `{0, 1-δ}` at `z = 1`.
    pub fn exponents_at_one(&self) -> [Complex64; 2] {
        [Complex64::new(0.0, 0.0), 1.0 - self.delta]
    }

    /// Indicial polynomial `μ(μ - 1 + γ)` at `z = 0`.
    pub fn indicial_at_zero(&self, mu: Complex64) -> Complex64 {
        mu * (mu - 1.0 + self.gamma)
    }

    /// Indicial polynomial `μ(μ - 1 + δ)` at `z = 1`.
    pub fn indicial_at_one(&self, mu: Complex64) -> Complex64 {
        mu * (mu - 1.0 + self.delta)
    }

    pub fn is_finite(&self) -> bool {
        [self.gamma, self.delta, self.epsilon, self.alpha]
            .iter()
            .chain(self.q.iter())
            .all(|v| v.is_finite())
    }

    /// Largest parameter magnitude, at least 1.
    pub fn scale(&self) -> f64 {
        [self.gamma, self.delta, self.epsilon, self.alpha]
            .iter()
            .chain(self.q.iter())
            .map(|v| v.norm())
            .fold(1.0, f64::max)
    }
}

impl fmt::Display for CheParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "γ={}, δ={}, ε={}, α={}",
            self.gamma, self.delta, self.epsilon, self.alpha
        )?;
        if let Some(q) = self.q {
            write!(f, ", q={q}")?;
        }
        Ok(())
    }
}

/// Returns the integer `x` is within `tol` of, if any.
pub fn near_integer(x: Complex64, tol: f64) -> Option<i64> {
    if !x.is_finite() || x.im.abs() > tol {
        return None;
    }
    let r = x.re.round();
    ((x.re - r).abs() <= tol && r.abs() < 1e15).then_some(r as i64)
}

/// `true` if `x` is within `tol` of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(x: Complex64, tol: f64) -> bool {
    near_integer(x, tol).is_some_and(|k| k <= 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// δ = 0, ε ≠ 0: Kummer function.
    Kummer,
    /// δ = 0, ε = 0: Bessel function (`0F1`).
    Bessel,
    /// δ = -N, N ≥ 1, ε ≠ 0.
    GhfDelta,
    /// δ = -N, N ≥ 1, ε = 0.
    GhfDeltaEps0,
    /// δ an integer ≥ 2: apply the `(z-1)^(1-δ)` power change first.
    NeedsDeltaShift,
    /// γ an integer ≠ 1: expand about `z = 1` instead.
    NeedsSwap,
    /// δ = 1 with no integer γ ≠ 1 to fall back on.
    Exceptional,
    Unsupported,
}

impl CaseKind {
    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Kummer => "KUMMER",
            CaseKind::Bessel => "BESSEL",
            CaseKind::GhfDelta => "GHF_DELTA",
            CaseKind::GhfDeltaEps0 => "GHF_DELTA_EPS0",
            CaseKind::NeedsDeltaShift => "NEEDS_DELTA_SHIFT",
            CaseKind::NeedsSwap => "NEEDS_SWAP",
            CaseKind::Exceptional => "EXCEPTIONAL",
            CaseKind::Unsupported => "UNSUPPORTED",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The sequence of parameter maps leading to the canonical problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Already canonical.
    Direct,
    /// `u = (z-1)^(1-δ) w`.
    DeltaShift,
    /// `z -> 1 - z`.
    Swap,
    /// `z -> 1 - z`, then the power change.
    SwapShift,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::DeltaShift => "delta_shift",
            Route::Swap => "swap",
            Route::SwapShift => "swap_shift",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseClass {
    pub kind: CaseKind,
    /// Number of auxiliary parameters `e_k` of the canonical problem.
    pub n_value: Option<usize>,
    /// The integer value detected for δ (or γ on the swap route).
    pub integer: Option<i64>,
    pub epsilon_zero: bool,
    pub int_tol: f64,
}

impl CaseClass {
    pub fn route(&self) -> Option<Route> {
        match self.kind {
            CaseKind::Kummer | CaseKind::Bessel | CaseKind::GhfDelta | CaseKind::GhfDeltaEps0 => {
                Some(Route::Direct)
            }
            CaseKind::NeedsDeltaShift => Some(Route::DeltaShift),
            CaseKind::NeedsSwap => match self.integer {
                Some(g) if g >= 2 => Some(Route::SwapShift),
                _ => Some(Route::Swap),
            },
            CaseKind::Exceptional | CaseKind::Unsupported => None,
        }
    }

    pub fn is_supported(&self) -> bool {
        self.route().is_some()
    }
}

/// Decides which construction applies. The δ route is preferred when both δ
/// and γ are usable integers.
pub fn classify(p: &CheParams, int_tol: f64) -> CaseClass {
    let epsilon_zero = p.epsilon.norm() <= int_tol;
    let class = |kind, n_value, integer| CaseClass {
        kind,
        n_value,
        integer,
        epsilon_zero,
        int_tol,
    };

    let delta_int = near_integer(p.delta, int_tol);
    match delta_int {
        Some(d) if d <= 0 => {
            let n = (-d) as usize;
            let kind = match (n, epsilon_zero) {
                (0, false) => CaseKind::Kummer,
                (0, true) => CaseKind::Bessel,
                (_, false) => CaseKind::GhfDelta,
                (_, true) => CaseKind::GhfDeltaEps0,
            };
            return class(kind, Some(n), Some(d));
        }
        Some(d) if d >= 2 => {
            return class(CaseKind::NeedsDeltaShift, Some((d - 2) as usize), Some(d));
        }
        _ => {}
    }

    match near_integer(p.gamma, int_tol) {
        Some(g) if g != 1 => {
            let n = if g <= 0 { -g } else { g - 2 };
            class(CaseKind::NeedsSwap, Some(n as usize), Some(g))
        }
        _ if delta_int == Some(1) => class(CaseKind::Exceptional, None, None),
        _ => class(CaseKind::Unsupported, None, None),
    }
}

/// The change of variable `z -> 1 - z`:
/// `(γ, δ, ε, α, q) -> (δ, γ, -ε, -α, q - α)`. An involution.
pub fn swap_singularities(p: &CheParams) -> CheParams {
    CheParams {
        gamma: p.delta,
        delta: p.gamma,
        epsilon: -p.epsilon,
        alpha: -p.alpha,
        q: p.q.map(|q| q - p.alpha),
    }
}

/// The power change `u = (z-1)^(1-δ) w`.
///
/// Returns the parameters of the equation for `w`,
/// `(γ, 2-δ, ε, α + (1-δ)ε, q - (1-δ)γ)`, and the exponent `1-δ`. Applying
/// the map twice restores the input.
pub fn shift_delta_exponent(p: &CheParams) -> (CheParams, Complex64) {
    let sigma = 1.0 - p.delta;
    let out = CheParams {
        gamma: p.gamma,
        delta: 2.0 - p.delta,
        epsilon: p.epsilon,
        alpha: p.alpha + sigma * p.epsilon,
        q: p.q.map(|q| q - sigma * p.gamma),
    };
    (out, sigma)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    NonFinite(&'static str),
    /// A would-be denominator parameter is zero or a negative integer.
    DenominatorHazard {
        parameter: &'static str,
        value: Complex64,
    },
    /// δ = 1 and no integer γ ≠ 1 is available.
    ExceptionalDelta,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonFinite(name) => write!(f, "{name} is not finite"),
            Diagnostic::DenominatorHazard { parameter, value } => write!(
                f,
                "{parameter} = {value} is zero or a negative integer and cannot serve as a denominator parameter"
            ),
            Diagnostic::ExceptionalDelta => f.write_str(
                "delta = 1: both exponents at z = 1 are zero; no generalized hypergeometric solution is known",
            ),
        }
    }
}

pub fn validate_params(p: &CheParams) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let fields = [
        ("gamma", Some(p.gamma)),
        ("delta", Some(p.delta)),
        ("epsilon", Some(p.epsilon)),
        ("alpha", Some(p.alpha)),
        ("q", p.q),
    ];
    for (name, value) in fields {
        if value.is_some_and(|v| !v.is_finite()) {
            out.push(Diagnostic::NonFinite(name));
        }
    }
    if !out.is_empty() {
        return out;
    }

    if is_nonpositive_integer(p.gamma, INT_TOL) {
        out.push(Diagnostic::DenominatorHazard {
            parameter: "gamma",
            value: p.gamma,
        });
    }
    let class = classify(p, INT_TOL);
    if class.kind == CaseKind::Exceptional {
        out.push(Diagnostic::ExceptionalDelta);
    }
    if class.route() == Some(Route::Swap) && is_nonpositive_integer(p.delta, INT_TOL) {
        out.push(Diagnostic::DenominatorHazard {
            parameter: "delta",
            value: p.delta,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn classify_examples() {
        let c = classify(&CheParams::real(2.0, -3.0, 1.0, 0.7), INT_TOL);
        assert_eq!(c.kind, CaseKind::GhfDelta);
        assert_eq!(c.n_value, Some(3));

        let c = classify(&CheParams::real(1.5, 0.0, 0.0, 2.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::Bessel);

        let c = classify(&CheParams::real(0.5, 1.0, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::Exceptional);
    }

    #[test]
    fn classify_routes() {
        let c = classify(&CheParams::real(0.3, 0.0, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::Kummer);
        let c = classify(&CheParams::real(0.3, -2.0, 0.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::GhfDeltaEps0);

        let c = classify(&CheParams::real(0.3, 4.0, 1.0, 1.0), INT_TOL);
        assert_eq!(
            (c.kind, c.n_value, c.route()),
            (CaseKind::NeedsDeltaShift, Some(2), Some(Route::DeltaShift))
        );

        let c = classify(&CheParams::real(-2.0, 0.7, 1.0, 1.0), INT_TOL);
        assert_eq!(
            (c.kind, c.n_value, c.route()),
            (CaseKind::NeedsSwap, Some(2), Some(Route::Swap))
        );

        let c = classify(&CheParams::real(3.0, 0.7, 1.0, 1.0), INT_TOL);
        assert_eq!(
            (c.kind, c.n_value, c.route()),
            (CaseKind::NeedsSwap, Some(1), Some(Route::SwapShift))
        );

        // δ = 1 escapes through an integer γ ≠ 1.
        let c = classify(&CheParams::real(2.0, 1.0, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::NeedsSwap);
        let c = classify(&CheParams::real(1.0, 1.0, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::Exceptional);

        let c = classify(&CheParams::real(1.0, 0.5, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::Unsupported);

        // δ route preferred when both qualify.
        let c = classify(&CheParams::real(-1.0, -2.0, 1.0, 1.0), INT_TOL);
        assert_eq!(c.kind, CaseKind::GhfDelta);
    }

    #[test]
    fn swap_examples() {
        let p = CheParams::real(2.0, 3.0, 1.0, 1.0).with_q(5.0.into());
        let s = swap_singularities(&p);
        assert_eq!(s, CheParams::real(3.0, 2.0, -1.0, -1.0).with_q(4.0.into()));
        assert_eq!(swap_singularities(&s), p);

        let p = CheParams::real(0.4, 1.7, 0.0, 0.9).with_q(0.2.into());
        let s = swap_singularities(&p);
        assert_eq!(s.epsilon, Complex64::new(-0.0, -0.0));
        assert_eq!(s.alpha, (-0.9).into());
        assert!(approx(s.q.unwrap(), (0.2 - 0.9).into()));
    }

    #[test]
    fn shift_examples() {
        let p = CheParams::real(1.0, 3.0, 2.0, 5.0).with_q(7.0.into());
        let (s, exponent) = shift_delta_exponent(&p);
        assert_eq!(s, CheParams::real(1.0, -1.0, 2.0, 1.0).with_q(9.0.into()));
        assert_eq!(exponent, (-2.0).into());

        let p = CheParams::real(1.3, 0.0, 0.6, 2.0).with_q(0.5.into());
        let (s, exponent) = shift_delta_exponent(&p);
        assert_eq!(exponent, 1.0.into());
        assert_eq!(s.delta, 2.0.into());
        assert!(approx(s.alpha, (2.0 + 0.6).into()));
        assert!(approx(s.q.unwrap(), (0.5 - 1.3).into()));
        assert!(approx(
            s.alpha / s.epsilon,
            p.alpha / p.epsilon + 1.0 - p.delta
        ));
        let (back, back_exponent) = shift_delta_exponent(&s);
        assert_eq!(back_exponent, (-1.0).into());
        assert!(approx(back.alpha, p.alpha) && approx(back.q.unwrap(), p.q.unwrap()));
        assert_eq!(back.delta, p.delta);
    }

    #[test]
    fn validate_examples() {
        let d = validate_params(&CheParams::real(-2.0, 0.5, 1.0, 1.0));
        assert!(d.iter().any(|d| matches!(
            d,
            Diagnostic::DenominatorHazard {
                parameter: "gamma",
                ..
            }
        )));

        assert!(validate_params(&CheParams::real(2.5, -1.0, 1.0, 1.0)).is_empty());

        let d = validate_params(&CheParams::real(0.3, 1.0, 1.0, 1.0));
        assert_eq!(d, vec![Diagnostic::ExceptionalDelta]);

        let d = validate_params(&CheParams::real(f64::NAN, 1.0, 1.0, 1.0));
        assert_eq!(d, vec![Diagnostic::NonFinite("gamma")]);
    }

    #[test]
    fn indicial_roots_are_exponents() {
        let p = CheParams::new(
            Complex64::new(1.3, 0.2),
            Complex64::new(-0.4, 0.7),
            1.0.into(),
            1.0.into(),
        );
        for mu in p.exponents_at_zero() {
            assert!(p.indicial_at_zero(mu).norm() < 1e-15);
        }
        for mu in p.exponents_at_one() {
            assert!(p.indicial_at_one(mu).norm() < 1e-15);
        }
    }
}
