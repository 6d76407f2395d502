//! Generalized hypergeometric series and the solutions they give.
//!
//! A [`GhfSolution`] describes
//!
//! ```text
//! u(z) = (z - c)^ρ · pFq(a_1…a_p; b_1…b_q; s·(z - z0))
//! ```
//!
//! where `c` is the prefactor centre, `ρ` the prefactor exponent, `s` the
//! scale and `z0` the base point. Coefficients are always stored for powers
//! of `z - z0`, i.e. with `s^n` folded in.

use num_complex::Complex64;

use crate::che::{
    classify, is_nonpositive_integer, shift_delta_exponent, swap_singularities, validate_params,
    CaseClass, CaseKind, CheParams, Diagnostic, Route, INT_TOL,
};
use crate::error::{Error, Result};
use crate::pi_system::{
    accessory_spectrum, solve_auxiliary_parameters, AccessorySpectrum, RootFlags, SigmaVector,
    HAZARD_WINDOW,
};

/// Hard cap on the number of series terms summed by [`ghf_eval`].
pub const MAX_TERMS: usize = 10_000;
/// Default relative size below which a term no longer changes a sum.
pub const DEFAULT_REL_TOL: f64 = 1e-17;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct GhfSolution {
    pub numerator_params: Vec<Complex64>,
    pub denominator_params: Vec<Complex64>,
    pub scale: Complex64,
    pub base_point: Complex64,
    pub prefactor_center: Complex64,
    pub prefactor_exponent: Complex64,
}

impl GhfSolution {
    /// `pFq(a; b; s z)` about the origin without prefactor.
    pub fn plain(
        numerator_params: Vec<Complex64>,
        denominator_params: Vec<Complex64>,
        scale: Complex64,
    ) -> Self {
        GhfSolution {
            numerator_params,
            denominator_params,
            scale,
            base_point: ZERO,
            prefactor_center: ZERO,
            prefactor_exponent: ZERO,
        }
    }

    /// `(p, q)` of `pFq`.
    pub fn shape(&self) -> (usize, usize) {
        (self.numerator_params.len(), self.denominator_params.len())
    }

    pub fn has_prefactor(&self) -> bool {
        self.prefactor_exponent != ZERO
    }

    pub fn validate(&self) -> Result<()> {
        for b in &self.denominator_params {
            if is_nonpositive_integer(*b, HAZARD_WINDOW) {
                return Err(Error::DenominatorHazard(*b));
            }
        }
        Ok(())
    }

    /// `d_n / d_(n-1) = s ∏(a_k - 1 + n) / (n ∏(b_k - 1 + n))`.
    pub fn ratio(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        let num = self
            .numerator_params
            .iter()
            .fold(self.scale, |acc, a| acc * (a - 1.0 + nf));
        let den = self
            .denominator_params
            .iter()
            .fold(Complex64::new(nf, 0.0), |acc, b| acc * (b - 1.0 + nf));
        num / den
    }
}

/// Truncated power series `c_0 … c_M` with a tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub coeffs: Vec<Complex64>,
    /// Radius at which `tail_estimate` was computed.
    pub radius: f64,
    /// Bound on `|Σ_(n>M) c_n r^n|` from the last coefficient ratio; infinite
    /// when that ratio is not below one.
    pub tail_estimate: f64,
}

impl SeriesCoefficients {
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn with_tail(coeffs: Vec<Complex64>, radius: f64) -> Self {
        let m = coeffs.len();
        let tail_estimate = match m {
            0 => 0.0,
            1 => {
                if coeffs[0] == ZERO {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            _ => {
                let last = coeffs[m - 1].norm() * radius.powi(m as i32 - 1);
                let prev = coeffs[m - 2].norm() * radius.powi(m as i32 - 2);
                if last == 0.0 {
                    0.0
                } else {
                    let rho = if prev > 0.0 {
                        last / prev
                    } else {
                        f64::INFINITY
                    };
                    if rho < 1.0 {
                        last / (1.0 - rho)
                    } else {
                        f64::INFINITY
                    }
                }
            }
        };
        SeriesCoefficients {
            coeffs,
            radius,
            tail_estimate,
        }
    }
}

/// `c_0 = 1, …, c_count` for powers of `z - base_point`; tail bound at radius 1.
pub fn ghf_coefficients(sol: &GhfSolution, count: usize) -> Result<SeriesCoefficients> {
    sol.validate()?;
    let mut coeffs = Vec::with_capacity(count + 1);
    coeffs.push(ONE);
    let mut c = ONE;
    for n in 1..=count {
        c *= sol.ratio(n);
        coeffs.push(c);
    }
    Ok(SeriesCoefficients::with_tail(coeffs, 1.0))
}

/// Value and first two derivatives of the full `u(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhfValue {
    pub value: Complex64,
    pub first: Complex64,
    pub second: Complex64,
    pub terms: usize,
}

/// Principal-branch power, exact for integer exponents.
pub fn cpow(base: Complex64, exponent: Complex64) -> Complex64 {
    if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() < 1e9 {
        base.powi(exponent.re as i32)
    } else if base == ZERO {
        if exponent.re > 0.0 {
            ZERO
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        }
    } else {
        base.powc(exponent)
    }
}

/// Sums the series, and its term-wise first and second derivatives, until two
/// consecutive terms of every sum fall below `rel_tol` of that sum while the
/// terms are decreasing. The prefactor enters through the product rule.
pub fn ghf_eval(sol: &GhfSolution, z: Complex64, rel_tol: f64) -> Result<GhfValue> {
    sol.validate()?;
    let w = z - sol.base_point;
    let (f, f1, f2, terms) = sum_series(sol, w, rel_tol)?;
    if !sol.has_prefactor() {
        return Ok(GhfValue {
            value: f,
            first: f1,
            second: f2,
            terms,
        });
    }
    let x = z - sol.prefactor_center;
    let rho = sol.prefactor_exponent;
    if x == ZERO {
        return Err(Error::Domain(z));
    }
    let p0 = cpow(x, rho);
    let p1 = rho * cpow(x, rho - 1.0);
    let p2 = rho * (rho - 1.0) * cpow(x, rho - 2.0);
    Ok(GhfValue {
        value: p0 * f,
        first: p1 * f + p0 * f1,
        second: p2 * f + 2.0 * p1 * f1 + p0 * f2,
        terms,
    })
}

fn sum_series(
    sol: &GhfSolution,
    w: Complex64,
    rel_tol: f64,
) -> Result<(Complex64, Complex64, Complex64, usize)> {
    let small = |t: Complex64, s: Complex64| t == ZERO || t.norm() <= rel_tol * s.norm();

    let mut f = ONE;
    let d1 = sol.ratio(1);
    let mut f1 = d1;
    let mut f2 = ZERO;
    f += d1 * w;

    // v = d_n w^(n-2) for n >= 2
    let mut v = d1 * sol.ratio(2);
    let mut quiet = 0;
    for n in 2..=MAX_TERMS {
        if n > 2 {
            v *= sol.ratio(n) * w;
        }
        let nf = n as f64;
        let t0 = v * w * w;
        let t1 = v * w * nf;
        let t2 = v * nf * (nf - 1.0);
        f += t0;
        f1 += t1;
        f2 += t2;
        let decreasing = (sol.ratio(n + 1) * w).norm() < 1.0;
        if decreasing && small(t0, f) && small(t1, f1) && small(t2, f2) {
            quiet += 1;
            if quiet >= 2 {
                return Ok((f, f1, f2, n + 1));
            }
        } else {
            quiet = 0;
        }
        if !f.is_finite() || !f2.is_finite() {
            break;
        }
    }
    Err(Error::SeriesCap {
        terms: MAX_TERMS,
        partial: f,
    })
}

/// One solution built from a root of the accessory spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructedSolution {
    /// Accessory parameter of the input equation.
    pub q: Complex64,
    /// The solution in the coordinates of the input equation.
    pub ghf: GhfSolution,
    /// Canonical `δ = -N` problem (with its `q`) the series was built for.
    pub canonical: CheParams,
    /// The canonical series: base point 0, no prefactor.
    pub canonical_ghf: GhfSolution,
    pub sigma: SigmaVector,
    pub e: Vec<Complex64>,
    pub flags: RootFlags,
}

impl ConstructedSolution {
    pub fn is_valid(&self) -> bool {
        self.flags.is_valid()
    }
}

/// Everything the construction pipeline produces for one equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    /// Input parameters with the detected integer snapped exactly.
    pub params: CheParams,
    pub class: CaseClass,
    pub route: Route,
    /// Canonical parameters (without `q`).
    pub canonical: CheParams,
    pub spectrum: AccessorySpectrum,
    /// One entry per spectrum root, valid or not, in spectrum order.
    pub solutions: Vec<ConstructedSolution>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SolutionSet {
    pub fn valid(&self) -> impl Iterator<Item = &ConstructedSolution> {
        self.solutions.iter().filter(|s| s.is_valid())
    }
}

fn snap(p: &CheParams, class: &CaseClass, route: Route) -> CheParams {
    let mut s = *p;
    if let Some(k) = class.integer {
        let exact = Complex64::new(k as f64, 0.0);
        match route {
            Route::Direct | Route::DeltaShift => s.delta = exact,
            Route::Swap | Route::SwapShift => s.gamma = exact,
        }
    }
    if class.epsilon_zero {
        s.epsilon = ZERO;
    }
    s
}

fn to_canonical(p: &CheParams, route: Route) -> CheParams {
    match route {
        Route::Direct => *p,
        Route::DeltaShift => shift_delta_exponent(p).0,
        Route::Swap => swap_singularities(p),
        Route::SwapShift => shift_delta_exponent(&swap_singularities(p)).0,
    }
}

/// Inverse of [`to_canonical`]; both maps are involutions.
fn from_canonical(c: &CheParams, route: Route) -> CheParams {
    match route {
        Route::Direct => *c,
        Route::DeltaShift => shift_delta_exponent(c).0,
        Route::Swap => swap_singularities(c),
        Route::SwapShift => swap_singularities(&shift_delta_exponent(c).0),
    }
}

fn canonical_series(c: &CheParams, e: &[Complex64], epsilon_zero: bool) -> GhfSolution {
    let mut num: Vec<Complex64> = e.iter().map(|ek| 1.0 + ek).collect();
    let mut den: Vec<Complex64> = e.to_vec();
    den.push(c.gamma);
    let scale = if epsilon_zero {
        -c.alpha
    } else {
        num.push(c.alpha / c.epsilon);
        -c.epsilon
    };
    GhfSolution::plain(num, den, scale)
}

fn map_series(canonical: &GhfSolution, original: &CheParams, route: Route) -> GhfSolution {
    let mut g = canonical.clone();
    match route {
        Route::Direct => {}
        Route::DeltaShift => {
            g.prefactor_center = ONE;
            g.prefactor_exponent = 1.0 - original.delta;
        }
        Route::Swap => {
            g.scale = -canonical.scale;
            g.base_point = ONE;
        }
        Route::SwapShift => {
            g.scale = -canonical.scale;
            g.base_point = ONE;
            // (s-1)^(1-γ) = (-z)^(1-γ), a constant multiple of z^(1-γ).
            g.prefactor_center = ZERO;
            g.prefactor_exponent = 1.0 - original.gamma;
        }
    }
    g
}

fn classify_supported(p: &CheParams) -> Result<(CaseClass, Route)> {
    let class = classify(p, INT_TOL);
    match class.kind {
        CaseKind::Exceptional => Err(Error::Exceptional),
        CaseKind::Unsupported => Err(Error::Unsupported),
        _ => Ok((class, class.route().expect("supported case has a route"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_solution(
    params: &CheParams,
    canonical: &CheParams,
    route: Route,
    epsilon_zero: bool,
    q_canonical: Complex64,
    sigma: SigmaVector,
    e: Vec<Complex64>,
    flags: RootFlags,
) -> ConstructedSolution {
    let canonical_q = canonical.with_q(q_canonical);
    let q = from_canonical(&canonical_q, route)
        .q
        .expect("q carried through");
    let canonical_ghf = canonical_series(canonical, &e, epsilon_zero);
    let ghf = map_series(&canonical_ghf, params, route);
    ConstructedSolution {
        q,
        ghf,
        canonical: canonical_q,
        canonical_ghf,
        sigma,
        e,
        flags,
    }
}

/// Runs the whole pipeline: classify, map to the canonical problem, compute
/// the spectrum, and assemble one solution per root.
pub fn solution_set(p: &CheParams) -> Result<SolutionSet> {
    let (class, route) = classify_supported(p)?;
    let params = snap(&p.without_q(), &class, route);
    let canonical = to_canonical(&params, route);
    let spectrum = accessory_spectrum(&canonical)?;
    let solutions = spectrum
        .roots
        .iter()
        .map(|r| {
            build_solution(
                &params,
                &canonical,
                route,
                class.epsilon_zero,
                r.q,
                r.sigma.clone(),
                r.e.clone(),
                r.flags,
            )
        })
        .collect();
    Ok(SolutionSet {
        params,
        class,
        route,
        canonical,
        spectrum,
        solutions,
        diagnostics: validate_params(p),
    })
}

/// Builds the series for an arbitrary `q` of the input equation, whether or
/// not it lies in the spectrum. Off-spectrum values give an inconsistent
/// least-squares fit and are flagged accordingly.
pub fn solution_for_q(p: &CheParams, q: Complex64) -> Result<ConstructedSolution> {
    let (class, route) = classify_supported(p)?;
    let params = snap(&p.without_q(), &class, route);
    let canonical = to_canonical(&params, route);
    let q_canonical = to_canonical(&params.with_q(q), route)
        .q
        .expect("q carried through");
    let aux = solve_auxiliary_parameters(&canonical, q_canonical)?;
    Ok(build_solution(
        &params,
        &canonical,
        route,
        class.epsilon_zero,
        q_canonical,
        aux.sigma,
        aux.e,
        aux.flags,
    ))
}

/// `(q, solution)` for every valid root. When `p.q` is set only the matching
/// root is returned, or [`Error::NotInSpectrum`].
pub fn construct_solutions(p: &CheParams) -> Result<Vec<(Complex64, GhfSolution)>> {
    let set = solution_set(p)?;
    let all = set.valid().map(|s| (s.q, s.ghf.clone()));
    match p.q {
        None => Ok(all.collect()),
        Some(q) => {
            let tol = 1e-8 * q.norm().max(1.0);
            let hits: Vec<_> = all.filter(|(r, _)| (r - q).norm() <= tol).collect();
            if hits.is_empty() {
                Err(Error::NotInSpectrum(q))
            } else {
                Ok(hits)
            }
        }
    }
}
