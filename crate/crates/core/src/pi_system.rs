//! The auxiliary polynomial system behind the accessory spectrum.
//!
//! Substituting the two-term generalized hypergeometric recurrence with
//! parameters `(1+e_1, …, 1+e_N, α/ε; e_1, …, e_N, γ)` and scale `-ε` into
//! the three-term Frobenius recurrence leaves the polynomial
//!
//! ```text
//! Π(n) = (α + ε(n-1)) ∏(e_k + n) + Q(n) ∏(e_k - 1 + n) - (n-1)(γ-2+n) ∏(e_k - 2 + n)
//! Q(n) = -q + (n-1)(n-2+γ+δ-ε)
//! ```
//!
//! which must vanish identically. Its `n^(N+2)` coefficient is always zero and
//! its `n^(N+1)` coefficient is `N + δ`, so for `δ = -N` it has degree `N`
//! and vanishing at the `N+1` nodes `n = 0, …, N` is sufficient.
//!
//! In the elementary symmetric coordinates `σ_i` of the `e_k` every product
//! `∏(e_k - j + n)` is affine in `σ`, so for fixed `q` the node conditions are
//! an overdetermined linear system in `σ`. Its consistency is a determinant
//! condition that is a polynomial of degree `N+1` in `q`.

use num_complex::Complex64;

use crate::che::{is_nonpositive_integer, near_integer, CheParams, INT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::poly::{interpolate_poly, poly_from_roots, sort_roots, Poly};

/// Relative residual below which the overdetermined σ-system counts as
/// consistent.
pub const CONSISTENCY_TOL: f64 = 1e-8;
/// Distance to a non-positive integer that marks a denominator hazard.
pub const HAZARD_WINDOW: f64 = 1e-7;
const DEGENERATE_TOL: f64 = 1e-12;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Elementary symmetric polynomials `σ_1 … σ_N` of `e_1 … e_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaVector(pub Vec<Complex64>);

impl SigmaVector {
    pub fn from_e(e: &[Complex64]) -> Self {
        // ∏(t - e_k) = Σ (-1)^i σ_i t^(N-i)
        let p = poly_from_roots(e);
        let n = e.len();
        let c = p.coeffs();
        SigmaVector(
            (1..=n)
                .map(|i| {
                    let v = c[n - i];
                    if i % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `e_k`, i.e. the roots of `Σ (-1)^i σ_i t^(N-i)`.
    pub fn to_e(&self) -> Result<Vec<Complex64>> {
        let n = self.0.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut c = vec![ZERO; n + 1];
        c[n] = ONE;
        for (idx, s) in self.0.iter().enumerate() {
            let i = idx + 1;
            c[n - i] = if i % 2 == 0 { *s } else { -s };
        }
        Poly::new(c).roots(1e-9)
    }

    /// `∏(e_k + x) = Σ σ_i x^(N-i)`.
    pub fn shifted_product(&self, x: Complex64) -> Complex64 {
        self.0.iter().fold(ONE, |acc, s| acc * x + s)
    }
}

/// Number of auxiliary parameters implied by `δ = -N`.
pub fn n_from_delta(p: &CheParams) -> Result<usize> {
    match near_integer(p.delta, INT_TOL) {
        Some(d) if d <= 0 => Ok((-d) as usize),
        _ => Err(Error::InvalidParameter {
            name: "delta",
            value: p.delta,
            reason: "the auxiliary system needs delta = -N with N >= 0",
        }),
    }
}

fn pi_parts(p: &CheParams, q: Complex64, n: Complex64) -> (Complex64, Complex64, Complex64) {
    let a = p.alpha + p.epsilon * (n - 1.0);
    let qn = -q + (n - 1.0) * (n - 2.0 + p.gamma + p.delta - p.epsilon);
    let b = (n - 1.0) * (p.gamma - 2.0 + n);
    (a, qn, b)
}

/// `Π(n)` for the given `q` and σ; `N` is the length of `sigma`.
///
/// When δ is itself a non-positive integer it must equal `-sigma.len()`;
/// otherwise δ is left free so the leading-term structure can be probed.
pub fn evaluate_pi(
    p: &CheParams,
    q: Complex64,
    sigma: &SigmaVector,
    n: Complex64,
) -> Result<Complex64> {
    Ok(evaluate_pi_scaled(p, q, sigma, n)?.0)
}

/// `Π(n)` together with the sum of magnitudes of its three terms.
pub fn evaluate_pi_scaled(
    p: &CheParams,
    q: Complex64,
    sigma: &SigmaVector,
    n: Complex64,
) -> Result<(Complex64, f64)> {
    if let Some(d) = near_integer(p.delta, INT_TOL) {
        if d <= 0 && (-d) as usize != sigma.len() {
            return Err(Error::LengthMismatch {
                expected: (-d) as usize,
                actual: sigma.len(),
            });
        }
    }
    let (a, qn, b) = pi_parts(p, q, n);
    let t0 = a * sigma.shifted_product(n);
    let t1 = qn * sigma.shifted_product(n - 1.0);
    let t2 = b * sigma.shifted_product(n - 2.0);
    Ok((t0 + t1 - t2, t0.norm() + t1.norm() + t2.norm()))
}

/// The node conditions `Π(j) = 0`, `j = 0…N`, as a linear system in σ.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSystem {
    /// `(N+1) × N`, row `j` is node `n = j`, column `i` multiplies `σ_(i+1)`.
    pub matrix: Vec<Vec<Complex64>>,
    pub rhs: Vec<Complex64>,
}

/// Affine split `M(q) = M0 + q M1`, `b(q) = b0 + q b1`.
struct AffineSystem {
    m0: Vec<Vec<Complex64>>,
    m1: Vec<Vec<Complex64>>,
    b0: Vec<Complex64>,
    b1: Vec<Complex64>,
}

impl AffineSystem {
    fn new(p: &CheParams, n_aux: usize) -> Self {
        let mut m0 = Vec::with_capacity(n_aux + 1);
        let mut m1 = Vec::with_capacity(n_aux + 1);
        let mut b0 = Vec::with_capacity(n_aux + 1);
        let mut b1 = Vec::with_capacity(n_aux + 1);
        for j in 0..=n_aux {
            let n = Complex64::new(j as f64, 0.0);
            let (a, g, b) = pi_parts(p, ZERO, n);
            let pw = |x: Complex64, k: usize| x.powi(k as i32);
            let row0: Vec<Complex64> = (1..=n_aux)
                .map(|i| {
                    let k = n_aux - i;
                    a * pw(n, k) + g * pw(n - 1.0, k) - b * pw(n - 2.0, k)
                })
                .collect();
            let row1: Vec<Complex64> = (1..=n_aux).map(|i| -pw(n - 1.0, n_aux - i)).collect();
            m0.push(row0);
            m1.push(row1);
            b0.push(-(a * pw(n, n_aux) + g * pw(n - 1.0, n_aux) - b * pw(n - 2.0, n_aux)));
            b1.push(pw(n - 1.0, n_aux));
        }
        AffineSystem { m0, m1, b0, b1 }
    }

    fn at(&self, q: Complex64) -> SigmaSystem {
        let matrix = self
            .m0
            .iter()
            .zip(&self.m1)
            .map(|(r0, r1)| r0.iter().zip(r1).map(|(x, y)| x + q * y).collect())
            .collect();
        let rhs = self
            .b0
            .iter()
            .zip(&self.b1)
            .map(|(x, y)| x + q * y)
            .collect();
        SigmaSystem { matrix, rhs }
    }

    /// q-independent row scales used to balance the augmented matrix.
    fn row_scales(&self, radius: f64) -> Vec<f64> {
        (0..self.m0.len())
            .map(|j| {
                let s = self.m0[j]
                    .iter()
                    .chain(std::iter::once(&self.b0[j]))
                    .map(|v| v.norm())
                    .chain(
                        self.m1[j]
                            .iter()
                            .chain(std::iter::once(&self.b1[j]))
                            .map(|v| v.norm() * radius),
                    )
                    .fold(0.0, f64::max);
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect()
    }

    /// Balanced augmented matrix `[M | b]` and its q-derivative.
    fn augmented(&self, q: Complex64, scales: &[f64]) -> (CMatrix, CMatrix) {
        let n_rows = self.m0.len();
        let m = CMatrix::from_fn(n_rows, n_rows, |i, j| {
            let v = if j + 1 < n_rows {
                self.m0[i][j] + q * self.m1[i][j]
            } else {
                self.b0[i] + q * self.b1[i]
            };
            v / scales[i]
        });
        let d = CMatrix::from_fn(n_rows, n_rows, |i, j| {
            let v = if j + 1 < n_rows {
                self.m1[i][j]
            } else {
                self.b1[i]
            };
            v / scales[i]
        });
        (m, d)
    }
}

pub fn sigma_linear_system(p: &CheParams, q: Complex64) -> Result<SigmaSystem> {
    let n_aux = n_from_delta(p)?;
    Ok(AffineSystem::new(p, n_aux).at(q))
}

/// Radius of the circle of interpolation nodes in `q`.
pub fn interpolation_radius(p: &CheParams) -> f64 {
    [p.alpha, p.gamma, p.epsilon]
        .iter()
        .map(|v| v.norm())
        .fold(1.0, f64::max)
}

/// The monic degree-`(N+1)` polynomial in `q` whose roots are the accessory
/// parameters admitting a generalized hypergeometric solution.
pub fn accessory_polynomial(p: &CheParams) -> Result<Poly> {
    let n_aux = n_from_delta(p)?;
    if n_aux == 0 {
        return Ok(Poly::new(vec![-p.alpha, ONE]));
    }
    let sys = AffineSystem::new(p, n_aux);
    let radius = interpolation_radius(p);
    let scales = sys.row_scales(radius);
    let count = n_aux + 2;
    let nodes: Vec<Complex64> = (0..count)
        .map(|k| {
            Complex64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / count as f64 + 0.3,
            )
        })
        .collect();
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&q| linalg::determinant(&sys.augmented(q, &scales).0))
        .collect();
    let mut poly = interpolate_poly(&nodes, &values)?;
    poly.prune(1e-13, radius);
    if poly.degree() != n_aux + 1 || poly.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: n_aux + 1,
            actual: poly.degree(),
        });
    }
    Ok(poly.monic())
}

/// Refines a root of the determinant condition by Newton's method on
/// `det(M(q))`, using `d ln det / dq = tr(M^{-1} M')`.
fn polish_root(sys: &AffineSystem, scales: &[f64], q0: Complex64) -> Complex64 {
    let mut q = q0;
    let mut det_prev = linalg::determinant(&sys.augmented(q, scales).0).norm();
    for _ in 0..12 {
        let (m, d) = sys.augmented(q, scales);
        let Some(tr) = linalg::log_det_derivative(&m, &d) else {
            break;
        };
        if tr.norm() == 0.0 {
            break;
        }
        let step = 1.0 / tr;
        let cand = q - step;
        let det_cand = linalg::determinant(&sys.augmented(cand, scales).0).norm();
        if !cand.is_finite() || det_cand > det_prev {
            break;
        }
        q = cand;
        det_prev = det_cand;
        if step.norm() <= 1e-15 * q.norm().max(1.0) || det_cand == 0.0 {
            break;
        }
    }
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RootFlags {
    /// Some denominator parameter (`e_k` or γ) is zero or a negative integer.
    pub denominator_hazard: bool,
    /// Some `ε e_k - α` vanishes, leaving the product identity indeterminate.
    pub alpha_epsilon_coincidence: bool,
    /// The σ-system has rank below `N`.
    pub degenerate: bool,
    /// The σ-system is consistent at this `q`.
    pub consistent: bool,
    pub consistency_residual: f64,
    /// Largest `|Π(j)|` over the nodes, relative to the size of its terms.
    pub pi_residual: f64,
}

impl RootFlags {
    pub fn is_valid(&self) -> bool {
        self.consistent && !self.denominator_hazard && !self.degenerate
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliarySolution {
    pub sigma: SigmaVector,
    pub e: Vec<Complex64>,
    pub flags: RootFlags,
}

/// Solves the σ-system at `q` in the least-squares sense and recovers the
/// `e_k` as roots of `∏(t - e_k)`.
pub fn solve_auxiliary_parameters(p: &CheParams, q: Complex64) -> Result<AuxiliarySolution> {
    let n_aux = n_from_delta(p)?;
    let mut flags = RootFlags {
        denominator_hazard: is_nonpositive_integer(p.gamma, HAZARD_WINDOW),
        ..RootFlags::default()
    };
    if n_aux == 0 {
        let resid = (q - p.alpha).norm() / q.norm().max(1.0);
        flags.consistency_residual = resid;
        flags.pi_residual = resid;
        flags.consistent = resid < CONSISTENCY_TOL;
        return Ok(AuxiliarySolution {
            sigma: SigmaVector(Vec::new()),
            e: Vec::new(),
            flags,
        });
    }
    let sys = AffineSystem::new(p, n_aux).at(q);
    let a = linalg::from_rows(&sys.matrix);
    let ls = linalg::least_squares(&a, &sys.rhs);
    flags.consistency_residual = ls.relative_residual;
    flags.consistent = ls.relative_residual < CONSISTENCY_TOL;
    flags.degenerate = ls.inverse_condition < DEGENERATE_TOL;

    let sigma = SigmaVector(ls.solution);
    let e = sigma.to_e()?;
    with_e(
        p,
        q,
        AuxiliarySolution {
            sigma,
            e: Vec::new(),
            flags,
        },
        e,
    )
}

/// Installs `e` into `aux`, with σ rebuilt from it and the flags that depend
/// on `e` recomputed.
fn with_e(
    p: &CheParams,
    q: Complex64,
    aux: AuxiliarySolution,
    e: Vec<Complex64>,
) -> Result<AuxiliarySolution> {
    let n_aux = e.len();
    let mut flags = aux.flags;
    flags.denominator_hazard = is_nonpositive_integer(p.gamma, HAZARD_WINDOW);
    flags.alpha_epsilon_coincidence = false;
    let scale = p.scale();
    for ek in &e {
        if is_nonpositive_integer(*ek, HAZARD_WINDOW) {
            flags.denominator_hazard = true;
        }
        if (p.epsilon * ek - p.alpha).norm() < HAZARD_WINDOW * scale {
            flags.alpha_epsilon_coincidence = true;
        }
    }
    // Judge Π with σ rebuilt from the recovered e_k, so the root extraction
    // is covered as well.
    // Products taken over the e_k directly, so root extraction is covered.
    flags.pi_residual = node_residual(&node_system(p, q, &e).0);
    debug_assert_eq!(n_aux, aux.sigma.len());
    Ok(AuxiliarySolution {
        sigma: aux.sigma,
        e,
        flags,
    })
}

/// Node residuals `Π(j) / (|t0| + |t1| + |t2|)` with the products taken
/// over the `e_k` directly, and the Jacobian in `(q, e_1, …, e_N)`.
fn node_system(p: &CheParams, q: Complex64, e: &[Complex64]) -> (Vec<Complex64>, CMatrix) {
    let n_aux = e.len();
    let prod = |shift: Complex64, skip: Option<usize>| {
        e.iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .fold(ONE, |acc, (_, ek)| acc * (ek + shift))
    };
    let mut f = Vec::with_capacity(n_aux + 1);
    let mut jac = CMatrix::zeros(n_aux + 1, n_aux + 1);
    for j in 0..=n_aux {
        let n = Complex64::new(j as f64, 0.0);
        let (a, g, b) = pi_parts(p, q, n);
        let (t0, t1, t2) = (
            a * prod(n, None),
            g * prod(n - 1.0, None),
            b * prod(n - 2.0, None),
        );
        let s = t0.norm() + t1.norm() + t2.norm();
        let s = if s > 0.0 { s } else { 1.0 };
        f.push((t0 + t1 - t2) / s);
        jac[(j, 0)] = -prod(n - 1.0, None) / s;
        for k in 0..n_aux {
            jac[(j, k + 1)] = (a * prod(n, Some(k)) + g * prod(n - 1.0, Some(k))
                - b * prod(n - 2.0, Some(k)))
                / s;
        }
    }
    (f, jac)
}

fn node_residual(f: &[Complex64]) -> f64 {
    f.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Newton on the square system `Π(j) = 0`, `j = 0…N`, in `(q, e)`. Working
/// on the `e_k` rather than σ keeps small `e_k` accurate relative to
/// themselves. Returns the input unchanged if no step improves it.
fn refine_root(p: &CheParams, q: Complex64, e: &[Complex64]) -> (Complex64, Vec<Complex64>) {
    let mut best = (q, e.to_vec());
    let (f, _) = node_system(p, q, e);
    let mut best_res = node_residual(&f);
    for _ in 0..8 {
        let (f, jac) = node_system(p, best.0, &best.1);
        let rhs = nalgebra::DVector::from_vec(f);
        let Some(step) = jac.lu().solve(&rhs) else {
            break;
        };
        let cand_q = best.0 - step[0];
        let cand_e: Vec<Complex64> = best
            .1
            .iter()
            .enumerate()
            .map(|(k, ek)| ek - step[k + 1])
            .collect();
        if !cand_q.is_finite() || cand_e.iter().any(|x| !x.is_finite()) {
            break;
        }
        let res = node_residual(&node_system(p, cand_q, &cand_e).0);
        if res.is_nan() || res >= best_res {
            break;
        }
        best = (cand_q, cand_e);
        best_res = res;
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRoot {
    pub q: Complex64,
    pub sigma: SigmaVector,
    pub e: Vec<Complex64>,
    pub flags: RootFlags,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccessorySpectrum {
    pub n_value: usize,
    pub q_poly: Poly,
    /// Sorted by real part, then imaginary part; repeated for multiple roots.
    pub roots: Vec<SpectrumRoot>,
}

impl AccessorySpectrum {
    pub fn valid_roots(&self) -> impl Iterator<Item = &SpectrumRoot> {
        self.roots.iter().filter(|r| r.flags.is_valid())
    }
}

/// The full spectrum for a canonical `δ = -N` problem: polynomial, polished
/// roots and the auxiliary parameters of each root.
pub fn accessory_spectrum(p: &CheParams) -> Result<AccessorySpectrum> {
    let n_aux = n_from_delta(p)?;
    let q_poly = accessory_polynomial(p)?;
    let mut qs = q_poly.roots(1e-8)?;
    if n_aux > 0 {
        let sys = AffineSystem::new(p, n_aux);
        let scales = sys.row_scales(interpolation_radius(p));
        let multiple =
            |i: usize, qs: &[Complex64]| qs.iter().enumerate().any(|(j, r)| j != i && *r == qs[i]);
        let polished: Vec<Complex64> = (0..qs.len())
            .map(|i| {
                if multiple(i, &qs) {
                    qs[i]
                } else {
                    polish_root(&sys, &scales, qs[i])
                }
            })
            .collect();
        qs = polished;
        sort_roots(&mut qs);
    }
    let roots = qs
        .into_iter()
        .map(|q| {
            let mut aux = solve_auxiliary_parameters(p, q)?;
            let mut q = q;
            if n_aux > 0 && aux.flags.is_valid() && aux.e.len() == n_aux {
                let (q2, e2) = refine_root(p, q, &aux.e);
                if q2 != q {
                    let redo = solve_auxiliary_parameters(p, q2)?;
                    if redo.flags.is_valid() {
                        q = q2;
                        let sigma = SigmaVector::from_e(&e2);
                        aux = with_e(p, q2, AuxiliarySolution { sigma, ..redo }, e2)?;
                    }
                }
            }
            Ok(SpectrumRoot {
                q,
                sigma: aux.sigma,
                e: aux.e,
                flags: aux.flags,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AccessorySpectrum {
        n_value: n_aux,
        q_poly,
        roots,
    })
}

/// Residuals of the three closing identities
///
/// ```text
/// q = α ∏ (1+e_k)/e_k
/// 1 = ∏ e_k(1-γ+e_k)/(ε e_k - α)
/// q = α - Σ (e_n + n - γ - ε)
/// ```
///
/// The first and third follow from the node conditions; the middle one is
/// an empirical identity and is only reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relations {
    /// `|q - α∏(1+e)/e| / max(1, |q|)`; `None` if some `e_k = 0`.
    pub product: Option<f64>,
    /// `|∏ e(1-γ+e)/(εe-α) - 1|`; `None` if some `εe_k = α`.
    pub conjectured_product: Option<f64>,
    /// `|q - α + Σ(e_n + n - γ - ε)| / max(1, |q|)`.
    pub sum: Option<f64>,
}

pub fn consistency_relations(p: &CheParams, q: Complex64, e: &[Complex64]) -> Relations {
    let qscale = q.norm().max(1.0);
    let pscale = p.scale();
    let product = if e.iter().any(|ek| ek.norm() < 1e-300) {
        None
    } else {
        let rhs = e.iter().fold(p.alpha, |acc, ek| acc * (1.0 + ek) / ek);
        Some((q - rhs).norm() / qscale)
    };
    let conjectured_product = if e
        .iter()
        .any(|ek| (p.epsilon * ek - p.alpha).norm() < 1e-14 * pscale)
    {
        None
    } else {
        let prod = e.iter().fold(ONE, |acc, ek| {
            acc * ek * (1.0 - p.gamma + ek) / (p.epsilon * ek - p.alpha)
        });
        Some((prod - 1.0).norm())
    };
    let sum: Complex64 = e
        .iter()
        .enumerate()
        .map(|(idx, ek)| ek + (idx + 1) as f64 - p.gamma - p.epsilon)
        .sum();
    let rel3 = (q - (p.alpha - sum)).norm() / qscale;
    Relations {
        product,
        conjectured_product,
        sum: rel3.is_finite().then_some(rel3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn worked() -> (CheParams, f64, f64) {
        let s5 = 5f64.sqrt();
        (
            CheParams::real(3.0, -1.0, 1.0, 1.0),
            (5.0 + s5) / 2.0,
            (5.0 - s5) / 2.0,
        )
    }

    #[test]
    fn pi_n0_is_alpha_minus_q() {
        let p = CheParams::real(1.7, 0.0, 0.4, 0.9);
        let v = evaluate_pi(&p, c(0.9, 0.0), &SigmaVector(vec![]), c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);
        let v = evaluate_pi(&p, c(2.0, 0.0), &SigmaVector(vec![]), c(1.0, 0.0)).unwrap();
        assert!((v - c(0.9 - 2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pi_n1_worked_instance() {
        let (p, q, _) = worked();
        let e1 = 1.0 / (q - 1.0);
        let v = evaluate_pi(&p, c(q, 0.0), &SigmaVector(vec![c(e1, 0.0)]), c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn pi_length_mismatch() {
        let (p, q, _) = worked();
        let err = evaluate_pi(&p, c(q, 0.0), &SigmaVector(vec![]), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 1,
                actual: 0
            }
        ));
    }

    #[test]
    fn sigma_system_n1_row_at_one() {
        let (p, q, _) = worked();
        let sys = sigma_linear_system(&p, c(q, 0.0)).unwrap();
        assert_eq!(
            (sys.matrix.len(), sys.matrix[0].len(), sys.rhs.len()),
            (2, 1, 2)
        );
        // Row n = 1: (α - q) σ1 = -α, i.e. q e1 = α(1 + e1).
        assert!((sys.matrix[1][0] - c(1.0 - q, 0.0)).norm() < 1e-14);
        assert!((sys.rhs[1] - c(-1.0, 0.0)).norm() < 1e-14);
        // Both rows independently give the same σ1.
        let s_a = sys.rhs[0] / sys.matrix[0][0];
        let s_b = sys.rhs[1] / sys.matrix[1][0];
        assert!((s_a - s_b).norm() < 1e-13);
        assert!((s_a.re - 0.381_966_011_250_105_1).abs() < 1e-10);
    }

    #[test]
    fn sigma_system_n2_finite() {
        let p = CheParams::new(c(1.3, 0.4), c(-2.0, 0.0), c(0.7, -0.2), c(-0.5, 0.8));
        let sys = sigma_linear_system(&p, c(0.3, 1.1)).unwrap();
        assert_eq!(sys.matrix.len(), 3);
        assert!(sys
            .matrix
            .iter()
            .flatten()
            .chain(&sys.rhs)
            .all(|v| v.is_finite()));
    }

    #[test]
    fn accessory_polynomial_n1_worked() {
        let (p, _, _) = worked();
        let poly = accessory_polynomial(&p).unwrap();
        let expected = [c(5.0, 0.0), c(-5.0, 0.0), c(1.0, 0.0)];
        for (a, b) in poly.coeffs().iter().zip(expected) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn accessory_polynomial_n0() {
        let p = CheParams::new(c(0.3, 0.1), c(0.0, 0.0), c(-1.2, 0.5), c(0.8, -0.6));
        let poly = accessory_polynomial(&p).unwrap();
        assert_eq!(poly.coeffs(), &[-p.alpha, ONE]);
    }

    #[test]
    fn accessory_polynomial_rejects_noninteger_delta() {
        let p = CheParams::real(1.0, -0.5, 1.0, 1.0);
        assert!(accessory_polynomial(&p).is_err());
    }

    #[test]
    fn auxiliary_worked_roots() {
        let (p, q_hi, q_lo) = worked();
        let aux = solve_auxiliary_parameters(&p, c(q_hi, 0.0)).unwrap();
        assert!(aux.flags.is_valid());
        assert!((aux.e[0] - c(0.381_966_011_250_105_1, 0.0)).norm() < 1e-10);
        let aux = solve_auxiliary_parameters(&p, c(q_lo, 0.0)).unwrap();
        assert!((aux.e[0] - c(2.618_033_988_749_895, 0.0)).norm() < 1e-10);
        assert!(aux.flags.pi_residual < 1e-12);
    }

    #[test]
    fn auxiliary_n0() {
        let p = CheParams::real(1.5, 0.0, 1.0, 0.7);
        let aux = solve_auxiliary_parameters(&p, c(0.7, 0.0)).unwrap();
        assert!(aux.e.is_empty() && aux.flags.is_valid());
        let aux = solve_auxiliary_parameters(&p, c(0.8, 0.0)).unwrap();
        assert!(!aux.flags.consistent);
    }

    #[test]
    fn off_spectrum_q_is_inconsistent() {
        let (p, q, _) = worked();
        let aux = solve_auxiliary_parameters(&p, c(q + 1e-2, 0.0)).unwrap();
        assert!(!aux.flags.consistent);
    }

    #[test]
    fn relations_worked_instance() {
        let (p, q, _) = worked();
        let e1 = c(1.0 / (q - 1.0), 0.0);
        let r = consistency_relations(&p, c(q, 0.0), &[e1]);
        assert!(r.product.unwrap() < 1e-14);
        assert!(r.sum.unwrap() < 1e-14);
        assert!(r.conjectured_product.unwrap() < 1e-12);
        // Relation 3 by hand: q = 4 - e1.
        assert!((4.0 - e1.re - q).abs() < 1e-14);
    }

    #[test]
    fn relations_n0() {
        let p = CheParams::real(1.5, 0.0, 1.0, 0.7);
        let r = consistency_relations(&p, c(0.7, 0.0), &[]);
        assert_eq!(r.product, Some(0.0));
        assert_eq!(r.sum, Some(0.0));
        let r = consistency_relations(&p, c(0.9, 0.0), &[]);
        assert!(r.product.unwrap() > 0.1 && r.sum.unwrap() > 0.1);
    }

    #[test]
    fn relations_not_evaluable() {
        let p = CheParams::real(1.5, -1.0, 1.0, 0.7);
        let r = consistency_relations(&p, c(0.7, 0.0), &[c(0.0, 0.0)]);
        assert!(r.product.is_none());
        let r = consistency_relations(&p, c(0.7, 0.0), &[c(0.7, 0.0)]);
        assert!(r.conjectured_product.is_none());
    }

    #[test]
    fn sigma_round_trip() {
        let e = vec![c(0.3, 0.2), c(-1.4, 0.5), c(2.2, -0.1)];
        let sigma = SigmaVector::from_e(&e);
        assert!((sigma.0[0] - (e[0] + e[1] + e[2])).norm() < 1e-14);
        assert!((sigma.0[2] - e[0] * e[1] * e[2]).norm() < 1e-14);
        let back = sigma.to_e().unwrap();
        for ek in &e {
            assert!(back.iter().any(|b| (b - ek).norm() < 1e-10));
        }
        let x = c(0.7, -0.3);
        let direct = e.iter().fold(ONE, |acc, ek| acc * (ek + x));
        assert!((sigma.shifted_product(x) - direct).norm() < 1e-13);
    }
}
