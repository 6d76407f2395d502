//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored in ascending order of degree. The module provides
//! the small toolbox the rest of the crate needs: Horner evaluation,
//! simultaneous (Aberth–Ehrlich) root finding, expansion from roots and
//! Newton-form interpolation.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Highest degree for which root finding and interpolation are considered
/// well conditioned in binary64.
pub const SUPPORTED_DEGREE: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, dropping exact zero
    /// trailing coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim_exact();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![ONE] }
    }

    /// `x - root`
    pub fn linear(root: Complex64) -> Self {
        Poly {
            coeffs: vec![-root, ONE],
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    fn trim_exact(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == ZERO) {
            self.coeffs.pop();
        }
    }

    /// Drops trailing coefficients whose magnitude, weighted by `radius^k`, is
    /// below `rel_tol` times the largest weighted coefficient.
    pub fn prune(&mut self, rel_tol: f64, radius: f64) {
        let weighted = |k: usize, c: &Complex64| c.norm() * radius.powi(k as i32);
        let scale = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| weighted(k, c))
            .fold(0.0, f64::max);
        while let Some(c) = self.coeffs.last() {
            let k = self.coeffs.len() - 1;
            if weighted(k, c) <= rel_tol * scale {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead == ZERO {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|c| c / lead).collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * x + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, x: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |x|^k`, the natural scale against which a residual at `x`
    /// should be judged.
    pub fn magnitude_at(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// All roots with multiplicity, sorted by real part then imaginary part.
    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        roots_of_poly(self, tol)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(ZERO);
        Poly::new((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

pub fn eval_poly(p: &Poly, x: Complex64) -> Complex64 {
    p.eval(x)
}

/// Monic polynomial `prod (x - r)` by iterated multiplication.
pub fn poly_from_roots(roots: &[Complex64]) -> Poly {
    let mut coeffs = vec![ONE];
    for &r in roots {
        // multiply by (x - r), ascending order
        coeffs.push(ZERO);
        for k in (1..coeffs.len()).rev() {
            coeffs[k] = coeffs[k - 1] - r * coeffs[k];
        }
        coeffs[0] *= -r;
    }
    Poly::new(coeffs)
}

/// Unique interpolating polynomial of degree `< nodes.len()` via Newton
/// divided differences, converted to monomial form.
pub fn interpolate_poly(nodes: &[Complex64], values: &[Complex64]) -> Result<Poly> {
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: nodes.len(),
            actual: values.len(),
        });
    }
    let n = nodes.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = nodes[i].norm().max(nodes[j].norm()).max(1.0);
            if (nodes[i] - nodes[j]).norm() <= 1e-14 * scale {
                return Err(Error::DuplicateNodes(i, j));
            }
        }
    }
    if n == 0 {
        return Ok(Poly::zero());
    }

    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }

    // Horner-style expansion of the Newton form.
    let mut coeffs = vec![dd[n - 1]];
    for k in (0..n - 1).rev() {
        // coeffs <- coeffs * (x - nodes[k]) + dd[k]
        coeffs.insert(0, ZERO);
        for i in 0..coeffs.len() - 1 {
            let next = coeffs[i + 1];
            coeffs[i] -= nodes[k] * next;
        }
        coeffs[0] += dd[k];
    }
    Ok(Poly::new(coeffs))
}

/// All complex roots of `p` with multiplicity.
///
/// Uses Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
/// Roots closer than `1e-7` times the root scale are merged into a cluster
/// and reported with multiplicity. Every root, before merging, satisfies
/// `|p(r)| <= tol * (sum |c_k| |r|^k + 8 eps sum |c_k| R^k)`, `R = max(1, max |r|)`.
pub fn roots_of_poly(p: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    let degree = p.degree();
    if p.is_zero() || degree == 0 {
        return Err(Error::InvalidParameter {
            name: "degree",
            value: Complex64::new(degree as f64, 0.0),
            reason: "root finding needs a polynomial of degree >= 1",
        });
    }
    let monic = p.monic();
    if degree == 1 {
        return Ok(vec![-monic.coeffs[0]]);
    }
    let dp = monic.derivative();

    let mut z = initial_guesses(&monic);
    const MAX_ITER: usize = 800;
    let mut iterations = 0;
    let mut converged = vec![false; degree];
    while iterations < MAX_ITER && converged.iter().any(|c| !c) {
        iterations += 1;
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let pz = monic.eval(z[i]);
            if pz == ZERO {
                converged[i] = true;
                continue;
            }
            let ratio = pz / dp.eval(z[i]);
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        ONE / d
                    }
                })
                .sum();
            let denom = ONE - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() {
                ratio
            } else {
                ratio / denom
            };
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                converged[i] = true;
            }
        }
    }

    // Newton polish on the original coefficients; accept only improvements.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = monic.eval_with_derivative(*zi);
            if d == ZERO {
                break;
            }
            let cand = *zi - v / d;
            if cand.is_finite() && monic.eval(cand).norm() < v.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }

    // Absolute floor at the root scale, so exact multiple roots at the
    // origin are not judged against a vanishing magnitude.
    let radius = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let floor = 8.0 * f64::EPSILON * monic.magnitude_at(Complex64::new(radius, 0.0));
    // Judged before clustering: a merged cluster centre is not a root of the
    // perturbed polynomial, its members are.
    let worst = z
        .iter()
        .map(|&r| monic.eval(r).norm() / (monic.magnitude_at(r) + floor))
        .fold(0.0, f64::max);
    let mut roots = cluster_roots(z);
    sort_roots(&mut roots);
    if worst.is_nan() || worst > tol {
        return Err(Error::RootsNotConverged {
            best: roots,
            residual: worst,
            iterations,
        });
    }
    Ok(roots)
}

/// Deterministic ordering: by real part, then imaginary part.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn initial_guesses(monic: &Poly) -> Vec<Complex64> {
    let n = monic.degree();
    // Geometric-mean radius bounded by the Fujiwara bound.
    let c0 = monic.coeffs[0].norm();
    let mean_radius = if c0 > 0.0 {
        c0.powf(1.0 / n as f64)
    } else {
        1.0
    };
    let fujiwara = (0..n)
        .map(|k| {
            let c = monic.coeffs[k].norm();
            let e = (n - k) as f64;
            if k == 0 {
                (c / 2.0).powf(1.0 / e)
            } else {
                c.powf(1.0 / e)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = mean_radius.min(fujiwara).max(1e-3);
    let shift = -monic.coeffs[n - 1] / n as f64;
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            shift + Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn cluster_roots(z: Vec<Complex64>) -> Vec<Complex64> {
    let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let window = 1e-7 * scale;
    let mut used = vec![false; z.len()];
    let mut out = Vec::with_capacity(z.len());
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        // Transitive closure so that a tight cluster is merged as a whole.
        let mut k = 0;
        while k < members.len() {
            let m = members[k];
            for j in 0..z.len() {
                if !used[j] && (z[m] - z[j]).norm() < window {
                    used[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let mean = members.iter().map(|&m| z[m]).sum::<Complex64>() / members.len() as f64;
        out.extend(std::iter::repeat_n(mean, members.len()));
    }
    out
}
