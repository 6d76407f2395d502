use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;

pub(crate) fn from_rows(rows: &[Vec<Complex64>]) -> CMatrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    CMatrix::from_fn(nrows, ncols, |i, j| rows[i][j])
}

pub(crate) fn determinant(m: &CMatrix) -> Complex64 {
    if m.nrows() == 0 {
        return Complex64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// `tr(M^{-1} D)`, i.e. `(d/dq) ln det(M0 + q D)` at the current `M`.
pub(crate) fn log_det_derivative(m: &CMatrix, d: &CMatrix) -> Option<Complex64> {
    let x = m.clone().lu().solve(d)?;
    let tr = x.trace();
    tr.is_finite().then_some(tr)
}

pub(crate) struct LeastSquares {
    pub solution: Vec<Complex64>,
    /// `||A x - b|| / (||A||_F ||x|| + ||b||)`
    pub relative_residual: f64,
    /// Smallest over largest singular value after column equilibration.
    pub inverse_condition: f64,
}

/// Least-squares solve of an overdetermined system via SVD, with columns
/// scaled to unit norm first.
pub(crate) fn least_squares(a: &CMatrix, b: &[Complex64]) -> LeastSquares {
    let ncols = a.ncols();
    let rhs = DVector::from_column_slice(b);
    if ncols == 0 {
        return LeastSquares {
            solution: Vec::new(),
            relative_residual: if rhs.norm() == 0.0 { 0.0 } else { 1.0 },
            inverse_condition: 1.0,
        };
    }
    let col_scale: Vec<f64> = (0..ncols)
        .map(|j| {
            let n = a.column(j).norm();
            if n > 0.0 {
                n
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = a.clone();
    for (j, s) in col_scale.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = scaled.svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let inverse_condition = if smax > 0.0 { smin / smax } else { 0.0 };
    let y = svd
        .solve(&rhs, smax * 1e-15)
        .unwrap_or_else(|_| DVector::zeros(ncols));
    let x = DVector::from_iterator(ncols, y.iter().zip(&col_scale).map(|(v, s)| v / s));
    let resid = (a * &x - &rhs).norm();
    let denom = a.norm() * x.norm() + rhs.norm();
    LeastSquares {
        solution: x.iter().copied().collect(),
        relative_residual: if denom > 0.0 { resid / denom } else { resid },
        inverse_condition,
    }
}
