//! 64-bit shadow path: rank, complements and bilinear checks with a
//! relative singular-value threshold.

use nalgebra::{DMatrix, DVector};

/// Default relative singular-value threshold.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Numerical rank: singular values above `tol * sigma_max`.
pub fn rank_f64(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `m` in `R^n`.
pub fn complement_f64(m: &DMatrix<f64>, n: usize, tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return DMatrix::identity(n, n);
    }
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Left singular vectors beyond the numerical rank span the complement.
    let padded = if m.ncols() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (n, m.ncols())).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, false);
    let u = svd.u.expect("requested U");
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let r = order
        .iter()
        .filter(|&&i| max > 0.0 && svd.singular_values[i] > tol * max)
        .count();
    let cols: Vec<DVector<f64>> = order[r..]
        .iter()
        .filter(|&&i| i < u.ncols())
        .map(|&i| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Orthonormalizes the columns of `m` (dropping dependent ones).
pub fn orthonormal_basis_f64(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return DMatrix::zeros(n, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<DVector<f64>> = (0..svd.singular_values.len())
        .filter(|&i| max > 0.0 && svd.singular_values[i] > tol * max)
        .map(|i| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}
