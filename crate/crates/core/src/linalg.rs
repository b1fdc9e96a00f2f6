//! Dense symmetric eigendecomposition and singular values.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::error::{Error, Result};

fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues in ascending order with eigenvectors as matching columns.
pub(crate) fn symmetric_eigen(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let evd = to_faer(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::NoConvergence("symmetric eigendecomposition"))?;
    let (s, u) = (evd.S(), evd.U());
    let n = m.nrows();
    let values = (0..n).map(|i| s[i]).collect();
    Ok((values, DMatrix::from_fn(n, n, |i, j| u[(i, j)])))
}

pub(crate) fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let mut values = to_faer(m)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::NoConvergence("symmetric eigendecomposition"))?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    to_faer(m)
        .singular_values()
        .map_err(|_| Error::NoConvergence("singular value decomposition"))
}
