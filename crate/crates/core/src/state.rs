//! Real Hilbert-space primitives: feature vectors, pure states, density
//! operators, and the amplitude encoding that links the first to the second.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Allowed deviation of a pure state's norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-10;
/// Allowed asymmetry, negative eigenvalue and trace deviation of a density operator.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Smallest last amplitude accepted by [`decode_features`].
pub const DECODE_MIN_LAST: f64 = 1e-12;

/// A classical object-state `(x_1, ..., x_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyFeatures);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidFeature { index, value });
        }
        Ok(FeatureVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for FeatureVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        FeatureVector::new(values)
    }
}

/// A unit vector of a real Hilbert space of dimension at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<f64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        let v = Self::checked_vector(amplitudes)?;
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState { amplitudes: v })
    }

    /// Scales arbitrary nonzero amplitudes onto the unit sphere.
    pub fn normalized(amplitudes: Vec<f64>) -> Result<Self> {
        let v = Self::checked_vector(amplitudes)?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(PureState {
            amplitudes: v / norm,
        })
    }

    /// Computational basis state `|index>` of a `dim`-dimensional space.
    ///
    /// Panics if `index >= dim` or `dim < 2`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            dim >= 2 && index < dim,
            "basis state {index} of dimension {dim}"
        );
        PureState {
            amplitudes: DVector::from_fn(dim, |i, _| if i == index { 1.0 } else { 0.0 }),
        }
    }

    fn checked_vector(amplitudes: Vec<f64>) -> Result<DVector<f64>> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall(amplitudes.len()));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        Ok(DVector::from_vec(amplitudes))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        self.amplitudes.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<f64> {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureState) -> Result<f64> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dot(&other.amplitudes))
    }

    /// Amplitude-wise equality within `tol`.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// A symmetric positive-semidefinite trace-one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<f64>,
}

impl DensityOperator {
    /// Validates symmetry, positivity and unit trace.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::DimensionTooSmall(rows));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let asymmetry = max_asymmetry(&matrix);
        if asymmetry > DENSITY_TOLERANCE {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(Error::TraceNotOne { trace });
        }
        let op = DensityOperator { matrix };
        let min = op.eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOLERANCE {
            return Err(Error::NotPsd { eigenvalue: min });
        }
        Ok(op)
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_trusted(matrix: DMatrix<f64>) -> Self {
        DensityOperator { matrix }
    }

    /// `I/n`.
    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim >= 2);
        DensityOperator {
            matrix: DMatrix::identity(dim, dim) / dim as f64,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::symmetric_eigenvalues(&self.matrix)
    }

    /// `ψᵀ ρ ψ`, the probability of finding this state in `ψ`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        ensure_dim(self.dim(), psi.dim())?;
        let v = psi.as_vector();
        Ok(v.dot(&(&self.matrix * v)))
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> Result<f64> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(max_abs(&(&self.matrix - &other.matrix)))
    }
}

impl From<&PureState> for DensityOperator {
    fn from(psi: &PureState) -> Self {
        projector(psi)
    }
}

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Maps `(x_1, ..., x_d)` to the unit vector `(x_1, ..., x_d, 1) / ‖(x_1, ..., x_d, 1)‖`
/// of `R^(d+1)`.
pub fn amplitude_encode(x: &FeatureVector) -> PureState {
    let d = x.dim();
    let v = DVector::from_fn(d + 1, |i, _| if i < d { x.0[i] } else { 1.0 });
    let norm = v.norm();
    PureState {
        amplitudes: v / norm,
    }
}

/// Inverse of [`amplitude_encode`]: `x_i = ψ_i / ψ_(d+1)`.
pub fn decode_features(psi: &PureState) -> Result<FeatureVector> {
    let amps = psi.amplitudes();
    let (&last, head) = amps.split_last().expect("pure states have dimension >= 2");
    if last <= DECODE_MIN_LAST {
        return Err(Error::NotAnEncoding { last });
    }
    FeatureVector::new(head.iter().map(|a| a / last).collect())
}

/// The rank-one projector `ψψᵀ`.
pub fn projector(psi: &PureState) -> DensityOperator {
    let v = psi.amplitudes();
    let n = v.len();
    DensityOperator::from_trusted(DMatrix::from_fn(n, n, |i, j| v[i] * v[j]))
}

/// `Σ w_i ψ_i ψ_iᵀ` for positive weights summing to one.
pub fn mixture(states: &[PureState], weights: &[f64]) -> Result<DensityOperator> {
    let first = states.first().ok_or(Error::EmptyMixture)?;
    if weights.len() != states.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} states",
            weights.len(),
            states.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > DENSITY_TOLERANCE {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let n = first.dim();
    let mut acc = DMatrix::zeros(n, n);
    for (index, (psi, &w)) in states.iter().zip(weights).enumerate() {
        ensure_dim(n, psi.dim()).map_err(|e| Error::at(index, e))?;
        let v = psi.amplitudes();
        for j in 0..n {
            for i in 0..n {
                // w * (v_i v_j) keeps the accumulator exactly symmetric
                acc[(i, j)] += w * (v[i] * v[j]);
            }
        }
    }
    DensityOperator::new(acc)
}

/// Equal-weight mixture `Σ (1/n) ψ_i ψ_iᵀ`.
pub fn uniform_mixture(states: &[PureState]) -> Result<DensityOperator> {
    if states.is_empty() {
        return Err(Error::EmptyMixture);
    }
    let w = 1.0 / states.len() as f64;
    let weights = vec![w; states.len()];
    // 1/n summed n times can drift by a few ulps; far inside the tolerance
    mixture(states, &weights)
}

/// Eigenvalues at or below this magnitude are rounding noise of the eigensolver
/// and are treated as exact zeros.
fn eigen_noise_floor(dim: usize) -> f64 {
    16.0 * dim as f64 * f64::EPSILON
}

/// The unique PSD square root of `ρ`, by spectral decomposition.
///
/// Eigenvalues in `[-1e-10, 0)` are clipped to zero, as are positive
/// eigenvalues below the solver's noise floor.
pub fn spectral_sqrt(rho: &DensityOperator) -> Result<DMatrix<f64>> {
    let n = rho.dim();
    let (values, v) = linalg::symmetric_eigen(&rho.matrix)?;
    let floor = eigen_noise_floor(n);
    let mut roots = DVector::zeros(n);
    for (i, &lambda) in values.iter().enumerate() {
        if lambda < -DENSITY_TOLERANCE {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        roots[i] = if lambda <= floor { 0.0 } else { lambda.sqrt() };
    }
    let mut root = &v * DMatrix::from_diagonal(&roots) * v.transpose();
    let t = root.transpose();
    root += t;
    root *= 0.5;
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(v: &[f64]) -> FeatureVector {
        FeatureVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn encode_zero_vector() {
        let psi = amplitude_encode(&fv(&[0.0, 0.0]));
        assert_eq!(psi.amplitudes(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn encode_ones() {
        let psi = amplitude_encode(&fv(&[1.0, 1.0, 1.0]));
        for a in psi.amplitudes() {
            assert!((a - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_finite_features() {
        assert!(matches!(
            FeatureVector::new(vec![1.0, f64::NAN]),
            Err(Error::InvalidFeature { index: 1, .. })
        ));
        assert!(matches!(
            FeatureVector::new(vec![1.0, f64::INFINITY]),
            Err(Error::InvalidFeature { index: 1, .. })
        ));
        assert_eq!(FeatureVector::new(vec![]), Err(Error::EmptyFeatures));
    }

    #[test]
    fn decode_examples() {
        let x = decode_features(&PureState::new(vec![0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(x.values(), &[0.0, 0.0]);
        let x = decode_features(&PureState::new(vec![0.5; 4]).unwrap()).unwrap();
        assert_eq!(x.values(), &[1.0, 1.0, 1.0]);
        assert!(matches!(
            decode_features(&PureState::basis(2, 0)),
            Err(Error::NotAnEncoding { .. })
        ));
        // negative last amplitude is outside the encoding's image too
        assert!(decode_features(&PureState::new(vec![0.0, -1.0]).unwrap()).is_err());
    }

    #[test]
    fn petal_pairs_round_trip() {
        for (l, w) in [(1.4, 0.2), (4.7, 1.4), (6.0, 2.5), (5.1, 1.9)] {
            let x = fv(&[l, w]);
            let back = decode_features(&amplitude_encode(&x)).unwrap();
            assert!((back.values()[0] - l).abs() < 1e-12);
            assert!((back.values()[1] - w).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_state_validation() {
        assert!(matches!(
            PureState::new(vec![1.0, 1.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(PureState::new(vec![1.0]), Err(Error::DimensionTooSmall(1)));
        assert_eq!(
            PureState::normalized(vec![0.0, 0.0]),
            Err(Error::ZeroVector)
        );
        let s = PureState::normalized(vec![3.0, 4.0]).unwrap();
        assert!((s.amplitudes()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn projector_examples() {
        let p = projector(&PureState::basis(2, 0));
        assert_eq!(
            p.matrix(),
            &DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = projector(&PureState::new(vec![h, h]).unwrap());
        for v in p.matrix().iter() {
            assert!((v - 0.5).abs() < 1e-15);
        }
        assert!((p.trace() - 1.0).abs() < 1e-15);
        let sq = p.matrix() * p.matrix();
        assert!(max_abs(&(sq - p.matrix())) < 1e-15);
    }

    #[test]
    fn mixture_examples() {
        let zero = PureState::basis(2, 0);
        let one = PureState::basis(2, 1);
        let m = mixture(std::slice::from_ref(&zero), &[1.0]).unwrap();
        assert_eq!(m, projector(&zero));
        let m = mixture(&[zero.clone(), one.clone()], &[0.5, 0.5]).unwrap();
        assert_eq!(m, DensityOperator::maximally_mixed(2));
    }

    #[test]
    fn mixture_errors() {
        let zero = PureState::basis(2, 0);
        assert_eq!(mixture(&[], &[]), Err(Error::EmptyMixture));
        assert!(matches!(
            mixture(std::slice::from_ref(&zero), &[0.9]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            mixture(&[zero.clone(), zero.clone()], &[1.5, -0.5]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            mixture(std::slice::from_ref(&zero), &[0.5, 0.5]),
            Err(Error::InvalidWeights(_))
        ));
        let three = PureState::basis(3, 0);
        assert!(matches!(
            mixture(&[zero, three], &[0.5, 0.5]),
            Err(Error::AtIndex { index: 1, .. })
        ));
    }

    #[test]
    fn density_validation() {
        let bad_trace = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            DensityOperator::new(bad_trace),
            Err(Error::TraceNotOne { .. })
        ));
        let asym = DMatrix::from_row_slice(2, 2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(matches!(
            DensityOperator::new(asym),
            Err(Error::NotSymmetric { .. })
        ));
        let indefinite = DMatrix::from_row_slice(2, 2, &[0.5, 0.8, 0.8, 0.5]);
        assert!(matches!(
            DensityOperator::new(indefinite),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            DensityOperator::new(DMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn sqrt_of_maximally_mixed() {
        let root = spectral_sqrt(&DensityOperator::maximally_mixed(2)).unwrap();
        let expected = DMatrix::<f64>::identity(2, 2) / 2f64.sqrt();
        assert!(max_abs(&(root - expected)) < 1e-15);
    }

    #[test]
    fn sqrt_of_projector_is_itself() {
        let psi = PureState::normalized(vec![0.3, -1.2, 0.7]).unwrap();
        let p = projector(&psi);
        let root = spectral_sqrt(&p).unwrap();
        assert!(max_abs(&(root - p.matrix())) < 1e-14);
    }

    #[test]
    fn sqrt_clips_tiny_negative_eigenvalues() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0 + 5e-11, 0.0, 0.0, -5e-11]);
        let rho = DensityOperator::new(m).unwrap();
        let root = spectral_sqrt(&rho).unwrap();
        assert_eq!(root[(1, 1)], 0.0);
    }
}
