//! Fidelity and the r-similarity relation.
//!
//! For density operators the fidelity is Uhlmann's
//!
//! ```text
//! F(ρ, σ) = (tr √(√ρ σ √ρ))² = ‖√ρ √σ‖₁²
//! ```
//!
//! On projectors `ρ = ψψᵀ` we have `√ρ = ρ`, so `√ρ σ √ρ = (ψᵀσψ) ψψᵀ`, whose
//! square root has trace `√(ψᵀσψ)`; hence `F(ψψᵀ, σ) = ψᵀσψ`, and with
//! `σ = φφᵀ` this is `|⟨ψ|φ⟩|²`. It lies in `[0, 1]`, is symmetric, vanishes
//! exactly when `ρσ = 0` and equals one exactly when `ρ = σ`.
//!
//! The trace norm is evaluated from the singular values of `√ρ √σ` rather
//! than from the eigenvalues of `√ρ σ √ρ`: the latter loses half the digits
//! near zero, while singular values keep absolute accuracy.

use crate::error::{Error, Result};
use crate::linalg::singular_values;
use crate::state::{ensure_dim, spectral_sqrt, DensityOperator, PureState};

/// Values above `1 + FIDELITY_EXCESS` are reported as an internal error
/// instead of being clamped.
pub const FIDELITY_EXCESS: f64 = 1e-9;

/// `r ≤ F` is evaluated as `r ≤ F + SIMILARITY_SLACK` so that thresholds met
/// exactly in real arithmetic (e.g. `F = 1` at `r = 1`) survive rounding.
pub const SIMILARITY_SLACK: f64 = 1e-12;

/// A similarity threshold `r ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SimilarityThreshold(f64);

impl SimilarityThreshold {
    /// Any `r ∈ [0, 1]`.
    pub fn new(r: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&r) {
            Ok(SimilarityThreshold(r))
        } else {
            Err(Error::InvalidThreshold { r, range: "[0, 1]" })
        }
    }

    /// A classifier threshold `r* ∈ (1/2, 1]`.
    pub fn classifier(r: f64) -> Result<Self> {
        let t = SimilarityThreshold(r);
        t.require_classifier_grade()?;
        Ok(t)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_classifier_grade(self) -> bool {
        self.0 > 0.5 && self.0 <= 1.0
    }

    pub(crate) fn require_classifier_grade(self) -> Result<()> {
        if self.is_classifier_grade() {
            Ok(())
        } else {
            Err(Error::InvalidThreshold {
                r: self.0,
                range: "(1/2, 1]",
            })
        }
    }

    /// Whether a fidelity value meets this threshold.
    pub fn admits(self, fidelity: f64) -> bool {
        self.0 <= fidelity + SIMILARITY_SLACK
    }
}

/// `|⟨ψ|φ⟩|²`.
pub fn fidelity_pure(psi: &PureState, phi: &PureState) -> Result<f64> {
    let overlap = psi.inner(phi)?;
    Ok((overlap * overlap).min(1.0))
}

/// Uhlmann fidelity before the final clamp to `[0, 1]`.
pub fn fidelity_unclamped(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    ensure_dim(rho.dim(), sigma.dim())?;
    let product = spectral_sqrt(rho)? * spectral_sqrt(sigma)?;
    let trace_norm: f64 = singular_values(&product)?.iter().sum();
    Ok(trace_norm * trace_norm)
}

/// Uhlmann fidelity, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let raw = fidelity_unclamped(rho, sigma)?;
    if raw.is_nan() || raw > 1.0 + FIDELITY_EXCESS {
        return Err(Error::FidelityOutOfRange { value: raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// `ρ` is r-similar to `σ` iff `r ≤ F(ρ, σ)`.
pub fn r_similar(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    r: SimilarityThreshold,
) -> Result<bool> {
    Ok(r.admits(fidelity(rho, sigma)?))
}
