//! Oracles that share no code with the library's numerical path.
#![allow(dead_code, clippy::needless_range_loop)]

use qgestalt::{DensityOperator, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_rows(rho: &DensityOperator) -> Mat {
    let m = rho.matrix();
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Cyclic Jacobi rotations: eigenvalues and eigenvectors (as columns) of a
/// symmetric matrix.
pub fn jacobi(a: &Mat) -> (Vec<f64>, Mat) {
    let n = a.len();
    let mut a = a.clone();
    let mut v: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// PSD square root through the Jacobi decomposition.
pub fn sqrt_oracle(a: &Mat) -> Mat {
    let (vals, v) = jacobi(a);
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| v[i][k] * vals[k].max(0.0).sqrt() * v[j][k])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// `(tr √(√ρ σ √ρ))²` evaluated literally with the Jacobi solver. Only
/// accurate when `√ρ σ √ρ` has no eigenvalues near zero.
pub fn uhlmann_oracle(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    let r = sqrt_oracle(&to_rows(rho));
    let inner = matmul(&matmul(&r, &to_rows(sigma)), &r);
    let (vals, _) = jacobi(&inner);
    let t: f64 = vals.iter().map(|v| v.max(0.0).sqrt()).sum();
    t * t
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `ψᵀ ρ ψ` written out as a double sum.
pub fn quadratic_form(rho: &DensityOperator, psi: &PureState) -> f64 {
    let m = to_rows(rho);
    let v = psi.amplitudes();
    let mut acc = 0.0;
    for i in 0..v.len() {
        for j in 0..v.len() {
            acc += v[i] * m[i][j] * v[j];
        }
    }
    acc
}

/// Fidelity of pure `φ` to the uniform mixture of `states`: mean squared overlap.
pub fn pure_to_centroid(phi: &[f64], states: &[&[f64]]) -> f64 {
    states.iter().map(|s| dot(phi, s).powi(2)).sum::<f64>() / states.len() as f64
}

/// The classifier's three cases, written from the definition.
pub fn literal_label(f_pos: f64, f_neg: f64, r: f64) -> &'static str {
    let slack = 1e-12;
    let sim_pos = r <= f_pos + slack;
    let sim_neg = r <= f_neg + slack;
    if sim_pos && !sim_neg {
        "+"
    } else if sim_neg && !sim_pos {
        "-"
    } else {
        "?"
    }
}

/// Threshold grid 0.55, 0.60, ..., 1.00 without accumulated rounding.
pub fn threshold_grid() -> Vec<f64> {
    (0..10).map(|i| f64::from(55 + 5 * i) / 100.0).collect()
}
