//! Reference computations written from the definitions, sharing no code with
//! the library's numerical path.

pub type Mat = Vec<Vec<f64>>;

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().flatten().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `(x, 1) / ‖(x, 1)‖`.
pub fn encode(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.push(1.0);
    let n = norm(&v);
    v.iter().map(|a| a / n).collect()
}

/// Modified Gram-Schmidt on Gaussian columns: a random orthonormal basis.
pub fn orthonormal_basis(gaussians: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in gaussians {
        for b in &basis {
            let c = dot(&v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let n = norm(&v);
        basis.push(v.into_iter().map(|x| x / n).collect());
    }
    basis
}

/// `Σ w_i v_i v_iᵀ`.
pub fn mixture_matrix(vectors: &[Vec<f64>], weights: &[f64]) -> Mat {
    let n = vectors[0].len();
    let mut m = vec![vec![0.0; n]; n];
    for (v, w) in vectors.iter().zip(weights) {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += w * v[i] * v[j];
            }
        }
    }
    m
}

/// Fidelity of the pure state `phi` to the uniform mixture of `states`.
pub fn pure_to_uniform_mixture(phi: &[f64], states: &[Vec<f64>]) -> f64 {
    states.iter().map(|s| dot(phi, s).powi(2)).sum::<f64>() / states.len() as f64
}

/// The three-valued rule, spelled out case by case.
pub fn label(similar_to_pos: bool, similar_to_neg: bool) -> &'static str {
    if similar_to_pos && !similar_to_neg {
        "+"
    } else if similar_to_neg && !similar_to_pos {
        "-"
    } else {
        "?"
    }
}

pub fn similar(threshold: f64, fidelity: f64) -> bool {
    threshold <= fidelity + 1e-12
}

/// 0.55, 0.60, ..., 1.00.
pub fn threshold_grid() -> Vec<f64> {
    (0..10).map(|i| f64::from(55 + 5 * i) / 100.0).collect()
}
