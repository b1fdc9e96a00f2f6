//! Seeded synthetic data sets for demos and the self-test.

use qgestalt::ClassLabel;
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Standardized (petal length, petal width) of two flower species plus
/// ambiguous specimens between them: `per_class` of each species labeled
/// `+` and `-`, and `unknown` labeled `?`.
pub fn flowers<R: Rng + ?Sized>(
    rng: &mut R,
    per_class: usize,
    unknown: usize,
) -> Vec<(Vec<f64>, ClassLabel)> {
    let mut rows = Vec::with_capacity(2 * per_class + unknown);
    for (center, count, label) in [
        ((-1.0, -1.1), per_class, ClassLabel::Positive),
        ((1.0, 0.9), per_class, ClassLabel::Negative),
        ((0.0, -0.1), unknown, ClassLabel::Indeterminate),
    ] {
        for _ in 0..count {
            rows.push((specimen(rng, center), label));
        }
    }
    rows
}

/// Fresh unlabeled specimens drawn from either species.
pub fn flower_queries<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let center = if rng.random_bool(0.5) {
                (-1.0, -1.1)
            } else {
                (1.0, 0.9)
            };
            specimen(rng, center)
        })
        .collect()
}

fn specimen<R: Rng + ?Sized>(rng: &mut R, (length, width): (f64, f64)) -> Vec<f64> {
    let noise = Normal::new(0.0, 0.35).unwrap();
    vec![length + noise.sample(rng), width + noise.sample(rng)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shape_and_determinism() {
        let a = flowers(&mut ChaCha8Rng::seed_from_u64(3), 5, 2);
        let b = flowers(&mut ChaCha8Rng::seed_from_u64(3), 5, 2);
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
        assert!(a.iter().all(|(v, _)| v.len() == 2));
    }
}
