//! Inputs shared by the benchmarks.

use qgestalt::sample::{random_mixture, random_pure_state};
use qgestalt::{build_dataset, projector, ClassLabel, DensityOperator, QuantumDataSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairs of full-rank mixtures in `dim` dimensions.
pub fn mixture_pairs(dim: usize, count: usize) -> Vec<(DensityOperator, DensityOperator)> {
    let mut rng = rng(dim as u64);
    (0..count)
        .map(|_| {
            (
                random_mixture(&mut rng, dim, dim + 1),
                random_mixture(&mut rng, dim, dim + 1),
            )
        })
        .collect()
}

/// A data set with `per_side` positives and negatives, plus pure queries.
pub fn classification_problem(
    dim: usize,
    per_side: usize,
    queries: usize,
) -> (QuantumDataSet, Vec<DensityOperator>) {
    let mut rng = rng(1000 + dim as u64);
    let mut labeled = Vec::new();
    for i in 0..2 * per_side {
        let label = if i % 2 == 0 {
            ClassLabel::Positive
        } else {
            ClassLabel::Negative
        };
        labeled.push((random_pure_state(&mut rng, dim), label));
    }
    let ds = build_dataset(labeled).expect("random states are distinct");
    let qs = (0..queries)
        .map(|_| projector(&random_pure_state(&mut rng, dim)))
        .collect();
    (ds, qs)
}
