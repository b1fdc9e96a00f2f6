//! Seeded generators for synthetic states, mixtures and themes.

use nalgebra::DMatrix;
use num_rational::Ratio;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::music::theme::{Meter, Phrase, PhraseEvent};
use crate::state::{mixture, DensityOperator, PureState};

/// A Haar-random real unit vector.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> PureState {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(s) = PureState::normalized(v) {
            return s;
        }
    }
}

/// A mixture of `terms` random pure states with random positive weights.
pub fn random_mixture<R: Rng + ?Sized>(rng: &mut R, dim: usize, terms: usize) -> DensityOperator {
    let states: Vec<PureState> = (0..terms).map(|_| random_pure_state(rng, dim)).collect();
    let raw: Vec<f64> = (0..terms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    mixture(&states, &weights).expect("random mixture is a valid density operator")
}

/// A uniformly random orthogonal matrix (QR of a Gaussian matrix).
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Two density operators with orthogonal supports: `ρσ = 0` exactly in real
/// arithmetic. `split` basis vectors go to the first operator.
pub fn orthogonal_support_pair<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    split: usize,
) -> (DensityOperator, DensityOperator) {
    assert!(split >= 1 && split < dim);
    let q = random_orthogonal(rng, dim);
    let side = |rng: &mut R, cols: std::ops::Range<usize>| {
        let k = cols.len();
        let terms = rng.random_range(1..=k + 1);
        let mut states = Vec::with_capacity(terms);
        for _ in 0..terms {
            let c: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
            let mut v = vec![0.0; dim];
            for (ci, col) in c.iter().zip(cols.clone()) {
                for (row, out) in v.iter_mut().enumerate() {
                    *out += ci * q[(row, col)];
                }
            }
            states.push(PureState::normalized(v).expect("nonzero combination"));
        }
        let w = vec![1.0 / terms as f64; terms];
        mixture(&states, &w).expect("valid mixture")
    };
    let rho = side(rng, 0..split);
    let sigma = side(rng, split..dim);
    (rho, sigma)
}

/// A random monodic phrase on a 16th-note grid: `notes` sounding notes with
/// occasional rests, pitches around middle C.
pub fn random_phrase<R: Rng + ?Sized>(rng: &mut R, notes: usize) -> Phrase {
    const DURATIONS: [(u32, u32); 6] = [(1, 4), (1, 2), (3, 4), (1, 1), (3, 2), (2, 1)];
    let meters = [
        Meter { beats: 2, unit: 4 },
        Meter { beats: 3, unit: 4 },
        Meter { beats: 4, unit: 4 },
    ];
    let meter = *meters.choose(rng).unwrap();
    let mut events = Vec::new();
    let mut pitch: i32 = rng.random_range(55..=72);
    let pick = |rng: &mut R| {
        let (n, d) = *DURATIONS.choose(rng).unwrap();
        Ratio::new(n, d)
    };
    for i in 0..notes {
        if i > 0 && rng.random_bool(0.2) {
            events.push(PhraseEvent::Rest {
                duration: pick(rng),
            });
        }
        if i > 0 {
            pitch = (pitch + rng.random_range(-7..=7)).clamp(36, 96);
        }
        events.push(PhraseEvent::Note {
            pitch,
            duration: pick(rng),
        });
    }
    Phrase { meter, events }
}
