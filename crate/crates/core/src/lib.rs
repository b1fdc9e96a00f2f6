//! Quantum-inspired pattern recognition.
//!
//! Feature vectors are amplitude-encoded as pure states of a real Hilbert
//! space. Positive and negative examples of a concept are mixed into two
//! density operators, the centroids, and a new state is labeled `+`, `-` or
//! `?` according to whether its fidelity to each centroid reaches a chosen
//! threshold. The [`music`] module applies the same scheme to abstract musical
//! themes, with separate melodic and rhythmic channels.

pub mod classifier;
pub mod error;
mod linalg;
pub mod music;
pub mod sample;
pub mod similarity;
pub mod state;

pub use classifier::{
    assess, assess_batch, build_dataset, classical_centroid, classify, classify_batch,
    negative_centroid, positive_centroid, Assessment, CentroidPair, ClassLabel, QuantumDataSet,
};
pub use error::{Error, Result};
pub use similarity::{fidelity, fidelity_pure, fidelity_unclamped, r_similar, SimilarityThreshold};
pub use state::{
    amplitude_encode, decode_features, mixture, projector, spectral_sqrt, uniform_mixture,
    DensityOperator, FeatureVector, PureState,
};

pub use nalgebra::DMatrix;
