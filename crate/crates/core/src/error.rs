use thiserror::Error;

use crate::classifier::ClassLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("feature vector must have at least one entry")]
    EmptyFeatures,
    #[error("feature {index} is not finite ({value})")]
    InvalidFeature { index: usize, value: f64 },
    #[error("state dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("amplitudes are not finite")]
    NonFiniteAmplitude,
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("state is not an amplitude encoding (last amplitude {last})")]
    NotAnEncoding { last: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("mixture needs at least one state")]
    EmptyMixture,
    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),
    #[error("matrix is not symmetric (max asymmetry {asymmetry})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue})")]
    NotPsd { eigenvalue: f64 },
    #[error("trace must be 1, got {trace}")]
    TraceNotOne { trace: f64 },
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("fidelity {value} escaped [0, 1] beyond rounding tolerance")]
    FidelityOutOfRange { value: f64 },
    #[error("threshold {r} outside {range}")]
    InvalidThreshold { r: f64, range: &'static str },
    #[error("the same state is labeled both {first} and {second}")]
    InconsistentLabeling {
        first: ClassLabel,
        second: ClassLabel,
    },
    #[error("no {0} instances; both centroids need at least one example")]
    InsufficientExperience(ClassLabel),
    #[error("{0} must not be empty")]
    EmptyInput(&'static str),
    #[error("item {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("line {line}, column {column}: {message}")]
    ThemeSyntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("theme has no sounding note")]
    SilentTheme,
    #[error("melodic length {len} too small for {notes} notes")]
    MelodicLengthTooSmall { len: usize, notes: usize },
    #[error("event {event} lasting {duration} beats is not a whole number of ticks at {grid} ticks per beat")]
    Quantization {
        event: usize,
        duration: String,
        grid: u32,
    },
    #[error("rhythm span {span} shorter than theme ({needed} ticks)")]
    SpanTooSmall { span: usize, needed: usize },
    #[error("{0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn at(index: usize, source: Error) -> Self {
        Error::AtIndex {
            index,
            source: Box::new(source),
        }
    }
}
