//! Labeled data sets, quantum and classical centroids, and the three-valued
//! classifier.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::similarity::{fidelity, SimilarityThreshold};
use crate::state::{ensure_dim, uniform_mixture, DensityOperator, FeatureVector, PureState};

/// Two states count as the same instance when their amplitudes agree to this.
pub const STATE_EQ_TOLERANCE: f64 = 1e-12;

/// Outcome of a classification: YES, NO or PERHAPS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Positive,
    Negative,
    Indeterminate,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 3] = [
        ClassLabel::Positive,
        ClassLabel::Negative,
        ClassLabel::Indeterminate,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            ClassLabel::Positive => "+",
            ClassLabel::Negative => "-",
            ClassLabel::Indeterminate => "?",
        }
    }

    /// Exchanges `+` and `-`; `?` is fixed.
    pub fn flipped(self) -> Self {
        match self {
            ClassLabel::Positive => ClassLabel::Negative,
            ClassLabel::Negative => ClassLabel::Positive,
            ClassLabel::Indeterminate => ClassLabel::Indeterminate,
        }
    }

    /// The classifier's case analysis on the two similarity predicates.
    pub fn from_similarities(to_positive: bool, to_negative: bool) -> Self {
        match (to_positive, to_negative) {
            (true, false) => ClassLabel::Positive,
            (false, true) => ClassLabel::Negative,
            _ => ClassLabel::Indeterminate,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLabel(pub String);

impl fmt::Display for UnknownLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown label {:?} (expected +, - or ?)", self.0)
    }
}

impl std::error::Error for UnknownLabel {}

impl FromStr for ClassLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "+" => Ok(ClassLabel::Positive),
            "-" => Ok(ClassLabel::Negative),
            "?" => Ok(ClassLabel::Indeterminate),
            other => Err(UnknownLabel(other.to_string())),
        }
    }
}

/// Instances split by label. Shared by the concept and musical data sets.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Partition<T> {
    pub positives: Vec<T>,
    pub negatives: Vec<T>,
    pub indeterminates: Vec<T>,
}

impl<T> Partition<T> {
    /// Splits `labeled` by label, dropping repeated instances with the same
    /// label and rejecting repeats with different labels. Both the positive
    /// and the negative side must end up nonempty.
    pub fn build(labeled: Vec<(T, ClassLabel)>, same: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let mut seen: Vec<(T, ClassLabel)> = Vec::with_capacity(labeled.len());
        for (item, label) in labeled {
            match seen.iter().find(|(other, _)| same(other, &item)) {
                Some((_, prior)) if *prior != label => {
                    return Err(Error::InconsistentLabeling {
                        first: *prior,
                        second: label,
                    })
                }
                Some(_) => {}
                None => seen.push((item, label)),
            }
        }
        let mut part = Partition {
            positives: Vec::new(),
            negatives: Vec::new(),
            indeterminates: Vec::new(),
        };
        for (item, label) in seen {
            match label {
                ClassLabel::Positive => part.positives.push(item),
                ClassLabel::Negative => part.negatives.push(item),
                ClassLabel::Indeterminate => part.indeterminates.push(item),
            }
        }
        if part.positives.is_empty() {
            return Err(Error::InsufficientExperience(ClassLabel::Positive));
        }
        if part.negatives.is_empty() {
            return Err(Error::InsufficientExperience(ClassLabel::Negative));
        }
        Ok(part)
    }

    pub fn swapped(self) -> Self {
        Partition {
            positives: self.negatives,
            negatives: self.positives,
            indeterminates: self.indeterminates,
        }
    }
}

/// Previously classified experience about a concept: pairwise disjoint sets
/// of positive, negative and indeterminate instances in one Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDataSet {
    dimension: usize,
    states: Partition<PureState>,
}

impl QuantumDataSet {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn positives(&self) -> &[PureState] {
        &self.states.positives
    }

    pub fn negatives(&self) -> &[PureState] {
        &self.states.negatives
    }

    pub fn indeterminates(&self) -> &[PureState] {
        &self.states.indeterminates
    }

    /// `(n⁺, n⁻, n?)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.states.positives.len(),
            self.states.negatives.len(),
            self.states.indeterminates.len(),
        )
    }

    /// All instances with their labels, positives first.
    pub fn labeled(&self) -> impl Iterator<Item = (&PureState, ClassLabel)> {
        let tag = |label| move |s| (s, label);
        self.states
            .positives
            .iter()
            .map(tag(ClassLabel::Positive))
            .chain(self.states.negatives.iter().map(tag(ClassLabel::Negative)))
            .chain(
                self.states
                    .indeterminates
                    .iter()
                    .map(tag(ClassLabel::Indeterminate)),
            )
    }

    /// The same experience with positive and negative instances exchanged.
    pub fn swap_polarity(&self) -> Self {
        QuantumDataSet {
            dimension: self.dimension,
            states: self.states.clone().swapped(),
        }
    }

    pub fn centroids(&self) -> Result<CentroidPair> {
        Ok(CentroidPair {
            positive: positive_centroid(self)?,
            negative: negative_centroid(self)?,
        })
    }
}

/// Partitions labeled states into a data set.
pub fn build_dataset(labeled: Vec<(PureState, ClassLabel)>) -> Result<QuantumDataSet> {
    let dimension = labeled
        .first()
        .map(|(s, _)| s.dim())
        .ok_or(Error::EmptyInput("labeled state list"))?;
    for (index, (s, _)) in labeled.iter().enumerate() {
        ensure_dim(dimension, s.dim()).map_err(|e| Error::at(index, e))?;
    }
    let states = Partition::build(labeled, |a, b| a.approx_eq(b, STATE_EQ_TOLERANCE))?;
    Ok(QuantumDataSet { dimension, states })
}

/// The quantum positive centroid `ρ⁺ = Σ (1/n⁺) P_ψ` over positive instances.
pub fn positive_centroid(ds: &QuantumDataSet) -> Result<DensityOperator> {
    centroid_of(ds.positives(), ClassLabel::Positive)
}

/// The quantum negative centroid `ρ⁻ = Σ (1/n⁻) P_ψ` over negative instances.
pub fn negative_centroid(ds: &QuantumDataSet) -> Result<DensityOperator> {
    centroid_of(ds.negatives(), ClassLabel::Negative)
}

fn centroid_of(states: &[PureState], side: ClassLabel) -> Result<DensityOperator> {
    if states.is_empty() {
        return Err(Error::InsufficientExperience(side));
    }
    uniform_mixture(states)
}

/// Classical baseline: the componentwise mean of feature vectors.
pub fn classical_centroid(points: &[FeatureVector]) -> Result<FeatureVector> {
    let d = points
        .first()
        .map(FeatureVector::dim)
        .ok_or(Error::EmptyInput("point list"))?;
    let mut sum = vec![0.0; d];
    for (index, p) in points.iter().enumerate() {
        ensure_dim(d, p.dim()).map_err(|e| Error::at(index, e))?;
        for (acc, v) in sum.iter_mut().zip(p.values()) {
            *acc += v;
        }
    }
    let n = points.len() as f64;
    FeatureVector::new(sum.into_iter().map(|s| s / n).collect())
}

/// Positive and negative centroids of one data set.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidPair {
    pub positive: DensityOperator,
    pub negative: DensityOperator,
}

impl CentroidPair {
    pub fn new(positive: DensityOperator, negative: DensityOperator) -> Result<Self> {
        ensure_dim(positive.dim(), negative.dim())?;
        Ok(CentroidPair { positive, negative })
    }

    pub fn dim(&self) -> usize {
        self.positive.dim()
    }

    pub fn swapped(&self) -> Self {
        CentroidPair {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }
}

/// A label together with the two fidelities that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assessment {
    pub positive_fidelity: f64,
    pub negative_fidelity: f64,
    pub label: ClassLabel,
}

/// Classifies `sigma` and reports the fidelities to both centroids.
pub fn assess(
    sigma: &DensityOperator,
    centroids: &CentroidPair,
    threshold: SimilarityThreshold,
) -> Result<Assessment> {
    threshold.require_classifier_grade()?;
    let positive_fidelity = fidelity(sigma, &centroids.positive)?;
    let negative_fidelity = fidelity(sigma, &centroids.negative)?;
    Ok(Assessment {
        positive_fidelity,
        negative_fidelity,
        label: ClassLabel::from_similarities(
            threshold.admits(positive_fidelity),
            threshold.admits(negative_fidelity),
        ),
    })
}

/// `+` if `sigma` is r*-similar to `ρ⁺` but not to `ρ⁻`, `-` for the mirror
/// case, `?` otherwise.
pub fn classify(
    sigma: &DensityOperator,
    centroids: &CentroidPair,
    threshold: SimilarityThreshold,
) -> Result<ClassLabel> {
    assess(sigma, centroids, threshold).map(|a| a.label)
}

/// [`assess`] over a batch, in input order. The first failing element is
/// reported with its index.
pub fn assess_batch(
    states: &[DensityOperator],
    centroids: &CentroidPair,
    threshold: SimilarityThreshold,
) -> Result<Vec<Assessment>> {
    threshold.require_classifier_grade()?;
    let results: Vec<Result<Assessment>> = states
        .par_iter()
        .map(|s| assess(s, centroids, threshold))
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|e| Error::at(index, e)))
        .collect()
}

pub fn classify_batch(
    states: &[DensityOperator],
    centroids: &CentroidPair,
    threshold: SimilarityThreshold,
) -> Result<Vec<ClassLabel>> {
    Ok(assess_batch(states, centroids, threshold)?
        .into_iter()
        .map(|a| a.label)
        .collect())
}
