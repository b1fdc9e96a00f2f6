//! Musical ideas, melodic/rhythmic similarity and the musical classifier.
//!
//! A positive centroid is kept per channel: the melodic states of all
//! positive ideas are mixed into one density operator and the rhythmic states
//! into another. Similarity of a new idea to a centroid is then judged channel
//! by channel and combined according to the chosen [`SimilarityMode`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::classifier::STATE_EQ_TOLERANCE;
use crate::classifier::{ClassLabel, Partition};
use crate::error::{Error, Result};
use crate::music::encode::{encode_melodic, encode_rhythmic, EncodingConfig};
use crate::music::theme::AbstractTheme;
use crate::similarity::{fidelity, fidelity_pure, SimilarityThreshold};
use crate::state::{ensure_dim, projector, uniform_mixture, DensityOperator, PureState};

/// A pure musical idea seen through its melodic and rhythmic channels.
#[derive(Debug, Clone, PartialEq)]
pub struct MusicalIdeaState {
    melodic: PureState,
    rhythmic: PureState,
}

impl MusicalIdeaState {
    pub fn new(melodic: PureState, rhythmic: PureState) -> Self {
        MusicalIdeaState { melodic, rhythmic }
    }

    pub fn from_theme(theme: &AbstractTheme, config: &EncodingConfig) -> Result<Self> {
        Ok(MusicalIdeaState {
            melodic: encode_melodic(theme, config.melodic_len)?,
            rhythmic: encode_rhythmic(theme, config.grid, config.span)?,
        })
    }

    pub fn melodic(&self) -> &PureState {
        &self.melodic
    }

    pub fn rhythmic(&self) -> &PureState {
        &self.rhythmic
    }

    /// `(melodic dimension, rhythmic dimension)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.melodic.dim(), self.rhythmic.dim())
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.melodic.approx_eq(&other.melodic, STATE_EQ_TOLERANCE)
            && self.rhythmic.approx_eq(&other.rhythmic, STATE_EQ_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMode {
    Melodic,
    Rhythmic,
    /// Melodically and rhythmically similar.
    Strong,
    /// Melodically or rhythmically similar.
    Weak,
}

impl SimilarityMode {
    pub const ALL: [SimilarityMode; 4] = [
        SimilarityMode::Melodic,
        SimilarityMode::Rhythmic,
        SimilarityMode::Strong,
        SimilarityMode::Weak,
    ];

    pub fn combine(self, melodic: bool, rhythmic: bool) -> bool {
        match self {
            SimilarityMode::Melodic => melodic,
            SimilarityMode::Rhythmic => rhythmic,
            SimilarityMode::Strong => melodic && rhythmic,
            SimilarityMode::Weak => melodic || rhythmic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SimilarityMode::Melodic => "melodic",
            SimilarityMode::Rhythmic => "rhythmic",
            SimilarityMode::Strong => "strong",
            SimilarityMode::Weak => "weak",
        }
    }
}

impl fmt::Display for SimilarityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SimilarityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SimilarityMode::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown similarity mode {s:?} (melodic, rhythmic, strong or weak)"
                ))
            })
    }
}

/// Fidelities of the two channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelFidelities {
    pub melodic: f64,
    pub rhythmic: f64,
}

impl ChannelFidelities {
    pub fn similar(self, mode: SimilarityMode, r: SimilarityThreshold) -> bool {
        mode.combine(r.admits(self.melodic), r.admits(self.rhythmic))
    }
}

pub fn idea_fidelities(a: &MusicalIdeaState, b: &MusicalIdeaState) -> Result<ChannelFidelities> {
    Ok(ChannelFidelities {
        melodic: fidelity_pure(&a.melodic, &b.melodic)?,
        rhythmic: fidelity_pure(&a.rhythmic, &b.rhythmic)?,
    })
}

/// `a Sim_r b` for the chosen kind of similarity.
pub fn musical_similar(
    a: &MusicalIdeaState,
    b: &MusicalIdeaState,
    mode: SimilarityMode,
    r: SimilarityThreshold,
) -> Result<bool> {
    Ok(idea_fidelities(a, b)?.similar(mode, r))
}

/// Classified musical ideas for one theme, disjoint as for concept data sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MusicalDataSet {
    shape: (usize, usize),
    ideas: Partition<MusicalIdeaState>,
}

pub fn build_musical_dataset(
    labeled: Vec<(MusicalIdeaState, ClassLabel)>,
) -> Result<MusicalDataSet> {
    let shape = labeled
        .first()
        .map(|(i, _)| i.shape())
        .ok_or(Error::EmptyInput("labeled idea list"))?;
    for (index, (idea, _)) in labeled.iter().enumerate() {
        let (m, r) = idea.shape();
        ensure_dim(shape.0, m)
            .and_then(|_| ensure_dim(shape.1, r))
            .map_err(|e| Error::at(index, e))?;
    }
    let ideas = Partition::build(labeled, MusicalIdeaState::approx_eq)?;
    Ok(MusicalDataSet { shape, ideas })
}

impl MusicalDataSet {
    pub fn positives(&self) -> &[MusicalIdeaState] {
        &self.ideas.positives
    }

    pub fn negatives(&self) -> &[MusicalIdeaState] {
        &self.ideas.negatives
    }

    pub fn indeterminates(&self) -> &[MusicalIdeaState] {
        &self.ideas.indeterminates
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.ideas.positives.len(),
            self.ideas.negatives.len(),
            self.ideas.indeterminates.len(),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn swap_polarity(&self) -> Self {
        MusicalDataSet {
            shape: self.shape,
            ideas: self.ideas.clone().swapped(),
        }
    }
}

/// Channel-wise positive (`κ⁺`) and negative (`κ⁻`) centroids.
#[derive(Debug, Clone, PartialEq)]
pub struct MusicalCentroids {
    pub melodic_positive: DensityOperator,
    pub rhythmic_positive: DensityOperator,
    pub melodic_negative: DensityOperator,
    pub rhythmic_negative: DensityOperator,
}

impl MusicalCentroids {
    pub fn swapped(&self) -> Self {
        MusicalCentroids {
            melodic_positive: self.melodic_negative.clone(),
            rhythmic_positive: self.rhythmic_negative.clone(),
            melodic_negative: self.melodic_positive.clone(),
            rhythmic_negative: self.rhythmic_positive.clone(),
        }
    }
}

fn channel_mixture(
    ideas: &[MusicalIdeaState],
    side: ClassLabel,
    channel: fn(&MusicalIdeaState) -> &PureState,
) -> Result<DensityOperator> {
    if ideas.is_empty() {
        return Err(Error::InsufficientExperience(side));
    }
    let states: Vec<PureState> = ideas.iter().map(|i| channel(i).clone()).collect();
    uniform_mixture(&states)
}

/// Uniform mixtures with weight `1/n⁺` (`1/n⁻`) per channel and polarity.
pub fn musical_centroids(ds: &MusicalDataSet) -> Result<MusicalCentroids> {
    use ClassLabel::{Negative, Positive};
    Ok(MusicalCentroids {
        melodic_positive: channel_mixture(ds.positives(), Positive, MusicalIdeaState::melodic)?,
        rhythmic_positive: channel_mixture(ds.positives(), Positive, MusicalIdeaState::rhythmic)?,
        melodic_negative: channel_mixture(ds.negatives(), Negative, MusicalIdeaState::melodic)?,
        rhythmic_negative: channel_mixture(ds.negatives(), Negative, MusicalIdeaState::rhythmic)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThemeAssessment {
    pub positive: ChannelFidelities,
    pub negative: ChannelFidelities,
    pub label: ClassLabel,
}

pub fn assess_theme(
    nu: &MusicalIdeaState,
    centroids: &MusicalCentroids,
    mode: SimilarityMode,
    threshold: SimilarityThreshold,
) -> Result<ThemeAssessment> {
    threshold.require_classifier_grade()?;
    let melodic = projector(&nu.melodic);
    let rhythmic = projector(&nu.rhythmic);
    let positive = ChannelFidelities {
        melodic: fidelity(&melodic, &centroids.melodic_positive)?,
        rhythmic: fidelity(&rhythmic, &centroids.rhythmic_positive)?,
    };
    let negative = ChannelFidelities {
        melodic: fidelity(&melodic, &centroids.melodic_negative)?,
        rhythmic: fidelity(&rhythmic, &centroids.rhythmic_negative)?,
    };
    Ok(ThemeAssessment {
        positive,
        negative,
        label: ClassLabel::from_similarities(
            positive.similar(mode, threshold),
            negative.similar(mode, threshold),
        ),
    })
}

/// `+` if `nu` is similar to `κ⁺` and not to `κ⁻`, `-` for the mirror case,
/// `?` otherwise.
pub fn classify_theme(
    nu: &MusicalIdeaState,
    centroids: &MusicalCentroids,
    mode: SimilarityMode,
    threshold: SimilarityThreshold,
) -> Result<ClassLabel> {
    assess_theme(nu, centroids, mode, threshold).map(|a| a.label)
}

/// Named degrees of similarity ("highly similar", ...) and their thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDegrees(BTreeMap<String, SimilarityThreshold>);

/// Threshold behind "highly similar".
pub const HIGHLY_SIMILAR: f64 = 0.9;

impl Default for SimilarityDegrees {
    fn default() -> Self {
        let mut map = BTreeMap::new();
        map.insert(
            "highly similar".to_string(),
            SimilarityThreshold::new(HIGHLY_SIMILAR).unwrap(),
        );
        SimilarityDegrees(map)
    }
}

impl SimilarityDegrees {
    pub fn empty() -> Self {
        SimilarityDegrees(BTreeMap::new())
    }

    pub fn insert(&mut self, name: impl Into<String>, threshold: SimilarityThreshold) {
        self.0.insert(name.into(), threshold);
    }

    pub fn threshold(&self, name: &str) -> Option<SimilarityThreshold> {
        self.0.get(name).copied()
    }

    /// The most demanding degree that `fidelity` still meets.
    pub fn describe(&self, fidelity: f64) -> Option<&str> {
        self.0
            .iter()
            .filter(|(_, t)| t.admits(fidelity))
            .max_by(|a, b| a.1.value().total_cmp(&b.1.value()))
            .map(|(name, _)| name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::music::theme::parse_theme;

    fn idea(text: &str) -> MusicalIdeaState {
        let t = parse_theme(text).unwrap();
        MusicalIdeaState::from_theme(&t, &EncodingConfig::new(8, 4, 16).unwrap()).unwrap()
    }

    fn r(v: f64) -> SimilarityThreshold {
        SimilarityThreshold::new(v).unwrap()
    }

    #[test]
    fn modes_parse() {
        for m in SimilarityMode::ALL {
            assert_eq!(m.as_str().parse::<SimilarityMode>().unwrap(), m);
        }
        assert_eq!(
            "STRONG".parse::<SimilarityMode>().unwrap(),
            SimilarityMode::Strong
        );
        assert!("harmonic".parse::<SimilarityMode>().is_err());
    }

    #[test]
    fn reflexive_in_every_mode() {
        let a = idea("meter 2/4\nnote 0 1\nnote 2 1/2\nnote 3 1/2\n");
        for m in SimilarityMode::ALL {
            assert!(musical_similar(&a, &a, m, r(1.0)).unwrap());
        }
    }

    #[test]
    fn same_rhythm_different_melody() {
        let a = idea("meter 2/4\nnote 0 1\nnote 2 1\n");
        let b = idea("meter 2/4\nnote 0 1\nnote -7 1\n");
        let f = idea_fidelities(&a, &b).unwrap();
        assert_eq!(f.rhythmic, 1.0);
        // (0,2,..,1)·(0,-7,..,1) = -13 over norms √5·√50
        assert!((f.melodic - 169.0 / 250.0).abs() < 1e-14);
        assert!(musical_similar(&a, &b, SimilarityMode::Rhythmic, r(0.9)).unwrap());
        assert!(musical_similar(&a, &b, SimilarityMode::Weak, r(0.9)).unwrap());
        assert!(!musical_similar(&a, &b, SimilarityMode::Strong, r(0.9)).unwrap());
        assert!(!musical_similar(&a, &b, SimilarityMode::Melodic, r(0.9)).unwrap());
    }

    #[test]
    fn shape_mismatch() {
        let a = idea("meter 2/4\nnote 0 1\n");
        let t = parse_theme("meter 2/4\nnote 0 1\n").unwrap();
        let b = MusicalIdeaState::from_theme(&t, &EncodingConfig::new(4, 4, 16).unwrap()).unwrap();
        assert!(musical_similar(&a, &b, SimilarityMode::Weak, r(0.5)).is_err());
        assert!(
            build_musical_dataset(vec![(a, ClassLabel::Positive), (b, ClassLabel::Negative)])
                .is_err()
        );
    }

    #[test]
    fn centroids_of_single_ideas() {
        let a = idea("meter 2/4\nnote 0 1\nnote 4 1\n");
        let b = idea("meter 2/4\nrest 1\nnote 0 1/2\nnote -2 1/2\n");
        let ds = build_musical_dataset(vec![
            (a.clone(), ClassLabel::Positive),
            (b.clone(), ClassLabel::Negative),
        ])
        .unwrap();
        let c = musical_centroids(&ds).unwrap();
        assert_eq!(c.melodic_positive, projector(a.melodic()));
        assert_eq!(c.rhythmic_negative, projector(b.rhythmic()));
        let th = SimilarityThreshold::classifier(0.9).unwrap();
        for m in SimilarityMode::ALL {
            assert_eq!(classify_theme(&a, &c, m, th).unwrap(), ClassLabel::Positive);
        }
    }

    #[test]
    fn conflicting_idea_labels() {
        let a = idea("meter 2/4\nnote 0 1\n");
        assert!(matches!(
            build_musical_dataset(vec![
                (a.clone(), ClassLabel::Positive),
                (a, ClassLabel::Indeterminate)
            ]),
            Err(Error::InconsistentLabeling { .. })
        ));
    }

    #[test]
    fn identical_polarity_channels_give_perhaps() {
        let a = idea("meter 2/4\nnote 0 1\nnote 4 1\n");
        let c = MusicalCentroids {
            melodic_positive: projector(a.melodic()),
            rhythmic_positive: projector(a.rhythmic()),
            melodic_negative: projector(a.melodic()),
            rhythmic_negative: projector(a.rhythmic()),
        };
        let th = SimilarityThreshold::classifier(0.6).unwrap();
        for m in SimilarityMode::ALL {
            assert_eq!(
                classify_theme(&a, &c, m, th).unwrap(),
                ClassLabel::Indeterminate
            );
        }
        assert!(classify_theme(&a, &c, SimilarityMode::Weak, r(0.5)).is_err());
    }

    #[test]
    fn degree_labels() {
        let degrees = SimilarityDegrees::default();
        assert_eq!(degrees.describe(0.95), Some("highly similar"));
        assert_eq!(degrees.describe(0.5), None);
        let mut custom = SimilarityDegrees::default();
        custom.insert("somewhat similar", r(0.6));
        assert_eq!(custom.describe(0.7), Some("somewhat similar"));
        assert_eq!(custom.describe(0.92), Some("highly similar"));
        assert_eq!(custom.threshold("somewhat similar"), Some(r(0.6)));
        assert!(SimilarityDegrees::empty().describe(1.0).is_none());
    }
}
