//! Abstract musical themes and their recognition.

pub mod encode;
pub mod fixtures;
pub mod recognition;
pub mod theme;

pub use encode::{
    encode_melodic, encode_rhythmic, onset_pattern, theme_ticks, EncodingConfig, DEFAULT_GRID,
    DEFAULT_MELODIC_LEN,
};
pub use recognition::{
    assess_theme, build_musical_dataset, classify_theme, idea_fidelities, musical_centroids,
    musical_similar, ChannelFidelities, MusicalCentroids, MusicalDataSet, MusicalIdeaState,
    SimilarityDegrees, SimilarityMode, ThemeAssessment, HIGHLY_SIMILAR,
};
pub use theme::{parse_theme, AbstractTheme, Beats, Meter, Phrase, PhraseEvent, ThemeEvent};
