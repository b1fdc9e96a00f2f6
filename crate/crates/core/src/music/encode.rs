//! Per-channel amplitude encodings of abstract themes.

use crate::error::{Error, Result};
use crate::music::theme::{AbstractTheme, ThemeEvent};
use crate::state::{amplitude_encode, FeatureVector, PureState};

pub const DEFAULT_MELODIC_LEN: usize = 16;
pub const DEFAULT_GRID: u32 = 4;

/// Shapes of the two channels. All ideas compared with each other must share one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingConfig {
    /// Interval slots in the melodic channel.
    pub melodic_len: usize,
    /// Ticks per beat of the rhythm grid.
    pub grid: u32,
    /// Ticks in the rhythmic channel.
    pub span: usize,
}

impl EncodingConfig {
    pub fn new(melodic_len: usize, grid: u32, span: usize) -> Result<Self> {
        if melodic_len == 0 {
            return Err(Error::InvalidConfig(
                "melodic length must be at least 1".into(),
            ));
        }
        if grid == 0 {
            return Err(Error::InvalidConfig(
                "rhythm grid must be at least 1".into(),
            ));
        }
        if span == 0 {
            return Err(Error::InvalidConfig(
                "rhythm span must be at least 1".into(),
            ));
        }
        Ok(EncodingConfig {
            melodic_len,
            grid,
            span,
        })
    }

    /// Uses the longest theme of `corpus` as the rhythm span.
    pub fn fitted<'a>(
        corpus: impl IntoIterator<Item = &'a AbstractTheme>,
        melodic_len: usize,
        grid: u32,
    ) -> Result<Self> {
        if grid == 0 {
            return Err(Error::InvalidConfig(
                "rhythm grid must be at least 1".into(),
            ));
        }
        let mut span = 0;
        for t in corpus {
            span = span.max(theme_ticks(t, grid)?);
        }
        if span == 0 {
            return Err(Error::EmptyInput("theme corpus"));
        }
        EncodingConfig::new(melodic_len, grid, span)
    }
}

/// Intervals of the sounding notes, zero-padded to `len`, amplitude-encoded.
pub fn encode_melodic(theme: &AbstractTheme, len: usize) -> Result<PureState> {
    let mut features: Vec<f64> = theme.intervals().into_iter().map(f64::from).collect();
    if len < features.len() {
        return Err(Error::MelodicLengthTooSmall {
            len,
            notes: features.len(),
        });
    }
    features.resize(len, 0.0);
    Ok(amplitude_encode(&FeatureVector::new(features)?))
}

fn event_ticks(index: usize, event: &ThemeEvent, grid: u32) -> Result<usize> {
    let d = event.duration();
    let scaled = u64::from(*d.numer()) * u64::from(grid);
    let den = u64::from(*d.denom());
    if scaled % den != 0 {
        return Err(Error::Quantization {
            event: index,
            duration: d.to_string(),
            grid,
        });
    }
    Ok((scaled / den) as usize)
}

/// Length of `theme` in ticks at `grid` ticks per beat.
pub fn theme_ticks(theme: &AbstractTheme, grid: u32) -> Result<usize> {
    theme
        .events()
        .iter()
        .enumerate()
        .map(|(i, e)| event_ticks(i, e, grid))
        .sum()
}

/// One flag per tick, set where a note (not a rest) begins.
pub fn onset_pattern(theme: &AbstractTheme, grid: u32) -> Result<Vec<bool>> {
    let mut pattern = Vec::new();
    for (i, e) in theme.events().iter().enumerate() {
        let ticks = event_ticks(i, e, grid)?;
        let start = pattern.len();
        pattern.resize(start + ticks, false);
        if !e.is_rest() {
            pattern[start] = true;
        }
    }
    Ok(pattern)
}

/// Onset indicators over `span` ticks, amplitude-encoded.
pub fn encode_rhythmic(theme: &AbstractTheme, grid: u32, span: usize) -> Result<PureState> {
    if grid == 0 {
        return Err(Error::InvalidConfig(
            "rhythm grid must be at least 1".into(),
        ));
    }
    let pattern = onset_pattern(theme, grid)?;
    if span < pattern.len() {
        return Err(Error::SpanTooSmall {
            span,
            needed: pattern.len(),
        });
    }
    let mut features: Vec<f64> = pattern
        .into_iter()
        .map(|on| if on { 1.0 } else { 0.0 })
        .collect();
    features.resize(span, 0.0);
    Ok(amplitude_encode(&FeatureVector::new(features)?))
}
