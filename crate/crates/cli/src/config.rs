use anyhow::{bail, Result};
use qgestalt::music::{
    AbstractTheme, EncodingConfig, SimilarityMode, DEFAULT_GRID, DEFAULT_MELODIC_LEN,
};
use qgestalt::SimilarityThreshold;

pub const DEFAULT_THRESHOLD: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub threshold: SimilarityThreshold,
    pub melodic_len: usize,
    pub grid: u32,
    /// Rhythm span in ticks; `None` fits it to the longest theme in play.
    pub span: Option<usize>,
    pub mode: SimilarityMode,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threshold: SimilarityThreshold::classifier(DEFAULT_THRESHOLD).unwrap(),
            melodic_len: DEFAULT_MELODIC_LEN,
            grid: DEFAULT_GRID,
            span: None,
            mode: SimilarityMode::Strong,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn new(
        threshold: f64,
        melodic_len: usize,
        grid: u32,
        span: Option<usize>,
        mode: SimilarityMode,
        format: OutputFormat,
    ) -> Result<Self> {
        let threshold = SimilarityThreshold::classifier(threshold)?;
        if melodic_len == 0 {
            bail!("--melodic-len must be at least 1");
        }
        if grid == 0 {
            bail!("--grid must be at least 1");
        }
        if span == Some(0) {
            bail!("--span must be at least 1");
        }
        Ok(RunConfig {
            threshold,
            melodic_len,
            grid,
            span,
            mode,
            format,
        })
    }

    /// Channel shapes for encoding `corpus`.
    pub fn encoding<'a>(
        &self,
        corpus: impl IntoIterator<Item = &'a AbstractTheme>,
    ) -> Result<EncodingConfig> {
        Ok(match self.span {
            Some(span) => EncodingConfig::new(self.melodic_len, self.grid, span)?,
            None => EncodingConfig::fitted(corpus, self.melodic_len, self.grid)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.threshold.value(), 0.9);
        assert_eq!((c.melodic_len, c.grid, c.span), (16, 4, None));
        assert_eq!(c.mode, SimilarityMode::Strong);
    }

    #[test]
    fn validation() {
        let ok = |t, l, g, s| RunConfig::new(t, l, g, s, SimilarityMode::Weak, OutputFormat::Csv);
        assert!(ok(0.5, 16, 4, None).is_err());
        assert!(ok(1.01, 16, 4, None).is_err());
        assert!(ok(1.0, 16, 4, None).is_ok());
        assert!(ok(0.9, 0, 4, None).is_err());
        assert!(ok(0.9, 16, 0, None).is_err());
        assert!(ok(0.9, 16, 4, Some(0)).is_err());
    }
}
