//! Abstract themes: melodic intervals and pauses embedded in a rhythm and a meter.
//!
//! Theme files are line oriented:
//!
//! ```text
//! # comment
//! meter 2/4
//! rest 1/2
//! note 0 1/2
//! note -4 2
//! ```
//!
//! `note` carries the interval in semitones from the previous sounding note
//! (zero for the first one) and a duration in beats; `rest` carries only a
//! duration. Durations are `num/den` or a whole number.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A duration measured in beats of the meter.
pub type Beats = Ratio<u32>;

/// Largest accepted melodic step, in semitones.
pub const MAX_INTERVAL: i32 = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Meter {
    pub beats: u32,
    pub unit: u32,
}

impl fmt::Display for Meter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.beats, self.unit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThemeEvent {
    Note { interval: i32, duration: Beats },
    Rest { duration: Beats },
}

impl ThemeEvent {
    pub fn duration(&self) -> Beats {
        match *self {
            ThemeEvent::Note { duration, .. } | ThemeEvent::Rest { duration } => duration,
        }
    }

    pub fn interval(&self) -> Option<i32> {
        match *self {
            ThemeEvent::Note { interval, .. } => Some(interval),
            ThemeEvent::Rest { .. } => None,
        }
    }

    pub fn is_rest(&self) -> bool {
        matches!(self, ThemeEvent::Rest { .. })
    }
}

/// A monodic theme, invariant under transposition and change of timbre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractTheme {
    name: String,
    meter: Meter,
    events: Vec<ThemeEvent>,
}

impl AbstractTheme {
    pub fn new(name: impl Into<String>, meter: Meter, events: Vec<ThemeEvent>) -> Result<Self> {
        if meter.beats == 0 || meter.unit == 0 {
            return Err(Error::InvalidConfig(format!(
                "meter {meter} must be positive"
            )));
        }
        if events.is_empty() {
            return Err(Error::EmptyInput("theme event list"));
        }
        for (index, e) in events.iter().enumerate() {
            if *e.duration().numer() == 0 {
                return Err(Error::at(
                    index,
                    Error::InvalidConfig("duration must be positive".into()),
                ));
            }
            if let Some(i) = e.interval() {
                if i.abs() > MAX_INTERVAL {
                    return Err(Error::at(
                        index,
                        Error::InvalidConfig(format!(
                            "interval {i} exceeds {MAX_INTERVAL} semitones"
                        )),
                    ));
                }
            }
        }
        match events.iter().find_map(ThemeEvent::interval) {
            None => Err(Error::SilentTheme),
            Some(0) => Ok(AbstractTheme {
                name: name.into(),
                meter,
                events,
            }),
            Some(i) => Err(Error::InvalidConfig(format!(
                "first sounding note must carry interval 0, found {i}"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn meter(&self) -> Meter {
        self.meter
    }

    pub fn events(&self) -> &[ThemeEvent] {
        &self.events
    }

    /// Intervals of the sounding notes, in order.
    pub fn intervals(&self) -> Vec<i32> {
        self.events
            .iter()
            .filter_map(ThemeEvent::interval)
            .collect()
    }

    pub fn note_count(&self) -> usize {
        self.events.iter().filter(|e| !e.is_rest()).count()
    }

    pub fn total_duration(&self) -> Beats {
        self.events.iter().map(ThemeEvent::duration).sum()
    }

    /// Same rhythm with the melodic intervals replaced, e.g. a mode change.
    /// `intervals` must have one entry per sounding note.
    pub fn with_intervals(&self, intervals: &[i32]) -> Result<Self> {
        if intervals.len() != self.note_count() {
            return Err(Error::DimensionMismatch {
                expected: self.note_count(),
                found: intervals.len(),
            });
        }
        let mut next = intervals.iter();
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                ThemeEvent::Note { duration, .. } => ThemeEvent::Note {
                    interval: *next.next().unwrap(),
                    duration,
                },
                rest => rest,
            })
            .collect();
        AbstractTheme::new(self.name.clone(), self.meter, events)
    }

    /// Renders the theme in the file format accepted by [`parse_theme`].
    pub fn to_theme_file(&self) -> String {
        let mut out = format!("meter {}\n", self.meter);
        for e in &self.events {
            match e {
                ThemeEvent::Note { interval, duration } => {
                    out.push_str(&format!("note {interval} {duration}\n"))
                }
                ThemeEvent::Rest { duration } => out.push_str(&format!("rest {duration}\n")),
            }
        }
        out
    }
}

/// A concrete monodic phrase with absolute pitches (MIDI note numbers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub meter: Meter,
    pub events: Vec<PhraseEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhraseEvent {
    Note { pitch: i32, duration: Beats },
    Rest { duration: Beats },
}

impl Phrase {
    pub fn transpose(&self, semitones: i32) -> Phrase {
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                PhraseEvent::Note { pitch, duration } => PhraseEvent::Note {
                    pitch: pitch + semitones,
                    duration,
                },
                rest => rest,
            })
            .collect();
        Phrase {
            meter: self.meter,
            events,
        }
    }

    /// Abstracts the pitches away, keeping intervals, pauses and rhythm.
    pub fn abstract_theme(&self, name: impl Into<String>) -> Result<AbstractTheme> {
        let mut previous: Option<i32> = None;
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                PhraseEvent::Note { pitch, duration } => {
                    let interval = previous.map_or(0, |p| pitch - p);
                    previous = Some(pitch);
                    ThemeEvent::Note { interval, duration }
                }
                PhraseEvent::Rest { duration } => ThemeEvent::Rest { duration },
            })
            .collect();
        AbstractTheme::new(name, self.meter, events)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::ThemeSyntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_u32(s: &str, line: usize, column: usize, what: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| syntax(line, column, format!("invalid {what} {s:?}")))
}

fn parse_duration(token: &str, line: usize, column: usize) -> Result<Beats> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (
            parse_u32(n, line, column, "duration numerator")?,
            parse_u32(d, line, column, "duration denominator")?,
        ),
        None => (parse_u32(token, line, column, "duration")?, 1),
    };
    if num == 0 || den == 0 {
        return Err(syntax(
            line,
            column,
            format!("duration {token} must be a positive fraction"),
        ));
    }
    Ok(Ratio::new(num, den))
}

fn parse_meter(token: &str, line: usize, column: usize) -> Result<Meter> {
    let (b, u) = token
        .split_once('/')
        .ok_or_else(|| syntax(line, column, format!("meter {token:?} must look like 2/4")))?;
    let meter = Meter {
        beats: parse_u32(b, line, column, "meter")?,
        unit: parse_u32(u, line, column, "meter")?,
    };
    if meter.beats == 0 || meter.unit == 0 {
        return Err(syntax(line, column, "meter must be positive"));
    }
    Ok(meter)
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a theme file. The theme is named `"untitled"`; see
/// [`AbstractTheme::with_name`].
pub fn parse_theme(text: &str) -> Result<AbstractTheme> {
    let mut meter: Option<Meter> = None;
    let mut events = Vec::new();
    let mut first_note_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        let expect_args = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                let column = args.get(n).map_or(col, |t| t.0);
                Err(syntax(
                    line_no,
                    column,
                    format!("`{keyword}` takes {n} argument(s), found {}", args.len()),
                ))
            }
        };
        match keyword {
            "meter" => {
                if meter.is_some() {
                    return Err(syntax(line_no, col, "meter declared twice"));
                }
                if !events.is_empty() {
                    return Err(syntax(line_no, col, "meter must precede all events"));
                }
                expect_args(1)?;
                meter = Some(parse_meter(args[0].1, line_no, args[0].0)?);
            }
            "note" | "rest" if meter.is_none() => {
                return Err(syntax(line_no, col, "missing `meter` header"));
            }
            "note" => {
                expect_args(2)?;
                let (icol, itok) = args[0];
                let interval: i32 = itok
                    .parse()
                    .map_err(|_| syntax(line_no, icol, format!("invalid interval {itok:?}")))?;
                if interval.abs() > MAX_INTERVAL {
                    return Err(syntax(
                        line_no,
                        icol,
                        format!("interval {interval} exceeds {MAX_INTERVAL} semitones"),
                    ));
                }
                if !first_note_seen && interval != 0 {
                    return Err(syntax(
                        line_no,
                        icol,
                        "the first sounding note must carry interval 0",
                    ));
                }
                first_note_seen = true;
                let duration = parse_duration(args[1].1, line_no, args[1].0)?;
                events.push(ThemeEvent::Note { interval, duration });
            }
            "rest" => {
                expect_args(1)?;
                let duration = parse_duration(args[0].1, line_no, args[0].0)?;
                events.push(ThemeEvent::Rest { duration });
            }
            "chord" | "voice" => {
                return Err(syntax(
                    line_no,
                    col,
                    "polyphonic themes are not supported; themes are monodic",
                ));
            }
            other => {
                return Err(syntax(line_no, col, format!("unknown keyword `{other}`")));
            }
        }
    }
    let meter = meter.ok_or_else(|| syntax(1, 1, "missing `meter` header"))?;
    if events.is_empty() {
        return Err(Error::EmptyInput("theme event list"));
    }
    AbstractTheme::new("untitled", meter, events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32, d: u32) -> Beats {
        Ratio::new(n, d)
    }

    #[test]
    fn one_note() {
        let t = parse_theme("meter 4/4\nnote 0 1\n").unwrap();
        assert_eq!(t.events().len(), 1);
        assert_eq!(t.meter(), Meter { beats: 4, unit: 4 });
        assert_eq!(t.total_duration(), b(1, 1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t =
            parse_theme("# header\n\nmeter 3/8   # compound\n  note 0 1/2 # E\nrest 1\n").unwrap();
        assert_eq!(t.events().len(), 2);
        assert!(t.events()[1].is_rest());
    }

    #[test]
    fn zero_duration_rejected() {
        let err = parse_theme("meter 2/4\nnote 0 0/4\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::ThemeSyntax {
                    line: 2,
                    column: 8,
                    ..
                }
            ),
            "{err:?}"
        );
        assert!(parse_theme("meter 2/4\nnote 0 1/0\n").is_err());
        assert!(parse_theme("meter 2/4\nrest -1\n").is_err());
    }

    #[test]
    fn syntax_positions() {
        let err = parse_theme("meter 2/4\nnote 0 1\nnote x 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::ThemeSyntax {
                    line: 3,
                    column: 6,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_theme("note 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::ThemeSyntax {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_theme("meter 2/4\nslur 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::ThemeSyntax {
                line: 2,
                column: 1,
                ..
            }
        ));
        let err = parse_theme("meter 2/4\nnote 0 1 2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::ThemeSyntax {
                line: 2,
                column: 10,
                ..
            }
        ));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse_theme("meter 2/4\n"),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            parse_theme("meter 2/4\nrest 1\n"),
            Err(Error::SilentTheme)
        ));
        assert!(parse_theme("meter 2/4\nmeter 3/4\nnote 0 1\n").is_err());
        assert!(parse_theme("meter 2/4\nnote 3 1\n").is_err());
        assert!(parse_theme("meter 2/4\nnote 0 1\nnote 49 1\n").is_err());
        assert!(parse_theme("meter 0/4\nnote 0 1\n").is_err());
        let err = parse_theme("meter 2/4\nchord 0 4 7 1\n").unwrap_err();
        assert!(err.to_string().contains("monodic"));
    }

    #[test]
    fn round_trips_through_file_format() {
        let text = "meter 2/4\nrest 1/2\nnote 0 1/2\nnote -4 2\n";
        let t = parse_theme(text).unwrap();
        assert_eq!(t.to_theme_file(), text);
    }

    #[test]
    fn phrase_abstraction() {
        let phrase = Phrase {
            meter: Meter { beats: 2, unit: 4 },
            events: vec![
                PhraseEvent::Rest { duration: b(1, 2) },
                PhraseEvent::Note {
                    pitch: 67,
                    duration: b(1, 2),
                },
                PhraseEvent::Note {
                    pitch: 67,
                    duration: b(1, 2),
                },
                PhraseEvent::Note {
                    pitch: 63,
                    duration: b(2, 1),
                },
            ],
        };
        let t = phrase.abstract_theme("fifth").unwrap();
        assert_eq!(t.intervals(), vec![0, 0, -4]);
        assert_eq!(phrase.transpose(5).abstract_theme("fifth").unwrap(), t);
    }

    #[test]
    fn interval_replacement_keeps_rhythm() {
        let t = parse_theme("meter 3/4\nnote 0 1\nrest 1\nnote 3 3/4\nnote 4 1/4\n").unwrap();
        let major = t.with_intervals(&[0, 4, 3]).unwrap();
        assert_eq!(major.intervals(), vec![0, 4, 3]);
        assert_eq!(major.total_duration(), t.total_duration());
        assert!(t.with_intervals(&[0, 4]).is_err());
    }
}
