//! Feature CSV files, theme files and music manifests.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use qgestalt::music::{parse_theme, AbstractTheme};
use qgestalt::{ClassLabel, FeatureVector};

/// Rows of a feature file, with labels when the file has a `label` column.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub rows: Vec<FeatureVector>,
    pub labels: Option<Vec<ClassLabel>>,
}

impl FeatureTable {
    pub fn dim(&self) -> Option<usize> {
        self.rows.first().map(FeatureVector::dim)
    }

    pub fn labeled(&self) -> Option<Vec<(FeatureVector, ClassLabel)>> {
        let labels = self.labels.as_ref()?;
        Some(
            self.rows
                .iter()
                .cloned()
                .zip(labels.iter().copied())
                .collect(),
        )
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Parses a feature CSV. A trailing `label` header marks a labeled file.
pub fn parse_table(text: &str) -> Result<FeatureTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .context("line 1: unreadable header")?
        .clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Ok(FeatureTable {
            rows: Vec::new(),
            labels: None,
        });
    }
    let has_label = header.iter().next_back() == Some("label");
    let width = header.len();
    let dim = if has_label { width - 1 } else { width };
    if dim == 0 {
        bail!("line 1: header has no feature columns");
    }
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.context("malformed CSV")?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            bail!(
                "line {line}: expected {width} fields, found {}",
                record.len()
            );
        }
        let mut values = Vec::with_capacity(dim);
        for (col, field) in record.iter().take(dim).enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                anyhow!("line {line}, column {}: invalid number {field:?}", col + 1)
            })?;
            values.push(v);
        }
        let fv = FeatureVector::new(values).with_context(|| format!("line {line}"))?;
        if has_label {
            let token = &record[dim];
            let label: ClassLabel = token.parse().map_err(|_| {
                anyhow!("line {line}: unknown label {token:?} (expected +, - or ?)")
            })?;
            labels.push(label);
        }
        rows.push(fv);
    }
    Ok(FeatureTable {
        rows,
        labels: has_label.then_some(labels),
    })
}

/// A labeled training set: header `f1,...,fd,label` and at least one row.
pub fn parse_features(text: &str) -> Result<Vec<(FeatureVector, ClassLabel)>> {
    let table = parse_table(text)?;
    let labeled = table
        .labeled()
        .ok_or_else(|| anyhow!("line 1: dataset header must end with a label column"))?;
    if labeled.is_empty() {
        bail!("dataset is empty: no rows after the header");
    }
    Ok(labeled)
}

/// Unlabeled queries: header `f1,...,fd`. An empty file has no queries.
pub fn parse_queries(text: &str) -> Result<Vec<FeatureVector>> {
    let table = parse_table(text)?;
    if table.labels.is_some() {
        bail!("line 1: query files have no label column");
    }
    Ok(table.rows)
}

pub fn read_table(path: &Path) -> Result<FeatureTable> {
    parse_table(&read(path)?).with_context(|| path.display().to_string())
}

pub fn read_features(path: &Path) -> Result<Vec<(FeatureVector, ClassLabel)>> {
    parse_features(&read(path)?).with_context(|| path.display().to_string())
}

pub fn read_queries(path: &Path) -> Result<Vec<FeatureVector>> {
    parse_queries(&read(path)?).with_context(|| path.display().to_string())
}

/// A CSV with header `f1,...,fd[,label]`.
pub fn features_csv(rows: &[(Vec<f64>, Option<ClassLabel>)]) -> String {
    let Some((first, label)) = rows.first() else {
        return String::new();
    };
    let mut header: Vec<String> = (1..=first.len()).map(|i| format!("f{i}")).collect();
    if label.is_some() {
        header.push("label".into());
    }
    let mut out = header.join(",");
    out.push('\n');
    for (values, label) in rows {
        let mut fields: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        if let Some(l) = label {
            fields.push(l.symbol().into());
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Reads a theme file; the theme takes the file stem as its name.
pub fn read_theme(path: &Path) -> Result<AbstractTheme> {
    let theme = parse_theme(&read(path)?).with_context(|| path.display().to_string())?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(theme.with_name(name))
}

/// Entries of a music manifest: one `<label> <theme path>` per line, paths
/// relative to the manifest, `#` comments.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<(PathBuf, ClassLabel)>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (token, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| anyhow!("line {}: expected `<label> <theme path>`", i + 1))?;
        let label: ClassLabel = token.parse().map_err(|_| {
            anyhow!(
                "line {}: unknown label {token:?} (expected +, - or ?)",
                i + 1
            )
        })?;
        entries.push((base.join(rest.trim()), label));
    }
    if entries.is_empty() {
        bail!("manifest lists no themes");
    }
    Ok(entries)
}

pub fn read_manifest(path: &Path) -> Result<Vec<(AbstractTheme, ClassLabel)>> {
    let base = path.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&read(path)?, base).with_context(|| path.display().to_string())?;
    entries
        .into_iter()
        .map(|(p, label)| Ok((read_theme(&p)?, label)))
        .collect()
}
