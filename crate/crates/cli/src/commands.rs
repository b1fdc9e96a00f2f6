//! One function per subcommand, each producing a [`Table`].

use std::path::Path;

use anyhow::{bail, Context, Result};
use qgestalt::music::{
    assess_theme, build_musical_dataset, idea_fidelities, musical_centroids, AbstractTheme,
    MusicalIdeaState, SimilarityDegrees, SimilarityMode,
};
use qgestalt::{
    amplitude_encode, assess_batch, build_dataset, classical_centroid, fidelity_pure, projector,
    ClassLabel, DensityOperator, FeatureVector, QuantumDataSet,
};

use crate::config::RunConfig;
use crate::io::{read_features, read_manifest, read_queries, read_table, read_theme};
use crate::report::{Cell, Table};

pub fn dataset(rows: &[(FeatureVector, ClassLabel)]) -> Result<QuantumDataSet> {
    let labeled = rows
        .iter()
        .map(|(x, l)| (amplitude_encode(x), *l))
        .collect();
    build_dataset(labeled).context("dataset")
}

/// Amplitude encodings of every row of a feature file.
pub fn encode(path: &Path) -> Result<Table> {
    let table = read_table(path)?;
    let amps = table.dim().map_or(0, |d| d + 1);
    let mut header = vec!["id".to_string()];
    if table.labels.is_some() {
        header.push("label".into());
    }
    header.extend((1..=amps).map(|i| format!("a{i}")));
    let mut out = Table::new(header);
    for (i, x) in table.rows.iter().enumerate() {
        let mut row = vec![Cell::Int(i + 1)];
        if let Some(labels) = &table.labels {
            row.push(labels[i].symbol().into());
        }
        row.extend(
            amplitude_encode(x)
                .amplitudes()
                .iter()
                .map(|&a| Cell::Float(a)),
        );
        out.push(row);
    }
    Ok(out)
}

/// Quantum centroids `ρ⁺`, `ρ⁻` entry by entry, then the classical means.
pub fn centroid_rows(rows: &[(FeatureVector, ClassLabel)]) -> Result<Table> {
    let ds = dataset(rows)?;
    let pair = ds.centroids()?;
    let mut out = Table::new(["centroid", "row", "col", "value"]);
    for (name, rho) in [("quantum+", &pair.positive), ("quantum-", &pair.negative)] {
        let m = rho.matrix();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.push(vec![
                    name.into(),
                    (i + 1).into(),
                    (j + 1).into(),
                    m[(i, j)].into(),
                ]);
            }
        }
    }
    for (name, label) in [
        ("classical+", ClassLabel::Positive),
        ("classical-", ClassLabel::Negative),
    ] {
        let points: Vec<FeatureVector> = rows
            .iter()
            .filter(|(_, l)| *l == label)
            .map(|(x, _)| x.clone())
            .collect();
        let mean = classical_centroid(&points)?;
        for (j, &v) in mean.values().iter().enumerate() {
            out.push(vec![name.into(), 1.into(), (j + 1).into(), v.into()]);
        }
    }
    Ok(out)
}

pub fn centroid(path: &Path) -> Result<Table> {
    centroid_rows(&read_features(path)?)
}

/// Fidelities to both centroids and the label of every query.
pub fn classify_rows(
    config: &RunConfig,
    rows: &[(FeatureVector, ClassLabel)],
    queries: &[FeatureVector],
) -> Result<Table> {
    let pair = dataset(rows)?.centroids()?;
    let states: Vec<DensityOperator> = queries
        .iter()
        .map(|q| projector(&amplitude_encode(q)))
        .collect();
    let assessments = assess_batch(&states, &pair, config.threshold).context("query")?;
    let mut out = Table::new(["id", "fidelity_pos", "fidelity_neg", "label"]);
    for (i, a) in assessments.iter().enumerate() {
        out.push(vec![
            (i + 1).into(),
            a.positive_fidelity.into(),
            a.negative_fidelity.into(),
            a.label.symbol().into(),
        ]);
    }
    Ok(out)
}

pub fn classify(config: &RunConfig, dataset: &Path, queries: &Path) -> Result<Table> {
    classify_rows(config, &read_features(dataset)?, &read_queries(queries)?)
}

/// Pairwise fidelities between the encoded rows of a feature file.
pub fn similarity(config: &RunConfig, path: &Path) -> Result<Table> {
    let table = read_table(path)?;
    let states: Vec<_> = table.rows.iter().map(amplitude_encode).collect();
    let mut out = Table::new(["i", "j", "fidelity", "similar"]);
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let f = fidelity_pure(&states[i], &states[j])
                .with_context(|| format!("rows {} and {}", i + 1, j + 1))?;
            out.push(vec![
                (i + 1).into(),
                (j + 1).into(),
                f.into(),
                config.threshold.admits(f).into(),
            ]);
        }
    }
    Ok(out)
}

/// Channel fidelities of two themes and the verdict of every mode.
pub fn music_similarity_themes(
    config: &RunConfig,
    a: &AbstractTheme,
    b: &AbstractTheme,
) -> Result<Table> {
    let enc = config.encoding([a, b])?;
    let x = MusicalIdeaState::from_theme(a, &enc).with_context(|| a.name().to_string())?;
    let y = MusicalIdeaState::from_theme(b, &enc).with_context(|| b.name().to_string())?;
    let f = idea_fidelities(&x, &y)?;
    let degrees = SimilarityDegrees::default();
    let mut out = Table::new(["measure", "value"]);
    out.push(vec!["melodic_fidelity".into(), f.melodic.into()]);
    out.push(vec!["rhythmic_fidelity".into(), f.rhythmic.into()]);
    for mode in SimilarityMode::ALL {
        out.push(vec![
            mode.as_str().into(),
            f.similar(mode, config.threshold).into(),
        ]);
    }
    out.push(vec![
        "melodic_degree".into(),
        degrees.describe(f.melodic).unwrap_or("-").into(),
    ]);
    Ok(out)
}

pub fn music_similarity(config: &RunConfig, a: &Path, b: &Path) -> Result<Table> {
    music_similarity_themes(config, &read_theme(a)?, &read_theme(b)?)
}

/// Classifies each query theme against the labeled corpus.
pub fn music_classify_themes(
    config: &RunConfig,
    corpus: &[(AbstractTheme, ClassLabel)],
    queries: &[AbstractTheme],
) -> Result<Table> {
    let enc = config.encoding(corpus.iter().map(|(t, _)| t).chain(queries))?;
    let idea = |t: &AbstractTheme| {
        MusicalIdeaState::from_theme(t, &enc).with_context(|| t.name().to_string())
    };
    let labeled = corpus
        .iter()
        .map(|(t, l)| Ok((idea(t)?, *l)))
        .collect::<Result<Vec<_>>>()?;
    let centroids = musical_centroids(&build_musical_dataset(labeled)?)?;
    let mut out = Table::new([
        "query",
        "pos_melodic",
        "pos_rhythmic",
        "neg_melodic",
        "neg_rhythmic",
        "label",
    ]);
    for q in queries {
        let a = assess_theme(&idea(q)?, &centroids, config.mode, config.threshold)?;
        out.push(vec![
            q.name().into(),
            a.positive.melodic.into(),
            a.positive.rhythmic.into(),
            a.negative.melodic.into(),
            a.negative.rhythmic.into(),
            a.label.symbol().into(),
        ]);
    }
    Ok(out)
}

pub fn music_classify(
    config: &RunConfig,
    manifest: &Path,
    queries: &[impl AsRef<Path>],
) -> Result<Table> {
    if queries.is_empty() {
        bail!("no query themes given");
    }
    let corpus = read_manifest(manifest)?;
    let themes = queries
        .iter()
        .map(|p| read_theme(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    music_classify_themes(config, &corpus, &themes)
}
