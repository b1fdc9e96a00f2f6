//! Self-verification: fidelity axioms, classifier oracles and music fixtures.

use qgestalt::music::{
    build_musical_dataset, classify_theme, encode_melodic, fixtures, idea_fidelities,
    musical_centroids, musical_similar, onset_pattern, AbstractTheme, EncodingConfig,
    MusicalIdeaState, SimilarityMode,
};
use qgestalt::sample::{orthogonal_support_pair, random_mixture, random_phrase, random_pure_state};
use qgestalt::{
    amplitude_encode, build_dataset, classify, decode_features, projector, ClassLabel,
    DensityOperator, FeatureVector, PureState, SimilarityThreshold,
};
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::report::Table;

pub const SEED_VAR: &str = "QGESTALT_SEED";
pub const DEFAULT_SEED: u64 = 20_250_601;

/// The fidelity under test. Injectable so that the harness itself can be
/// checked against a faulty implementation.
pub type FidelityFn<'a> = &'a dyn Fn(&DensityOperator, &DensityOperator) -> qgestalt::Result<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The seed from `QGESTALT_SEED`, or the default when unset.
pub fn seed_from_env() -> anyhow::Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("{SEED_VAR} must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn run(config: &RunConfig, seed: u64) -> Vec<GroupResult> {
    run_with(config, seed, &qgestalt::fidelity_unclamped)
}

pub fn run_with(config: &RunConfig, seed: u64, fid: FidelityFn) -> Vec<GroupResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        fidelity_axioms(&mut rng, fid),
        pure_reduction(&mut rng, fid),
        non_transitivity(fid),
        encoding_round_trip(&mut rng),
        classifier_oracle(&mut rng),
        polarity_symmetry(&mut rng),
        music_fixtures(config, &mut rng),
        musical_classifier_oracle(config, &mut rng),
    ]
}

pub fn all_passed(results: &[GroupResult]) -> bool {
    results.iter().all(|g| g.passed)
}

pub fn table(results: &[GroupResult]) -> Table {
    let mut t = Table::new(["status", "group", "detail"]);
    for g in results {
        let status = if g.passed { "PASS" } else { "FAIL" };
        t.push(vec![status.into(), g.name.into(), g.detail.clone().into()]);
    }
    t
}

fn group(name: &'static str, outcome: Result<String, String>) -> GroupResult {
    match outcome {
        Ok(detail) => GroupResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => GroupResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eval(fid: FidelityFn, a: &DensityOperator, b: &DensityOperator) -> Result<f64, String> {
    fid(a, b).map_err(|e| e.to_string())
}

/// Rounds away the last few ulps so that exact values print exactly.
fn short(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}

fn fidelity_axioms(rng: &mut ChaCha8Rng, fid: FidelityFn) -> GroupResult {
    let mut check = || {
        let (mut gap, mut min_self, mut max_orth) = (0.0f64, 1.0f64, 0.0f64);
        for k in 0..200 {
            let dim = 2 + k % 7;
            let (m, n) = (rng.random_range(1..=dim), rng.random_range(1..=dim));
            let rho = random_mixture(rng, dim, m);
            let sigma = random_mixture(rng, dim, n);
            let ab = eval(fid, &rho, &sigma)?;
            let ba = eval(fid, &sigma, &rho)?;
            ensure(
                [ab, ba].iter().all(|f| (-1e-9..=1.0 + 1e-9).contains(f)),
                || format!("pair {k}: fidelity {ab} outside [0, 1]"),
            )?;
            gap = gap.max((ab - ba).abs());
            min_self = min_self.min(eval(fid, &rho, &rho)?);
            let split = rng.random_range(1..dim);
            let (p, q) = orthogonal_support_pair(rng, dim, split);
            max_orth = max_orth.max(eval(fid, &p, &q)?);
        }
        ensure(gap <= 1e-9, || format!("symmetry gap {gap:e}"))?;
        ensure(min_self >= 1.0 - 1e-8, || {
            format!("F(rho, rho) = {min_self}")
        })?;
        ensure(max_orth <= 1e-9, || {
            format!("orthogonal supports give F = {max_orth:e}")
        })?;
        Ok(format!(
            "200 pairs; symmetry gap {gap:.1e}; min F(rho,rho) {min_self:.12}; orthogonal F {max_orth:.1e}"
        ))
    };
    group("fidelity axioms", check())
}

fn pure_reduction(rng: &mut ChaCha8Rng, fid: FidelityFn) -> GroupResult {
    let mut check = || {
        let mut worst = 0.0f64;
        for k in 0..100 {
            let dim = 2 + k % 7;
            let (a, b) = (random_pure_state(rng, dim), random_pure_state(rng, dim));
            let overlap: f64 = a
                .amplitudes()
                .iter()
                .zip(b.amplitudes())
                .map(|(x, y)| x * y)
                .sum();
            let f = eval(fid, &projector(&a), &projector(&b))?;
            worst = worst.max((f - overlap * overlap).abs());
        }
        ensure(worst <= 1e-8, || format!("max gap {worst:e}"))?;
        Ok(format!("100 pure pairs; max gap {worst:.1e}"))
    };
    group("pure-state reduction", check())
}

fn non_transitivity(fid: FidelityFn) -> GroupResult {
    let check = || {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let zero = projector(&PureState::basis(2, 0));
        let one = projector(&PureState::basis(2, 1));
        let plus = projector(&PureState::new(vec![h, h]).map_err(|e| e.to_string())?);
        let f = [
            eval(fid, &zero, &plus)?,
            eval(fid, &plus, &one)?,
            eval(fid, &zero, &one)?,
        ];
        let detail = format!(
            "F(|0>,|+>) = {}, F(|+>,|1>) = {}, F(|0>,|1>) = {}",
            short(f[0]),
            short(f[1]),
            short(f[2])
        );
        let exact = [0.5, 0.5, 0.0]
            .iter()
            .zip(&f)
            .all(|(e, v)| (e - v).abs() <= 1e-12);
        ensure(exact, || detail.clone())?;
        Ok(detail + " at r = 0.5")
    };
    group("non-transitivity witness", check())
}

fn encoding_round_trip(rng: &mut ChaCha8Rng) -> GroupResult {
    let mut check = || {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let d = rng.random_range(1..=8);
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1e6..=1e6)).collect();
            let fv = FeatureVector::new(x.clone()).map_err(|e| e.to_string())?;
            let back = decode_features(&amplitude_encode(&fv)).map_err(|e| e.to_string())?;
            for (a, b) in x.iter().zip(back.values()) {
                worst = worst.max((a - b).abs() / a.abs().max(f64::MIN_POSITIVE));
            }
        }
        ensure(worst <= 1e-10, || format!("relative error {worst:e}"))?;
        Ok(format!("100 vectors; max relative error {worst:.1e}"))
    };
    group("encoding round trip", check())
}

fn thresholds() -> impl Iterator<Item = f64> {
    (0..10).map(|i| f64::from(55 + 5 * i) / 100.0)
}

fn literal_label(to_pos: bool, to_neg: bool) -> ClassLabel {
    match (to_pos, to_neg) {
        (true, false) => ClassLabel::Positive,
        (false, true) => ClassLabel::Negative,
        _ => ClassLabel::Indeterminate,
    }
}

/// `ψᵀ (Σ P_φ / n) ψ`, the fidelity of a pure state to a uniform mixture.
fn mean_overlap(psi: &PureState, states: &[PureState]) -> f64 {
    let sum: f64 = states
        .iter()
        .map(|phi| {
            let o: f64 = psi
                .amplitudes()
                .iter()
                .zip(phi.amplitudes())
                .map(|(a, b)| a * b)
                .sum();
            o * o
        })
        .sum();
    sum / states.len() as f64
}

fn random_labeled(rng: &mut ChaCha8Rng, dim: usize, size: usize) -> Vec<(PureState, ClassLabel)> {
    let mut labels = vec![ClassLabel::Positive, ClassLabel::Negative];
    while labels.len() < size {
        labels.push(ClassLabel::ALL[rng.random_range(0..3)]);
    }
    labels
        .into_iter()
        .map(|l| (random_pure_state(rng, dim), l))
        .collect()
}

fn classifier_oracle(rng: &mut ChaCha8Rng) -> GroupResult {
    let mut check = || {
        let mut cases = 0;
        for dim in 2..=4 {
            for size in 2..=4 {
                for _ in 0..5 {
                    let ds =
                        build_dataset(random_labeled(rng, dim, size)).map_err(|e| e.to_string())?;
                    let c = ds.centroids().map_err(|e| e.to_string())?;
                    let mut queries: Vec<PureState> =
                        ds.labeled().map(|(s, _)| s.clone()).collect();
                    queries.extend((0..3).map(|_| random_pure_state(rng, dim)));
                    for q in &queries {
                        let fp = mean_overlap(q, ds.positives());
                        let fn_ = mean_overlap(q, ds.negatives());
                        for t in thresholds() {
                            let th =
                                SimilarityThreshold::classifier(t).map_err(|e| e.to_string())?;
                            let got = classify(&projector(q), &c, th).map_err(|e| e.to_string())?;
                            let want = literal_label(t <= fp + 1e-12, t <= fn_ + 1e-12);
                            ensure(got == want, || {
                                format!("dim {dim}, r* {t}: {got} vs {want}")
                            })?;
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{cases} cases; 0 disagreements"))
    };
    group("classifier oracle", check())
}

fn polarity_symmetry(rng: &mut ChaCha8Rng) -> GroupResult {
    let mut check = || {
        let mut cases = 0;
        for k in 0..20 {
            let dim = 2 + k % 3;
            let ds = build_dataset(random_labeled(rng, dim, 5)).map_err(|e| e.to_string())?;
            let c = ds.centroids().map_err(|e| e.to_string())?;
            let cs = ds.swap_polarity().centroids().map_err(|e| e.to_string())?;
            for _ in 0..5 {
                let q = projector(&random_pure_state(rng, dim));
                for t in thresholds() {
                    let th = SimilarityThreshold::classifier(t).map_err(|e| e.to_string())?;
                    let a = classify(&q, &c, th).map_err(|e| e.to_string())?;
                    let b = classify(&q, &cs, th).map_err(|e| e.to_string())?;
                    ensure(b == a.flipped(), || format!("data set {k}: {a} became {b}"))?;
                    cases += 1;
                }
            }
        }
        Ok(format!("20 data sets, {cases} cases; 0 violations"))
    };
    group("polarity symmetry", check())
}

fn music_fixtures(config: &RunConfig, rng: &mut ChaCha8Rng) -> GroupResult {
    let mut check = || {
        let (minor, major) = (fixtures::op10n1_primary(), fixtures::op10n1_major());
        let enc = EncodingConfig::fitted([&minor, &major], config.melodic_len, config.grid)
            .map_err(|e| e.to_string())?;
        let a = MusicalIdeaState::from_theme(&minor, &enc).map_err(|e| e.to_string())?;
        let b = MusicalIdeaState::from_theme(&major, &enc).map_err(|e| e.to_string())?;
        let f = idea_fidelities(&a, &b).map_err(|e| e.to_string())?;
        ensure((f.rhythmic - 1.0).abs() <= 1e-12, || {
            format!("rhythmic fidelity {}", f.rhythmic)
        })?;
        ensure(f.melodic < 1.0, || {
            format!("melodic fidelity {}", f.melodic)
        })?;
        let th = SimilarityThreshold::classifier(0.9).map_err(|e| e.to_string())?;
        for mode in [
            SimilarityMode::Melodic,
            SimilarityMode::Rhythmic,
            SimilarityMode::Strong,
        ] {
            let s = musical_similar(&a, &b, mode, th).map_err(|e| e.to_string())?;
            ensure(s, || {
                format!("op. 10 no. 1 versions not {mode}-similar at 0.9")
            })?;
        }
        for k in 0..20 {
            let notes = rng.random_range(1..=config.melodic_len.min(12));
            let phrase = random_phrase(rng, notes);
            let base = phrase.abstract_theme("t").map_err(|e| e.to_string())?;
            let plain = encode_melodic(&base, config.melodic_len).map_err(|e| e.to_string())?;
            let shift = rng.random_range(1..=12) * if rng.random_bool(0.5) { 1 } else { -1 };
            let moved = phrase
                .transpose(shift)
                .abstract_theme("t")
                .map_err(|e| e.to_string())?;
            let shifted = encode_melodic(&moved, config.melodic_len).map_err(|e| e.to_string())?;
            let same = plain
                .amplitudes()
                .iter()
                .zip(shifted.amplitudes())
                .all(|(x, y)| x.to_bits() == y.to_bits());
            ensure(same, || {
                format!("theme {k} changed under transposition by {shift}")
            })?;
        }
        Ok(format!(
            "op. 10 no. 1 rhythmic F {}, melodic F {:.6}; 20 transpositions bit-identical",
            short(f.rhythmic),
            f.melodic
        ))
    };
    group("music fixtures", check())
}

/// Random themes whose encodings are pairwise distinct.
fn distinct_themes(
    rng: &mut ChaCha8Rng,
    count: usize,
    max_notes: usize,
    grid: u32,
) -> qgestalt::Result<Vec<AbstractTheme>> {
    let mut seen = HashSet::new();
    let mut themes = Vec::new();
    while themes.len() < count {
        let notes = rng.random_range(1..=max_notes);
        let t = random_phrase(rng, notes).abstract_theme(format!("t{}", themes.len()))?;
        let mut onsets = onset_pattern(&t, grid)?;
        while onsets.last() == Some(&false) {
            onsets.pop();
        }
        if seen.insert((t.intervals(), onsets)) {
            themes.push(t);
        }
    }
    Ok(themes)
}

fn musical_classifier_oracle(config: &RunConfig, rng: &mut ChaCha8Rng) -> GroupResult {
    let mut check = || {
        let mut cases = 0;
        let len = config.melodic_len.min(8);
        for k in 0..10 {
            let themes = distinct_themes(rng, 6, len, config.grid).map_err(|e| e.to_string())?;
            let enc =
                EncodingConfig::fitted(&themes, len, config.grid).map_err(|e| e.to_string())?;
            let ideas = themes
                .iter()
                .map(|t| MusicalIdeaState::from_theme(t, &enc))
                .collect::<qgestalt::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            let labels = [
                ClassLabel::Positive,
                ClassLabel::Positive,
                ClassLabel::Negative,
                ClassLabel::Negative,
                ClassLabel::Indeterminate,
            ];
            let labeled: Vec<_> = ideas.iter().take(5).cloned().zip(labels).collect();
            let ds = build_musical_dataset(labeled).map_err(|e| e.to_string())?;
            let c = musical_centroids(&ds).map_err(|e| e.to_string())?;
            let channel = |side: &[MusicalIdeaState], nu: &MusicalIdeaState| {
                let mel: Vec<PureState> = side.iter().map(|i| i.melodic().clone()).collect();
                let rhy: Vec<PureState> = side.iter().map(|i| i.rhythmic().clone()).collect();
                (
                    mean_overlap(nu.melodic(), &mel),
                    mean_overlap(nu.rhythmic(), &rhy),
                )
            };
            for nu in &ideas {
                let (pm, pr) = channel(ds.positives(), nu);
                let (nm, nr) = channel(ds.negatives(), nu);
                for mode in SimilarityMode::ALL {
                    let sim = |m: f64, r: f64, t: f64| {
                        let (a, b) = (t <= m + 1e-12, t <= r + 1e-12);
                        match mode {
                            SimilarityMode::Melodic => a,
                            SimilarityMode::Rhythmic => b,
                            SimilarityMode::Strong => a && b,
                            SimilarityMode::Weak => a || b,
                        }
                    };
                    for t in thresholds() {
                        let th = SimilarityThreshold::classifier(t).map_err(|e| e.to_string())?;
                        let got = classify_theme(nu, &c, mode, th).map_err(|e| e.to_string())?;
                        let want = literal_label(sim(pm, pr, t), sim(nm, nr, t));
                        ensure(got == want, || {
                            format!("data set {k}, {mode}, r* {t}: {got} vs {want}")
                        })?;
                        cases += 1;
                    }
                }
            }
        }
        Ok(format!("10 data sets, {cases} cases; 0 disagreements"))
    };
    group("musical classifier oracle", check())
}
