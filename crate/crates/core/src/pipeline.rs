//! End-to-end orchestration: filter, featurize, cluster, report.
//!
//! Every stage has a file-based entry point that reads the previous stage's
//! output, so a one-shot [`run_pipeline`] and a chain of stage calls write the
//! same artifacts.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::info;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    build_report, write_gain_histogram_csv, write_peak_box_csv, Report, SemanticThresholds,
    DEFAULT_HISTOGRAM_BINS,
};
use crate::corpus_io::{create, csv_io, open, read_long_path, read_wide_path, write_wide_path};
use crate::error::{Error, Result};
use crate::features::{
    build_feature_matrix, read_features_path, standardize, write_features_path, FeatureMatrix,
    FeatureOptions, FeatureVector, GainMode,
};
use crate::metrics::adjusted_rand_index;
use crate::mkmce::{run_mkmce, BaseParams, EnsembleDiagnostics, KMeansParams, MkmceConfig, MkmceRun};
use crate::numfmt::format_sig;
use crate::synth::{synthesize_corpus, Archetype};
use crate::trajectory::{filter_and_align, TrajectoryCorpus};

pub const FILTERED_CSV: &str = "filtered.csv";
pub const FEATURES_CSV: &str = "features.csv";
pub const LABELS_CSV: &str = "labels.csv";
pub const DIAGNOSTICS_JSON: &str = "diagnostics.json";
pub const REPORT_JSON: &str = "report.json";
pub const GAINS_HIST_CSV: &str = "gains_hist.csv";
pub const PEAKS_BOX_CSV: &str = "peaks_box.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub window_length: usize,
    pub min_success_ratio: f64,
    pub t_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub epsilon: Option<f64>,
    pub epsilon_quantile: f64,
    pub final_k: Option<usize>,
    pub seed: u64,
    pub gain_mode: GainMode,
    pub thresholds: SemanticThresholds,
    pub histogram_bins: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            window_length: 10,
            min_success_ratio: 1.0,
            t_max: 10,
            k_min: 2,
            k_max: 6,
            epsilon: None,
            epsilon_quantile: 0.5,
            final_k: None,
            seed: 42,
            gain_mode: GainMode::Windowed,
            thresholds: SemanticThresholds::default(),
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.window_length < 5 {
            return bad(format!("window_length must be at least 5, got {}", self.window_length));
        }
        if self.k_min < 2 || self.k_min > self.k_max {
            return bad(format!("need 2 <= k_min <= k_max, got {}..{}", self.k_min, self.k_max));
        }
        if self.t_max == 0 {
            return bad("t_max must be at least 1".into());
        }
        if !(self.epsilon_quantile > 0.0 && self.epsilon_quantile <= 1.0) {
            return bad(format!("epsilon_quantile must lie in (0, 1], got {}", self.epsilon_quantile));
        }
        if let Some(e) = self.epsilon {
            if !(e >= 0.0 && e.is_finite()) {
                return bad(format!("epsilon must be a non-negative number, got {e}"));
            }
        }
        if self.final_k == Some(0) {
            return bad("final_k must be at least 1".into());
        }
        if self.min_success_ratio.is_nan() || self.min_success_ratio < 0.0 {
            return bad(format!("min_success_ratio must be non-negative, got {}", self.min_success_ratio));
        }
        if self.histogram_bins == 0 {
            return bad("histogram_bins must be at least 1".into());
        }
        Ok(())
    }

    pub fn mkmce(&self) -> MkmceConfig {
        MkmceConfig {
            base: BaseParams {
                t_max: self.t_max,
                k_min: self.k_min,
                k_max: self.k_max,
                kmeans: KMeansParams::default(),
            },
            epsilon: self.epsilon,
            epsilon_quantile: self.epsilon_quantile,
            final_k: self.final_k,
            seed: self.seed,
        }
    }

    pub fn feature_options(&self) -> FeatureOptions {
        FeatureOptions {
            gain_mode: self.gain_mode,
            ..FeatureOptions::default()
        }
    }

    /// Parse a TOML config, or a JSON file holding either a bare config or a
    /// diagnostics document with an `effective_config` entry.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let config: Self = if is_json {
            let mut v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            if let Some(inner) = v.get_mut("effective_config") {
                v = inner.take();
            }
            serde_json::from_value(v).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        };
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Round every feature to its exported precision so that clustering a
/// freshly built matrix and clustering its CSV give the same answer.
fn quantize(features: FeatureMatrix) -> Result<FeatureMatrix> {
    let rows = features
        .rows
        .iter()
        .map(|r| {
            FeatureVector::from_array(
                r.to_array()
                    .map(|v| format_sig(v, 9).parse().expect("formatted number parses")),
            )
        })
        .collect();
    FeatureMatrix::new(features.paper_ids, rows)
}

pub fn filter_stage(corpus: &TrajectoryCorpus, config: &PipelineConfig) -> Result<TrajectoryCorpus> {
    config.validate()?;
    let kept = filter_and_align(corpus, config.window_length, config.min_success_ratio)?;
    info!("kept {} of {} trajectories", kept.len(), corpus.len());
    Ok(kept)
}

pub fn features_stage(corpus: &TrajectoryCorpus, config: &PipelineConfig) -> Result<FeatureMatrix> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    quantize(build_feature_matrix(corpus, config.feature_options())?)
}

/// Clustering output plus the configuration that reproduces it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStage {
    pub paper_ids: Vec<String>,
    pub run: MkmceRun,
    pub effective_config: PipelineConfig,
}

impl ClusterStage {
    pub fn labels(&self) -> &[usize] {
        &self.run.result.final_labels
    }
}

pub fn cluster_stage(features: &FeatureMatrix, config: &PipelineConfig) -> Result<ClusterStage> {
    config.validate()?;
    let z = standardize(features);
    let run = run_mkmce(&z.values, &config.mkmce())?;
    let d = &run.diagnostics;
    info!(
        "epsilon {:.4}, {} rounds, {} unclaimed, k* = {}",
        d.epsilon,
        d.rounds.len(),
        d.unclaimed,
        d.k_star
    );
    let mut effective_config = config.clone();
    effective_config.epsilon = Some(d.epsilon);
    if run.graph.is_some() {
        effective_config.final_k = Some(d.k_star);
    }
    Ok(ClusterStage {
        paper_ids: features.paper_ids.clone(),
        run,
        effective_config,
    })
}

pub fn report_stage(features: &FeatureMatrix, labels: &[usize], config: &PipelineConfig) -> Result<Report> {
    config.validate()?;
    build_report(
        features,
        labels,
        config.window_length,
        &config.thresholds,
        config.histogram_bins,
    )
}

/// Everything one pipeline run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub n_input: usize,
    pub filtered: TrajectoryCorpus,
    pub features: FeatureMatrix,
    pub cluster: ClusterStage,
    pub report: Report,
}

impl PipelineOutput {
    pub fn labels(&self) -> &[usize] {
        self.cluster.labels()
    }
}

/// Run all stages in memory. An empty filtered corpus is an error.
pub fn run_corpus(corpus: &TrajectoryCorpus, config: &PipelineConfig) -> Result<PipelineOutput> {
    let filtered = filter_stage(corpus, config)?;
    let features = features_stage(&filtered, config)?;
    let cluster = cluster_stage(&features, config)?;
    let report = report_stage(&features, cluster.labels(), config)?;
    Ok(PipelineOutput {
        n_input: corpus.len(),
        filtered,
        features,
        cluster,
        report,
    })
}

#[derive(Serialize)]
struct DiagnosticsDoc<'a> {
    n_objects: usize,
    effective_config: &'a PipelineConfig,
    #[serde(flatten)]
    ensemble: &'a EnsembleDiagnostics,
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f).map_err(|e| Error::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn write_labels(paper_ids: &[String], labels: &[usize], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["paper_id", "cluster_id"]).map_err(csv_io)?;
    for (id, l) in paper_ids.iter().zip(labels) {
        w.write_record([id.as_str(), &l.to_string()]).map_err(csv_io)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Two-column `id,label` file with a header, ids unique.
fn read_pairs(path: &Path) -> Result<Vec<(String, String)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() < 2 {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: "expected two columns".into(),
            });
        }
        if !seen.insert(rec[0].to_string()) {
            return Err(Error::IdMismatch(format!(
                "duplicate id `{}` in {}",
                &rec[0],
                path.display()
            )));
        }
        out.push((rec[0].to_string(), rec[1].to_string()));
    }
    Ok(out)
}

pub fn read_labels(path: &Path) -> Result<(Vec<String>, Vec<usize>)> {
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    for (i, (id, l)) in read_pairs(path)?.into_iter().enumerate() {
        let l = l.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line: i as u64 + 2,
            message: format!("invalid cluster id `{l}`"),
        })?;
        ids.push(id);
        labels.push(l);
    }
    Ok((ids, labels))
}

fn cluster_files(stage: &ClusterStage, dir: &Path) -> Result<()> {
    write_labels(&stage.paper_ids, stage.labels(), &dir.join(LABELS_CSV))?;
    write_json(
        &DiagnosticsDoc {
            n_objects: stage.paper_ids.len(),
            effective_config: &stage.effective_config,
            ensemble: &stage.run.diagnostics,
        },
        &dir.join(DIAGNOSTICS_JSON),
    )
}

fn report_files(report: &Report, dir: &Path) -> Result<()> {
    write_json(report, &dir.join(REPORT_JSON))?;
    write_gain_histogram_csv(&report.gain_histograms, create(&dir.join(GAINS_HIST_CSV))?)?;
    write_peak_box_csv(&report.peak_boxes, create(&dir.join(PEAKS_BOX_CSV))?)
}

pub fn read_corpus(input: &Path, long: bool) -> Result<TrajectoryCorpus> {
    if long {
        read_long_path(input)
    } else {
        read_wide_path(input)
    }
}

/// `filtered.csv`. Fails with [`Error::EmptyCorpus`] after writing an empty
/// corpus when nothing passes the filter.
pub fn cmd_filter(input: &Path, long: bool, config: &PipelineConfig, out_dir: &Path) -> Result<TrajectoryCorpus> {
    let kept = filter_stage(&read_corpus(input, long)?, config)?;
    ensure_dir(out_dir)?;
    write_wide_path(&kept, &out_dir.join(FILTERED_CSV))?;
    if kept.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(kept)
}

/// `features.csv` from a filtered wide corpus.
pub fn cmd_features(filtered: &Path, config: &PipelineConfig, out_dir: &Path) -> Result<FeatureMatrix> {
    let features = features_stage(&read_wide_path(filtered)?, config)?;
    ensure_dir(out_dir)?;
    write_features_path(&features, &out_dir.join(FEATURES_CSV))?;
    Ok(features)
}

/// `labels.csv` and `diagnostics.json` from a feature CSV.
pub fn cmd_cluster(features: &Path, config: &PipelineConfig, out_dir: &Path) -> Result<ClusterStage> {
    let stage = cluster_stage(&read_features_path(features)?, config)?;
    ensure_dir(out_dir)?;
    cluster_files(&stage, out_dir)?;
    Ok(stage)
}

/// `report.json`, `gains_hist.csv`, `peaks_box.csv` from features and labels.
pub fn cmd_report(features: &Path, labels: &Path, config: &PipelineConfig, out_dir: &Path) -> Result<Report> {
    let features = read_features_path(features)?;
    let (ids, labels) = read_labels(labels)?;
    if ids != features.paper_ids {
        return Err(Error::IdMismatch(
            "label file and feature file list different papers".into(),
        ));
    }
    let report = report_stage(&features, &labels, config)?;
    ensure_dir(out_dir)?;
    report_files(&report, out_dir)?;
    Ok(report)
}

/// All stages; writes every artifact into `out_dir`.
pub fn cmd_pipeline(input: &Path, long: bool, config: &PipelineConfig, out_dir: &Path) -> Result<PipelineOutput> {
    let corpus = read_corpus(input, long)?;
    let filtered = filter_stage(&corpus, config)?;
    ensure_dir(out_dir)?;
    write_wide_path(&filtered, &out_dir.join(FILTERED_CSV))?;
    if filtered.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let features = features_stage(&filtered, config)?;
    write_features_path(&features, &out_dir.join(FEATURES_CSV))?;
    let cluster = cluster_stage(&features, config)?;
    cluster_files(&cluster, out_dir)?;
    let report = report_stage(&features, cluster.labels(), config)?;
    report_files(&report, out_dir)?;
    Ok(PipelineOutput {
        n_input: corpus.len(),
        filtered,
        features,
        cluster,
        report,
    })
}

/// Sidecar truth path: `corpus.csv` -> `corpus.truth.csv`.
pub fn truth_path(corpus_path: &Path) -> PathBuf {
    let stem = corpus_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());
    corpus_path.with_file_name(format!("{stem}.truth.csv"))
}

/// Write a synthetic wide corpus and its `paper_id,label` truth sidecar.
pub fn cmd_synth(mix: &[(Archetype, usize)], window: usize, seed: u64, output: &Path) -> Result<PathBuf> {
    let synth = synthesize_corpus(mix, window, seed)?;
    if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
        ensure_dir(dir)?;
    }
    write_wide_path(&synth.corpus, output)?;
    let truth = truth_path(output);
    let mut w = csv::Writer::from_writer(create(&truth)?);
    w.write_record(["paper_id", "label"]).map_err(csv_io)?;
    for (t, a) in synth.corpus.iter().zip(&synth.truth) {
        w.write_record([t.paper_id(), a.code()]).map_err(csv_io)?;
    }
    w.flush().map_err(|e| Error::io(&truth, e))?;
    Ok(truth)
}

/// ARI between a label file and a truth file over the same paper ids.
/// Predicted ids that were filtered out of the truth's corpus are an error.
pub fn cmd_eval(labels: &Path, truth: &Path) -> Result<f64> {
    let pred = read_pairs(labels)?;
    let truth: BTreeMap<String, String> = read_pairs(truth)?.into_iter().collect();
    if pred.len() != truth.len() {
        return Err(Error::IdMismatch(format!(
            "{} predicted ids vs {} truth ids",
            pred.len(),
            truth.len()
        )));
    }
    let mut a = Vec::with_capacity(pred.len());
    let mut b = Vec::with_capacity(pred.len());
    for (id, l) in pred {
        let t = truth
            .get(&id)
            .ok_or_else(|| Error::IdMismatch(format!("id `{id}` missing from truth")))?;
        a.push(l);
        b.push(t.clone());
    }
    Ok(adjusted_rand_index(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_validation() {
        let c = PipelineConfig::default();
        c.validate().unwrap();
        let mut bad = c.clone();
        bad.k_min = 1;
        assert!(bad.validate().is_err());
        let mut bad = c.clone();
        bad.window_length = 4;
        assert!(bad.validate().is_err());
        let mut bad = c.clone();
        bad.epsilon_quantile = 0.0;
        assert!(bad.validate().is_err());
        let mut bad = c;
        bad.k_max = 1;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn config_toml_round_trip() {
        let c = PipelineConfig {
            epsilon: Some(0.123456789),
            final_k: Some(3),
            gain_mode: GainMode::LiteralPrefix,
            ..PipelineConfig::default()
        };
        let back: PipelineConfig = toml::from_str(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        let partial: PipelineConfig = toml::from_str("window_length = 30\nseed = 7\n").unwrap();
        assert_eq!(partial.window_length, 30);
        assert_eq!(partial.k_max, 6);
        assert!(toml::from_str::<PipelineConfig>("windw = 3").is_err());
    }

    #[test]
    fn truth_sidecar_name() {
        assert_eq!(truth_path(Path::new("out/c.csv")), Path::new("out/c.truth.csv"));
    }
}
