//! Cluster characterization: phase-time profiles, semantic labels, ANOVA and
//! plot-data summaries.

pub mod anova;
pub mod plots;
pub mod profile;
pub mod semantic;
pub mod special;

use serde::{Deserialize, Serialize};

pub use anova::{anova_f, anova_table, AnovaResult, AnovaRow, SIGNIFICANCE_LEVEL};
pub use plots::{
    gain_histogram, peak_distribution_stats, write_gain_histogram_csv, write_peak_box_csv,
    GainHistogram, PeakBoxStats,
};
pub use profile::{cluster_profiles, ClusterProfile, MetricStats};
pub use semantic::{label_from_means, semantic_label, Decline, Rise, SemanticLabel, SemanticThresholds};
pub use special::f_survival;

use crate::error::Result;
use crate::features::FeatureMatrix;

pub const DEFAULT_HISTOGRAM_BINS: usize = 10;

/// JSON has no infinity; encode non-finite floats as `"inf"`, `"-inf"`, `"nan"`.
pub(crate) mod nonfinite {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(D::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    #[serde(flatten)]
    pub profile: ClusterProfile,
    pub semantic_label: String,
    /// False for the two rise/decline combinations outside the known taxonomy.
    pub observed_class: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub window_length: usize,
    pub n_objects: usize,
    pub thresholds: SemanticThresholds,
    pub clusters: Vec<ClusterReport>,
    pub anova: Vec<AnovaRow>,
    pub gain_histograms: Vec<GainHistogram>,
    pub peak_boxes: Vec<PeakBoxStats>,
}

impl Report {
    pub fn labels(&self) -> Vec<SemanticLabel> {
        self.clusters
            .iter()
            .map(|c| {
                semantic_label(&c.profile, self.window_length, &self.thresholds)
            })
            .collect()
    }
}

pub fn build_report(
    features: &FeatureMatrix,
    labels: &[usize],
    window_length: usize,
    thresholds: &SemanticThresholds,
    bins: usize,
) -> Result<Report> {
    let clusters = cluster_profiles(features, labels)?
        .into_iter()
        .map(|profile| {
            let label = semantic_label(&profile, window_length, thresholds);
            ClusterReport {
                profile,
                semantic_label: label.code(),
                observed_class: label.is_observed_class(),
            }
        })
        .collect();
    Ok(Report {
        window_length,
        n_objects: features.len(),
        thresholds: *thresholds,
        clusters,
        anova: anova_table(features, labels)?,
        gain_histograms: gain_histogram(features, labels, bins)?,
        peak_boxes: peak_distribution_stats(features, labels)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::extract_features;
    use crate::trajectory::CitationTrajectory;

    #[test]
    fn report_on_two_shapes() {
        let early = [0u64, 5, 9, 4, 1, 0, 0, 0, 0, 0];
        let late = [0u64, 0, 1, 1, 2, 3, 4, 6, 8, 9];
        let mut ids = Vec::new();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..6 {
            let c = if i % 2 == 0 { &early } else { &late };
            ids.push(format!("p{i}"));
            rows.push(extract_features(&CitationTrajectory::from_counts(c).unwrap()).unwrap());
            labels.push(i % 2);
        }
        let f = FeatureMatrix::new(ids, rows).unwrap();
        let r = build_report(&f, &labels, 10, &SemanticThresholds::default(), 4).unwrap();
        assert_eq!(r.clusters.len(), 2);
        assert_eq!(r.clusters[1].semantic_label, "DR-ND");
        assert_eq!(r.anova.len(), 12);
        let json = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.clusters, r.clusters);
    }

    #[test]
    fn nonfinite_round_trip() {
        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "nonfinite")] f64);
        for v in [1.5, f64::INFINITY, f64::NEG_INFINITY] {
            let s = serde_json::to_string(&W(v)).unwrap();
            assert_eq!(serde_json::from_str::<W>(&s).unwrap().0, v);
        }
        let s = serde_json::to_string(&W(f64::NAN)).unwrap();
        assert_eq!(s, "\"nan\"");
    }
}
