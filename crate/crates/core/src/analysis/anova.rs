//! One-way analysis of variance across final clusters.

use serde::{Deserialize, Serialize};

use super::special::f_survival;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FEATURE_NAMES};

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnovaResult {
    /// `+inf` when groups differ but have no spread within.
    #[serde(with = "crate::analysis::nonfinite")]
    pub f: f64,
    pub p: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub significant: bool,
}

pub fn anova_f(values: &[f64], labels: &[usize]) -> Result<AnovaResult> {
    if values.len() != labels.len() {
        return Err(Error::InvalidParameter(
            "values and labels differ in length".into(),
        ));
    }
    let k_raw = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sums = vec![0.0; k_raw];
    let mut counts = vec![0usize; k_raw];
    for (&v, &l) in values.iter().zip(labels) {
        sums[l] += v;
        counts[l] += 1;
    }
    let groups = counts.iter().filter(|&&c| c > 0).count();
    let n = values.len();
    if groups < 2 {
        return Err(Error::InvalidParameter(
            "ANOVA needs at least two non-empty groups".into(),
        ));
    }
    if n <= groups {
        return Err(Error::InvalidParameter(
            "ANOVA needs more observations than groups".into(),
        ));
    }
    let means: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
        .collect();
    let grand = values.iter().sum::<f64>() / n as f64;
    let ssb: f64 = means
        .iter()
        .zip(&counts)
        .map(|(&m, &c)| c as f64 * (m - grand) * (m - grand))
        .sum();
    let ssw: f64 = values
        .iter()
        .zip(labels)
        .map(|(&v, &l)| (v - means[l]) * (v - means[l]))
        .sum();
    let df_between = groups - 1;
    let df_within = n - groups;
    let (f, p) = if ssw == 0.0 {
        if ssb > 0.0 {
            (f64::INFINITY, 0.0)
        } else {
            (0.0, 1.0)
        }
    } else {
        let f = (ssb / df_between as f64) / (ssw / df_within as f64);
        (f, f_survival(f, df_between as f64, df_within as f64))
    };
    Ok(AnovaResult {
        f,
        p,
        df_between,
        df_within,
        significant: p < SIGNIFICANCE_LEVEL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnovaRow {
    pub feature: String,
    #[serde(flatten)]
    pub result: AnovaResult,
}

/// ANOVA for every feature column. Empty when fewer than two clusters.
pub fn anova_table(features: &FeatureMatrix, labels: &[usize]) -> Result<Vec<AnovaRow>> {
    let distinct = {
        let mut l = labels.to_vec();
        l.sort_unstable();
        l.dedup();
        l.len()
    };
    if distinct < 2 || labels.len() <= distinct {
        return Ok(Vec::new());
    }
    FEATURE_NAMES
        .iter()
        .enumerate()
        .map(|(j, name)| {
            Ok(AnovaRow {
                feature: name.to_string(),
                result: anova_f(&features.column(j), labels)?,
            })
        })
        .collect()
}
