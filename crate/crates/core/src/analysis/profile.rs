use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::stats::{mean, quantile_sorted, sample_std};

/// Mean, sample standard deviation and quartiles of one phase time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricStats {
    pub mean: f64,
    pub std: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl MetricStats {
    pub fn of(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Self {
            mean: mean(&v),
            std: sample_std(&v),
            q1: quantile_sorted(&v, 0.25),
            q2: quantile_sorted(&v, 0.5),
            q3: quantile_sorted(&v, 0.75),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterProfile {
    pub cluster_id: usize,
    pub size: usize,
    pub t_initial: MetricStats,
    pub t_growth: MetricStats,
    pub t_decay: MetricStats,
    /// Mean initial, growth and decay gains.
    pub mean_gains: [f64; 3],
}

/// Row indices per cluster id; ids with no rows are absent.
pub(crate) fn members(labels: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut by = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        by[l].push(i);
    }
    by.into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .collect()
}

pub(crate) fn check_labels(features: &FeatureMatrix, labels: &[usize]) -> Result<()> {
    if features.len() != labels.len() {
        return Err(Error::InvalidParameter(format!(
            "{} labels for {} feature rows",
            labels.len(),
            features.len()
        )));
    }
    Ok(())
}

/// Descriptive statistics of the phase times per cluster, ordered by id.
pub fn cluster_profiles(features: &FeatureMatrix, labels: &[usize]) -> Result<Vec<ClusterProfile>> {
    check_labels(features, labels)?;
    Ok(members(labels)
        .into_iter()
        .map(|(id, rows)| {
            let pick = |f: fn(&crate::features::FeatureVector) -> f64| -> Vec<f64> {
                rows.iter().map(|&i| f(&features.rows[i])).collect()
            };
            let gains = [
                mean(&pick(|r| r.gain_initial)),
                mean(&pick(|r| r.gain_growth)),
                mean(&pick(|r| r.gain_decay)),
            ];
            ClusterProfile {
                cluster_id: id,
                size: rows.len(),
                t_initial: MetricStats::of(&pick(|r| r.t_initial)),
                t_growth: MetricStats::of(&pick(|r| r.t_growth)),
                t_decay: MetricStats::of(&pick(|r| r.t_decay)),
                mean_gains: gains,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;

    fn fm(ti: &[f64]) -> FeatureMatrix {
        let rows = ti
            .iter()
            .map(|&t| {
                let mut a = [0.0; 12];
                a[0] = t;
                a[3] = 1.0;
                FeatureVector::from_array(a)
            })
            .collect();
        FeatureMatrix::new((0..ti.len()).map(|i| i.to_string()).collect(), rows).unwrap()
    }

    #[test]
    fn single_row_cluster() {
        let p = cluster_profiles(&fm(&[4.0]), &[0]).unwrap();
        assert_eq!(p.len(), 1);
        let s = p[0].t_initial;
        assert_eq!((s.mean, s.std, s.q1, s.q2, s.q3), (4.0, 0.0, 4.0, 4.0, 4.0));
        assert_eq!(p[0].mean_gains, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn symmetric_triple() {
        let p = cluster_profiles(&fm(&[3.0, 1.0, 2.0]), &[0, 0, 0]).unwrap();
        assert_eq!(p[0].t_initial.mean, 2.0);
        assert_eq!(p[0].t_initial.q2, 2.0);
        assert!(p[0].t_initial.q1 <= p[0].t_initial.q2 && p[0].t_initial.q2 <= p[0].t_initial.q3);
    }

    #[test]
    fn skips_unused_ids_and_checks_length() {
        let p = cluster_profiles(&fm(&[1.0, 2.0]), &[0, 2]).unwrap();
        assert_eq!(p.iter().map(|p| p.cluster_id).collect::<Vec<_>>(), vec![0, 2]);
        assert!(cluster_profiles(&fm(&[1.0]), &[0, 1]).is_err());
    }
}
