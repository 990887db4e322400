//! Incremental credible base clusterings.
//!
//! Each round runs k-means on the objects nobody has claimed yet. An object
//! is credibly claimed when it lies within `epsilon` of its assigned center;
//! claimed objects leave the pool for good, so claims across rounds are
//! disjoint. Rounds stop at `t_max` or when the pool holds fewer than `k_h^2`
//! objects.

use log::warn;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::kmeans::{kmeans, KMeansOutcome, KMeansParams};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::{rng_for, sub_seed_path};
use crate::stats::quantile;

/// Per-object flag: true iff the object lies within `epsilon` of its center.
pub fn credibility_mask(data: &Matrix, outcome: &KMeansOutcome, epsilon: f64) -> Vec<bool> {
    (0..data.nrows())
        .map(|i| outcome.distance_to_center(data, i) <= epsilon)
        .collect()
}

/// Neighborhood radius from a pilot k-means over all rows: the `quantile` of
/// object-to-center distances.
pub fn estimate_epsilon(
    data: &Matrix,
    quantile_level: f64,
    pilot_k: usize,
    seed: u64,
    params: KMeansParams,
) -> Result<f64> {
    if !(quantile_level > 0.0 && quantile_level <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon quantile must lie in (0, 1], got {quantile_level}"
        )));
    }
    if pilot_k == 0 {
        return Err(Error::InvalidParameter("pilot k must be at least 1".into()));
    }
    if data.nrows() == 0 {
        return Err(Error::EmptyCorpus);
    }
    let first = data.row(0);
    if data.rows_iter().all(|r| r == first) {
        warn!("all rows are identical; epsilon estimate is 0");
        return Ok(0.0);
    }
    let k = pilot_k.min(data.nrows());
    let pilot = kmeans(data, k, seed, params)?;
    let dists: Vec<f64> = (0..data.nrows())
        .map(|i| pilot.distance_to_center(data, i))
        .collect();
    Ok(quantile(&dists, quantile_level))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseParams {
    pub t_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub kmeans: KMeansParams,
}

impl Default for BaseParams {
    fn default() -> Self {
        Self {
            t_max: 10,
            k_min: 2,
            k_max: 6,
            kmeans: KMeansParams::default(),
        }
    }
}

impl BaseParams {
    pub fn validate(&self) -> Result<()> {
        if self.t_max == 0 {
            return Err(Error::InvalidParameter("t_max must be at least 1".into()));
        }
        if self.k_min < 2 || self.k_min > self.k_max {
            return Err(Error::InvalidParameter(format!(
                "need 2 <= k_min <= k_max, got k_min = {}, k_max = {}",
                self.k_min, self.k_max
            )));
        }
        Ok(())
    }
}

/// One round of the incremental procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseClustering {
    /// Zero-based round number.
    pub index: usize,
    pub k: usize,
    pub centers: Matrix,
    /// `(object, cluster)` pairs credibly claimed in this round, by object.
    pub claimed: Vec<(usize, usize)>,
    /// Pool size when the round started.
    pub pool_size: usize,
    /// 1, or 2 when the first attempt claimed nothing.
    pub attempts: usize,
}

impl BaseClustering {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &(_, c) in &self.claimed {
            sizes[c] += 1;
        }
        sizes
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseClusterSet {
    pub rounds: Vec<BaseClustering>,
    pub epsilon: f64,
    pub unclaimed: Vec<usize>,
    pub n_objects: usize,
}

impl BaseClusterSet {
    pub fn claimed_count(&self) -> usize {
        self.rounds.iter().map(|r| r.claimed.len()).sum()
    }

    /// Sum over claimed objects of the distance to the claiming center.
    pub fn credible_objective(&self, data: &Matrix) -> f64 {
        self.rounds
            .iter()
            .flat_map(|r| {
                r.claimed
                    .iter()
                    .map(move |&(o, c)| crate::matrix::euclidean(data.row(o), r.centers.row(c)))
            })
            .sum()
    }
}

const STREAM_K: u64 = 0;
const STREAM_KMEANS: u64 = 1;

pub fn generate_base_clusterings(
    data: &Matrix,
    params: BaseParams,
    epsilon: f64,
    seed: u64,
) -> Result<BaseClusterSet> {
    params.validate()?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let n = data.nrows();
    let mut pool: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();

    for h in 0..params.t_max {
        let mut krng = rng_for(sub_seed_path(seed, &[h as u64, STREAM_K]));
        let k = krng.random_range(params.k_min..=params.k_max);
        if pool.len() < k * k {
            break;
        }
        let subset = data.select_rows(&pool);
        let mut attempts = 0;
        let (outcome, mask) = loop {
            let s = sub_seed_path(seed, &[h as u64, STREAM_KMEANS, attempts as u64]);
            attempts += 1;
            let out = kmeans(&subset, k, s, params.kmeans)?;
            let mask = credibility_mask(&subset, &out, epsilon);
            if mask.iter().any(|&m| m) || attempts == 2 {
                break (out, mask);
            }
        };
        let claimed: Vec<(usize, usize)> = pool
            .iter()
            .zip(&mask)
            .enumerate()
            .filter(|(_, (_, &m))| m)
            .map(|(local, (&obj, _))| (obj, outcome.labels[local]))
            .collect();
        let pool_size = pool.len();
        pool = pool
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| !m)
            .map(|(&o, _)| o)
            .collect();
        rounds.push(BaseClustering {
            index: h,
            k,
            centers: outcome.centers,
            claimed,
            pool_size,
            attempts,
        });
    }

    Ok(BaseClusterSet {
        rounds,
        epsilon,
        unclaimed: pool,
        n_objects: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn mask_examples() {
        let d = Matrix::column(&[0.0, 1.0, 10.0, 11.0]);
        let out = KMeansOutcome {
            labels: vec![0, 0, 1, 1],
            centers: Matrix::column(&[0.5, 10.5]),
            objective: 1.0,
            iterations: 1,
            trace: vec![1.0],
        };
        assert!(credibility_mask(&d, &out, f64::INFINITY).iter().all(|&m| m));
        assert!(credibility_mask(&d, &out, 0.6).iter().all(|&m| m));
        assert!(credibility_mask(&d, &out, 0.4).iter().all(|&m| !m));
        assert!(credibility_mask(&d, &out, 0.0).iter().all(|&m| !m));
    }

    #[test]
    fn zero_epsilon_only_hits_centers() {
        let d = Matrix::column(&[0.0, 1.0, 1.0]);
        let out = KMeansOutcome {
            labels: vec![0, 1, 1],
            centers: Matrix::column(&[0.0, 1.0]),
            objective: 0.0,
            iterations: 1,
            trace: vec![0.0],
        };
        assert_eq!(credibility_mask(&d, &out, 0.0), vec![true, true, true]);
    }

    #[test]
    fn epsilon_examples() {
        let p = KMeansParams::default();
        let same = Matrix::from_rows(&[[1.0, 2.0], [1.0, 2.0], [1.0, 2.0]]);
        assert_eq!(estimate_epsilon(&same, 0.5, 2, 0, p).unwrap(), 0.0);
        let d = Matrix::column(&[0.0, 1.0, 10.0, 11.0]);
        for seed in 0..10 {
            assert_eq!(estimate_epsilon(&d, 1.0, 2, seed, p).unwrap(), 0.5);
            assert_eq!(estimate_epsilon(&d, 0.5, 2, seed, p).unwrap(), 0.5);
        }
        assert!(estimate_epsilon(&d, 0.0, 2, 0, p).is_err());
    }

    #[test]
    fn two_blobs_claimed_in_one_round() {
        let d = Matrix::column(&[0.0, 0.1, 0.2, 10.0, 10.1, 10.2]);
        let params = BaseParams {
            k_min: 2,
            k_max: 2,
            ..BaseParams::default()
        };
        let set = generate_base_clusterings(&d, params, 1.0, 5).unwrap();
        assert_eq!(set.rounds.len(), 1);
        assert_eq!(set.rounds[0].claimed.len(), 6);
        assert!(set.unclaimed.is_empty());
    }

    #[test]
    fn zero_epsilon_claims_nothing() {
        // tight pairs far apart: every cluster mean ends in .5, never on a point
        let vals: Vec<f64> = (0..40).map(|i| (i / 2 * 10 + i % 2) as f64).collect();
        let d = Matrix::column(&vals);
        let set = generate_base_clusterings(&d, BaseParams::default(), 0.0, 1).unwrap();
        assert_eq!(set.rounds.len(), 10);
        assert!(set.rounds.iter().all(|r| r.claimed.is_empty() && r.attempts == 2));
        assert_eq!(set.unclaimed.len(), 40);
    }

    #[test]
    fn t_max_bounds_rounds() {
        let vals: Vec<f64> = (0..100).map(|i| (i % 17) as f64).collect();
        let d = Matrix::column(&vals);
        let params = BaseParams {
            t_max: 1,
            ..BaseParams::default()
        };
        let set = generate_base_clusterings(&d, params, 0.3, 2).unwrap();
        assert!(set.rounds.len() <= 1);
    }

    #[test]
    fn claims_are_disjoint_and_credible() {
        let vals: Vec<f64> = (0..300).map(|i| ((i * 7919) % 1000) as f64 / 100.0).collect();
        let d = Matrix::column(&vals);
        let set = generate_base_clusterings(&d, BaseParams::default(), 0.4, 3).unwrap();
        let mut seen = HashSet::new();
        for r in &set.rounds {
            for &(o, c) in &r.claimed {
                assert!(seen.insert(o));
                assert!(crate::matrix::euclidean(d.row(o), r.centers.row(c)) <= 0.4);
            }
        }
        for &o in &set.unclaimed {
            assert!(seen.insert(o));
        }
        assert_eq!(seen.len(), 300);
    }

    #[test]
    fn bad_parameters() {
        let d = Matrix::column(&[0.0, 1.0]);
        assert!(generate_base_clusterings(&d, BaseParams::default(), -1.0, 0).is_err());
        let p = BaseParams {
            k_min: 1,
            ..BaseParams::default()
        };
        assert!(generate_base_clusterings(&d, p, 1.0, 0).is_err());
    }
}
