//! Lloyd's k-means with random distinct-point initialization.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::rng::{rng_for, sub_seed};

/// Below this many rows the assignment step runs sequentially.
const PAR_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KMeansParams {
    pub max_iter: usize,
    /// Stop once no center moves farther than this.
    pub tol: f64,
}

impl Default for KMeansParams {
    fn default() -> Self {
        Self {
            max_iter: 300,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansOutcome {
    pub labels: Vec<usize>,
    pub centers: Matrix,
    /// Sum of squared distances of every row to its assigned center.
    pub objective: f64,
    pub iterations: usize,
    /// Objective after each iteration; non-increasing.
    pub trace: Vec<f64>,
}

impl KMeansOutcome {
    pub fn distance_to_center(&self, data: &Matrix, i: usize) -> f64 {
        squared_distance(data.row(i), self.centers.row(self.labels[i])).sqrt()
    }
}

/// Pick `k` rows as initial centers, preferring rows with distinct values.
fn initial_centers(data: &Matrix, k: usize, seed: u64) -> Matrix {
    let n = data.nrows();
    let mut rng = rng_for(seed);
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut attempts = 0usize;
    let max_attempts = 32 * k + 64;
    while chosen.len() < k && attempts < max_attempts {
        attempts += 1;
        let i = rng.random_range(0..n);
        if chosen.iter().any(|&c| c == i || data.row(c) == data.row(i)) {
            continue;
        }
        chosen.push(i);
    }
    if chosen.len() < k {
        // Few distinct values: scan deterministically for unseen rows, then
        // fall back to unseen indices.
        let start = rng.random_range(0..n);
        for off in 0..n {
            let i = (start + off) % n;
            if chosen.len() == k {
                break;
            }
            if !chosen.iter().any(|&c| data.row(c) == data.row(i)) {
                chosen.push(i);
            }
        }
        for off in 0..n {
            let i = (start + off) % n;
            if chosen.len() == k {
                break;
            }
            if !chosen.contains(&i) {
                chosen.push(i);
            }
        }
    }
    data.select_rows(&chosen)
}

fn nearest(row: &[f64], centers: &Matrix) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.rows_iter().enumerate() {
        let d = squared_distance(row, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn assign(data: &Matrix, centers: &Matrix) -> Vec<(usize, f64)> {
    if data.nrows() >= PAR_THRESHOLD {
        (0..data.nrows())
            .into_par_iter()
            .map(|i| nearest(data.row(i), centers))
            .collect()
    } else {
        data.rows_iter().map(|r| nearest(r, centers)).collect()
    }
}

fn objective_for(data: &Matrix, labels: &[usize], centers: &Matrix) -> f64 {
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| squared_distance(data.row(i), centers.row(l)))
        .sum()
}

fn update_centers(data: &Matrix, labels: &[usize], previous: &Matrix) -> Matrix {
    let (k, m) = (previous.nrows(), previous.ncols());
    let mut sums = Matrix::zeros(k, m);
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        counts[l] += 1;
        for (s, v) in sums.row_mut(l).iter_mut().zip(data.row(i)) {
            *s += v;
        }
    }
    for (j, &cnt) in counts.iter().enumerate() {
        if cnt == 0 {
            sums.row_mut(j).copy_from_slice(previous.row(j));
        } else {
            sums.row_mut(j).iter_mut().for_each(|s| *s /= cnt as f64);
        }
    }
    sums
}

/// Run Lloyd iterations on the rows of `data`. Empty clusters keep their
/// previous center.
pub fn kmeans(data: &Matrix, k: usize, seed: u64, params: KMeansParams) -> Result<KMeansOutcome> {
    let n = data.nrows();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut centers = initial_centers(data, k, seed);
    let mut labels: Vec<usize> = assign(data, &centers).into_iter().map(|(l, _)| l).collect();
    let mut trace = vec![objective_for(data, &labels, &centers)];
    let mut iterations = 0;
    while iterations < params.max_iter {
        iterations += 1;
        let next = update_centers(data, &labels, &centers);
        let shift = centers
            .rows_iter()
            .zip(next.rows_iter())
            .map(|(a, b)| squared_distance(a, b))
            .fold(0.0, f64::max)
            .sqrt();
        centers = next;
        let assigned = assign(data, &centers);
        let changed = assigned
            .iter()
            .zip(&labels)
            .any(|(&(l, _), &old)| l != old);
        labels = assigned.iter().map(|&(l, _)| l).collect();
        let obj: f64 = assigned.iter().map(|&(_, d)| d).sum();
        trace.push(obj);
        if !changed || shift <= params.tol {
            break;
        }
    }
    let objective = *trace.last().expect("trace non-empty");
    Ok(KMeansOutcome {
        labels,
        centers,
        objective,
        iterations,
        trace,
    })
}

/// Best of `restarts` independent runs by objective; ties keep the earliest.
pub fn kmeans_restarts(
    data: &Matrix,
    k: usize,
    restarts: usize,
    seed: u64,
    params: KMeansParams,
) -> Result<KMeansOutcome> {
    let mut best: Option<KMeansOutcome> = None;
    for r in 0..restarts.max(1) {
        let out = kmeans(data, k, sub_seed(seed, r as u64), params)?;
        if best.as_ref().is_none_or(|b| out.objective < b.objective) {
            best = Some(out);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(v: &[f64]) -> Matrix {
        Matrix::column(v)
    }

    fn monotone(trace: &[f64]) -> bool {
        trace.windows(2).all(|w| w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0))
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let d = Matrix::from_rows(&[[0.0, 1.0], [2.0, 3.0], [4.0, 8.0]]);
        let out = kmeans(&d, 1, 3, KMeansParams::default()).unwrap();
        assert!((out.centers.get(0, 0) - 2.0).abs() < 1e-12);
        assert!((out.centers.get(0, 1) - 4.0).abs() < 1e-12);
        // deviations: x 4+0+4, y 9+1+16
        assert!((out.objective - 34.0).abs() < 1e-12);
    }

    #[test]
    fn two_pairs_on_a_line() {
        let d = line(&[0.0, 1.0, 10.0, 11.0]);
        let out = kmeans_restarts(&d, 2, 20, 1, KMeansParams::default()).unwrap();
        let mut c: Vec<f64> = (0..2).map(|j| out.centers.get(j, 0)).collect();
        c.sort_by(f64::total_cmp);
        assert_eq!(c, vec![0.5, 10.5]);
        assert!((out.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_equals_n_has_zero_objective() {
        let d = line(&[3.0, -1.0, 7.5, 2.0, 9.0]);
        let out = kmeans(&d, 5, 11, KMeansParams::default()).unwrap();
        assert_eq!(out.objective, 0.0);
    }

    #[test]
    fn invalid_k() {
        let d = line(&[1.0, 2.0]);
        assert!(matches!(kmeans(&d, 0, 0, KMeansParams::default()), Err(Error::InvalidK { .. })));
        assert!(matches!(kmeans(&d, 3, 0, KMeansParams::default()), Err(Error::InvalidK { .. })));
    }

    #[test]
    fn deterministic_and_monotone() {
        let vals: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let d = line(&vals);
        let a = kmeans(&d, 4, 99, KMeansParams::default()).unwrap();
        let b = kmeans(&d, 4, 99, KMeansParams::default()).unwrap();
        assert_eq!(a, b);
        assert!(monotone(&a.trace));
    }

    #[test]
    fn duplicate_rows_still_get_distinct_centers() {
        let d = line(&[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 5.0]);
        for seed in 0..20 {
            let out = kmeans(&d, 2, seed, KMeansParams::default()).unwrap();
            assert_eq!(out.objective, 0.0, "seed {seed}");
        }
    }
}
