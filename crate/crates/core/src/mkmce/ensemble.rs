use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::base::{estimate_epsilon, generate_base_clusterings, BaseClusterSet, BaseParams};
use super::graph::{build_cluster_graph, BaseClusterId, ClusterGraph};
use super::ncut::{component_merge_k, eigengap_k, laplacian_spectrum, normalized_cut_partition};
use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::rng::sub_seed;

/// Bounds searched when k* is chosen by eigengap.
pub const AUTO_K_RANGE: (usize, usize) = (2, 6);

const STREAM_EPSILON: u64 = 1;
const STREAM_BASE: u64 = 2;
const STREAM_NCUT: u64 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    /// Final group per graph vertex, after compaction.
    pub group_of_base_cluster: BTreeMap<BaseClusterId, usize>,
    pub final_labels: Vec<usize>,
    /// Mean standardized row per group.
    pub centroids: Matrix,
}

impl EnsembleResult {
    pub fn n_groups(&self) -> usize {
        self.centroids.nrows()
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.n_groups()];
        for &l in &self.final_labels {
            s[l] += 1;
        }
        s
    }
}

/// Propagate vertex groups to objects. Claimed objects take the group of the
/// base cluster that claimed them; unclaimed objects take the group of the
/// nearest vertex center (ties to the lowest `(round, cluster)`). Groups
/// left without objects are dropped and labels compacted.
pub fn relabel_and_assign(
    base: &BaseClusterSet,
    graph: &ClusterGraph,
    groups: &[usize],
    data: &Matrix,
) -> EnsembleResult {
    assert_eq!(groups.len(), graph.len(), "one group per vertex");
    let vertex_index: BTreeMap<BaseClusterId, usize> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut raw = vec![usize::MAX; data.nrows()];
    for round in &base.rounds {
        for &(obj, c) in &round.claimed {
            let v = vertex_index[&BaseClusterId {
                round: round.index,
                cluster: c,
            }];
            raw[obj] = groups[v];
        }
    }
    for &obj in &base.unclaimed {
        let row = data.row(obj);
        let mut best = (0, f64::INFINITY);
        for (v, center) in graph.centers.rows_iter().enumerate() {
            let d = squared_distance(row, center);
            if d < best.1 {
                best = (v, d);
            }
        }
        raw[obj] = groups[best.0];
    }
    debug_assert!(raw.iter().all(|&g| g != usize::MAX));

    let k_raw = groups.iter().copied().max().map_or(0, |m| m + 1);
    let mut used = vec![false; k_raw];
    for &g in &raw {
        used[g] = true;
    }
    let mut remap = vec![usize::MAX; k_raw];
    let mut next = 0;
    for g in 0..k_raw {
        if used[g] {
            remap[g] = next;
            next += 1;
        }
    }
    let final_labels: Vec<usize> = raw.iter().map(|&g| remap[g]).collect();
    let group_of_base_cluster = graph
        .vertices
        .iter()
        .zip(groups)
        .filter(|(_, &g)| used[g])
        .map(|(&v, &g)| (v, remap[g]))
        .collect();

    let mut centroids = Matrix::zeros(next, data.ncols());
    let mut sizes = vec![0usize; next];
    for (i, &l) in final_labels.iter().enumerate() {
        sizes[l] += 1;
        for (c, x) in centroids.row_mut(l).iter_mut().zip(data.row(i)) {
            *c += x;
        }
    }
    for (l, &s) in sizes.iter().enumerate() {
        centroids.row_mut(l).iter_mut().for_each(|c| *c /= s as f64);
    }
    EnsembleResult {
        group_of_base_cluster,
        final_labels,
        centroids,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MkmceConfig {
    pub base: BaseParams,
    /// Fixed neighborhood radius; estimated from a pilot run when absent.
    pub epsilon: Option<f64>,
    pub epsilon_quantile: f64,
    /// Final group count; chosen by eigengap when absent.
    pub final_k: Option<usize>,
    pub seed: u64,
}

impl Default for MkmceConfig {
    fn default() -> Self {
        Self {
            base: BaseParams::default(),
            epsilon: None,
            epsilon_quantile: 0.5,
            final_k: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundSummary {
    pub round: usize,
    pub k: usize,
    pub pool_size: usize,
    pub claimed: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleDiagnostics {
    pub epsilon: f64,
    pub epsilon_estimated: bool,
    pub rounds: Vec<RoundSummary>,
    pub unclaimed: usize,
    /// Sum of claimed distances to the claiming centers.
    pub credible_objective: f64,
    pub vertices: Vec<BaseClusterId>,
    pub weights: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub k_star: usize,
    pub k_star_auto: bool,
    /// `configured`, `eigengap`, or `component-merge` when the graph has
    /// more components than the search range.
    pub k_star_rule: String,
    pub group_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MkmceRun {
    pub result: EnsembleResult,
    pub base: BaseClusterSet,
    pub graph: Option<ClusterGraph>,
    pub diagnostics: EnsembleDiagnostics,
}

fn single_group(data: &Matrix) -> EnsembleResult {
    let mut centroid = vec![0.0; data.ncols()];
    for r in data.rows_iter() {
        for (c, x) in centroid.iter_mut().zip(r) {
            *c += x;
        }
    }
    centroid.iter_mut().for_each(|c| *c /= data.nrows() as f64);
    EnsembleResult {
        group_of_base_cluster: BTreeMap::new(),
        final_labels: vec![0; data.nrows()],
        centroids: Matrix::from_rows(&[centroid]),
    }
}

/// Full ensemble: epsilon, base clusterings, similarity graph, normalized
/// cut, relabeling.
pub fn run_mkmce(data: &Matrix, config: &MkmceConfig) -> Result<MkmceRun> {
    if data.nrows() == 0 {
        return Err(Error::EmptyCorpus);
    }
    config.base.validate()?;
    let (epsilon, estimated) = match config.epsilon {
        Some(e) => (e, false),
        None => (
            estimate_epsilon(
                data,
                config.epsilon_quantile,
                config.base.k_max,
                sub_seed(config.seed, STREAM_EPSILON),
                config.base.kmeans,
            )?,
            true,
        ),
    };
    let base = generate_base_clusterings(
        data,
        config.base,
        epsilon,
        sub_seed(config.seed, STREAM_BASE),
    )?;
    let rounds = base
        .rounds
        .iter()
        .map(|r| RoundSummary {
            round: r.index,
            k: r.k,
            pool_size: r.pool_size,
            claimed: r.claimed.len(),
            attempts: r.attempts,
        })
        .collect();
    let mut diagnostics = EnsembleDiagnostics {
        epsilon,
        epsilon_estimated: estimated,
        rounds,
        unclaimed: base.unclaimed.len(),
        credible_objective: base.credible_objective(data),
        vertices: vec![],
        weights: vec![],
        eigenvalues: vec![],
        k_star: 1,
        k_star_auto: config.final_k.is_none(),
        k_star_rule: "configured".into(),
        group_sizes: vec![],
    };

    // Too few objects for even one round: everything is one group.
    if base.rounds.is_empty() {
        let result = single_group(data);
        diagnostics.k_star_rule = "single-group".into();
        diagnostics.group_sizes = result.group_sizes();
        return Ok(MkmceRun {
            result,
            base,
            graph: None,
            diagnostics,
        });
    }

    let graph = build_cluster_graph(&base)?;
    let eigenvalues = laplacian_spectrum(&graph);
    let k_star = match config.final_k {
        Some(k) => k.min(graph.len()),
        None => {
            if graph.len() > 1 && graph.edge_count() == 0 {
                return Err(Error::IsolatedGraph);
            }
            let (lo, hi) = AUTO_K_RANGE;
            let n_comp = graph.components().into_iter().max().map_or(0, |m| m + 1);
            if n_comp > hi {
                diagnostics.k_star_rule = "component-merge".into();
                component_merge_k(&graph, lo, hi)
            } else {
                diagnostics.k_star_rule = "eigengap".into();
                eigengap_k(&eigenvalues, lo, hi)
            }
        }
    };
    let groups = normalized_cut_partition(&graph, k_star, sub_seed(config.seed, STREAM_NCUT))?;
    let result = relabel_and_assign(&base, &graph, &groups, data);

    diagnostics.vertices = graph.vertices.clone();
    diagnostics.weights = graph.weights.rows_iter().map(<[f64]>::to_vec).collect();
    diagnostics.eigenvalues = eigenvalues;
    diagnostics.k_star = k_star;
    diagnostics.group_sizes = result.group_sizes();
    Ok(MkmceRun {
        result,
        base,
        graph: Some(graph),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mkmce::base::BaseClustering;

    fn two_blob_base() -> (BaseClusterSet, Matrix) {
        let data = Matrix::column(&[0.0, 0.1, 10.0, 10.1, 3.0]);
        let base = BaseClusterSet {
            rounds: vec![BaseClustering {
                index: 0,
                k: 2,
                centers: Matrix::column(&[0.05, 10.05]),
                claimed: vec![(0, 0), (1, 0), (2, 1), (3, 1)],
                pool_size: 5,
                attempts: 1,
            }],
            epsilon: 0.1,
            unclaimed: vec![4],
            n_objects: 5,
        };
        (base, data)
    }

    #[test]
    fn unclaimed_joins_nearest_group() {
        let (base, data) = two_blob_base();
        let graph = build_cluster_graph(&base).unwrap();
        let r = relabel_and_assign(&base, &graph, &[0, 1], &data);
        assert_eq!(r.final_labels, vec![0, 0, 1, 1, 0]);
        assert_eq!(r.n_groups(), 2);
        assert!((r.centroids.get(0, 0) - 3.1 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn equidistant_unclaimed_breaks_ties_low() {
        let (mut base, mut data) = two_blob_base();
        data.set(4, 0, 5.0);
        base.rounds[0].centers = Matrix::column(&[0.0, 10.0]);
        let graph = build_cluster_graph(&base).unwrap();
        let r = relabel_and_assign(&base, &graph, &[1, 0], &data);
        // vertex (0,0) is first; it carries group 1, compacted to 1
        assert_eq!(r.final_labels[4], r.final_labels[0]);
    }

    #[test]
    fn single_base_cluster_gives_one_label() {
        let data = Matrix::column(&[1.0, 1.1, 1.2]);
        let base = BaseClusterSet {
            rounds: vec![BaseClustering {
                index: 0,
                k: 2,
                centers: Matrix::column(&[1.1, 50.0]),
                claimed: vec![(0, 0), (1, 0), (2, 0)],
                pool_size: 3,
                attempts: 1,
            }],
            epsilon: 1.0,
            unclaimed: vec![],
            n_objects: 3,
        };
        let graph = build_cluster_graph(&base).unwrap();
        assert_eq!(graph.len(), 1);
        let r = relabel_and_assign(&base, &graph, &[0], &data);
        assert_eq!(r.final_labels, vec![0, 0, 0]);
    }

    #[test]
    fn empty_groups_are_compacted() {
        let (base, data) = two_blob_base();
        let graph = build_cluster_graph(&base).unwrap();
        let r = relabel_and_assign(&base, &graph, &[0, 2], &data);
        assert_eq!(r.n_groups(), 2);
        assert_eq!(r.final_labels, vec![0, 0, 1, 1, 0]);
    }

    #[test]
    fn one_object() {
        let data = Matrix::from_rows(&[[0.3, -1.0]]);
        let run = run_mkmce(&data, &MkmceConfig::default()).unwrap();
        assert_eq!(run.result.final_labels, vec![0]);
        assert_eq!(run.result.centroids.row(0), &[0.3, -1.0]);
    }

    #[test]
    fn deterministic() {
        let rows: Vec<[f64; 2]> = (0..120)
            .map(|i| {
                let c = (i % 3) as f64 * 8.0;
                [c + ((i * 31) % 7) as f64 * 0.1, ((i * 17) % 5) as f64 * 0.1]
            })
            .collect();
        let data = Matrix::from_rows(&rows);
        let cfg = MkmceConfig {
            seed: 9,
            final_k: Some(3),
            ..MkmceConfig::default()
        };
        let a = run_mkmce(&data, &cfg).unwrap();
        let b = run_mkmce(&data, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
