//! Similarity graph over base clusters.
//!
//! Two base clusters are linked when their centers lie within `4 * epsilon`
//! of each other (their latent midpoint cluster overlaps both), with weight
//! inversely proportional to the center distance.

use serde::{Deserialize, Serialize};

use super::base::BaseClusterSet;
use crate::error::{Error, Result};
use crate::matrix::{euclidean, Matrix};

/// Guard distance for coincident centers.
pub const MIN_CENTER_DISTANCE: f64 = 1e-9;
/// Weight between coincident centers, `1 / MIN_CENTER_DISTANCE`.
pub const MAX_SIMILARITY: f64 = 1e9;

pub fn cluster_similarity(center_a: &[f64], center_b: &[f64], epsilon: f64) -> f64 {
    let d = euclidean(center_a, center_b);
    if d > 4.0 * epsilon {
        0.0
    } else if d <= MIN_CENTER_DISTANCE {
        MAX_SIMILARITY
    } else {
        1.0 / d
    }
}

/// A base cluster, identified by round and cluster index within the round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseClusterId {
    pub round: usize,
    pub cluster: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterGraph {
    /// Sorted by `(round, cluster)`.
    pub vertices: Vec<BaseClusterId>,
    pub centers: Matrix,
    /// Objects claimed by each vertex.
    pub sizes: Vec<usize>,
    /// Symmetric, zero diagonal.
    pub weights: Matrix,
}

impl ClusterGraph {
    /// Build directly from centers; vertex ids are `(0, i)`.
    pub fn from_centers(centers: Matrix, epsilon: f64) -> Result<Self> {
        let vertices = (0..centers.nrows())
            .map(|i| BaseClusterId { round: 0, cluster: i })
            .collect();
        let sizes = vec![1; centers.nrows()];
        Self::with_vertices(vertices, centers, sizes, epsilon)
    }

    fn with_vertices(
        vertices: Vec<BaseClusterId>,
        centers: Matrix,
        sizes: Vec<usize>,
        epsilon: f64,
    ) -> Result<Self> {
        let n = centers.nrows();
        if n == 0 {
            return Err(Error::NoBaseClusters);
        }
        let mut weights = Matrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let w = cluster_similarity(centers.row(i), centers.row(j), epsilon);
                weights.set(i, j, w);
                weights.set(j, i, w);
            }
        }
        Ok(Self {
            vertices,
            centers,
            sizes,
            weights,
        })
    }

    /// Build from an explicit weight matrix (tests, external graphs).
    pub fn from_weights(weights: Matrix) -> Self {
        let n = weights.nrows();
        Self {
            vertices: (0..n)
                .map(|i| BaseClusterId { round: 0, cluster: i })
                .collect(),
            centers: Matrix::zeros(n, 0),
            sizes: vec![1; n],
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.weights.row(i).iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.weights.get(i, j) > 0.0)
            .count()
    }

    /// Connected component id per vertex, numbered by first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(u) = stack.pop() {
                for (v, slot) in comp.iter_mut().enumerate() {
                    if *slot == usize::MAX && self.weights.get(u, v) > 0.0 {
                        *slot = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Vertices are the base clusters that credibly claimed at least one object.
pub fn build_cluster_graph(base: &BaseClusterSet) -> Result<ClusterGraph> {
    let mut vertices = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut sizes = Vec::new();
    for round in &base.rounds {
        for (c, &size) in round.cluster_sizes().iter().enumerate() {
            if size > 0 {
                vertices.push(BaseClusterId {
                    round: round.index,
                    cluster: c,
                });
                rows.push(round.centers.row(c).to_vec());
                sizes.push(size);
            }
        }
    }
    if vertices.is_empty() {
        return Err(Error::NoBaseClusters);
    }
    ClusterGraph::with_vertices(vertices, Matrix::from_rows(&rows), sizes, base.epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn similarity_examples() {
        assert_eq!(cluster_similarity(&[0.0], &[2.0], 1.0), 0.5);
        assert_eq!(cluster_similarity(&[0.0], &[5.0], 1.0), 0.0);
        assert_eq!(cluster_similarity(&[0.0, 4.0], &[0.0, 0.0], 1.0), 0.25);
        assert_eq!(cluster_similarity(&[1.0, 1.0], &[1.0, 1.0], 1.0), 1e9);
    }

    #[test]
    fn graph_examples() {
        let g = ClusterGraph::from_centers(Matrix::column(&[0.0]), 1.0).unwrap();
        assert_eq!((g.len(), g.edge_count()), (1, 0));

        let g = ClusterGraph::from_centers(Matrix::column(&[0.0, 2.0]), 1.0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weights.get(0, 1), 0.5);
        assert_eq!(g.weights.get(1, 0), 0.5);

        let g = ClusterGraph::from_centers(Matrix::column(&[0.0, 100.0]), 1.0).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components(), vec![0, 1]);
    }

    #[test]
    fn empty_base_set_is_an_error() {
        let base = BaseClusterSet {
            rounds: vec![],
            epsilon: 1.0,
            unclaimed: vec![0, 1],
            n_objects: 2,
        };
        assert!(matches!(build_cluster_graph(&base), Err(Error::NoBaseClusters)));
    }
}
