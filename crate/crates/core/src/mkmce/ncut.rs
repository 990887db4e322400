//! Multiway normalized cut over the base-cluster graph, solved spectrally:
//! embed vertices with the eigenvectors of the symmetric normalized
//! Laplacian, row-normalize, and cluster the rows with k-means.

use super::eigen::symmetric_eigen;
use super::graph::ClusterGraph;
use super::kmeans::{kmeans_restarts, KMeansParams};
use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};

pub const EMBEDDING_RESTARTS: usize = 20;

/// `I - D^{-1/2} W D^{-1/2}`. Isolated vertices get an all-zero row so that
/// every connected component, isolated vertices included, contributes one
/// zero eigenvalue.
pub fn normalized_laplacian(graph: &ClusterGraph) -> Matrix {
    let n = graph.len();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|i| {
            let d = graph.degree(i);
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                if inv_sqrt[i] > 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                -graph.weights.get(i, j) * inv_sqrt[i] * inv_sqrt[j]
            };
            l.set(i, j, v);
        }
    }
    l
}

/// Laplacian eigenvalues, ascending.
pub fn laplacian_spectrum(graph: &ClusterGraph) -> Vec<f64> {
    symmetric_eigen(&normalized_laplacian(graph)).values
}

/// Number of groups with the largest eigengap, searched over `[lo, hi]`
/// (clipped to what the graph supports). Ties prefer fewer groups.
pub fn eigengap_k(eigenvalues: &[f64], lo: usize, hi: usize) -> usize {
    let n = eigenvalues.len();
    if n <= lo {
        return n.max(1);
    }
    let hi = hi.min(n - 1);
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        let gap = eigenvalues[k] - eigenvalues[k - 1];
        if gap > best.1 {
            best = (k, gap);
        }
    }
    best.0
}

/// Sum over groups of `cut(A, rest) / vol(A)`; a group with zero volume
/// contributes nothing.
pub fn ncut_value(weights: &Matrix, groups: &[usize]) -> f64 {
    let k = groups.iter().copied().max().map_or(0, |m| m + 1);
    let mut cut = vec![0.0; k];
    let mut vol = vec![0.0; k];
    for (i, &gi) in groups.iter().enumerate() {
        for (j, &gj) in groups.iter().enumerate() {
            let w = weights.get(i, j);
            vol[gi] += w;
            if gi != gj {
                cut[gi] += w;
            }
        }
    }
    cut.iter()
        .zip(&vol)
        .map(|(&c, &v)| if v > 0.0 { c / v } else { 0.0 })
        .sum()
}

/// Renumber labels by order of first appearance.
fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(from, _)| *from == l) {
            Some(&(_, to)) => to,
            None => {
                let to = map.len();
                map.push((l, to));
                to
            }
        })
        .collect()
}

/// Make groups respect connected components when there are more groups than
/// components: split every group along component lines, then
/// merge same-component groups (cheapest Ncut first) down to `k_star`.
fn repair_components(graph: &ClusterGraph, labels: &[usize], k_star: usize) -> Vec<usize> {
    let comp = graph.components();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut groups: Vec<usize> = labels
        .iter()
        .zip(&comp)
        .map(|(&l, &c)| match pairs.iter().position(|&p| p == (l, c)) {
            Some(g) => g,
            None => {
                pairs.push((l, c));
                pairs.len() - 1
            }
        })
        .collect();
    let mut group_comp: Vec<usize> = pairs.iter().map(|&(_, c)| c).collect();
    while group_comp.len() > k_star {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..group_comp.len() {
            for b in (a + 1)..group_comp.len() {
                if group_comp[a] != group_comp[b] {
                    continue;
                }
                let merged: Vec<usize> = groups
                    .iter()
                    .map(|&g| if g == b { a } else { g })
                    .collect();
                let v = ncut_value(&graph.weights, &canonical(&merged));
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("some component holds two groups");
        for g in groups.iter_mut() {
            if *g == b {
                *g = a;
            } else if *g > b {
                *g -= 1;
            }
        }
        group_comp.remove(b);
    }
    groups
}

/// Ward agglomeration of connected components down to `k` clusters.
/// Component centers are the object-weighted means of their vertex centers.
/// Returns the cluster of each vertex and the cost of every merge made, in
/// order; ties merge the lowest-numbered pair.
fn ward_components(graph: &ClusterGraph, comp: &[usize], k: usize) -> (Vec<usize>, Vec<f64>) {
    let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let dim = graph.centers.ncols();
    let mut weight = vec![0.0; n_comp];
    let mut centroid = vec![vec![0.0; dim]; n_comp];
    for (v, &c) in comp.iter().enumerate() {
        let w = graph.sizes[v].max(1) as f64;
        weight[c] += w;
        for (acc, x) in centroid[c].iter_mut().zip(graph.centers.row(v)) {
            *acc += w * x;
        }
    }
    for (c, w) in centroid.iter_mut().zip(&weight) {
        c.iter_mut().for_each(|x| *x /= w);
    }
    // owner[c] is the cluster that component c was merged into
    let mut owner: Vec<usize> = (0..n_comp).collect();
    let mut alive: Vec<usize> = (0..n_comp).collect();
    let mut costs = Vec::new();
    while alive.len() > k.max(1) {
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, &a) in alive.iter().enumerate() {
            for &b in &alive[i + 1..] {
                let (wa, wb) = (weight[a], weight[b]);
                let cost = wa * wb / (wa + wb) * squared_distance(&centroid[a], &centroid[b]);
                if best.is_none_or(|(bc, _, _)| cost < bc) {
                    best = Some((cost, a, b));
                }
            }
        }
        let (cost, a, b) = best.expect("two clusters remain");
        let (wa, wb) = (weight[a], weight[b]);
        let merged: Vec<f64> = centroid[a]
            .iter()
            .zip(&centroid[b])
            .map(|(x, y)| (wa * x + wb * y) / (wa + wb))
            .collect();
        centroid[a] = merged;
        weight[a] = wa + wb;
        owner.iter_mut().filter(|o| **o == b).for_each(|o| *o = a);
        alive.retain(|&c| c != b);
        costs.push(cost);
    }
    (comp.iter().map(|&c| owner[c]).collect(), costs)
}

/// Group count in `[lo, hi]` at which the next Ward merge of components
/// costs the most relative to the merge before it. Used when the graph has
/// more than `hi` components, where every eigengap in range is zero. Ties
/// prefer fewer groups.
pub fn component_merge_k(graph: &ClusterGraph, lo: usize, hi: usize) -> usize {
    let comp = graph.components();
    let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
    if n_comp <= lo {
        return n_comp.max(1);
    }
    let (_, costs) = ward_components(graph, &comp, 1);
    // costs[i] takes n_comp - i clusters down to n_comp - i - 1
    let merge_from = |k: usize| costs[n_comp - k];
    let hi = hi.min(n_comp - 1);
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        let (next, prev) = (merge_from(k), merge_from(k + 1));
        let jump = if prev > 0.0 {
            next / prev
        } else if next > 0.0 {
            f64::INFINITY
        } else {
            1.0
        };
        if jump > best.1 {
            best = (k, jump);
        }
    }
    best.0
}

/// Partition graph vertices into `k_star` groups. Labels are numbered by
/// first appearance in vertex order.
pub fn normalized_cut_partition(graph: &ClusterGraph, k_star: usize, seed: u64) -> Result<Vec<usize>> {
    let n = graph.len();
    if k_star == 0 || k_star > n {
        return Err(Error::InvalidK { k: k_star, n });
    }
    if k_star == n {
        return Ok((0..n).collect());
    }
    if k_star == 1 {
        return Ok(vec![0; n]);
    }
    let comp = graph.components();
    let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
    if n_comp >= k_star {
        return Ok(canonical(&ward_components(graph, &comp, k_star).0));
    }
    let eig = symmetric_eigen(&normalized_laplacian(graph));
    let mut embedding = Matrix::zeros(n, k_star);
    for i in 0..n {
        let row = embedding.row_mut(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = eig.vectors.get(i, j);
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|v| *v /= norm);
        }
    }
    let out = kmeans_restarts(
        &embedding,
        k_star,
        EMBEDDING_RESTARTS,
        seed,
        KMeansParams::default(),
    )?;
    let repaired = repair_components(graph, &out.labels, k_star);
    Ok(canonical(&repaired))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> ClusterGraph {
        let mut w = Matrix::zeros(n, n);
        for &(a, b, x) in edges {
            w.set(a, b, x);
            w.set(b, a, x);
        }
        ClusterGraph::from_weights(w)
    }

    #[test]
    fn disconnected_pairs() {
        let g = graph(4, &[(0, 1, 1.0), (2, 3, 2.0)]);
        for seed in 0..10 {
            assert_eq!(normalized_cut_partition(&g, 2, seed).unwrap(), vec![0, 0, 1, 1]);
        }
    }

    #[test]
    fn weak_link_on_a_path() {
        let g = graph(3, &[(0, 1, 10.0), (1, 2, 0.1)]);
        assert_eq!(normalized_cut_partition(&g, 2, 0).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn k_equals_vertices_gives_singletons() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        assert_eq!(normalized_cut_partition(&g, 3, 0).unwrap(), vec![0, 1, 2]);
        assert!(normalized_cut_partition(&g, 4, 0).is_err());
        assert!(normalized_cut_partition(&g, 0, 0).is_err());
    }

    #[test]
    fn merge_jump_with_many_components() {
        // Three tight pairs far apart plus stray singletons near two of them.
        let centers = Matrix::column(&[0.0, 0.1, 50.0, 50.1, 100.0, 100.1, 3.0, 47.0]);
        let mut g = ClusterGraph::from_centers(centers, 0.05).unwrap();
        g.sizes = vec![50, 50, 50, 50, 50, 50, 1, 1];
        assert_eq!(component_merge_k(&g, 2, 4), 3);
        let groups = normalized_cut_partition(&g, 3, 0).unwrap();
        assert_eq!(groups, vec![0, 0, 1, 1, 2, 2, 0, 1]);
    }

    #[test]
    fn isolated_vertices_form_their_own_groups() {
        let g = graph(5, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let p = normalized_cut_partition(&g, 3, 1).unwrap();
        assert_eq!(p, vec![0, 0, 0, 1, 2]);
    }

    #[test]
    fn ncut_values() {
        let g = graph(3, &[(0, 1, 10.0), (1, 2, 0.1)]);
        // {a,b}|{c}: cut 0.1, vol 20.1 and 0.1
        let v = ncut_value(&g.weights, &[0, 0, 1]);
        assert!((v - (0.1 / 20.1 + 1.0)).abs() < 1e-12);
        assert_eq!(ncut_value(&g.weights, &[0, 0, 0]), 0.0);
    }

    #[test]
    fn eigengap_picks_block_count() {
        let g = graph(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0), (2, 3, 0.01)],
        );
        let spec = laplacian_spectrum(&g);
        assert_eq!(eigengap_k(&spec, 2, 6), 2);
    }
}
