//! Normalized cut of a small weighted graph, with the eigengap choice of k.
//!
//!     cargo run --example normalized_cut

use trajcluster::mkmce::ncut::laplacian_spectrum;
use trajcluster::mkmce::{eigengap_k, ncut_value, normalized_cut_partition, ClusterGraph};
use trajcluster::Matrix;

fn main() -> trajcluster::Result<()> {
    // Two triangles joined by a weak bridge, plus a separate pair.
    let edges = [
        (0, 1, 1.0),
        (1, 2, 1.0),
        (0, 2, 1.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (3, 5, 1.0),
        (2, 3, 0.05),
        (6, 7, 2.0),
    ];
    let mut w = Matrix::zeros(8, 8);
    for (a, b, x) in edges {
        w.set(a, b, x);
        w.set(b, a, x);
    }
    let graph = ClusterGraph::from_weights(w);

    let spectrum = laplacian_spectrum(&graph);
    println!("laplacian eigenvalues {spectrum:.4?}");
    let k = eigengap_k(&spectrum, 2, 6);
    println!("eigengap k = {k}");

    for k in [2, k] {
        let groups = normalized_cut_partition(&graph, k, 0)?;
        println!("k={k}: groups {groups:?}, ncut {:.4}", ncut_value(&graph.weights, &groups));
    }
    Ok(())
}
