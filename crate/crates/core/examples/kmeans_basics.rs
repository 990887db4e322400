//! Plain k-means with restarts on a small 2-D data set.
//!
//!     cargo run --example kmeans_basics

use trajcluster::mkmce::{kmeans, kmeans_restarts, KMeansParams};
use trajcluster::Matrix;

fn main() -> trajcluster::Result<()> {
    let data = Matrix::from_rows(&[
        [0.0, 0.1],
        [0.2, -0.1],
        [-0.1, 0.0],
        [5.0, 5.2],
        [5.1, 4.9],
        [4.8, 5.0],
        [9.9, 0.2],
        [10.2, -0.1],
    ]);

    let single = kmeans(&data, 3, 7, KMeansParams::default())?;
    println!("one run:   objective {:.4}, trace {:.4?}", single.objective, single.trace);

    let best = kmeans_restarts(&data, 3, 20, 7, KMeansParams::default())?;
    println!("20 starts: objective {:.4}, labels {:?}", best.objective, best.labels);
    for c in 0..3 {
        println!("  center {c}: {:.3?}", best.centers.row(c));
    }
    Ok(())
}
