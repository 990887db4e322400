//! The incremental base clusterings: each round clusters the objects no
//! earlier round claimed, and only claims those within epsilon of a center.
//!
//!     cargo run --example base_clusterings

use trajcluster::mkmce::{estimate_epsilon, generate_base_clusterings, BaseParams, KMeansParams};
use trajcluster::rng::rng_for;
use trajcluster::Matrix;

use rand::Rng;

fn main() -> trajcluster::Result<()> {
    let mut rng = rng_for(3);
    let blobs = [(0.0, 0.0), (6.0, 0.0), (3.0, 5.0)];
    let rows: Vec<[f64; 2]> = (0..300)
        .map(|i| {
            let (x, y) = blobs[i % 3];
            [x + rng.random_range(-1.0..1.0), y + rng.random_range(-1.0..1.0)]
        })
        .collect();
    let data = Matrix::from_rows(&rows);

    let params = BaseParams::default();
    let epsilon = estimate_epsilon(&data, 0.5, params.k_max, 1, KMeansParams::default())?;
    println!("epsilon (median pilot distance): {epsilon:.4}");

    let base = generate_base_clusterings(&data, params, epsilon, 1)?;
    for r in &base.rounds {
        println!(
            "round {:>2}: k={} pool={:>3} claimed={:>3} sizes {:?}",
            r.index,
            r.k,
            r.pool_size,
            r.claimed.len(),
            r.cluster_sizes()
        );
    }
    println!("unclaimed after {} rounds: {}", base.rounds.len(), base.unclaimed.len());
    Ok(())
}
