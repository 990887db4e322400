//! The twelve phase/peak features of a few trajectories, in both gain modes.
//!
//!     cargo run --example feature_extraction

use trajcluster::features::{compute_phases, geometric_mean_level, FEATURE_NAMES};
use trajcluster::{extract_features, extract_features_with, CitationTrajectory, FeatureOptions, GainMode};

fn main() -> trajcluster::Result<()> {
    let series: [&[u64]; 3] = [&[1, 2, 8, 4, 2, 1], &[5, 5, 5, 5], &[0, 0, 1, 1, 2, 3, 5, 8, 9, 10]];
    for counts in series {
        let t = CitationTrajectory::from_counts(counts)?;
        let p = compute_phases(&t)?;
        println!("{counts:?}");
        println!(
            "  level {:.4}  initial {}  peak {}  last {}",
            geometric_mean_level(&t)?,
            p.t_initial,
            p.t_peak,
            p.t_last
        );
        let f = extract_features(&t)?;
        for (name, v) in FEATURE_NAMES.iter().zip(f.to_array()) {
            print!(" {name}={v:.3}");
        }
        println!();

        let literal = extract_features_with(
            &t,
            FeatureOptions {
                gain_mode: GainMode::LiteralPrefix,
                ..FeatureOptions::default()
            },
        )?;
        println!("  literal-prefix gains {:.3?}", literal.gains());
    }
    Ok(())
}
