//! One-way ANOVA of each feature across clusters.
//!
//!     cargo run --example anova

use trajcluster::analysis::{anova_f, anova_table};
use trajcluster::{build_feature_matrix, synthesize_corpus, Archetype, FeatureOptions};

fn main() -> trajcluster::Result<()> {
    let r = anova_f(&[1.0, 2.0, 3.0, 2.0, 3.0, 4.0, 6.0, 7.0, 8.0], &[0, 0, 0, 1, 1, 1, 2, 2, 2])?;
    println!("worked example: F = {} on ({}, {}), p = {:.6}", r.f, r.df_between, r.df_within, r.p);

    let mix = [(Archetype::EarlyRiseRapidDecline, 80), (Archetype::DelayedRiseNoDecline, 80)];
    let synth = synthesize_corpus(&mix, 10, 9)?;
    let features = build_feature_matrix(&synth.corpus, FeatureOptions::default())?;
    let labels: Vec<usize> = synth.truth.iter().map(|&a| a as usize).collect();
    println!("\n{:<18} {:>12} {:>12}  significant", "feature", "F", "p");
    for row in anova_table(&features, &labels)? {
        let x = &row.result;
        println!("{:<18} {:>12.3} {:>12.3e}  {}", row.feature, x.f, x.p, x.significant);
    }
    Ok(())
}
