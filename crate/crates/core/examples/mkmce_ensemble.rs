//! The full cluster ensemble on standardized trajectory features.
//!
//!     cargo run --release --example mkmce_ensemble

use trajcluster::{build_and_standardize, run_mkmce, synthesize_corpus, Archetype, FeatureOptions, MkmceConfig};

fn main() -> trajcluster::Result<()> {
    let mix = [
        (Archetype::EarlyRiseRapidDecline, 300),
        (Archetype::EarlyRiseSlowDecline, 300),
        (Archetype::DelayedRiseNoDecline, 300),
    ];
    let synth = synthesize_corpus(&mix, 10, 42)?;
    let (_, z) = build_and_standardize(&synth.corpus, FeatureOptions::default())?;

    let config = MkmceConfig {
        seed: 42,
        ..MkmceConfig::default()
    };
    let run = run_mkmce(&z.values, &config)?;
    let d = &run.diagnostics;
    println!("epsilon {:.4} (estimated: {})", d.epsilon, d.epsilon_estimated);
    println!("{} rounds, {} objects left unclaimed", d.rounds.len(), d.unclaimed);
    println!("graph: {} vertices", d.vertices.len());
    println!("smallest eigenvalues {:.4?}", &d.eigenvalues[..d.eigenvalues.len().min(7)]);
    println!("k* = {} (auto: {}), group sizes {:?}", d.k_star, d.k_star_auto, d.group_sizes);

    // A fixed k* skips the eigengap.
    let fixed = run_mkmce(&z.values, &MkmceConfig { final_k: Some(2), ..config })?;
    println!("with k* = 2: sizes {:?}", fixed.result.group_sizes());
    Ok(())
}
