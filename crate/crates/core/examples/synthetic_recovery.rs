//! Plant four trajectory classes, cluster them with defaults, and score the
//! recovery with the adjusted Rand index.
//!
//!     cargo run --release --example synthetic_recovery [seed]

use std::collections::HashSet;

use trajcluster::{adjusted_rand_index, run_corpus, synthesize_corpus, Archetype, PipelineConfig};

fn main() -> trajcluster::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    use Archetype::*;
    let studies = [
        (10, [EarlyRiseRapidDecline, EarlyRiseSlowDecline, DelayedRiseNoDecline]),
        (30, [EarlyRiseSlowDecline, DelayedRiseNoDecline, DelayedRiseSlowDecline]),
    ];
    for (window, cohorts) in studies {
        let mix: Vec<_> = cohorts.iter().map(|&a| (a, 500)).collect();
        let synth = synthesize_corpus(&mix, window, seed)?;
        let config = PipelineConfig {
            window_length: window,
            seed,
            ..PipelineConfig::default()
        };
        let out = run_corpus(&synth.corpus, &config)?;
        let kept: HashSet<&str> = out.filtered.iter().map(|t| t.paper_id()).collect();
        let truth: Vec<Archetype> = synth
            .corpus
            .iter()
            .zip(&synth.truth)
            .filter(|(t, _)| kept.contains(t.paper_id()))
            .map(|(_, &a)| a)
            .collect();
        println!(
            "window {window}: k* = {}, ARI = {:.4}",
            out.cluster.run.diagnostics.k_star,
            adjusted_rand_index(out.labels(), &truth)
        );
        for c in &out.report.clusters {
            println!("  {} n={}", c.semantic_label, c.profile.size);
        }
    }
    Ok(())
}
