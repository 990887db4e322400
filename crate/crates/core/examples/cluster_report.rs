//! Cluster profiles, semantic labels and plot data for a labeled feature set.
//!
//!     cargo run --example cluster_report

use trajcluster::analysis::DEFAULT_HISTOGRAM_BINS;
use trajcluster::{build_feature_matrix, build_report, synthesize_corpus, Archetype, FeatureOptions, SemanticThresholds};

fn main() -> trajcluster::Result<()> {
    let mix = [
        (Archetype::EarlyRiseRapidDecline, 100),
        (Archetype::EarlyRiseSlowDecline, 100),
        (Archetype::DelayedRiseNoDecline, 100),
    ];
    let synth = synthesize_corpus(&mix, 10, 1)?;
    let features = build_feature_matrix(&synth.corpus, FeatureOptions::default())?;
    // Use the planted cohorts as the clustering.
    let labels: Vec<usize> = synth.truth.iter().map(|&a| a as usize).collect();

    let report = build_report(&features, &labels, 10, &SemanticThresholds::default(), DEFAULT_HISTOGRAM_BINS)?;
    for c in &report.clusters {
        let p = &c.profile;
        println!(
            "cluster {} -> {} (n={}): Ti {:.2}±{:.2}  Tg {:.2}±{:.2}  Td {:.2}±{:.2}  gains {:.3?}",
            p.cluster_id,
            c.semantic_label,
            p.size,
            p.t_initial.mean,
            p.t_initial.std,
            p.t_growth.mean,
            p.t_growth.std,
            p.t_decay.mean,
            p.t_decay.std,
            p.mean_gains
        );
    }
    let h = &report.gain_histograms[0];
    println!("\ncluster {} initial-gain histogram: {:?}", h.cluster_id, h.counts[0]);
    let b = &report.peak_boxes[0];
    println!("cluster {} growth low-intensity peaks: {:?}", b.cluster_id, b.growth[0]);
    Ok(())
}
