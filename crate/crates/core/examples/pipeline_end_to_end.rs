//! File-based pipeline: write a corpus, run every stage into a directory,
//! then replay the run from its diagnostics.
//!
//!     cargo run --release --example pipeline_end_to_end [out_dir]

use std::fs;
use std::path::PathBuf;

use trajcluster::pipeline::{cmd_eval, cmd_pipeline, cmd_synth, DIAGNOSTICS_JSON, LABELS_CSV};
use trajcluster::{Archetype, PipelineConfig};

fn main() -> trajcluster::Result<()> {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("trajcluster-demo"));
    let input = out.join("corpus.csv");
    let mix = [
        (Archetype::EarlyRiseRapidDecline, 200),
        (Archetype::EarlyRiseSlowDecline, 200),
        (Archetype::DelayedRiseNoDecline, 200),
    ];
    let truth = cmd_synth(&mix, 10, 7, &input)?;

    let run = cmd_pipeline(&input, false, &PipelineConfig::default(), &out.join("run"))?;
    println!("{} of {} papers clustered into {}", run.filtered.len(), run.n_input, run.report.clusters.len());
    println!("ARI vs truth: {:.4}", cmd_eval(&out.join("run").join(LABELS_CSV), &truth)?);

    // The diagnostics carry the effective config, derived epsilon and k* included.
    let replay_config = PipelineConfig::load(&out.join("run").join(DIAGNOSTICS_JSON))?;
    println!("effective config:\n{}", replay_config.to_toml());
    cmd_pipeline(&input, false, &replay_config, &out.join("replay"))?;
    let same = fs::read(out.join("run").join(LABELS_CSV)).ok() == fs::read(out.join("replay").join(LABELS_CSV)).ok();
    println!("replay reproduces labels: {same}");
    println!("artifacts in {}", out.display());
    Ok(())
}
