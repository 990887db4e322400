//! Clustering of scientific citation trajectories.
//!
//! A trajectory is the sequence of annual citation counts a paper receives
//! from its publication year on. The crate turns each trajectory into a
//! twelve-dimensional phase/peak feature vector, groups the vectors with a
//! multiple k-means cluster ensemble combined by a normalized cut, and
//! characterizes the resulting clusters.
//!
//! ```
//! use trajcluster::{extract_features, CitationTrajectory};
//!
//! let t = CitationTrajectory::from_counts(&[1, 2, 8, 4, 2, 1]).unwrap();
//! let f = extract_features(&t).unwrap();
//! assert_eq!((f.t_initial, f.t_growth, f.t_decay), (2.0, 0.0, 3.0));
//! ```

pub mod analysis;
pub mod corpus_io;
pub mod error;
pub mod features;
pub mod matrix;
pub mod metrics;
pub mod mkmce;
pub mod numfmt;
pub mod pipeline;
pub mod rng;
pub mod stats;
pub mod synth;
pub mod trajectory;

pub use analysis::{build_report, Report, SemanticLabel, SemanticThresholds};
pub use error::{Error, Result};
pub use features::{
    build_and_standardize, build_feature_matrix, extract_features, extract_features_with,
    FeatureMatrix, FeatureOptions, FeatureVector, GainMode, StandardizedMatrix,
};
pub use matrix::Matrix;
pub use metrics::adjusted_rand_index;
pub use mkmce::{run_mkmce, MkmceConfig, MkmceRun};
pub use pipeline::{run_corpus, PipelineConfig, PipelineOutput};
pub use synth::{synthesize_corpus, synthesize_trajectory, Archetype};
pub use trajectory::{
    filter_and_align, mean_citation_rate, success_ratio, total_citations, CitationTrajectory,
    TrajectoryCorpus,
};
