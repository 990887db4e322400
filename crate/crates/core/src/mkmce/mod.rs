//! Multiple k-means cluster ensemble.

pub mod base;
pub mod eigen;
pub mod ensemble;
pub mod graph;
pub mod kmeans;
pub mod ncut;

pub use base::{
    credibility_mask, estimate_epsilon, generate_base_clusterings, BaseClusterSet, BaseClustering,
    BaseParams,
};
pub use ensemble::{
    relabel_and_assign, run_mkmce, EnsembleDiagnostics, EnsembleResult, MkmceConfig, MkmceRun,
};
pub use graph::{build_cluster_graph, cluster_similarity, BaseClusterId, ClusterGraph};
pub use kmeans::{kmeans, kmeans_restarts, KMeansOutcome, KMeansParams};
pub use ncut::{component_merge_k, eigengap_k, ncut_value, normalized_cut_partition};
