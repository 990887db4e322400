//! Citation trajectories and the per-trajectory citation statistics used to
//! select well-cited papers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Floor applied to the mean citation rate in the success ratio denominator.
pub const SUCCESS_RATE_FLOOR: f64 = 5.0;

/// Annual citation counts of one paper. Index `t` is years since
/// publication; `t = 0` is the publication year.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitationTrajectory {
    paper_id: String,
    publication_year: i32,
    annual_counts: Vec<u64>,
}

impl CitationTrajectory {
    pub fn new(
        paper_id: impl Into<String>,
        publication_year: i32,
        annual_counts: Vec<u64>,
    ) -> Result<Self> {
        if annual_counts.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        Ok(Self {
            paper_id: paper_id.into(),
            publication_year,
            annual_counts,
        })
    }

    /// Convenience constructor for fixtures and tests.
    pub fn from_counts(annual_counts: &[u64]) -> Result<Self> {
        Self::new("anon", 0, annual_counts.to_vec())
    }

    pub fn paper_id(&self) -> &str {
        &self.paper_id
    }

    pub fn publication_year(&self) -> i32 {
        self.publication_year
    }

    pub fn counts(&self) -> &[u64] {
        &self.annual_counts
    }

    pub fn len(&self) -> usize {
        self.annual_counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annual_counts.is_empty()
    }

    /// A copy restricted to the first `window` years, or `None` if the
    /// trajectory is shorter than the window.
    pub fn truncated(&self, window: usize) -> Option<Self> {
        if window == 0 || self.annual_counts.len() < window {
            return None;
        }
        Some(Self {
            paper_id: self.paper_id.clone(),
            publication_year: self.publication_year,
            annual_counts: self.annual_counts[..window].to_vec(),
        })
    }

    /// Every count multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self {
            paper_id: self.paper_id.clone(),
            publication_year: self.publication_year,
            annual_counts: self.annual_counts.iter().map(|c| c * factor).collect(),
        }
    }
}

/// Total citations over the recorded years.
pub fn total_citations(traj: &CitationTrajectory) -> u64 {
    traj.counts().iter().sum()
}

/// Citations per year over the recorded years.
pub fn mean_citation_rate(traj: &CitationTrajectory) -> f64 {
    total_citations(traj) as f64 / traj.len() as f64
}

/// Relative success ratio `c / max(mu, 5)`.
pub fn success_ratio(traj: &CitationTrajectory) -> f64 {
    let c = total_citations(traj) as f64;
    c / mean_citation_rate(traj).max(SUCCESS_RATE_FLOOR)
}

/// A set of trajectories. `window_length` is set once every trajectory has
/// been aligned to the same length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrajectoryCorpus {
    pub trajectories: Vec<CitationTrajectory>,
    pub window_length: Option<usize>,
}

impl TrajectoryCorpus {
    pub fn new(trajectories: Vec<CitationTrajectory>) -> Self {
        Self {
            trajectories,
            window_length: None,
        }
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CitationTrajectory> {
        self.trajectories.iter()
    }
}

/// Keep trajectories with at least `window_length` years, truncate them to
/// the window, and drop those whose success ratio on the window is below
/// `min_ratio`. An empty result is not an error.
pub fn filter_and_align(
    corpus: &TrajectoryCorpus,
    window_length: usize,
    min_ratio: f64,
) -> Result<TrajectoryCorpus> {
    if window_length == 0 {
        return Err(Error::InvalidWindow(0));
    }
    if min_ratio.is_nan() || min_ratio < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "min success ratio must be non-negative, got {min_ratio}"
        )));
    }
    let trajectories = corpus
        .iter()
        .filter_map(|t| t.truncated(window_length))
        .filter(|t| success_ratio(t) >= min_ratio)
        .collect();
    Ok(TrajectoryCorpus {
        trajectories,
        window_length: Some(window_length),
    })
}
