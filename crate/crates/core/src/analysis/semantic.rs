//! Early/Delayed rise crossed with Rapid/Slow/No decline.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::profile::ClusterProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rise {
    Early,
    Delayed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decline {
    Rapid,
    Slow,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemanticLabel {
    pub rise: Rise,
    pub decline: Decline,
}

impl SemanticLabel {
    pub const ER_RD: Self = Self::new(Rise::Early, Decline::Rapid);
    pub const ER_SD: Self = Self::new(Rise::Early, Decline::Slow);
    pub const DR_ND: Self = Self::new(Rise::Delayed, Decline::None);
    pub const DR_SD: Self = Self::new(Rise::Delayed, Decline::Slow);

    pub const fn new(rise: Rise, decline: Decline) -> Self {
        Self { rise, decline }
    }

    /// Early rise with no decline and delayed rise with rapid decline were
    /// never observed as clusters.
    pub fn is_observed_class(&self) -> bool {
        !matches!(
            (self.rise, self.decline),
            (Rise::Early, Decline::None) | (Rise::Delayed, Decline::Rapid)
        )
    }

    pub fn code(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SemanticLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.rise {
            Rise::Early => "ER",
            Rise::Delayed => "DR",
        };
        let d = match self.decline {
            Decline::Rapid => "RD",
            Decline::Slow => "SD",
            Decline::None => "ND",
        };
        write!(f, "{r}-{d}")
    }
}

/// Decision boundaries on cluster mean phase times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemanticThresholds {
    /// Early rise iff mean(T_i) + mean(T_g) <= rise_fraction * window.
    pub rise_fraction: f64,
    /// No decline iff mean(T_d) <= this many years.
    pub no_decline_max: f64,
    /// Rapid decline iff no_decline_max < mean(T_d) <= this; slow beyond.
    pub rapid_decline_max: f64,
}

impl Default for SemanticThresholds {
    fn default() -> Self {
        Self {
            rise_fraction: 0.6,
            no_decline_max: 1.0,
            rapid_decline_max: 2.5,
        }
    }
}

pub fn label_from_means(
    mean_initial: f64,
    mean_growth: f64,
    mean_decay: f64,
    window_length: usize,
    th: &SemanticThresholds,
) -> SemanticLabel {
    let rise = if mean_initial + mean_growth <= th.rise_fraction * window_length as f64 {
        Rise::Early
    } else {
        Rise::Delayed
    };
    let decline = if mean_decay <= th.no_decline_max {
        Decline::None
    } else if mean_decay <= th.rapid_decline_max {
        Decline::Rapid
    } else {
        Decline::Slow
    };
    SemanticLabel { rise, decline }
}

pub fn semantic_label(
    profile: &ClusterProfile,
    window_length: usize,
    th: &SemanticThresholds,
) -> SemanticLabel {
    label_from_means(
        profile.t_initial.mean,
        profile.t_growth.mean,
        profile.t_decay.mean,
        window_length,
        th,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_centroids() {
        let th = SemanticThresholds::default();
        assert_eq!(label_from_means(1.51, 2.16, 2.11, 10, &th), SemanticLabel::ER_RD);
        assert_eq!(label_from_means(4.06, 25.46, 0.0, 30, &th), SemanticLabel::DR_ND);
        assert_eq!(label_from_means(4.73, 16.06, 7.84, 30, &th), SemanticLabel::DR_SD);
    }

    #[test]
    fn codes_and_taxonomy() {
        assert_eq!(SemanticLabel::ER_RD.to_string(), "ER-RD");
        assert_eq!(SemanticLabel::DR_ND.code(), "DR-ND");
        assert!(!SemanticLabel::new(Rise::Early, Decline::None).is_observed_class());
        assert!(!SemanticLabel::new(Rise::Delayed, Decline::Rapid).is_observed_class());
        assert!(SemanticLabel::DR_SD.is_observed_class());
    }
}
