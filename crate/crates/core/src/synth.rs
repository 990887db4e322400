//! Synthetic citation trajectories for the four trajectory classes.
//!
//! Each paper draws a unimodal rate curve with an archetype-specific peak
//! year and left/right widths, scales it by a random amplitude and perturbs
//! every year with multiplicative log-normal noise before rounding.

use std::fmt;
use std::str::FromStr;

use log::warn;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{rng_for, sub_seed_path};
use crate::trajectory::{CitationTrajectory, TrajectoryCorpus};

pub const MIN_SYNTH_WINDOW: usize = 5;
pub const SYNTH_PUBLICATION_YEAR: i32 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Archetype {
    #[serde(rename = "ER-RD")]
    EarlyRiseRapidDecline,
    #[serde(rename = "ER-SD")]
    EarlyRiseSlowDecline,
    #[serde(rename = "DR-ND")]
    DelayedRiseNoDecline,
    #[serde(rename = "DR-SD")]
    DelayedRiseSlowDecline,
}

impl Archetype {
    pub const ALL: [Archetype; 4] = [
        Archetype::EarlyRiseRapidDecline,
        Archetype::EarlyRiseSlowDecline,
        Archetype::DelayedRiseNoDecline,
        Archetype::DelayedRiseSlowDecline,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Archetype::EarlyRiseRapidDecline => "ER-RD",
            Archetype::EarlyRiseSlowDecline => "ER-SD",
            Archetype::DelayedRiseNoDecline => "DR-ND",
            Archetype::DelayedRiseSlowDecline => "DR-SD",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }

    /// Only observed in long study windows.
    pub fn is_long_window_only(self) -> bool {
        self == Archetype::DelayedRiseSlowDecline
    }

    /// Rate-curve shape before per-paper jitter.
    fn shape(self, window: f64) -> Shape {
        match self {
            Archetype::EarlyRiseRapidDecline => Shape::Bell {
                peak: 3.0,
                peak_jitter: 0.1,
                left: 1.8,
                right: 0.8,
            },
            Archetype::EarlyRiseSlowDecline => {
                let peak = 4.0 + 0.1 * window;
                Shape::Bell {
                    peak,
                    peak_jitter: 0.01 * window,
                    left: 1.0 + 0.06 * window,
                    right: 0.32 * (window - peak),
                }
            }
            Archetype::DelayedRiseNoDecline => Shape::Rise {
                exponent: (0.1 * window).max(1.5),
            },
            Archetype::DelayedRiseSlowDecline => {
                let peak = 0.68 * window;
                Shape::Bell {
                    peak,
                    peak_jitter: 0.02 * window,
                    left: 0.28 * window,
                    right: 0.4 * (window - peak),
                }
            }
        }
    }
}

impl fmt::Display for Archetype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Archetype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Archetype::ALL
            .into_iter()
            .find(|a| a.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownArchetype(s.to_string()))
    }
}

enum Shape {
    /// Two half-Gaussians joined at the peak year.
    Bell {
        peak: f64,
        peak_jitter: f64,
        left: f64,
        right: f64,
    },
    /// `((t + 1) / window)^exponent`, still rising at the window end.
    Rise { exponent: f64 },
}

impl Shape {
    fn peak_year(&self, window: usize) -> f64 {
        match *self {
            Shape::Bell { peak, .. } => peak,
            Shape::Rise { .. } => window as f64 - 1.0,
        }
    }
}

const AMPLITUDE: f64 = 30.0;
const AMPLITUDE_SPREAD: f64 = 0.15;
const SHAPE_SPREAD: f64 = 0.03;
const YEAR_NOISE: f64 = 0.03;

fn counts_for(archetype: Archetype, window: usize, seed: u64) -> Vec<u64> {
    let mut rng = rng_for(sub_seed_path(seed, &[archetype.tag(), window as u64]));
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut z = || -> f64 { std_normal.sample(&mut rng) };
    let amplitude = AMPLITUDE * (AMPLITUDE_SPREAD * z()).exp();
    let rate: Box<dyn Fn(f64) -> f64> = match archetype.shape(window as f64) {
        Shape::Bell {
            peak,
            peak_jitter,
            left,
            right,
        } => {
            let peak = peak + peak_jitter * z();
            let left = left * (SHAPE_SPREAD * z()).exp();
            let right = right * (SHAPE_SPREAD * z()).exp();
            Box::new(move |t| {
                let x = t - peak;
                let w = if x < 0.0 { left } else { right };
                (-0.5 * (x / w).powi(2)).exp()
            })
        }
        Shape::Rise { exponent } => {
            let exponent = exponent * (SHAPE_SPREAD * z()).exp();
            let w = window as f64;
            Box::new(move |t| ((t + 1.0) / w).powf(exponent))
        }
    };
    (0..window)
        .map(|t| (amplitude * rate(t as f64) * (YEAR_NOISE * z()).exp()).round() as u64)
        .collect()
}

/// One trajectory of `window_length` years following `archetype`.
pub fn synthesize_trajectory(
    archetype: Archetype,
    window_length: usize,
    seed: u64,
) -> Result<CitationTrajectory> {
    if window_length < MIN_SYNTH_WINDOW {
        return Err(Error::InvalidWindow(window_length as i64));
    }
    let mut counts = counts_for(archetype, window_length, seed);
    // Guarantee at least one citation so every trajectory is usable.
    if counts.iter().all(|&c| c == 0) {
        let peak = archetype.shape(window_length as f64).peak_year(window_length);
        let t = (peak.round().max(0.0) as usize).min(window_length - 1);
        counts[t] = 1;
    }
    CitationTrajectory::new(
        format!("{archetype}-{seed}"),
        SYNTH_PUBLICATION_YEAR,
        counts,
    )
}

/// A labeled synthetic corpus: one cohort per `(archetype, size)` entry,
/// in the given order.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub corpus: TrajectoryCorpus,
    pub truth: Vec<Archetype>,
}

pub fn synthesize_corpus(
    mix: &[(Archetype, usize)],
    window_length: usize,
    seed: u64,
) -> Result<SyntheticCorpus> {
    let mut trajectories = Vec::new();
    let mut truth = Vec::new();
    for &(archetype, size) in mix {
        if size == 0 {
            return Err(Error::InvalidParameter(format!(
                "cohort size for {archetype} must be at least 1"
            )));
        }
        if archetype.is_long_window_only() && window_length < 20 {
            warn!("{archetype} is characteristic of long study windows; window {window_length} is short");
        }
        for i in 0..size {
            let paper_seed = sub_seed_path(seed, &[archetype.tag(), i as u64]);
            let t = synthesize_trajectory(archetype, window_length, paper_seed)?;
            let id = format!("{}-{:06}", archetype, trajectories.len());
            trajectories.push(CitationTrajectory::new(
                id,
                SYNTH_PUBLICATION_YEAR,
                t.counts().to_vec(),
            )?);
            truth.push(archetype);
        }
    }
    Ok(SyntheticCorpus {
        corpus: TrajectoryCorpus::new(trajectories),
        truth,
    })
}

/// Parse `ER-RD:500,DR-ND:500`.
pub fn parse_mix(spec: &str) -> Result<Vec<(Archetype, usize)>> {
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (name, size) = part.split_once(':').ok_or_else(|| {
                Error::InvalidParameter(format!("mix entry `{part}` is not NAME:SIZE"))
            })?;
            let archetype: Archetype = name.parse()?;
            let size: usize = size.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("invalid cohort size `{size}`"))
            })?;
            Ok((archetype, size))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argmax(c: &[u64]) -> usize {
        let m = *c.iter().max().unwrap();
        c.iter().position(|&x| x == m).unwrap()
    }

    #[test]
    fn deterministic() {
        let a = synthesize_trajectory(Archetype::EarlyRiseRapidDecline, 10, 7).unwrap();
        let b = synthesize_trajectory(Archetype::EarlyRiseRapidDecline, 10, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn peak_positions() {
        let late = (0..1000)
            .filter(|&s| argmax(synthesize_trajectory(Archetype::DelayedRiseNoDecline, 10, s).unwrap().counts()) >= 7)
            .count();
        let early = (0..1000)
            .filter(|&s| argmax(synthesize_trajectory(Archetype::EarlyRiseRapidDecline, 10, s).unwrap().counts()) <= 4)
            .count();
        assert!(late >= 950, "{late}");
        assert!(early >= 950, "{early}");
    }

    #[test]
    fn parsing() {
        assert_eq!("dr-sd".parse::<Archetype>().unwrap(), Archetype::DelayedRiseSlowDecline);
        assert!(matches!("XX".parse::<Archetype>(), Err(Error::UnknownArchetype(_))));
        let mix = parse_mix("ER-RD:500,DR-ND:500").unwrap();
        assert_eq!(mix, vec![(Archetype::EarlyRiseRapidDecline, 500), (Archetype::DelayedRiseNoDecline, 500)]);
        assert!(parse_mix("ER-RD").is_err());
        assert!(synthesize_trajectory(Archetype::DelayedRiseNoDecline, 4, 0).is_err());
    }

    #[test]
    fn corpus_sizes_and_truth() {
        let s = synthesize_corpus(&[(Archetype::EarlyRiseRapidDecline, 3), (Archetype::DelayedRiseNoDecline, 2)], 10, 1).unwrap();
        assert_eq!(s.corpus.len(), 5);
        assert_eq!(s.truth[3], Archetype::DelayedRiseNoDecline);
        assert!(s.corpus.iter().all(|t| t.len() == 10));
    }
}
