//! The twelve-value trajectory feature vector and its z-score standardization.
//!
//! A trajectory is split at three instants: the initial time `T_i` (first
//! year whose count reaches the geometric-mean level of the nonzero counts),
//! the peak year (first maximum) and the last cited year. From these come the
//! phase durations, the share of citations earned in each phase, and counts
//! of unusually high years (`>= mean + k*sd`, k = 1, 2, 3) in the growth and
//! decay periods.

use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus_io::{create, csv_io, open};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numfmt::format_sig;
use crate::trajectory::{total_citations, CitationTrajectory, TrajectoryCorpus};

/// Number of columns in a feature vector.
pub const FEATURE_COUNT: usize = 12;

/// Column names in vector order, as used in the feature CSV.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "Ti", "Tg", "Td", "gain_i", "gain_g", "gain_d", "pg_l", "pg_m", "pg_h", "pd_l", "pd_m", "pd_h",
];

/// Relative tolerance for comparing a count against the geometric-mean level
/// in the log domain. Absorbs rounding when a count equals the level exactly.
const LEVEL_REL_TOL: f64 = 1e-12;

/// How the three phase gains are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GainMode {
    /// Consecutive disjoint windows `[0, T_i]`, `(T_i, peak]`, `(peak, end]`;
    /// the three gains sum to one.
    #[default]
    Windowed,
    /// Prefix sums `sum_{t=0}^{D} c_t / c` with `D` each phase duration.
    LiteralPrefix,
}

impl std::str::FromStr for GainMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "windowed" => Ok(GainMode::Windowed),
            "literal-prefix" => Ok(GainMode::LiteralPrefix),
            other => Err(Error::InvalidParameter(format!(
                "gain mode must be `windowed` or `literal-prefix`, got `{other}`"
            ))),
        }
    }
}

/// Baseline level the peak thresholds are measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakBaseline {
    /// Arithmetic mean of all annual counts.
    #[default]
    Arithmetic,
    /// Geometric mean of the nonzero annual counts.
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FeatureOptions {
    pub gain_mode: GainMode,
    pub peak_baseline: PeakBaseline,
}

/// Phase boundaries of one trajectory, in years since publication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryPhases {
    pub t_initial: usize,
    pub t_peak: usize,
    pub t_last: usize,
    pub t_growth: usize,
    pub t_decay: usize,
}

/// Peak counts per period at low/medium/high intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PeakCounts {
    pub growth: [u32; 3],
    pub decay: [u32; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub t_initial: f64,
    pub t_growth: f64,
    pub t_decay: f64,
    pub gain_initial: f64,
    pub gain_growth: f64,
    pub gain_decay: f64,
    pub peaks_growth_low: f64,
    pub peaks_growth_med: f64,
    pub peaks_growth_high: f64,
    pub peaks_decay_low: f64,
    pub peaks_decay_med: f64,
    pub peaks_decay_high: f64,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.t_initial,
            self.t_growth,
            self.t_decay,
            self.gain_initial,
            self.gain_growth,
            self.gain_decay,
            self.peaks_growth_low,
            self.peaks_growth_med,
            self.peaks_growth_high,
            self.peaks_decay_low,
            self.peaks_decay_med,
            self.peaks_decay_high,
        ]
    }

    pub fn from_array(a: [f64; FEATURE_COUNT]) -> Self {
        Self {
            t_initial: a[0],
            t_growth: a[1],
            t_decay: a[2],
            gain_initial: a[3],
            gain_growth: a[4],
            gain_decay: a[5],
            peaks_growth_low: a[6],
            peaks_growth_med: a[7],
            peaks_growth_high: a[8],
            peaks_decay_low: a[9],
            peaks_decay_med: a[10],
            peaks_decay_high: a[11],
        }
    }

    pub fn gains(&self) -> [f64; 3] {
        [self.gain_initial, self.gain_growth, self.gain_decay]
    }
}

/// Geometric mean of the nonzero annual counts.
pub fn geometric_mean_level(traj: &CitationTrajectory) -> Result<f64> {
    mean_log_nonzero(traj.counts()).map(f64::exp)
}

fn mean_log_nonzero(counts: &[u64]) -> Result<f64> {
    let (sum, n) = counts
        .iter()
        .filter(|&&c| c > 0)
        .fold((0.0, 0usize), |(s, n), &c| (s + (c as f64).ln(), n + 1));
    if n == 0 {
        return Err(Error::DegenerateTrajectory);
    }
    Ok(sum / n as f64)
}

pub fn compute_phases(traj: &CitationTrajectory) -> Result<TrajectoryPhases> {
    let counts = traj.counts();
    let level = mean_log_nonzero(counts)?;
    let tol = LEVEL_REL_TOL * level.abs().max(1.0);
    let t_initial = counts
        .iter()
        .position(|&c| c > 0 && (c as f64).ln() >= level - tol)
        .expect("the largest count reaches the geometric mean");
    let max = *counts.iter().max().expect("non-empty");
    let t_peak = counts.iter().position(|&c| c == max).expect("max present");
    let t_last = counts.iter().rposition(|&c| c > 0).expect("nonzero present");
    debug_assert!(t_initial <= t_peak && t_peak <= t_last);
    Ok(TrajectoryPhases {
        t_initial,
        t_peak,
        t_last,
        t_growth: t_peak - t_initial,
        t_decay: t_last - t_peak,
    })
}

pub fn phase_citation_gains(
    traj: &CitationTrajectory,
    phases: &TrajectoryPhases,
    mode: GainMode,
) -> Result<[f64; 3]> {
    let counts = traj.counts();
    let total = total_citations(traj);
    if total == 0 {
        return Err(Error::DegenerateTrajectory);
    }
    let c = total as f64;
    let prefix = |end: usize| -> u64 { counts[..=end.min(counts.len() - 1)].iter().sum() };
    Ok(match mode {
        GainMode::Windowed => {
            let initial = prefix(phases.t_initial);
            let to_peak = prefix(phases.t_peak);
            [
                initial as f64 / c,
                (to_peak - initial) as f64 / c,
                (total - to_peak) as f64 / c,
            ]
        }
        GainMode::LiteralPrefix => [
            prefix(phases.t_initial) as f64 / c,
            prefix(phases.t_growth) as f64 / c,
            prefix(phases.t_decay) as f64 / c,
        ],
    })
}

/// Count years at or above `mean + k*sd` for k = 1, 2, 3, split into the
/// growth period `[0, peak]` and the decay period `(peak, end]`. `sd` is the
/// population standard deviation; a constant series has no peaks.
pub fn peak_counts(
    traj: &CitationTrajectory,
    phases: &TrajectoryPhases,
    baseline: PeakBaseline,
) -> PeakCounts {
    let counts = traj.counts();
    let mut out = PeakCounts::default();
    let qualifies: Box<dyn Fn(u64, u32) -> bool> = match baseline {
        PeakBaseline::Arithmetic => match exact_moments(counts) {
            Some((_, _, 0)) => return out,
            Some((n, s, spread)) => Box::new(move |c, k| {
                // c >= S/n + k*sqrt(spread)/n  <=>  n*c - S >= k*sqrt(spread)
                let lhs = n * c as i128 - s;
                lhs >= 0 && lhs * lhs >= (k as i128 * k as i128) * spread
            }),
            None => {
                let (mean, sd) = float_moments(counts);
                if sd == 0.0 {
                    return out;
                }
                Box::new(move |c, k| c as f64 >= mean + k as f64 * sd)
            }
        },
        PeakBaseline::Geometric => {
            let (_, sd) = float_moments(counts);
            if sd == 0.0 {
                return out;
            }
            let level = mean_log_nonzero(counts).map(f64::exp).unwrap_or(0.0);
            Box::new(move |c, k| c as f64 >= level + k as f64 * sd)
        }
    };
    for (t, &c) in counts.iter().enumerate() {
        let slot = if t <= phases.t_peak {
            &mut out.growth
        } else {
            &mut out.decay
        };
        for k in 1..=3u32 {
            if qualifies(c, k) {
                slot[k as usize - 1] += 1;
            }
        }
    }
    out
}

/// `(n, S, n*Q - S^2)` in exact integer arithmetic, where `S` and `Q` are
/// the sum and sum of squares. `None` on overflow.
fn exact_moments(counts: &[u64]) -> Option<(i128, i128, i128)> {
    let n = counts.len() as i128;
    let mut s: i128 = 0;
    let mut q: i128 = 0;
    for &c in counts {
        let c = c as i128;
        s = s.checked_add(c)?;
        q = q.checked_add(c.checked_mul(c)?)?;
    }
    let spread = n.checked_mul(q)?.checked_sub(s.checked_mul(s)?)?;
    // The comparison squares n*c - S; keep head room for that.
    let bound = n.checked_mul(s)?;
    bound.checked_mul(bound)?;
    spread.checked_mul(9)?;
    Some((n, s, spread))
}

fn float_moments(counts: &[u64]) -> (f64, f64) {
    let n = counts.len() as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / n;
    let var = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    (mean, var.sqrt())
}

pub fn extract_features(traj: &CitationTrajectory) -> Result<FeatureVector> {
    extract_features_with(traj, FeatureOptions::default())
}

pub fn extract_features_with(
    traj: &CitationTrajectory,
    options: FeatureOptions,
) -> Result<FeatureVector> {
    let phases = compute_phases(traj)?;
    let [gi, gg, gd] = phase_citation_gains(traj, &phases, options.gain_mode)?;
    let peaks = peak_counts(traj, &phases, options.peak_baseline);
    Ok(FeatureVector {
        t_initial: phases.t_initial as f64,
        t_growth: phases.t_growth as f64,
        t_decay: phases.t_decay as f64,
        gain_initial: gi,
        gain_growth: gg,
        gain_decay: gd,
        peaks_growth_low: peaks.growth[0] as f64,
        peaks_growth_med: peaks.growth[1] as f64,
        peaks_growth_high: peaks.growth[2] as f64,
        peaks_decay_low: peaks.decay[0] as f64,
        peaks_decay_med: peaks.decay[1] as f64,
        peaks_decay_high: peaks.decay[2] as f64,
    })
}

/// Raw (unstandardized) features, one row per trajectory in corpus order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub paper_ids: Vec<String>,
    pub rows: Vec<FeatureVector>,
    pub column_means: [f64; FEATURE_COUNT],
    /// Population standard deviations.
    pub column_stds: [f64; FEATURE_COUNT],
}

impl FeatureMatrix {
    pub fn new(paper_ids: Vec<String>, rows: Vec<FeatureVector>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        assert_eq!(paper_ids.len(), rows.len());
        let n = rows.len() as f64;
        let mut means = [0.0; FEATURE_COUNT];
        for r in &rows {
            for (m, v) in means.iter_mut().zip(r.to_array()) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut stds = [0.0; FEATURE_COUNT];
        for r in &rows {
            for ((s, m), v) in stds.iter_mut().zip(&means).zip(r.to_array()) {
                *s += (v - m) * (v - m);
            }
        }
        stds.iter_mut().for_each(|s| *s = (*s / n).sqrt());
        Ok(Self {
            paper_ids,
            rows,
            column_means: means,
            column_stds: stds,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix {
        let rows: Vec<[f64; FEATURE_COUNT]> = self.rows.iter().map(|r| r.to_array()).collect();
        Matrix::from_rows(&rows)
    }

    /// One feature across all rows.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.to_array()[j]).collect()
    }
}

/// Z-scored feature matrix. Constant columns are all zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedMatrix {
    pub values: Matrix,
    pub column_means: [f64; FEATURE_COUNT],
    pub column_stds: [f64; FEATURE_COUNT],
}

impl StandardizedMatrix {
    /// Recover raw feature rows from the z-scores.
    pub fn destandardize(&self) -> Matrix {
        let mut out = self.values.clone();
        for i in 0..out.nrows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = if is_constant(self.column_means[j], self.column_stds[j]) {
                    self.column_means[j]
                } else {
                    *v * self.column_stds[j] + self.column_means[j]
                };
            }
        }
        out
    }
}

fn is_constant(mean: f64, std: f64) -> bool {
    std <= 1e-12 * mean.abs().max(1.0)
}

pub fn standardize(features: &FeatureMatrix) -> StandardizedMatrix {
    let mut values = features.to_matrix();
    for i in 0..values.nrows() {
        for (j, v) in values.row_mut(i).iter_mut().enumerate() {
            let (m, s) = (features.column_means[j], features.column_stds[j]);
            *v = if is_constant(m, s) { 0.0 } else { (*v - m) / s };
        }
    }
    StandardizedMatrix {
        values,
        column_means: features.column_means,
        column_stds: features.column_stds,
    }
}

/// Extract features for every trajectory. Rows keep corpus order.
pub fn build_feature_matrix(
    corpus: &TrajectoryCorpus,
    options: FeatureOptions,
) -> Result<FeatureMatrix> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let rows = corpus
        .trajectories
        .par_iter()
        .map(|t| extract_features_with(t, options))
        .collect::<Result<Vec<_>>>()?;
    let ids = corpus.iter().map(|t| t.paper_id().to_string()).collect();
    FeatureMatrix::new(ids, rows)
}

pub fn build_and_standardize(
    corpus: &TrajectoryCorpus,
    options: FeatureOptions,
) -> Result<(FeatureMatrix, StandardizedMatrix)> {
    let features = build_feature_matrix(corpus, options)?;
    let z = standardize(&features);
    Ok((features, z))
}

/// Write the feature CSV (`paper_id,Ti,...,pd_h`), reals at 9 significant digits.
pub fn write_features_csv<W: Write>(features: &FeatureMatrix, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["paper_id"];
    header.extend(FEATURE_NAMES);
    w.write_record(&header).map_err(csv_io)?;
    for (id, row) in features.paper_ids.iter().zip(&features.rows) {
        let mut rec = vec![id.clone()];
        rec.extend(row.to_array().iter().map(|&v| format_sig(v, 9)));
        w.write_record(&rec).map_err(csv_io)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_features_csv<R: Read>(reader: R, origin: &Path) -> Result<FeatureMatrix> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let ok = headers.len() == FEATURE_COUNT + 1
        && &headers[0] == "paper_id"
        && headers.iter().skip(1).eq(FEATURE_NAMES.iter().copied());
    if !ok {
        return Err(parse_err(1, "unexpected feature CSV header".into()));
    }
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            parse_err(e.position().map_or(0, |p| p.line()), e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut a = [0.0; FEATURE_COUNT];
        for (j, slot) in a.iter_mut().enumerate() {
            *slot = rec[j + 1]
                .parse()
                .map_err(|_| parse_err(line, format!("invalid number `{}`", &rec[j + 1])))?;
        }
        ids.push(rec[0].to_string());
        rows.push(FeatureVector::from_array(a));
    }
    FeatureMatrix::new(ids, rows)
}

pub fn write_features_path(features: &FeatureMatrix, path: &Path) -> Result<()> {
    write_features_csv(features, create(path)?)
}

pub fn read_features_path(path: &Path) -> Result<FeatureMatrix> {
    read_features_csv(open(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(c: &[u64]) -> CitationTrajectory {
        CitationTrajectory::from_counts(c).unwrap()
    }

    #[test]
    fn geometric_level_examples() {
        assert!((geometric_mean_level(&traj(&[5, 5, 5, 5])).unwrap() - 5.0).abs() < 1e-12);
        let g = geometric_mean_level(&traj(&[1, 2, 8, 4, 2, 1])).unwrap();
        assert!((g - 128f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((g - 2.2449).abs() < 1e-4);
        assert!((geometric_mean_level(&traj(&[0, 0, 9])).unwrap() - 9.0).abs() < 1e-12);
        assert!(matches!(
            geometric_mean_level(&traj(&[0, 0, 0])),
            Err(Error::DegenerateTrajectory)
        ));
    }

    #[test]
    fn phase_examples() {
        let p = compute_phases(&traj(&[1, 2, 8, 4, 2, 1])).unwrap();
        assert_eq!(
            (p.t_initial, p.t_peak, p.t_last, p.t_growth, p.t_decay),
            (2, 2, 5, 0, 3)
        );
        let p = compute_phases(&traj(&[5, 5, 5, 5])).unwrap();
        assert_eq!((p.t_initial, p.t_peak, p.t_last, p.t_growth, p.t_decay), (0, 0, 3, 0, 3));
        let p = compute_phases(&traj(&[0, 0, 1, 1, 2, 3, 5, 8, 9, 10])).unwrap();
        assert_eq!((p.t_initial, p.t_peak, p.t_last, p.t_growth, p.t_decay), (6, 9, 9, 3, 0));
        assert!(compute_phases(&traj(&[0, 0])).is_err());
    }

    #[test]
    fn level_ties_count_as_reached() {
        // nonzero product 4*2*8 = 64 = 4^3, so the level is exactly 4
        let p = compute_phases(&traj(&[0, 4, 2, 8])).unwrap();
        assert_eq!(p.t_initial, 1);
    }

    #[test]
    fn gain_examples() {
        let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        let t = traj(&[1, 2, 8, 4, 2, 1]);
        let g = phase_citation_gains(&t, &compute_phases(&t).unwrap(), GainMode::Windowed).unwrap();
        assert!(close(g, [11.0 / 18.0, 0.0, 7.0 / 18.0]));
        let t = traj(&[0, 0, 1, 1, 2, 3, 5, 8, 9, 10]);
        let g = phase_citation_gains(&t, &compute_phases(&t).unwrap(), GainMode::Windowed).unwrap();
        assert!(close(g, [12.0 / 39.0, 27.0 / 39.0, 0.0]));
        let t = traj(&[5, 5, 5, 5]);
        let g = phase_citation_gains(&t, &compute_phases(&t).unwrap(), GainMode::Windowed).unwrap();
        assert!(close(g, [0.25, 0.0, 0.75]));
    }

    #[test]
    fn literal_prefix_gains() {
        // phases (2, 0, 3): prefixes through t = 2, 0, 3
        let t = traj(&[1, 2, 8, 4, 2, 1]);
        let g = phase_citation_gains(&t, &compute_phases(&t).unwrap(), GainMode::LiteralPrefix)
            .unwrap();
        assert_eq!(g, [11.0 / 18.0, 1.0 / 18.0, 15.0 / 18.0]);
    }

    #[test]
    fn peak_examples() {
        let t = traj(&[1, 2, 8, 4, 2, 1]);
        let p = peak_counts(&t, &compute_phases(&t).unwrap(), PeakBaseline::Arithmetic);
        assert_eq!(p.growth, [1, 1, 0]);
        assert_eq!(p.decay, [0, 0, 0]);

        let t = traj(&[5, 5, 5, 5]);
        let p = peak_counts(&t, &compute_phases(&t).unwrap(), PeakBaseline::Arithmetic);
        assert_eq!(p, PeakCounts::default());

        // mean 5, sd sqrt(75): thresholds 13.66 / 22.32 / 30.98
        let t = traj(&[0, 0, 0, 20]);
        let p = peak_counts(&t, &compute_phases(&t).unwrap(), PeakBaseline::Arithmetic);
        assert_eq!(p.growth, [1, 0, 0]);
        assert_eq!(p.decay, [0, 0, 0]);
    }

    #[test]
    fn peak_threshold_equality_counts() {
        // mean 1, sd 1: value 2 sits exactly on mean + sd
        let t = traj(&[0, 2, 0, 2]);
        let p = peak_counts(&t, &compute_phases(&t).unwrap(), PeakBaseline::Arithmetic);
        assert_eq!(p.growth, [1, 0, 0]);
        assert_eq!(p.decay, [1, 0, 0]);
    }

    #[test]
    fn geometric_baseline_differs() {
        // level 128^(1/6) = 2.245, sd 2.449: 8 clears the low and medium lines
        let t = traj(&[1, 2, 8, 4, 2, 1]);
        let p = peak_counts(&t, &compute_phases(&t).unwrap(), PeakBaseline::Geometric);
        assert_eq!(p.growth, [1, 1, 0]);
        // 4 < 2.245 + 2.449
        assert_eq!(p.decay, [0, 0, 0]);
    }

    #[test]
    fn extract_examples() {
        let v = extract_features(&traj(&[1, 2, 8, 4, 2, 1])).unwrap().to_array();
        let want = [2.0, 0.0, 3.0, 11.0 / 18.0, 0.0, 7.0 / 18.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(v, want);
        let v = extract_features(&traj(&[5, 5, 5, 5])).unwrap().to_array();
        assert_eq!(v, [0.0, 0.0, 3.0, 0.25, 0.0, 0.75, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let base = extract_features(&traj(&[1, 2, 8, 4, 2, 1])).unwrap();
        let scaled = extract_features(&traj(&[3, 6, 24, 12, 6, 3])).unwrap();
        assert_eq!(base, scaled);
    }

    #[test]
    fn standardize_examples() {
        let one = TrajectoryCorpus::new(vec![traj(&[1, 2, 8, 4, 2, 1])]);
        let (_, z) = build_and_standardize(&one, FeatureOptions::default()).unwrap();
        assert!(z.values.row(0).iter().all(|&v| v == 0.0));

        let two = TrajectoryCorpus::new(vec![traj(&[1, 2, 8, 4, 2, 1]), traj(&[5, 5, 5, 5, 5, 0])]);
        let (f, z) = build_and_standardize(&two, FeatureOptions::default()).unwrap();
        for j in 0..FEATURE_COUNT {
            let (a, b) = (z.values.get(0, j), z.values.get(1, j));
            if f.rows[0].to_array()[j] == f.rows[1].to_array()[j] {
                assert_eq!((a, b), (0.0, 0.0));
            } else {
                assert!((a.abs() - 1.0).abs() < 1e-12 && (a + b).abs() < 1e-12);
            }
        }
        assert!(matches!(
            build_and_standardize(&TrajectoryCorpus::default(), FeatureOptions::default()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn feature_csv_round_trip() {
        let c = TrajectoryCorpus::new(vec![
            CitationTrajectory::new("p1", 2005, vec![1, 2, 8, 4, 2, 1]).unwrap(),
            CitationTrajectory::new("p2", 2005, vec![5, 5, 5, 5, 5, 5]).unwrap(),
        ]);
        let f = build_feature_matrix(&c, FeatureOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_features_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("paper_id,Ti,Tg,Td,gain_i,gain_g,gain_d,pg_l,pg_m,pg_h,pd_l,pd_m,pd_h\n"));
        assert!(text.contains("p1,2,0,3,0.611111111,0,0.388888889,1,1,0,0,0,0"));
        let back = read_features_csv(buf.as_slice(), Path::new("mem")).unwrap();
        assert_eq!(back.paper_ids, f.paper_ids);
        for (a, b) in back.rows.iter().zip(&f.rows) {
            for (x, y) in a.to_array().iter().zip(b.to_array()) {
                assert!((x - y).abs() < 1e-8);
            }
        }
    }
}
