//! Plot-ready summaries: gain histograms and peak-count box statistics.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::profile::{check_labels, members};
use crate::corpus_io::csv_io;
use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::numfmt::format_sig;
use crate::stats::{five_number, FiveNumber};

pub const PHASES: [&str; 3] = ["initial", "growth", "decay"];
pub const PERIODS: [&str; 2] = ["growth", "decay"];
pub const INTENSITIES: [&str; 3] = ["low", "medium", "high"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainHistogram {
    pub cluster_id: usize,
    pub bins: usize,
    /// Per phase (initial, growth, decay), counts over uniform bins on [0, 1].
    pub counts: [Vec<u64>; 3],
}

pub fn gain_histogram(
    features: &FeatureMatrix,
    labels: &[usize],
    bins: usize,
) -> Result<Vec<GainHistogram>> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
    }
    check_labels(features, labels)?;
    Ok(members(labels)
        .into_iter()
        .map(|(id, rows)| {
            let mut counts: [Vec<u64>; 3] = std::array::from_fn(|_| vec![0; bins]);
            for &i in &rows {
                for (phase, g) in features.rows[i].gains().into_iter().enumerate() {
                    let b = ((g.clamp(0.0, 1.0) * bins as f64).floor() as usize).min(bins - 1);
                    counts[phase][b] += 1;
                }
            }
            GainHistogram {
                cluster_id: id,
                bins,
                counts,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakBoxStats {
    pub cluster_id: usize,
    /// Low, medium, high intensity.
    pub growth: [FiveNumber; 3],
    pub decay: [FiveNumber; 3],
}

pub fn peak_distribution_stats(
    features: &FeatureMatrix,
    labels: &[usize],
) -> Result<Vec<PeakBoxStats>> {
    check_labels(features, labels)?;
    Ok(members(labels)
        .into_iter()
        .map(|(id, rows)| {
            let col = |j: usize| -> FiveNumber {
                let v: Vec<f64> = rows.iter().map(|&i| features.rows[i].to_array()[j]).collect();
                five_number(&v)
            };
            PeakBoxStats {
                cluster_id: id,
                growth: [col(6), col(7), col(8)],
                decay: [col(9), col(10), col(11)],
            }
        })
        .collect())
}

/// `cluster_id,phase,bin,bin_lo,bin_hi,count`
pub fn write_gain_histogram_csv<W: Write>(hists: &[GainHistogram], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["cluster_id", "phase", "bin", "bin_lo", "bin_hi", "count"])
        .map_err(csv_io)?;
    for h in hists {
        for (p, counts) in h.counts.iter().enumerate() {
            for (b, c) in counts.iter().enumerate() {
                let lo = b as f64 / h.bins as f64;
                let hi = (b + 1) as f64 / h.bins as f64;
                w.write_record([
                    h.cluster_id.to_string(),
                    PHASES[p].to_string(),
                    b.to_string(),
                    format_sig(lo, 9),
                    format_sig(hi, 9),
                    c.to_string(),
                ])
                .map_err(csv_io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// `cluster_id,period,intensity,min,q1,median,q3,max`
pub fn write_peak_box_csv<W: Write>(stats: &[PeakBoxStats], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["cluster_id", "period", "intensity", "min", "q1", "median", "q3", "max"])
        .map_err(csv_io)?;
    for s in stats {
        for (p, per) in [&s.growth, &s.decay].into_iter().enumerate() {
            for (k, f) in per.iter().enumerate() {
                let mut rec = vec![
                    s.cluster_id.to_string(),
                    PERIODS[p].to_string(),
                    INTENSITIES[k].to_string(),
                ];
                rec.extend([f.min, f.q1, f.median, f.q3, f.max].map(|v| format_sig(v, 9)));
                w.write_record(&rec).map_err(csv_io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;

    fn row(gains: [f64; 3], peaks: [f64; 6]) -> FeatureVector {
        let mut a = [0.0; 12];
        a[3..6].copy_from_slice(&gains);
        a[6..12].copy_from_slice(&peaks);
        FeatureVector::from_array(a)
    }

    fn fm(rows: Vec<FeatureVector>) -> FeatureMatrix {
        FeatureMatrix::new((0..rows.len()).map(|i| i.to_string()).collect(), rows).unwrap()
    }

    #[test]
    fn single_object_two_bins() {
        let f = fm(vec![row([1.0, 0.0, 0.0], [0.0; 6])]);
        let h = gain_histogram(&f, &[0], 2).unwrap();
        assert_eq!(h[0].counts[0], vec![0, 1]);
        assert_eq!(h[0].counts[1], vec![1, 0]);
        assert_eq!(h[0].counts[2], vec![1, 0]);
        assert!(gain_histogram(&f, &[0], 0).is_err());
    }

    #[test]
    fn peak_medians() {
        let rows = [1.0, 1.0, 2.0, 3.0]
            .iter()
            .map(|&v| row([1.0, 0.0, 0.0], [v, 0.0, 0.0, 0.0, 0.0, 0.0]))
            .collect();
        let s = peak_distribution_stats(&fm(rows), &[0, 0, 0, 0]).unwrap();
        assert_eq!(s[0].growth[0].median, 1.5);
        assert_eq!(s[0].decay[2], five_number(&[0.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn csv_shapes() {
        let f = fm(vec![row([0.5, 0.25, 0.25], [1.0, 0.0, 0.0, 0.0, 0.0, 0.0])]);
        let mut buf = Vec::new();
        write_gain_histogram_csv(&gain_histogram(&f, &[0], 4).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 3 * 4);
        assert!(text.contains("0,initial,2,0.5,0.75,1"));
        let mut buf = Vec::new();
        write_peak_box_csv(&peak_distribution_stats(&f, &[0]).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 6);
        assert!(text.contains("0,growth,low,1,1,1,1,1"));
    }
}
