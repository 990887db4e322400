use std::path::Path;

use proptest::prelude::*;

use trajcluster::corpus_io::{read_wide, write_wide};
use trajcluster::features::{compute_phases, standardize};
use trajcluster::mkmce::{kmeans, KMeansParams};
use trajcluster::{
    adjusted_rand_index, build_feature_matrix, extract_features, CitationTrajectory, FeatureOptions, Matrix,
    TrajectoryCorpus,
};

fn counts(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..200, 1..=max_len).prop_filter("needs a citation", |c| c.iter().any(|&x| x > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phases_are_ordered(c in counts(40)) {
        let t = CitationTrajectory::from_counts(&c).unwrap();
        let p = compute_phases(&t).unwrap();
        prop_assert!(p.t_initial <= p.t_peak && p.t_peak <= p.t_last && p.t_last < c.len());
        prop_assert_eq!(p.t_initial + p.t_growth + p.t_decay, p.t_last);
        prop_assert!(c[p.t_last] > 0);
        prop_assert!(c[p.t_peak] == *c.iter().max().unwrap());
    }

    #[test]
    fn gains_partition_total(c in counts(40)) {
        let f = extract_features(&CitationTrajectory::from_counts(&c).unwrap()).unwrap();
        for g in f.gains() {
            prop_assert!((0.0..=1.0).contains(&g));
        }
        prop_assert!((f.gains().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scaling_preserves_features(c in counts(30), k in 1u64..20) {
        let t = CitationTrajectory::from_counts(&c).unwrap();
        prop_assert_eq!(extract_features(&t).unwrap(), extract_features(&t.scaled(k)).unwrap());
    }

    #[test]
    fn standardize_round_trip(rows in prop::collection::vec(counts(12), 2..30)) {
        let corpus = TrajectoryCorpus::new(
            rows.iter().enumerate()
                .map(|(i, c)| CitationTrajectory::new(format!("p{i}"), 2000, c.clone()).unwrap())
                .collect(),
        );
        let f = build_feature_matrix(&corpus, FeatureOptions::default()).unwrap();
        let z = standardize(&f);
        let back = z.destandardize();
        let orig = f.to_matrix();
        for i in 0..orig.nrows() {
            for j in 0..orig.ncols() {
                prop_assert!((back.get(i, j) - orig.get(i, j)).abs() < 1e-9);
            }
        }
        for j in 0..orig.ncols() {
            let col: Vec<f64> = (0..z.values.nrows()).map(|i| z.values.get(i, j)).collect();
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            prop_assert!(mean.abs() < 1e-9);
        }
    }

    #[test]
    fn kmeans_objective_never_rises(values in prop::collection::vec(-50.0f64..50.0, 4..60), k in 1usize..4, seed: u64) {
        let data = Matrix::column(&values);
        let out = kmeans(&data, k, seed, KMeansParams::default()).unwrap();
        for w in out.trace.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9 * (1.0 + w[0]));
        }
        prop_assert_eq!(out.labels.len(), values.len());
    }

    #[test]
    fn ari_is_symmetric_and_bounded(a in prop::collection::vec(0u8..4, 2..50), salt in 0u8..4) {
        let b: Vec<u8> = a.iter().enumerate().map(|(i, &x)| if i % 3 == 0 { (x + salt) % 4 } else { x }).collect();
        let ab = adjusted_rand_index(&a, &b);
        let ba = adjusted_rand_index(&b, &a);
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab <= 1.0 + 1e-12);
        prop_assert_eq!(adjusted_rand_index(&a, &a), 1.0);
    }

    #[test]
    fn wide_csv_round_trip(rows in prop::collection::vec(counts(15), 1..10)) {
        let corpus = TrajectoryCorpus::new(
            rows.iter().enumerate()
                .map(|(i, c)| CitationTrajectory::new(format!("paper {i}"), 1990 + i as i32, c.clone()).unwrap())
                .collect(),
        );
        let mut buf = Vec::new();
        write_wide(&corpus, &mut buf).unwrap();
        let back = read_wide(buf.as_slice(), Path::new("mem.csv")).unwrap();
        prop_assert_eq!(back, corpus);
    }
}
