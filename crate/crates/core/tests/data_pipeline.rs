use std::fs;

use ensdiv::*;
use proptest::prelude::*;

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn load_small_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "toy.csv", "a,b,y\n1,10,0\n2,20,1\n3,40,1\n");
    let ds = load_csv(&p, "y").unwrap();
    assert_eq!(ds.len(), 3);
    assert_eq!(ds.labels(), &[0, 1, 1]);
    assert_eq!(ds.feature_names(), &["a", "b"]);
    assert_eq!(ds.features().row(1), &[0.5, 1.0 / 3.0]);
}

#[test]
fn csv_rejects_non_binary_label() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "bad.csv", "a,y\n1,0\n2,2\n3,1\n");
    assert!(matches!(
        load_csv(&p, "y"),
        Err(Error::NonBinaryLabel { row: 2, .. })
    ));
}

#[test]
fn csv_reports_non_numeric_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "bad.csv", "a,b,y\n1,2,0\n3,oops,1\n");
    match load_csv(&p, "y") {
        Err(Error::NonNumericCell { row, column, value }) => {
            assert_eq!((row, column, value.as_str()), (2, 2, "oops"));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(load_csv(&p, "missing").is_err());
}

#[test]
fn csv_keeps_conflict_feature_names() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = CONFLICT_FEATURES.join(",") + ",conflict\n";
    text += "1,0,3.2,1,0.5,-10,0.01,0\n0,1,2.1,0,1.5,10,0.2,1\n1,1,4.0,0,0.9,3,0.05,0\n";
    let p = write(&dir, "dyads.csv", &text);
    let ds = load_csv(&p, "conflict").unwrap();
    assert_eq!(ds.feature_names(), CONFLICT_FEATURES.map(String::from));
}

#[test]
fn well_separated_synthetic_is_learnable() {
    let ds = SyntheticParams {
        n: 1000,
        class1_fraction: 0.5,
        separation: 10.0,
        seed: 1,
    }
    .generate()
    .unwrap()
    .partition_stratified(SplitFractions::default(), 2)
    .unwrap();
    let cfg = ClassifierConfig::new(Activation::Logistic, 10, 0.05).unwrap();
    let clf = init_classifier(cfg, 7, 3)
        .unwrap()
        .train(&ds.samples(Split::Train).unwrap(), TrainOptions::default())
        .unwrap();
    let acc = clf.accuracy(&ds.samples(Split::Test).unwrap()).unwrap();
    assert!(acc >= 0.95, "{acc}");
}

#[test]
fn dataset_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ds = generate_synthetic(200, 0.3, 4)
        .unwrap()
        .partition_stratified(SplitFractions::default(), 5)
        .unwrap();
    let (csv_path, json_path) = ds.write(dir.path(), "data").unwrap();
    assert!(csv_path.exists() && json_path.exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(manifest["partition"].as_array().unwrap().len(), 200);
    assert_eq!(manifest["seed"], 5);
    let back = Dataset::read(dir.path(), "data").unwrap();
    assert_eq!(back, ds);
}

proptest! {
    #[test]
    fn normalization_is_idempotent_and_spans_unit(
        rows in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 3), 2..40),
    ) {
        let m = Matrix::from_rows(&rows).unwrap();
        let once = minmax_normalize(&m).unwrap();
        let twice = minmax_normalize(&once.values).unwrap();
        for c in 0..3 {
            let col: Vec<f64> = once.values.column(c).collect();
            prop_assert!(col.iter().all(|v| (0.0..=1.0).contains(v)));
            if !once.degenerate_columns.contains(&c) {
                let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!((lo, hi), (0.0, 1.0));
            }
        }
        prop_assert_eq!(&twice.values, &once.values);
    }

    #[test]
    fn stratification_preserves_ratio(n0 in 5usize..200, n1 in 5usize..200, seed in any::<u64>()) {
        let n = n0 + n1;
        let raw = Matrix::from_vec(n, 1, (0..n).map(|i| i as f64).collect()).unwrap();
        let labels = (0..n).map(|i| u8::from(i < n1)).collect();
        let ds = Dataset::from_raw(vec!["x".into()], &raw, labels).unwrap();
        let f = SplitFractions::default();
        let ds = ds.partition_stratified(f, seed).unwrap();
        let mut total = 0;
        for (split, frac) in [(Split::Train, f.train), (Split::Validation, f.validation), (Split::Test, f.test)] {
            let s = ds.samples(split).unwrap();
            let [c0, c1] = s.class_counts();
            prop_assert!(c0 > 0 && c1 > 0);
            // each class gets its share of the split to within one sample
            prop_assert!((c0 as f64 - frac * n0 as f64).abs() <= 1.0);
            prop_assert!((c1 as f64 - frac * n1 as f64).abs() <= 1.0);
            total += s.len();
        }
        prop_assert_eq!(total, n);
    }

    #[test]
    fn synthetic_is_bit_reproducible(seed in any::<u64>(), frac in 0.05f64..0.95) {
        let a = generate_synthetic(50, frac, seed).unwrap();
        let b = generate_synthetic(50, frac, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}
