//! Binary-classification datasets.
//!
//! Features are min-max normalized column by column into `[0, 1]` and rows
//! are assigned to train / validation / test splits by a stratified,
//! seeded partition. Data comes either from a synthetic generator with the
//! seven inputs of the interstate-conflict table or from a numeric CSV.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::seed::rng_from_seed;

/// Input names of the interstate-conflict data, in column order.
pub const CONFLICT_FEATURES: [&str; 7] = [
    "Allies",
    "Contingency",
    "Distance",
    "Major Power",
    "Capability",
    "Democracy",
    "Dependency",
];

/// Conflict fraction of the cold-war dyad-year population (875 of 27,737).
pub const CONFLICT_FRACTION: f64 = 875.0 / 27_737.0;

pub const DEFAULT_SEPARATION: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Validation, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

/// Observed range of one raw feature column.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnRange {
    pub min: f64,
    pub max: f64,
}

impl ColumnRange {
    pub fn is_degenerate(&self) -> bool {
        self.max <= self.min
    }

    /// Maps a raw value into the normalized scale. Unseen data may land
    /// outside `[0, 1]`; degenerate ranges map everything to zero.
    pub fn normalize(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            (x - self.min) / (self.max - self.min)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub values: Matrix,
    pub ranges: Vec<ColumnRange>,
    /// Columns whose min equals max; these were mapped to all zeros.
    pub degenerate_columns: Vec<usize>,
}

impl Normalized {
    pub fn has_warning(&self) -> bool {
        !self.degenerate_columns.is_empty()
    }
}

/// Min-max normalization, `(x - min) / (max - min)` per column.
pub fn minmax_normalize(features: &Matrix) -> Result<Normalized> {
    let (rows, cols) = features.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDataset("empty feature matrix".into()));
    }
    if rows < 2 {
        return Err(Error::InvalidDataset(
            "min-max normalization needs at least two rows".into(),
        ));
    }
    let mut ranges = Vec::with_capacity(cols);
    let mut degenerate_columns = Vec::new();
    for c in 0..cols {
        let (min, max) = features
            .column(c)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidDataset(format!(
                "column {c} contains non-finite values"
            )));
        }
        let range = ColumnRange { min, max };
        if range.is_degenerate() {
            log::warn!("column {c} is constant ({min}); normalized to zeros");
            degenerate_columns.push(c);
        }
        ranges.push(range);
    }
    let mut values = features.clone();
    for r in 0..rows {
        for (v, range) in values.row_mut(r).iter_mut().zip(&ranges) {
            *v = range.normalize(*v);
        }
    }
    Ok(Normalized {
        values,
        ranges,
        degenerate_columns,
    })
}

/// A labeled sample set: one split (or all rows) of a dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    features: Matrix,
    labels: Vec<u8>,
}

impl Samples {
    pub fn new(features: Matrix, labels: Vec<u8>) -> Result<Self> {
        if features.rows() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.rows(),
                got: labels.len(),
            });
        }
        if let Some(row) = labels.iter().position(|&l| l > 1) {
            return Err(Error::NonBinaryLabel {
                row,
                value: f64::from(labels[row]),
            });
        }
        Ok(Samples { features, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        self.features.row(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], u8)> + '_ {
        (0..self.len()).map(move |i| (self.row(i), self.labels[i]))
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.len() - ones, ones]
    }

    /// Concatenates two sample sets of the same dimension.
    pub fn concat(&self, other: &Samples) -> Result<Samples> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut data = self.features.as_slice().to_vec();
        data.extend_from_slice(other.features.as_slice());
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Samples::new(
            Matrix::from_vec(labels.len(), self.dim(), data)?,
            labels,
        )
    }

    /// Duplicates randomly chosen minority-class rows until
    /// `minority / majority >= target_ratio`.
    pub fn oversample_minority(&self, target_ratio: f64, seed: u64) -> Result<Samples> {
        if !(target_ratio > 0.0 && target_ratio <= 1.0) {
            return Err(Error::OutOfRange(format!(
                "oversampling ratio {target_ratio} not in (0, 1]"
            )));
        }
        let counts = self.class_counts();
        let minority_label = u8::from(counts[1] < counts[0]);
        let minority: Vec<usize> = (0..self.len())
            .filter(|&i| self.labels[i] == minority_label)
            .collect();
        if minority.is_empty() {
            return Err(Error::InvalidDataset(
                "cannot oversample a class with no rows".into(),
            ));
        }
        let majority = counts[usize::from(1 - minority_label)] as f64;
        let wanted = (target_ratio * majority).ceil() as usize;
        let mut rng = rng_from_seed(seed);
        let mut data = self.features.as_slice().to_vec();
        let mut labels = self.labels.clone();
        for _ in minority.len()..wanted {
            let pick = minority[rng.random_range(0..minority.len())];
            data.extend_from_slice(self.row(pick));
            labels.push(minority_label);
        }
        Samples::new(Matrix::from_vec(labels.len(), self.dim(), data)?, labels)
    }
}

/// Train / validation / test fractions; each positive, summing to one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitFractions {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        SplitFractions {
            train: 0.6,
            validation: 0.2,
            test: 0.2,
        }
    }
}

impl SplitFractions {
    pub fn new(train: f64, validation: f64, test: f64) -> Result<Self> {
        let f = SplitFractions {
            train,
            validation,
            test,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.validation, self.test];
        if parts.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidPartition(format!(
                "fractions must be positive, got {parts:?}"
            )));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidPartition(format!(
                "fractions must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

/// A normalized feature matrix with binary labels and, once partitioned,
/// a split assignment for every row.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    feature_names: Vec<String>,
    features: Matrix,
    labels: Vec<u8>,
    ranges: Vec<ColumnRange>,
    partition: Option<Vec<Split>>,
    seed: Option<u64>,
}

impl Dataset {
    /// Normalizes `raw` and wraps it as an unpartitioned dataset.
    pub fn from_raw(feature_names: Vec<String>, raw: &Matrix, labels: Vec<u8>) -> Result<Self> {
        if feature_names.len() != raw.cols() {
            return Err(Error::DimensionMismatch {
                expected: raw.cols(),
                got: feature_names.len(),
            });
        }
        if raw.rows() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: raw.rows(),
                got: labels.len(),
            });
        }
        if let Some(row) = labels.iter().position(|&l| l > 1) {
            return Err(Error::NonBinaryLabel {
                row,
                value: f64::from(labels[row]),
            });
        }
        let normalized = minmax_normalize(raw)?;
        Ok(Dataset {
            feature_names,
            features: normalized.values,
            labels,
            ranges: normalized.ranges,
            partition: None,
            seed: None,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn ranges(&self) -> &[ColumnRange] {
        &self.ranges
    }

    pub fn partition(&self) -> Option<&[Split]> {
        self.partition.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.len() - ones, ones]
    }

    /// Every row, ignoring the partition.
    pub fn all_samples(&self) -> Samples {
        Samples {
            features: self.features.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Rows assigned to `split`, in dataset order.
    pub fn samples(&self, split: Split) -> Result<Samples> {
        let partition = self
            .partition
            .as_ref()
            .ok_or_else(|| Error::InvalidPartition("dataset is not partitioned".into()))?;
        let rows: Vec<usize> = (0..self.len()).filter(|&i| partition[i] == split).collect();
        let mut data = Vec::with_capacity(rows.len() * self.dim());
        for &r in &rows {
            data.extend_from_slice(self.features.row(r));
        }
        Samples::new(
            Matrix::from_vec(rows.len(), self.dim(), data)?,
            rows.iter().map(|&r| self.labels[r]).collect(),
        )
    }

    /// Stratified split: each class is shuffled on its own and cut by the
    /// requested fractions, so every split keeps the class ratio to within
    /// one sample.
    pub fn partition_stratified(&self, fractions: SplitFractions, seed: u64) -> Result<Dataset> {
        fractions.validate()?;
        let mut rng = rng_from_seed(seed);
        let mut assignment = vec![Split::Train; self.len()];
        for class in [0u8, 1] {
            let mut rows: Vec<usize> = (0..self.len()).filter(|&i| self.labels[i] == class).collect();
            let n = rows.len();
            let n_train = (fractions.train * n as f64).round() as usize;
            let n_val = ((fractions.validation * n as f64).round() as usize).min(n - n_train.min(n));
            let n_train = n_train.min(n);
            let n_test = n - n_train - n_val;
            for (split, count) in Split::ALL.iter().zip([n_train, n_val, n_test]) {
                if count == 0 {
                    return Err(Error::InvalidPartition(format!(
                        "{} split would receive no samples of class {class} ({n} available)",
                        split.name()
                    )));
                }
            }
            rows.shuffle(&mut rng);
            for (k, &r) in rows.iter().enumerate() {
                assignment[r] = if k < n_train {
                    Split::Train
                } else if k < n_train + n_val {
                    Split::Validation
                } else {
                    Split::Test
                };
            }
        }
        let mut out = self.clone();
        out.partition = Some(assignment);
        out.seed = Some(seed);
        Ok(out)
    }

    /// Writes `<stem>.csv` (normalized features plus `label`) and the
    /// `<stem>.json` manifest into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let csv_path = dir.join(format!("{stem}.csv"));
        let json_path = dir.join(format!("{stem}.json"));
        let mut w = csv::Writer::from_path(&csv_path)?;
        let mut header: Vec<&str> = self.feature_names.iter().map(String::as_str).collect();
        header.push("label");
        w.write_record(&header)?;
        for i in 0..self.len() {
            let mut record: Vec<String> = self.features.row(i).iter().map(f64::to_string).collect();
            record.push(self.labels[i].to_string());
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| Error::io(&csv_path, e))?;
        let manifest = DatasetManifest {
            csv: format!("{stem}.csv"),
            rows: self.len(),
            feature_names: self.feature_names.clone(),
            ranges: self.ranges.clone(),
            partition: self.partition.clone(),
            seed: self.seed,
        };
        let json = serde_json::to_string_pretty(&manifest)?;
        fs::write(&json_path, json + "\n").map_err(|e| Error::io(&json_path, e))?;
        Ok((csv_path, json_path))
    }

    /// Reads a dataset written by [`Dataset::write`]. Values are taken as
    /// already normalized.
    pub fn read(dir: &Path, stem: &str) -> Result<Dataset> {
        let json_path = dir.join(format!("{stem}.json"));
        let text = fs::read_to_string(&json_path).map_err(|e| Error::io(&json_path, e))?;
        let manifest: DatasetManifest = serde_json::from_str(&text)?;
        let csv_path = dir.join(&manifest.csv);
        let (names, raw, labels) = read_numeric_csv(&csv_path, "label")?;
        if names != manifest.feature_names {
            return Err(Error::InvalidDataset(format!(
                "{}: header does not match manifest feature names",
                csv_path.display()
            )));
        }
        if raw.rows() != manifest.rows || manifest.ranges.len() != raw.cols() {
            return Err(Error::InvalidDataset(format!(
                "{}: shape does not match manifest",
                csv_path.display()
            )));
        }
        if let Some(p) = &manifest.partition {
            if p.len() != raw.rows() {
                return Err(Error::InvalidPartition(
                    "manifest partition length differs from row count".into(),
                ));
            }
        }
        if raw.as_slice().iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidDataset(format!(
                "{}: values outside [0, 1]; use load_csv for raw data",
                csv_path.display()
            )));
        }
        Ok(Dataset {
            feature_names: names,
            features: raw,
            labels,
            ranges: manifest.ranges,
            partition: manifest.partition,
            seed: manifest.seed,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct DatasetManifest {
    csv: String,
    rows: usize,
    feature_names: Vec<String>,
    ranges: Vec<ColumnRange>,
    partition: Option<Vec<Split>>,
    seed: Option<u64>,
}

fn read_numeric_csv(path: &Path, label_column: &str) -> Result<(Vec<String>, Matrix, Vec<u8>)> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let label_idx = headers
        .iter()
        .position(|h| h.trim() == label_column)
        .ok_or_else(|| {
            Error::InvalidDataset(format!(
                "{}: no label column named {label_column:?}",
                path.display()
            ))
        })?;
    let names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.trim().to_string())
        .collect();
    let mut data = Vec::new();
    let mut labels = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        // 1-based data row, header excluded
        let row = r + 1;
        for (c, cell) in record.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| Error::NonNumericCell {
                row,
                column: c + 1,
                value: cell.to_string(),
            })?;
            if c == label_idx {
                labels.push(match value {
                    v if v == 0.0 => 0,
                    v if v == 1.0 => 1,
                    v => return Err(Error::NonBinaryLabel { row, value: v }),
                });
            } else {
                data.push(value);
            }
        }
    }
    let matrix = Matrix::from_vec(labels.len(), names.len(), data)?;
    Ok((names, matrix, labels))
}

/// Loads a numeric CSV with a header row. `label_column` names the binary
/// target; every other column becomes a feature and is min-max normalized.
pub fn load_csv(path: impl AsRef<Path>, label_column: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let (names, raw, labels) = read_numeric_csv(path, label_column)?;
    if labels.is_empty() {
        return Err(Error::EmptyData);
    }
    Dataset::from_raw(names, &raw, labels)
}

/// Parameters of the synthetic seven-feature generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticParams {
    pub n: usize,
    pub class1_fraction: f64,
    /// Distance between the two class means, in units of the per-feature
    /// standard deviation.
    pub separation: f64,
    pub seed: u64,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        SyntheticParams {
            n: 2000,
            class1_fraction: 0.5,
            separation: DEFAULT_SEPARATION,
            seed: 0,
        }
    }
}

impl SyntheticParams {
    /// Two unit-variance Gaussian clouds in seven dimensions whose means
    /// are `separation` apart along the diagonal. Rows are shuffled, then
    /// normalized.
    pub fn generate(&self) -> Result<Dataset> {
        if self.n < 20 {
            return Err(Error::InvalidDataset(format!(
                "synthetic data needs n >= 20, got {}",
                self.n
            )));
        }
        if !(self.class1_fraction > 0.0 && self.class1_fraction < 1.0) {
            return Err(Error::OutOfRange(format!(
                "class1_fraction {} not in (0, 1)",
                self.class1_fraction
            )));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "separation {} must be finite and non-negative",
                self.separation
            )));
        }
        let d = CONFLICT_FEATURES.len();
        let n1 = ((self.n as f64 * self.class1_fraction).round() as usize).clamp(1, self.n - 1);
        let mut labels: Vec<u8> = (0..self.n).map(|i| u8::from(i < n1)).collect();
        let mut rng = rng_from_seed(self.seed);
        labels.shuffle(&mut rng);

        let shift = self.separation / (d as f64).sqrt();
        let noise = Normal::new(0.0, 1.0).expect("unit normal");
        let mut data = Vec::with_capacity(self.n * d);
        for &label in &labels {
            let mean = if label == 1 { shift } else { 0.0 };
            data.extend((0..d).map(|_| mean + noise.sample(&mut rng)));
        }
        let raw = Matrix::from_vec(self.n, d, data)?;
        let mut ds = Dataset::from_raw(
            CONFLICT_FEATURES.iter().map(|s| s.to_string()).collect(),
            &raw,
            labels,
        )?;
        ds.seed = Some(self.seed);
        Ok(ds)
    }
}

/// Synthetic dataset with the default class separation.
pub fn generate_synthetic(n: usize, class1_fraction: f64, seed: u64) -> Result<Dataset> {
    SyntheticParams {
        n,
        class1_fraction,
        seed,
        ..SyntheticParams::default()
    }
    .generate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(values: &[f64]) -> Matrix {
        Matrix::from_vec(values.len(), 1, values.to_vec()).unwrap()
    }

    #[test]
    fn minmax_endpoints() {
        let n = minmax_normalize(&col(&[2.0, 4.0, 6.0])).unwrap();
        assert_eq!(n.values.as_slice(), &[0.0, 0.5, 1.0]);
        assert!(!n.has_warning());
        assert_eq!(n.ranges[0], ColumnRange { min: 2.0, max: 6.0 });
    }

    #[test]
    fn minmax_constant_column_warns() {
        let n = minmax_normalize(&col(&[3.0, 3.0, 3.0])).unwrap();
        assert_eq!(n.values.as_slice(), &[0.0, 0.0, 0.0]);
        assert_eq!(n.degenerate_columns, vec![0]);
    }

    #[test]
    fn minmax_unit_column_unchanged() {
        let v = [0.0, 0.25, 1.0, 0.7];
        let n = minmax_normalize(&col(&v)).unwrap();
        assert_eq!(n.values.as_slice(), &v);
    }

    #[test]
    fn minmax_rejects_empty() {
        assert!(minmax_normalize(&Matrix::zeros(0, 3)).is_err());
        assert!(minmax_normalize(&Matrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn synthetic_imbalance_preset() {
        let ds = generate_synthetic(1000, CONFLICT_FRACTION, 3).unwrap();
        assert_eq!(ds.class_counts(), [968, 32]);
        assert_eq!(ds.dim(), 7);
        assert_eq!(ds.feature_names()[3], "Major Power");
    }

    #[test]
    fn synthetic_is_deterministic() {
        let a = generate_synthetic(300, 0.4, 11).unwrap();
        let b = generate_synthetic(300, 0.4, 11).unwrap();
        let c = generate_synthetic(300, 0.4, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.features(), c.features());
    }

    #[test]
    fn synthetic_rejects_bad_fraction() {
        assert!(generate_synthetic(100, 0.0, 1).is_err());
        assert!(generate_synthetic(100, 1.0, 1).is_err());
        assert!(generate_synthetic(10, 0.5, 1).is_err());
    }

    fn balanced(n: usize) -> Dataset {
        let raw = Matrix::from_vec(n, 1, (0..n).map(|i| i as f64).collect()).unwrap();
        let labels = (0..n).map(|i| (i % 2) as u8).collect();
        Dataset::from_raw(vec!["x".into()], &raw, labels).unwrap()
    }

    #[test]
    fn stratified_partition_arithmetic() {
        let ds = balanced(100)
            .partition_stratified(SplitFractions::default(), 5)
            .unwrap();
        let expect = [(Split::Train, 30), (Split::Validation, 10), (Split::Test, 10)];
        for (split, per_class) in expect {
            let s = ds.samples(split).unwrap();
            assert_eq!(s.class_counts(), [per_class, per_class], "{split:?}");
        }
    }

    #[test]
    fn partition_rejects_zero_fraction() {
        assert!(SplitFractions::new(0.5, 0.5, 0.0).is_err());
        let f = SplitFractions {
            train: 0.5,
            validation: 0.5,
            test: 0.0,
        };
        assert!(balanced(10).partition_stratified(f, 1).is_err());
    }

    #[test]
    fn partition_rejects_starved_split() {
        let raw = Matrix::from_vec(10, 1, (0..10).map(f64::from).collect()).unwrap();
        let mut labels = vec![0u8; 10];
        labels[0] = 1;
        labels[1] = 1;
        let ds = Dataset::from_raw(vec!["x".into()], &raw, labels).unwrap();
        let err = ds
            .partition_stratified(SplitFractions::default(), 0)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidPartition(_)));
    }

    #[test]
    fn partition_is_deterministic() {
        let a = balanced(60).partition_stratified(SplitFractions::default(), 9).unwrap();
        let b = balanced(60).partition_stratified(SplitFractions::default(), 9).unwrap();
        assert_eq!(a.partition(), b.partition());
    }

    #[test]
    fn samples_require_partition() {
        assert!(balanced(10).samples(Split::Train).is_err());
    }

    #[test]
    fn oversampling_reaches_ratio() {
        let ds = generate_synthetic(500, 0.1, 2).unwrap();
        let s = ds.all_samples();
        let up = s.oversample_minority(0.5, 4).unwrap();
        let [c0, c1] = up.class_counts();
        assert_eq!(c0, s.class_counts()[0]);
        assert!(c1 as f64 / c0 as f64 >= 0.5);
        assert!((c1 as f64 - 0.5 * c0 as f64) < 1.0);
    }
}
