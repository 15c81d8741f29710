//! End-to-end experiment: data, a trained pool of structurally distinct
//! classifiers, one GA search per target accuracy, and the diversity of
//! every selected ensemble.
//!
//! Seeds for each stage come from the master seed through
//! [`derive_seed`](crate::seed::derive_seed) with these labels:
//!
//! | stage                     | label            |
//! |---------------------------|------------------|
//! | synthetic data            | `data`           |
//! | stratified partition      | `partition`      |
//! | minority oversampling     | `oversample`     |
//! | grid cells for the pool   | `pool/sample`    |
//! | weights of pool member i  | `pool/init/{i}`  |
//! | target probing            | `probe`          |
//! | GA run for target i       | `ga/{i}`         |

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    Activation, ClassifierConfig, TrainOptions, TrainedClassifier, GRID_SIZE, LEARNING_RATES,
    MAX_HIDDEN, MIN_HIDDEN,
};
use crate::data::{load_csv, Dataset, Split, SplitFractions, SyntheticParams, DEFAULT_SEPARATION};
use crate::diversity::{diversity_report, DiversityReport, DEFAULT_ALPHAS};
use crate::ensemble::{VoteTable, DEFAULT_ENSEMBLE_SIZE};
use crate::error::{Error, Result};
use crate::evolve::{
    evolve_on_table, feasible_targets_on_table, FeasibleTarget, GaConfig, GaResult,
    DEFAULT_TARGET_TOLERANCE,
};
use crate::seed::derive_seed;

pub const CSV_HEADER: [&str; 7] = [
    "ensemble_id",
    "target_acc",
    "achieved_acc",
    "shannon",
    "simpson",
    "berger_parker",
    "species_richness",
];

/// Where experiment data comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DataSource {
    Synthetic {
        n: usize,
        class1_fraction: f64,
        #[serde(default = "default_separation")]
        separation: f64,
    },
    Csv {
        path: PathBuf,
        label_column: String,
    },
}

fn default_separation() -> f64 {
    DEFAULT_SEPARATION
}

impl Default for DataSource {
    fn default() -> Self {
        DataSource::Synthetic {
            n: 2000,
            class1_fraction: 0.5,
            separation: DEFAULT_SEPARATION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub pool_size: usize,
    pub ensemble_size: usize,
    /// Explicit target accuracies. When absent, `target_count` targets are
    /// spread evenly over the band reached by the probe searches.
    pub targets: Option<Vec<f64>>,
    pub target_count: usize,
    pub probe_targets: Vec<f64>,
    pub target_tolerance: f64,
    /// The seed field is ignored; GA seeds derive from `master_seed`.
    pub ga: GaConfig,
    pub data_source: DataSource,
    pub partition: SplitFractions,
    /// Duplicate minority rows of the training split up to this
    /// minority/majority ratio.
    pub oversample_minority: Option<f64>,
    pub epochs: usize,
    pub batch_size: usize,
    pub alphas: Vec<f64>,
    pub master_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            pool_size: 120,
            ensemble_size: DEFAULT_ENSEMBLE_SIZE,
            targets: None,
            target_count: 11,
            probe_targets: vec![0.0, 1.0],
            target_tolerance: DEFAULT_TARGET_TOLERANCE,
            ga: GaConfig::default(),
            data_source: DataSource::default(),
            partition: SplitFractions::default(),
            oversample_minority: None,
            epochs: TrainOptions::default().epochs,
            batch_size: TrainOptions::default().batch_size,
            alphas: DEFAULT_ALPHAS.to_vec(),
            master_seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidExperiment(m));
        if self.pool_size == 0 || self.pool_size > GRID_SIZE {
            return fail(format!(
                "pool_size {} must be in 1..={GRID_SIZE} (distinct grid cells)",
                self.pool_size
            ));
        }
        if self.ensemble_size == 0 || self.ensemble_size.is_multiple_of(2) {
            return fail(format!("ensemble_size {} must be odd", self.ensemble_size));
        }
        match &self.targets {
            Some(t) if t.is_empty() => return fail("targets is empty".into()),
            None if self.target_count == 0 => return fail("target_count is 0".into()),
            _ => {}
        }
        if self.probe_targets.is_empty() || self.probe_targets.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return fail("probe_targets must be non-empty and within [0, 1]".into());
        }
        if self.epochs == 0 || self.batch_size == 0 {
            return fail("epochs and batch_size must be positive".into());
        }
        self.ga.validate()?;
        self.partition.validate()?;
        Ok(())
    }

    fn train_options(&self) -> TrainOptions {
        TrainOptions {
            epochs: self.epochs,
            batch_size: self.batch_size,
        }
    }
}

/// Seeds actually used by a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedManifest {
    pub master: u64,
    pub rule: String,
    pub data: u64,
    pub partition: u64,
    pub pool_sample: u64,
    pub probe: u64,
    pub ga: Vec<u64>,
}

impl SeedManifest {
    fn new(master: u64, targets: usize) -> Self {
        SeedManifest {
            master,
            rule: "splitmix64(master ^ fnv1a64(label))".into(),
            data: derive_seed(master, "data"),
            partition: derive_seed(master, "partition"),
            pool_sample: derive_seed(master, "pool/sample"),
            probe: derive_seed(master, "probe"),
            ga: (0..targets).map(|i| derive_seed(master, &format!("ga/{i}"))).collect(),
        }
    }
}

/// Loads or generates the data and applies the stratified partition.
pub fn prepare_data(cfg: &ExperimentConfig) -> Result<Dataset> {
    let raw = match &cfg.data_source {
        DataSource::Synthetic {
            n,
            class1_fraction,
            separation,
        } => SyntheticParams {
            n: *n,
            class1_fraction: *class1_fraction,
            separation: *separation,
            seed: derive_seed(cfg.master_seed, "data"),
        }
        .generate()?,
        DataSource::Csv { path, label_column } => load_csv(path, label_column)?,
    };
    raw.partition_stratified(cfg.partition, derive_seed(cfg.master_seed, "partition"))
}

/// Samples `pool_size` distinct cells of the structure grid and trains one
/// classifier per cell on the training split.
pub fn build_pool(cfg: &ExperimentConfig, data: &Dataset) -> Result<Vec<TrainedClassifier>> {
    if cfg.pool_size > GRID_SIZE {
        return Err(Error::InvalidExperiment(format!(
            "pool_size {} exceeds the {GRID_SIZE}-cell grid",
            cfg.pool_size
        )));
    }
    let grid = ClassifierConfig::grid();
    let mut rng = crate::seed::rng_from_seed(derive_seed(cfg.master_seed, "pool/sample"));
    let cells = rand::seq::index::sample(&mut rng, GRID_SIZE, cfg.pool_size).into_vec();

    let train = data.samples(Split::Train)?;
    let fit_on = match cfg.oversample_minority {
        Some(ratio) => train.oversample_minority(ratio, derive_seed(cfg.master_seed, "oversample"))?,
        None => train.clone(),
    };
    let opts = cfg.train_options();
    cells
        .par_iter()
        .enumerate()
        .map(|(i, &cell)| {
            let seed = derive_seed(cfg.master_seed, &format!("pool/init/{i}"));
            let mut clf = TrainedClassifier::init(grid[cell], data.dim(), seed)?.train(&fit_on, opts)?;
            clf.set_train_accuracy(clf.accuracy(&train)?);
            Ok(clf)
        })
        .collect()
}

/// One selected ensemble. Failed GA runs keep their target and carry the
/// error message with NaN measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub ensemble_id: usize,
    pub target_accuracy: f64,
    pub validation_accuracy: f64,
    /// Majority-vote accuracy on the test split.
    pub achieved_accuracy: f64,
    pub best_fitness: f64,
    pub shannon_norm: f64,
    pub simpson_norm: f64,
    pub berger_parker_norm: f64,
    pub species_richness: usize,
    pub member_indices: Vec<usize>,
    pub member_species_keys: Vec<String>,
    pub fitness_history: Vec<f64>,
    pub error: Option<String>,
}

impl ExperimentRow {
    fn failed(ensemble_id: usize, target: f64, err: &Error) -> Self {
        ExperimentRow {
            ensemble_id,
            target_accuracy: target,
            validation_accuracy: f64::NAN,
            achieved_accuracy: f64::NAN,
            best_fitness: f64::NAN,
            shannon_norm: f64::NAN,
            simpson_norm: f64::NAN,
            berger_parker_norm: f64::NAN,
            species_richness: 0,
            member_indices: Vec::new(),
            member_species_keys: Vec::new(),
            fitness_history: Vec::new(),
            error: Some(err.to_string()),
        }
    }

    pub fn is_failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub dataset: Dataset,
    pub pool: Vec<TrainedClassifier>,
    pub probes: Vec<FeasibleTarget>,
    pub targets: Vec<f64>,
    pub rows: Vec<ExperimentRow>,
    pub reports: Vec<Option<DiversityReport>>,
    pub seeds: SeedManifest,
}

/// `count` evenly spaced values over `[lo, hi]`.
pub fn spread_targets(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

struct Selection {
    ga: GaResult,
    test_accuracy: f64,
    report: DiversityReport,
    keys: Vec<String>,
}

fn select_one(
    cfg: &ExperimentConfig,
    pool: &[TrainedClassifier],
    validation: &VoteTable,
    test: &VoteTable,
    target: f64,
    seed: u64,
) -> Result<Selection> {
    let ga = GaConfig {
        seed,
        ..cfg.ga.clone()
    };
    let result = evolve_on_table(validation, target, &ga, cfg.ensemble_size)?;
    let test_accuracy = test.accuracy(&result.best_ensemble)?;
    let configs: Vec<ClassifierConfig> = result
        .best_ensemble
        .members(pool)?
        .into_iter()
        .map(|c| *c.config())
        .collect();
    let report = diversity_report(&configs, &cfg.alphas)?;
    Ok(Selection {
        keys: configs.iter().map(ClassifierConfig::species_key).collect(),
        ga: result,
        test_accuracy,
        report,
    })
}

/// Runs the GA sweep against an already trained pool.
pub fn run_with_pool(
    cfg: &ExperimentConfig,
    dataset: Dataset,
    pool: Vec<TrainedClassifier>,
) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let validation = VoteTable::new(&pool, &dataset.samples(Split::Validation)?)?;
    let test = VoteTable::new(&pool, &dataset.samples(Split::Test)?)?;

    let probe_ga = GaConfig {
        seed: derive_seed(cfg.master_seed, "probe"),
        ..cfg.ga.clone()
    };
    let probe_targets: Vec<f64> = match &cfg.targets {
        Some(t) => t.iter().copied().filter(|t| (0.0..=1.0).contains(t)).collect(),
        None => cfg.probe_targets.clone(),
    };
    let probes = if probe_targets.is_empty() {
        Vec::new()
    } else {
        feasible_targets_on_table(
            &validation,
            &probe_targets,
            &probe_ga,
            cfg.ensemble_size,
            cfg.target_tolerance,
        )?
    };
    let targets = match &cfg.targets {
        Some(t) => t.clone(),
        None => {
            let (lo, hi) = probes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.achieved_accuracy), hi.max(p.achieved_accuracy))
            });
            spread_targets(lo, hi, cfg.target_count)
        }
    };
    for p in probes.iter().filter(|p| !p.attainable) {
        log::info!(
            "probe target {:.4} reached {:.4}",
            p.target,
            p.achieved_accuracy
        );
    }

    let seeds = SeedManifest::new(cfg.master_seed, targets.len());
    let selections: Vec<Result<Selection>> = targets
        .par_iter()
        .zip(&seeds.ga)
        .map(|(&target, &seed)| select_one(cfg, &pool, &validation, &test, target, seed))
        .collect();

    let mut rows = Vec::with_capacity(targets.len());
    let mut reports = Vec::with_capacity(targets.len());
    for (id, (sel, &target)) in selections.into_iter().zip(&targets).enumerate() {
        match sel {
            Ok(s) => {
                rows.push(ExperimentRow {
                    ensemble_id: id,
                    target_accuracy: target,
                    validation_accuracy: s.ga.achieved_accuracy,
                    achieved_accuracy: s.test_accuracy,
                    best_fitness: s.ga.best_fitness,
                    shannon_norm: s.report.shannon_norm,
                    simpson_norm: s.report.simpson_norm,
                    berger_parker_norm: s.report.berger_parker_norm,
                    species_richness: s.report.species_richness,
                    member_indices: s.ga.best_ensemble.member_indices().to_vec(),
                    member_species_keys: s.keys,
                    fitness_history: s.ga.fitness_history,
                    error: None,
                });
                reports.push(Some(s.report));
            }
            Err(e) => {
                log::warn!("target {target}: {e}");
                rows.push(ExperimentRow::failed(id, target, &e));
                reports.push(None);
            }
        }
    }
    Ok(ExperimentOutcome {
        config: cfg.clone(),
        dataset,
        pool,
        probes,
        targets,
        rows,
        reports,
        seeds,
    })
}

/// Builds data and pool, then sweeps the targets.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let dataset = prepare_data(cfg)?;
    let pool = build_pool(cfg, &dataset)?;
    run_with_pool(cfg, dataset, pool)
}

/// Writes the figure table: [`CSV_HEADER`] then one row per target, reals
/// with six decimals.
pub fn write_rows_csv<W: std::io::Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.ensemble_id.to_string(),
            format!("{:.6}", r.target_accuracy),
            format!("{:.6}", r.achieved_accuracy),
            format!("{:.6}", r.shannon_norm),
            format!("{:.6}", r.simpson_norm),
            format!("{:.6}", r.berger_parker_norm),
            r.species_richness.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Grid description stored beside a persisted pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub activations: Vec<Activation>,
    pub hidden_nodes: [u8; 2],
    pub learning_rates: Vec<f64>,
    pub size: usize,
}

impl Default for GridInfo {
    fn default() -> Self {
        GridInfo {
            activations: Activation::ALL.to_vec(),
            hidden_nodes: [MIN_HIDDEN, MAX_HIDDEN],
            learning_rates: LEARNING_RATES.to_vec(),
            size: GRID_SIZE,
        }
    }
}

/// `pool.json`: trained classifiers plus grid and seed metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolFile {
    pub grid: GridInfo,
    pub master_seed: u64,
    pub pool_sample_seed: u64,
    pub epochs: usize,
    pub batch_size: usize,
    pub classifiers: Vec<TrainedClassifier>,
}

impl PoolFile {
    pub fn new(cfg: &ExperimentConfig, classifiers: Vec<TrainedClassifier>) -> Self {
        PoolFile {
            grid: GridInfo::default(),
            master_seed: cfg.master_seed,
            pool_sample_seed: derive_seed(cfg.master_seed, "pool/sample"),
            epochs: cfg.epochs,
            batch_size: cfg.batch_size,
            classifiers,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    pub fn read(path: &Path) -> Result<Self> {
        read_json(path)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Serialize)]
struct ExperimentJson<'a> {
    config: &'a ExperimentConfig,
    seeds: &'a SeedManifest,
    probes: &'a [FeasibleTarget],
    targets: &'a [f64],
    rows: &'a [ExperimentRow],
    reports: &'a [Option<DiversityReport>],
}

/// Writes `experiment.csv`, `experiment.json`, `pool.json` and the
/// dataset files into `dir`; returns the CSV path.
pub fn write_outcome(outcome: &ExperimentOutcome, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv_path = dir.join("experiment.csv");
    let mut buf = Vec::new();
    write_rows_csv(&outcome.rows, &mut buf)?;
    let mut f = fs::File::create(&csv_path).map_err(|e| Error::io(&csv_path, e))?;
    f.write_all(&buf).map_err(|e| Error::io(&csv_path, e))?;

    write_json(
        &dir.join("experiment.json"),
        &ExperimentJson {
            config: &outcome.config,
            seeds: &outcome.seeds,
            probes: &outcome.probes,
            targets: &outcome.targets,
            rows: &outcome.rows,
            reports: &outcome.reports,
        },
    )?;
    PoolFile::new(&outcome.config, outcome.pool.clone()).write(&dir.join("pool.json"))?;
    outcome.dataset.write(dir, "dataset")?;
    Ok(csv_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_is_even() {
        assert_eq!(spread_targets(0.2, 0.6, 5), vec![0.2, 0.3, 0.4, 0.5, 0.6]);
        assert_eq!(spread_targets(0.2, 0.6, 1), vec![0.4]);
    }

    #[test]
    fn default_config_is_valid() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.pool_size, 120);
        assert_eq!(cfg.ensemble_size, 21);
        assert_eq!(cfg.target_count, 11);
    }

    #[test]
    fn config_rejects_bad_sizes() {
        let even = ExperimentConfig {
            ensemble_size: 20,
            ..Default::default()
        };
        assert!(even.validate().is_err());
        let big = ExperimentConfig {
            pool_size: 226,
            ..Default::default()
        };
        assert!(big.validate().is_err());
    }

    #[test]
    fn config_json_uses_field_names() {
        let json = r#"{"pool_size": 40, "targets": [0.6, 0.7],
            "data_source": {"kind": "synthetic", "n": 500, "class1_fraction": 0.3},
            "ga": {"generations": 10}}"#;
        let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.pool_size, 40);
        assert_eq!(cfg.ga.generations, 10);
        assert_eq!(cfg.ga.population_size, 40);
        assert_eq!(cfg.targets, Some(vec![0.6, 0.7]));
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"pool": 3}"#).is_err());
    }

    #[test]
    fn csv_header_and_format() {
        let row = ExperimentRow {
            ensemble_id: 0,
            target_accuracy: 0.7,
            validation_accuracy: 0.7,
            achieved_accuracy: 0.68,
            best_fitness: 0.0,
            shannon_norm: 1.0 / 3.0,
            simpson_norm: 0.5,
            berger_parker_norm: 1.0 / 21.0,
            species_richness: 2,
            member_indices: vec![],
            member_species_keys: vec![],
            fitness_history: vec![],
            error: None,
        };
        let mut out = Vec::new();
        write_rows_csv(&[row], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "ensemble_id,target_acc,achieved_acc,shannon,simpson,berger_parker,species_richness\n\
             0,0.700000,0.680000,0.333333,0.500000,0.047619,2\n"
        );
    }
}
