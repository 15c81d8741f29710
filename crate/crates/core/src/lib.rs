//! Structural diversity of classifier ensembles.
//!
//! Classifiers are grouped into species by their structure (output
//! activation, hidden nodes, learning rate). Entropy-based indices (Shannon,
//! Simpson, Berger-Parker, and the Rényi family they come from) quantify
//! how varied an ensemble is. A genetic algorithm picks fixed-size
//! ensembles from a trained pool so that diversity can be compared against
//! majority-vote accuracy.
//!
//! ```
//! use ensdiv::{diversity_report, Activation, ClassifierConfig, DEFAULT_ALPHAS};
//!
//! let a = ClassifierConfig::new(Activation::Logistic, 7, 0.01).unwrap();
//! let b = ClassifierConfig::new(Activation::Linear, 9, 0.03).unwrap();
//! let mut members = vec![a; 14];
//! members.extend(vec![b; 7]);
//!
//! let report = diversity_report(&members, &DEFAULT_ALPHAS).unwrap();
//! assert_eq!(report.species_richness, 2);
//! assert!((report.simpson_norm - 4.0 / 9.0).abs() < 1e-12);
//! ```

pub mod classifier;
pub mod data;
pub mod diversity;
pub mod ensemble;
pub mod error;
pub mod evolve;
pub mod harness;
pub mod matrix;
pub mod seed;

pub use classifier::{
    init_classifier, species_key, Activation, ClassifierConfig, TrainOptions, TrainedClassifier,
    GRID_SIZE, LEARNING_RATES,
};
pub use data::{
    generate_synthetic, load_csv, minmax_normalize, Dataset, Samples, Split, SplitFractions,
    SyntheticParams, CONFLICT_FEATURES, CONFLICT_FRACTION,
};
pub use diversity::{
    berger_parker_index, diversity_report, renyi_entropy, shannon_entropy, shannon_index,
    simpson_index, species_distribution, uncertainty, DiversityReport, SpeciesDistribution,
    DEFAULT_ALPHAS,
};
pub use ensemble::{accuracy, vote, Classify, Ensemble, VoteTable, DEFAULT_ENSEMBLE_SIZE};
pub use error::{Error, Result};
pub use evolve::{
    evolve, evolve_with, feasible_targets, fitness, Evolution, FeasibleTarget, GaConfig, GaResult,
    Objective,
};
pub use harness::{
    build_pool, prepare_data, run_experiment, run_with_pool, DataSource, ExperimentConfig,
    ExperimentOutcome, ExperimentRow, PoolFile,
};
pub use matrix::Matrix;
