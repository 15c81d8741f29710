use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ensdiv::evolve::evolve_on_table;
use ensdiv::harness::{write_json, write_outcome};
use ensdiv::seed::derive_seed;
use ensdiv::*;
use serde_json::json;

// println! panics on a closed pipe (`ensdiv measure ... | head`).
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

const USAGE_ERROR: u8 = 1;
const DATA_ERROR: u8 = 2;

/// Structural diversity of classifier ensembles.
#[derive(Parser, Debug)]
#[command(name = "ensdiv", version, about)]
struct Cli {
    /// Master seed; overrides `master_seed` from the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Experiment config JSON; every subcommand starts from it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate (or load) a dataset, partition it, write dataset.csv/json.
    GenData(GenData),
    /// Train a pool of classifiers on the training split, write pool.json.
    TrainPool(TrainPool),
    /// One GA run against a persisted pool, write ga_result.json.
    Evolve(EvolveArgs),
    /// Diversity report for a persisted ensemble.
    Measure(Measure),
    /// Full experiment: pool, target sweep, diversity table.
    Experiment,
}

#[derive(Args, Debug)]
struct GenData {
    /// Number of synthetic rows.
    #[arg(long)]
    n: Option<usize>,
    /// Fraction of class-1 rows.
    #[arg(long)]
    fraction: Option<f64>,
    /// Distance between class means.
    #[arg(long)]
    separation: Option<f64>,
    /// Load this CSV instead of generating data.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "fraction", "separation"])]
    csv: Option<PathBuf>,
    /// Label column of `--csv`.
    #[arg(long, default_value = "label", requires = "csv")]
    label: String,
}

#[derive(Args, Debug)]
struct TrainPool {
    /// Directory holding dataset.csv/json; generated from the config if absent.
    #[arg(long, value_name = "DIR")]
    data: Option<PathBuf>,
    #[arg(long)]
    pool_size: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// Target majority-vote accuracy on the validation split.
    #[arg(long)]
    target: f64,
    #[arg(long, value_name = "FILE", default_value = "pool.json")]
    pool: PathBuf,
    /// Directory holding dataset.csv/json.
    #[arg(long, value_name = "DIR", default_value = ".")]
    data: PathBuf,
    #[arg(long)]
    ensemble_size: Option<usize>,
}

#[derive(Args, Debug)]
struct Measure {
    /// JSON array of pool indices, or a ga_result.json.
    #[arg(long, value_name = "FILE")]
    ensemble: PathBuf,
    #[arg(long, value_name = "FILE", default_value = "pool.json")]
    pool: PathBuf,
    /// Also report test accuracy against this dataset directory.
    #[arg(long, value_name = "DIR")]
    data: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Bad parameter values are usage errors; anything about files or their
/// contents is a data error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AlphaOutOfRange(_)
        | Error::ProbabilityOutOfRange(_)
        | Error::InvalidConfig(_)
        | Error::OutOfRange(_)
        | Error::InvalidGaConfig(_)
        | Error::InvalidPartition(_)
        | Error::InvalidExperiment(_) => USAGE_ERROR,
        _ => DATA_ERROR,
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.master_seed = seed;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = load_config(&cli)?;
    let out = cli.out.as_path();
    match cli.command {
        Command::GenData(args) => {
            if let Some(path) = args.csv {
                cfg.data_source = DataSource::Csv {
                    path,
                    label_column: args.label,
                };
            } else if let DataSource::Synthetic {
                n,
                class1_fraction,
                separation,
            } = &mut cfg.data_source
            {
                *n = args.n.unwrap_or(*n);
                *class1_fraction = args.fraction.unwrap_or(*class1_fraction);
                *separation = args.separation.unwrap_or(*separation);
            }
            let data = prepare_data(&cfg)?;
            let (csv, _) = data.write(out, "dataset")?;
            let [c0, c1] = data.class_counts();
            say!("wrote {} ({} rows: {c0} class 0, {c1} class 1)", csv.display(), data.len());
        }
        Command::TrainPool(args) => {
            cfg.pool_size = args.pool_size.unwrap_or(cfg.pool_size);
            cfg.epochs = args.epochs.unwrap_or(cfg.epochs);
            cfg.validate()?;
            let data = match &args.data {
                Some(dir) => Dataset::read(dir, "dataset")?,
                None => prepare_data(&cfg)?,
            };
            let pool = build_pool(&cfg, &data)?;
            let path = out.join("pool.json");
            PoolFile::new(&cfg, pool).write(&path)?;
            if args.data.is_none() {
                data.write(out, "dataset")?;
            }
            say!("wrote {} ({} classifiers)", path.display(), cfg.pool_size);
        }
        Command::Evolve(args) => {
            let size = args.ensemble_size.unwrap_or(cfg.ensemble_size);
            let pool = PoolFile::read(&args.pool)?.classifiers;
            let data = Dataset::read(&args.data, "dataset")?;
            let validation = VoteTable::new(&pool, &data.samples(Split::Validation)?)?;
            let ga = GaConfig {
                seed: derive_seed(cfg.master_seed, "evolve"),
                ..cfg.ga
            };
            let result = evolve_on_table(&validation, args.target, &ga, size)?;
            let test = VoteTable::new(&pool, &data.samples(Split::Test)?)?;
            let test_acc = test.accuracy(&result.best_ensemble)?;
            let members = result.best_ensemble.members(&pool)?;
            let configs: Vec<ClassifierConfig> = members.iter().map(|c| *c.config()).collect();
            let report = diversity_report(&configs, &cfg.alphas)?;

            write_json(&out.join("ga_result.json"), &result)?;
            write_json(&out.join("ensemble.json"), &result.best_ensemble)?;
            say!(
                "target {:.6} validation {:.6} test {test_acc:.6} fitness {:.6e}",
                result.target, result.achieved_accuracy, result.best_fitness
            );
            print_report(&report);
        }
        Command::Measure(args) => {
            let pool = PoolFile::read(&args.pool)?.classifiers;
            let ensemble = read_ensemble(&args.ensemble)?;
            let configs: Vec<ClassifierConfig> =
                ensemble.members(&pool)?.iter().map(|c| *c.config()).collect();
            let report = diversity_report(&configs, &cfg.alphas)?;
            let mut doc = json!({ "ensemble": ensemble, "report": report });
            if let Some(dir) = &args.data {
                let data = Dataset::read(dir, "dataset")?;
                let test = data.samples(Split::Test)?;
                let acc = accuracy(&pool, &ensemble, &test)?;
                say!("test_accuracy {acc:.6}");
                doc["test_accuracy"] = json!(acc);
            }
            print_report(&report);
            write_json(&out.join("measure.json"), &doc)?;
        }
        Command::Experiment => {
            let outcome = run_experiment(&cfg)?;
            let csv = write_outcome(&outcome, out)?;
            let failed = outcome.rows.iter().filter(|r| r.is_failed()).count();
            say!("wrote {} ({} rows, {failed} failed)", csv.display(), outcome.rows.len());
        }
    }
    Ok(())
}

/// Accepts a bare index array or anything with a `best_ensemble` field.
fn read_ensemble(path: &Path) -> Result<Ensemble> {
    let value: serde_json::Value = ensdiv::harness::read_json(path)?;
    let inner = value.get("best_ensemble").cloned().unwrap_or(value);
    Ok(serde_json::from_value(inner)?)
}

fn print_report(r: &DiversityReport) {
    say!("shannon {:.6}", r.shannon_norm);
    say!("simpson {:.6}", r.simpson_norm);
    say!("berger_parker {:.6}", r.berger_parker_norm);
    say!("species_richness {}", r.species_richness);
    say!("ensemble_size {}", r.ensemble_size);
    for p in &r.renyi_profile {
        say!("renyi[{}] {:.6}", p.alpha, p.entropy);
    }
}
