//! Genetic search for an ensemble whose accuracy hits a target.
//!
//! A chromosome is a sequence of pool indices (one gene per ensemble slot).
//! Each generation keeps the `elitism_count` best chromosomes unchanged and
//! fills the rest with tournament-selected parents recombined by uniform
//! crossover and per-gene resampling mutation. The default objective is the
//! parabola `−(accuracy − target)²`, maximal at zero.

use std::collections::{HashMap, HashSet};

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::Samples;
use crate::ensemble::{Classify, Ensemble, VoteTable};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed, Rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-gene probability of resampling.
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elitism_count: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 40,
            generations: 60,
            crossover_rate: 0.8,
            mutation_rate: 0.05,
            tournament_size: 3,
            elitism_count: 2,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidGaConfig(msg));
        if self.population_size < 2 {
            return fail(format!("population_size {} < 2", self.population_size));
        }
        if self.elitism_count >= self.population_size {
            return fail(format!(
                "elitism_count {} must be below population_size {}",
                self.elitism_count, self.population_size
            ));
        }
        if self.tournament_size < 1 {
            return fail("tournament_size must be at least 1".into());
        }
        for (name, rate) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&rate) {
                return fail(format!("{name} {rate} not in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Parabolic fitness `−(acc − target)²`.
pub fn fitness(acc: f64, target: f64) -> Result<f64> {
    for (name, v) in [("accuracy", acc), ("target", target)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(format!("{name} {v} not in [0, 1]")));
        }
    }
    Ok(-(acc - target).powi(2))
}

/// Scores a chromosome; larger is better. Chromosomes arrive with their
/// genes sorted, so the objective must not depend on gene order.
pub trait Objective: Sync {
    fn score(&self, chromosome: &[usize]) -> f64;
}

impl<F: Fn(&[usize]) -> f64 + Sync> Objective for F {
    fn score(&self, chromosome: &[usize]) -> f64 {
        self(chromosome)
    }
}

/// Outcome of a raw search.
#[derive(Clone, Debug, PartialEq)]
pub struct Evolution {
    pub best: Vec<usize>,
    pub best_fitness: f64,
    /// Best fitness in the population at generation 0, 1, …
    pub history: Vec<f64>,
    /// Distinct multisets scored.
    pub evaluations: usize,
}

struct Population {
    chromosomes: Vec<Vec<usize>>,
    fitness: Vec<f64>,
}

struct Engine<'a, O: Objective> {
    pool_size: usize,
    ga: &'a GaConfig,
    objective: &'a O,
    cache: HashMap<Vec<usize>, f64>,
    rng: Rng,
}

fn canonical(chromosome: &[usize]) -> Vec<usize> {
    let mut key = chromosome.to_vec();
    key.sort_unstable();
    key
}

impl<O: Objective> Engine<'_, O> {
    /// Scores every chromosome, evaluating unseen multisets in parallel.
    fn evaluate(&mut self, chromosomes: Vec<Vec<usize>>) -> Population {
        let keys: Vec<Vec<usize>> = chromosomes.iter().map(|c| canonical(c)).collect();
        let mut seen = HashSet::new();
        let fresh: Vec<&Vec<usize>> = keys
            .iter()
            .filter(|k| !self.cache.contains_key(*k) && seen.insert(*k))
            .collect();
        let scores: Vec<f64> = fresh.par_iter().map(|k| self.objective.score(k)).collect();
        for (k, s) in fresh.into_iter().zip(scores) {
            self.cache.insert(k.clone(), s);
        }
        let fitness = keys.iter().map(|k| self.cache[k]).collect();
        Population {
            chromosomes,
            fitness,
        }
    }

    fn random_chromosome(&mut self, len: usize) -> Vec<usize> {
        (0..len).map(|_| self.rng.random_range(0..self.pool_size)).collect()
    }

    fn tournament<'p>(&mut self, pop: &'p Population) -> &'p [usize] {
        let n = pop.chromosomes.len();
        let mut best = self.rng.random_range(0..n);
        for _ in 1..self.ga.tournament_size {
            let c = self.rng.random_range(0..n);
            if pop.fitness[c] > pop.fitness[best] {
                best = c;
            }
        }
        &pop.chromosomes[best]
    }

    fn mutate(&mut self, chromosome: &mut [usize]) {
        for gene in chromosome {
            if self.rng.random::<f64>() < self.ga.mutation_rate {
                *gene = self.rng.random_range(0..self.pool_size);
            }
        }
    }

    fn next_generation(&mut self, pop: &Population) -> Vec<Vec<usize>> {
        let size = self.ga.population_size;
        let mut order: Vec<usize> = (0..pop.chromosomes.len()).collect();
        // stable: ties keep the lower index
        order.sort_by(|&a, &b| pop.fitness[b].total_cmp(&pop.fitness[a]));
        let mut next: Vec<Vec<usize>> = order[..self.ga.elitism_count]
            .iter()
            .map(|&i| pop.chromosomes[i].clone())
            .collect();
        while next.len() < size {
            let mut a = self.tournament(pop).to_vec();
            let mut b = self.tournament(pop).to_vec();
            if self.rng.random::<f64>() < self.ga.crossover_rate {
                for (ga, gb) in a.iter_mut().zip(b.iter_mut()) {
                    if self.rng.random::<bool>() {
                        std::mem::swap(ga, gb);
                    }
                }
            }
            self.mutate(&mut a);
            self.mutate(&mut b);
            next.push(a);
            if next.len() < size {
                next.push(b);
            }
        }
        next
    }
}

fn best_of(pop: &Population) -> (usize, f64) {
    let mut best = 0;
    for (i, &f) in pop.fitness.iter().enumerate() {
        if f > pop.fitness[best] {
            best = i;
        }
    }
    (best, pop.fitness[best])
}

/// Maximizes `objective` over chromosomes of `ensemble_size` genes drawn
/// from `0..pool_size`. Deterministic for a fixed `ga.seed`.
pub fn evolve_with<O: Objective>(
    pool_size: usize,
    ensemble_size: usize,
    ga: &GaConfig,
    objective: &O,
) -> Result<Evolution> {
    ga.validate()?;
    if pool_size == 0 {
        return Err(Error::InvalidEnsemble("empty pool".into()));
    }
    if ensemble_size == 0 || ensemble_size.is_multiple_of(2) {
        return Err(Error::InvalidEnsemble(format!(
            "ensemble size must be odd, got {ensemble_size}"
        )));
    }
    let mut engine = Engine {
        pool_size,
        ga,
        objective,
        cache: HashMap::new(),
        rng: rng_from_seed(ga.seed),
    };
    let initial = (0..ga.population_size)
        .map(|_| engine.random_chromosome(ensemble_size))
        .collect();
    let mut pop = engine.evaluate(initial);
    let (i, f) = best_of(&pop);
    let mut best = (pop.chromosomes[i].clone(), f);
    let mut history = vec![f];

    for _ in 0..ga.generations {
        let next = engine.next_generation(&pop);
        pop = engine.evaluate(next);
        let (i, f) = best_of(&pop);
        if ga.elitism_count > 0 {
            debug_assert!(f >= *history.last().expect("non-empty"));
        }
        if f > best.1 {
            best = (pop.chromosomes[i].clone(), f);
        }
        history.push(f);
    }
    Ok(Evolution {
        best: best.0,
        best_fitness: best.1,
        history,
        evaluations: engine.cache.len(),
    })
}

/// Result of an accuracy-targeted search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaResult {
    pub best_ensemble: Ensemble,
    pub target: f64,
    pub best_fitness: f64,
    pub achieved_accuracy: f64,
    pub fitness_history: Vec<f64>,
}

/// Accuracy-targeted search on precomputed votes.
pub fn evolve_on_table(
    table: &VoteTable,
    target: f64,
    ga: &GaConfig,
    ensemble_size: usize,
) -> Result<GaResult> {
    fitness(0.0, target)?;
    let objective = |c: &[usize]| -(table.accuracy_of(c) - target).powi(2);
    let run = evolve_with(table.pool_size(), ensemble_size, ga, &objective)?;
    let achieved_accuracy = table.accuracy_of(&run.best);
    Ok(GaResult {
        best_ensemble: Ensemble::new(run.best)?,
        target,
        best_fitness: fitness(achieved_accuracy, target)?,
        achieved_accuracy,
        fitness_history: run.history,
    })
}

/// Searches `pool` for an `ensemble_size`-member ensemble whose majority
/// vote accuracy on `data` is as close as possible to `target`.
pub fn evolve<C: Classify + Sync>(
    pool: &[C],
    data: &Samples,
    target: f64,
    ga: &GaConfig,
    ensemble_size: usize,
) -> Result<GaResult> {
    if pool.is_empty() {
        return Err(Error::InvalidEnsemble("empty pool".into()));
    }
    let table = VoteTable::new(pool, data)?;
    evolve_on_table(&table, target, ga, ensemble_size)
}

pub const DEFAULT_TARGET_TOLERANCE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibleTarget {
    pub target: f64,
    pub achieved_accuracy: f64,
    pub attainable: bool,
}

/// Runs a half-budget search per probe and reports what accuracy each one
/// actually reached.
pub fn feasible_targets_on_table(
    table: &VoteTable,
    probe_targets: &[f64],
    ga: &GaConfig,
    ensemble_size: usize,
    tolerance: f64,
) -> Result<Vec<FeasibleTarget>> {
    if probe_targets.is_empty() {
        return Err(Error::OutOfRange("no probe targets".into()));
    }
    probe_targets
        .par_iter()
        .enumerate()
        .map(|(i, &target)| {
            let short = GaConfig {
                generations: (ga.generations / 2).max(1),
                seed: derive_seed(ga.seed, &format!("probe/{i}")),
                ..ga.clone()
            };
            let r = evolve_on_table(table, target, &short, ensemble_size)?;
            Ok(FeasibleTarget {
                target,
                achieved_accuracy: r.achieved_accuracy,
                attainable: (r.achieved_accuracy - target).abs() <= tolerance,
            })
        })
        .collect()
}

pub fn feasible_targets<C: Classify + Sync>(
    pool: &[C],
    data: &Samples,
    probe_targets: &[f64],
    ga: &GaConfig,
    ensemble_size: usize,
) -> Result<Vec<FeasibleTarget>> {
    if pool.is_empty() {
        return Err(Error::InvalidEnsemble("empty pool".into()));
    }
    let table = VoteTable::new(pool, data)?;
    feasible_targets_on_table(&table, probe_targets, ga, ensemble_size, DEFAULT_TARGET_TOLERANCE)
}
