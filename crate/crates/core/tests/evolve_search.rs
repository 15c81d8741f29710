use ensdiv::evolve::evolve_on_table;
use ensdiv::seed::{derive_seed, rng_from_seed};
use ensdiv::*;
use rand::Rng;

fn small_pool(seed: u64) -> (Vec<TrainedClassifier>, Samples) {
    let data = generate_synthetic(120, 0.5, seed).unwrap().all_samples();
    let grid = ClassifierConfig::grid();
    let pool = (0..6)
        .map(|i| init_classifier(grid[i * 37], 7, derive_seed(seed, &format!("m{i}"))).unwrap())
        .collect();
    (pool, data)
}

/// Best fitness over all |pool|^size chromosomes, scored with direct voting.
fn exhaustive_optimum(pool: &[TrainedClassifier], data: &Samples, target: f64, size: u32) -> f64 {
    let n = pool.len();
    let mut best = f64::NEG_INFINITY;
    for code in 0..n.pow(size) {
        let idx: Vec<usize> = (0..size).map(|k| code / n.pow(k) % n).collect();
        let acc = accuracy(pool, &Ensemble::new(idx).unwrap(), data).unwrap();
        best = best.max(fitness(acc, target).unwrap());
    }
    best
}

#[test]
fn ga_finds_exhaustive_optimum() {
    let (pool, data) = small_pool(11);
    let mut rng = rng_from_seed(5);
    for run in 0..10u64 {
        let target: f64 = rng.random();
        let ga = GaConfig { seed: run, ..Default::default() };
        let r = evolve(&pool, &data, target, &ga, 3).unwrap();
        assert_eq!(r.best_fitness, exhaustive_optimum(&pool, &data, target, 3), "run {run}");
    }
}

#[test]
fn reachable_target_gives_zero_fitness() {
    let (pool, data) = small_pool(2);
    let e = Ensemble::new(vec![1, 4, 4]).unwrap();
    let target = accuracy(&pool, &e, &data).unwrap();
    let r = evolve(&pool, &data, target, &GaConfig::default(), 3).unwrap();
    assert_eq!(r.best_fitness, 0.0);
    assert_eq!(r.achieved_accuracy, target);
}

#[test]
fn result_invariants_and_determinism() {
    let (pool, data) = small_pool(3);
    let ga = GaConfig { seed: 77, generations: 25, ..Default::default() };
    let a = evolve(&pool, &data, 0.62, &ga, 5).unwrap();
    let b = evolve(&pool, &data, 0.62, &ga, 5).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.best_fitness, -(a.achieved_accuracy - 0.62f64).powi(2));
    assert!(a.best_fitness <= 0.0);
    assert_eq!(a.fitness_history.len(), 26);
    assert!(a.fitness_history.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*a.fitness_history.last().unwrap(), a.best_fitness);
    assert!(a.best_ensemble.member_indices().iter().all(|&i| i < pool.len()));
    assert_eq!(a.best_ensemble.size(), 5);
}

#[test]
fn error_paths() {
    let (pool, data) = small_pool(4);
    let ga = GaConfig::default();
    assert!(evolve(&pool, &data, 0.5, &ga, 4).is_err());
    assert!(evolve::<TrainedClassifier>(&[], &data, 0.5, &ga, 3).is_err());
    assert!(evolve(&pool, &data, 1.5, &ga, 3).is_err());
}

#[test]
fn frozen_population_keeps_flat_history() {
    let (pool, data) = small_pool(6);
    let table = VoteTable::new(&pool, &data).unwrap();
    let ga = GaConfig {
        crossover_rate: 0.0,
        mutation_rate: 0.0,
        elitism_count: 39,
        seed: 1,
        ..Default::default()
    };
    let r = evolve_on_table(&table, 0.9, &ga, 3).unwrap();
    assert!(r.fitness_history.iter().all(|&f| f == r.fitness_history[0]));
}

#[test]
fn feasible_targets_shape() {
    let (pool, data) = small_pool(7);
    let probes = [0.5, 0.6, 0.7, 0.8, 0.9];
    let ga = GaConfig { seed: 3, ..Default::default() };
    let out = feasible_targets(&pool, &data, &probes, &ga, 3).unwrap();
    assert_eq!(out.len(), 5);
    for (f, &t) in out.iter().zip(&probes) {
        assert_eq!(f.target, t);
        assert!((0.0..=1.0).contains(&f.achieved_accuracy));
        assert_eq!(f.attainable, (f.achieved_accuracy - t).abs() <= 0.01);
    }
    assert!(feasible_targets(&pool, &data, &[], &ga, 3).is_err());
}

#[test]
fn identical_pool_has_one_reachable_accuracy() {
    let (pool, data) = small_pool(8);
    let same = vec![pool[0].clone(); 6];
    let out = feasible_targets(&same, &data, &[0.0, 0.3, 0.6, 1.0], &GaConfig::default(), 3).unwrap();
    let first = out[0].achieved_accuracy;
    assert!(out.iter().all(|f| f.achieved_accuracy == first));
}

#[test]
fn custom_objective_hook() {
    // a diversity-style objective: number of distinct genes
    let distinct = |c: &[usize]| {
        let mut v = c.to_vec();
        v.dedup();
        v.len() as f64
    };
    let r = evolve_with(30, 7, &GaConfig::default(), &distinct).unwrap();
    assert_eq!(r.best_fitness, 7.0);
}

#[test]
fn ga_result_json() {
    let (pool, data) = small_pool(9);
    let r = evolve(&pool, &data, 0.7, &GaConfig { generations: 3, ..Default::default() }, 3).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert!(v["best_ensemble"].is_array());
    assert_eq!(v["fitness_history"].as_array().unwrap().len(), 4);
    let back: GaResult = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}
