//! Fixtures shared by the benches.

use ensdiv::seed::derive_seed;
use ensdiv::*;

/// `size` members cycling through `species` distinct grid cells.
pub fn members(size: usize, species: usize) -> Vec<ClassifierConfig> {
    let grid = ClassifierConfig::grid();
    (0..size).map(|i| grid[(i % species) * 7 % GRID_SIZE]).collect()
}

/// A briefly trained pool and the validation split it is scored on.
pub fn trained_pool(pool_size: usize, rows: usize, seed: u64) -> (Vec<TrainedClassifier>, Samples) {
    let data = generate_synthetic(rows, 0.5, seed)
        .and_then(|d| d.partition_stratified(SplitFractions::default(), seed))
        .expect("fixture data");
    let train = data.samples(Split::Train).unwrap();
    let grid = ClassifierConfig::grid();
    let pool = (0..pool_size)
        .map(|i| {
            init_classifier(grid[i * 5 % GRID_SIZE], data.dim(), derive_seed(seed, &format!("b{i}")))
                .and_then(|c| c.train(&train, TrainOptions { epochs: 3, ..Default::default() }))
                .unwrap()
        })
        .collect();
    (pool, data.samples(Split::Validation).unwrap())
}
