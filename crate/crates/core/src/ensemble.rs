//! Majority-vote aggregation over a classifier pool.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::TrainedClassifier;
use crate::data::Samples;
use crate::error::{Error, Result};

pub const DEFAULT_ENSEMBLE_SIZE: usize = 21;

/// Member outputs at or above this value count as a vote for class 1.
pub const VOTE_THRESHOLD: f64 = 0.5;

/// Anything that maps a feature vector to a class-1 probability.
pub trait Classify {
    fn predict(&self, x: &[f64]) -> Result<f64>;
}

impl Classify for TrainedClassifier {
    fn predict(&self, x: &[f64]) -> Result<f64> {
        self.forward(x)
    }
}

impl<C: Classify + ?Sized> Classify for &C {
    fn predict(&self, x: &[f64]) -> Result<f64> {
        (**self).predict(x)
    }
}

/// An odd-sized selection of pool indices. The same index may appear more
/// than once. Serializes as a bare JSON array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ensemble {
    member_indices: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Ensemble {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ensemble::new(v)
    }
}

impl From<Ensemble> for Vec<usize> {
    fn from(e: Ensemble) -> Self {
        e.member_indices
    }
}

impl Ensemble {
    pub fn new(member_indices: Vec<usize>) -> Result<Self> {
        if member_indices.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if member_indices.len().is_multiple_of(2) {
            return Err(Error::InvalidEnsemble(format!(
                "size must be odd, got {}",
                member_indices.len()
            )));
        }
        Ok(Ensemble { member_indices })
    }

    pub fn size(&self) -> usize {
        self.member_indices.len()
    }

    pub fn member_indices(&self) -> &[usize] {
        &self.member_indices
    }

    pub fn check_bounds(&self, pool_size: usize) -> Result<()> {
        match self.member_indices.iter().find(|&&i| i >= pool_size) {
            Some(&index) => Err(Error::IndexOutOfBounds { index, pool_size }),
            None => Ok(()),
        }
    }

    /// Members as references into `pool`.
    pub fn members<'a, C>(&self, pool: &'a [C]) -> Result<Vec<&'a C>> {
        self.check_bounds(pool.len())?;
        Ok(self.member_indices.iter().map(|&i| &pool[i]).collect())
    }
}

/// Number of members voting for class 1 on `x`.
pub fn ones_count<C: Classify>(pool: &[C], ens: &Ensemble, x: &[f64]) -> Result<usize> {
    ens.check_bounds(pool.len())?;
    let mut ones = 0;
    for &i in ens.member_indices() {
        ones += usize::from(pool[i].predict(x)? >= VOTE_THRESHOLD);
    }
    Ok(ones)
}

/// Majority decision: 1 iff more than half the members vote 1.
pub fn vote<C: Classify>(pool: &[C], ens: &Ensemble, x: &[f64]) -> Result<u8> {
    let ones = ones_count(pool, ens, x)?;
    Ok(u8::from(2 * ones > ens.size()))
}

/// Fraction of samples whose majority vote equals the label.
pub fn accuracy<C: Classify + Sync>(pool: &[C], ens: &Ensemble, data: &Samples) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    ens.check_bounds(pool.len())?;
    let correct = (0..data.len())
        .into_par_iter()
        .map(|i| vote(pool, ens, data.row(i)).map(|v| usize::from(v == data.labels()[i])))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(correct as f64 / data.len() as f64)
}

/// Precomputed member votes on a fixed sample set, so that any selection
/// from the pool can be scored without running the networks again.
#[derive(Clone, Debug)]
pub struct VoteTable {
    /// `votes[m][s]` is member `m`'s vote on sample `s`.
    votes: Vec<Vec<u8>>,
    labels: Vec<u8>,
}

impl VoteTable {
    pub fn new<C: Classify + Sync>(pool: &[C], data: &Samples) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyData);
        }
        let votes = pool
            .par_iter()
            .map(|clf| {
                data.iter()
                    .map(|(x, _)| clf.predict(x).map(|p| u8::from(p >= VOTE_THRESHOLD)))
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VoteTable {
            votes,
            labels: data.labels().to_vec(),
        })
    }

    pub fn pool_size(&self) -> usize {
        self.votes.len()
    }

    pub fn sample_count(&self) -> usize {
        self.labels.len()
    }

    /// Accuracy of a single pool member.
    pub fn member_accuracy(&self, member: usize) -> f64 {
        let correct = self.votes[member]
            .iter()
            .zip(&self.labels)
            .filter(|(v, l)| v == l)
            .count();
        correct as f64 / self.labels.len() as f64
    }

    /// Majority-vote accuracy of the members at `indices`. The caller
    /// guarantees an odd, in-bounds selection.
    pub fn accuracy_of(&self, indices: &[usize]) -> f64 {
        let mut ones = vec![0u16; self.labels.len()];
        for &m in indices {
            for (o, &v) in ones.iter_mut().zip(&self.votes[m]) {
                *o += u16::from(v);
            }
        }
        let size = indices.len();
        let correct = ones
            .iter()
            .zip(&self.labels)
            .filter(|&(&o, &l)| u8::from(2 * usize::from(o) > size) == l)
            .count();
        correct as f64 / self.labels.len() as f64
    }

    pub fn accuracy(&self, ens: &Ensemble) -> Result<f64> {
        ens.check_bounds(self.pool_size())?;
        Ok(self.accuracy_of(ens.member_indices()))
    }
}
