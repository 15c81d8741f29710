//! Structural diversity of an ensemble, computed from species counts.
//!
//! Members are grouped by their species key and the proportions
//! `P_i = count_i / M` feed the Rényi family
//!
//! ```text
//! H_α = ln(Σ P_i^α) / (1 − α)
//! ```
//!
//! whose α → 1, α = 2 and α → ∞ members underlie the Shannon, Simpson and
//! Berger-Parker indices. All three indices are normalized into `[0, 1]`:
//!
//! | index         | raw value         | normalized            |
//! |---------------|-------------------|-----------------------|
//! | Shannon       | `−Σ P_i ln P_i`   | divided by `ln M`     |
//! | Simpson       | `Σ P_i²`          | `1 − Σ P_i²`          |
//! | Berger-Parker | `1 / max P_i`     | divided by `M`        |
//!
//! `M` is the ensemble size, not the species count. Natural logs throughout.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classifier::ClassifierConfig;
use crate::error::{Error, Result};

/// Alphas at which reports sample the Rényi profile unless told otherwise.
pub const DEFAULT_ALPHAS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 4.0, 10.0];

/// Distance from 1 below which α is treated as exactly 1.
const SHANNON_WINDOW: f64 = 1e-9;

/// Species abundances of one ensemble.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesDistribution {
    counts: BTreeMap<String, usize>,
    total: usize,
}

impl SpeciesDistribution {
    /// Groups keys by equality.
    pub fn from_keys<I, K>(keys: I) -> Result<Self>
    where
        I: IntoIterator<Item = K>,
        K: Into<String>,
    {
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for k in keys {
            *counts.entry(k.into()).or_insert(0) += 1;
            total += 1;
        }
        if total == 0 {
            return Err(Error::EmptyEnsemble);
        }
        Ok(SpeciesDistribution { counts, total })
    }

    /// Builds a distribution from explicit `(key, count)` pairs; repeated
    /// keys are summed and every count must be positive.
    pub fn from_counts<I, K>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, usize)>,
        K: Into<String>,
    {
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for (k, c) in pairs {
            let k = k.into();
            if c == 0 {
                return Err(Error::OutOfRange(format!("species {k:?} has count 0")));
            }
            *counts.entry(k).or_insert(0) += c;
            total += c;
        }
        if total == 0 {
            return Err(Error::EmptyEnsemble);
        }
        Ok(SpeciesDistribution { counts, total })
    }

    pub fn counts(&self) -> &BTreeMap<String, usize> {
        &self.counts
    }

    /// Ensemble size `M`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of distinct species `S`.
    pub fn richness(&self) -> usize {
        self.counts.len()
    }

    /// Proportions in ascending order. Sorting makes every sum below
    /// independent of how the species are labelled.
    pub fn proportions(&self) -> Vec<f64> {
        let mut counts: Vec<usize> = self.counts.values().copied().collect();
        counts.sort_unstable();
        let m = self.total as f64;
        counts.into_iter().map(|c| c as f64 / m).collect()
    }

    pub fn max_proportion(&self) -> f64 {
        let top = self.counts.values().copied().max().unwrap_or(0);
        top as f64 / self.total as f64
    }
}

/// Groups members by exact equality of their structural identity.
pub fn species_distribution(members: &[ClassifierConfig]) -> Result<SpeciesDistribution> {
    SpeciesDistribution::from_keys(members.iter().map(ClassifierConfig::species_key))
}

/// Unnormalized Shannon entropy `−Σ P_i ln P_i`.
pub fn shannon_entropy(dist: &SpeciesDistribution) -> f64 {
    // 0 − x rather than −x so a single species gives +0, not −0
    0.0 - dist.proportions().iter().map(|&p| p * p.ln()).sum::<f64>()
}

/// Rényi entropy of order `alpha`, natural log. `alpha` within 1e-9 of 1
/// returns the Shannon limit and `alpha = ∞` returns `−ln max P_i`.
pub fn renyi_entropy(dist: &SpeciesDistribution, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if (alpha - 1.0).abs() < SHANNON_WINDOW {
        return Ok(shannon_entropy(dist));
    }
    let pmax = dist.max_proportion();
    if alpha.is_infinite() {
        return Ok(0.0 - pmax.ln());
    }
    let ps = dist.proportions();
    let log_sum = if alpha <= 2.0 {
        // ln Σ P^α = ln(1 + Σ P (P^(α−1) − 1)), exact near α = 1
        ps.iter()
            .map(|&p| p * ((alpha - 1.0) * p.ln()).exp_m1())
            .sum::<f64>()
            .ln_1p()
    } else {
        // factor out pmax^α so large α does not underflow
        alpha * pmax.ln() + ps.iter().map(|&p| (p / pmax).powf(alpha)).sum::<f64>().ln()
    };
    Ok(log_sum / (1.0 - alpha) + 0.0)
}

/// Shannon entropy divided by `ln M`; zero for a single-member ensemble.
pub fn shannon_index(dist: &SpeciesDistribution) -> f64 {
    if dist.total() <= 1 {
        return 0.0;
    }
    (shannon_entropy(dist) / (dist.total() as f64).ln()).clamp(0.0, 1.0)
}

/// `1 − Σ P_i²`, the chance two members drawn with replacement differ.
pub fn simpson_index(dist: &SpeciesDistribution) -> f64 {
    let sum_sq: f64 = dist.proportions().iter().map(|p| p * p).sum();
    (1.0 - sum_sq).max(0.0)
}

/// `1 / max P_i`: the equivalent number of species as abundant as the most
/// common one.
pub fn berger_parker(dist: &SpeciesDistribution) -> f64 {
    1.0 / dist.max_proportion()
}

/// Berger-Parker value divided by the ensemble size, in `[1/M, 1]`.
pub fn berger_parker_index(dist: &SpeciesDistribution) -> f64 {
    berger_parker(dist) / dist.total() as f64
}

/// Self-information `−ln p` of an event with probability `p`.
pub fn uncertainty(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(-p.ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenyiPoint {
    pub alpha: f64,
    pub entropy: f64,
}

/// Normalized indices of one ensemble plus a sampled Rényi profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiversityReport {
    pub shannon_norm: f64,
    pub simpson_norm: f64,
    pub berger_parker_norm: f64,
    pub species_richness: usize,
    pub ensemble_size: usize,
    pub renyi_profile: Vec<RenyiPoint>,
}

impl DiversityReport {
    pub fn from_distribution(dist: &SpeciesDistribution, alphas: &[f64]) -> Result<Self> {
        let renyi_profile = alphas
            .iter()
            .map(|&alpha| {
                renyi_entropy(dist, alpha).map(|entropy| RenyiPoint { alpha, entropy })
            })
            .collect::<Result<_>>()?;
        Ok(DiversityReport {
            shannon_norm: shannon_index(dist),
            simpson_norm: simpson_index(dist),
            berger_parker_norm: berger_parker_index(dist),
            species_richness: dist.richness(),
            ensemble_size: dist.total(),
            renyi_profile,
        })
    }
}

pub fn diversity_report(members: &[ClassifierConfig], alphas: &[f64]) -> Result<DiversityReport> {
    DiversityReport::from_distribution(&species_distribution(members)?, alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Activation;

    fn counts(cs: &[usize]) -> SpeciesDistribution {
        SpeciesDistribution::from_counts(cs.iter().enumerate().map(|(i, &c)| (format!("s{i}"), c)))
            .unwrap()
    }

    #[test]
    fn grouping_by_identity() {
        let a = ClassifierConfig::new(Activation::Logistic, 7, 0.01).unwrap();
        let b = ClassifierConfig::new(Activation::Linear, 9, 0.03).unwrap();
        let mut members = vec![a; 14];
        members.extend(vec![b; 7]);
        let d = species_distribution(&members).unwrap();
        assert_eq!(d.total(), 21);
        assert_eq!(d.counts()["logistic:7:0.01"], 14);
        assert_eq!(d.counts()["linear:9:0.03"], 7);
    }

    #[test]
    fn single_and_distinct() {
        let grid = ClassifierConfig::grid();
        let same = species_distribution(&[grid[0]; 21]).unwrap();
        assert_eq!(same.richness(), 1);
        assert_eq!(same.counts().values().next(), Some(&21));
        let distinct = species_distribution(&grid[..21]).unwrap();
        assert_eq!(distinct.richness(), 21);
        assert!(distinct.counts().values().all(|&c| c == 1));
    }

    #[test]
    fn empty_is_rejected() {
        assert!(matches!(species_distribution(&[]), Err(Error::EmptyEnsemble)));
        assert!(SpeciesDistribution::from_counts([("a", 0usize)]).is_err());
    }

    #[test]
    fn renyi_special_orders() {
        let uniform = counts(&[5, 5, 5, 5]);
        assert!((renyi_entropy(&uniform, 2.0).unwrap() - 4f64.ln()).abs() < 1e-12);
        let skew = counts(&[1, 3, 9, 2]);
        assert!((renyi_entropy(&skew, 0.0).unwrap() - 4f64.ln()).abs() < 1e-12);
        let inf = renyi_entropy(&skew, f64::INFINITY).unwrap();
        assert!((inf + (9.0f64 / 15.0).ln()).abs() < 1e-15);
        assert!(matches!(renyi_entropy(&skew, -0.1), Err(Error::AlphaOutOfRange(_))));
        assert!(renyi_entropy(&skew, f64::NAN).is_err());
    }

    #[test]
    fn uncertainty_values() {
        assert_eq!(uncertainty(1.0).unwrap(), 0.0);
        assert!((uncertainty(std::f64::consts::E.recip()).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(uncertainty(0.0), Err(Error::ProbabilityOutOfRange(_))));
        assert!(uncertainty(1.5).is_err());
    }

    #[test]
    fn single_member_ensemble() {
        let d = counts(&[1]);
        assert_eq!(shannon_index(&d), 0.0);
        assert_eq!(simpson_index(&d), 0.0);
        assert_eq!(berger_parker_index(&d), 1.0);
    }
}
