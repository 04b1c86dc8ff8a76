use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::estimator::{estimate, EstimatorOptions, ForwardModel};
use super::sample_covariance;
use super::sampling::{derive_seed, sample_multinomial, CountTable};
use crate::error::{Error, Result};
use crate::protocol::PhasePair;

/// Spread of the estimator over repeated simulated experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloSummary {
    pub truth: PhasePair,
    pub shots: u64,
    pub estimates: Vec<PhasePair>,
    pub mean: [f64; 2],
    /// Unbiased sample covariance of the estimates, rad².
    pub covariance: [[f64; 2]; 2],
    pub degenerate_trials: usize,
}

impl MonteCarloSummary {
    pub fn correlation(&self) -> f64 {
        self.covariance[0][1] / (self.covariance[0][0] * self.covariance[1][1]).sqrt()
    }

    /// Standard errors of the two means.
    pub fn standard_errors(&self) -> [f64; 2] {
        let n = self.estimates.len() as f64;
        [
            (self.covariance[0][0] / n).sqrt(),
            (self.covariance[1][1] / n).sqrt(),
        ]
    }
}

/// Repeats "draw `shots` events from `source` at `truth`, estimate with
/// `estimator`" for `trials` independent experiments. Trial `t` draws from
/// the stream `derive_seed(seed, t)`.
pub fn monte_carlo<S: ForwardModel, M: ForwardModel>(
    truth: PhasePair,
    source: &S,
    estimator: &M,
    shots: u64,
    trials: usize,
    seed: u64,
    options: &EstimatorOptions,
) -> Result<MonteCarloSummary> {
    if shots == 0 {
        return Err(Error::NoEvents);
    }
    let p = source.probabilities(truth)?;
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let table = CountTable {
                counts: sample_multinomial(&p, shots, &mut rng),
                strength: source.strength(),
                truth: Some(truth),
                seed: None,
            };
            estimate(&table, estimator, options)
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate_trials = results.iter().filter(|r| r.degenerate).count();
    let estimates: Vec<PhasePair> = results.iter().map(|r| r.phases()).collect();
    let points: Vec<[f64; 2]> = estimates.iter().map(|p| p.as_array()).collect();
    let (mean, covariance) = sample_covariance(&points);
    Ok(MonteCarloSummary {
        truth,
        shots,
        estimates,
        mean,
        covariance,
        degenerate_trials,
    })
}
