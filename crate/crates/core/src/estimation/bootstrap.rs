use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::estimator::{estimate, EstimateResult, EstimatorOptions, ForwardModel};
use super::sample_covariance;
use super::sampling::{derive_seed, CountTable};
use crate::error::{Error, Result};
use crate::protocol::PhasePair;

/// All-zero replicas are redrawn at most this many times.
pub const MAX_REDRAWS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapResult {
    pub covariance: [[f64; 2]; 2],
    /// Replica estimates in replica order.
    pub estimates: Vec<PhasePair>,
    pub counts: Vec<[u64; 4]>,
}

fn poisson_replica(observed: &[u64; 4], rng: &mut ChaCha8Rng) -> [u64; 4] {
    observed.map(|c| {
        if c == 0 {
            0
        } else {
            Poisson::new(c as f64).expect("positive mean").sample(rng) as u64
        }
    })
}

fn draw_replica(observed: &[u64; 4], rng: &mut ChaCha8Rng) -> Option<[u64; 4]> {
    (0..MAX_REDRAWS)
        .map(|_| poisson_replica(observed, rng))
        .find(|c| c.iter().any(|&x| x > 0))
}

/// Covariance of the estimator from Poisson-resampled counts.
///
/// Every outcome count is redrawn from a Poisson law with the observed count
/// as its mean and the phases are re-estimated. Replica `r` uses the stream
/// `derive_seed(seed, r)`, so the result does not depend on scheduling.
pub fn bootstrap_covariance<M: ForwardModel>(
    counts: &CountTable,
    model: &M,
    replicas: usize,
    seed: u64,
    options: &EstimatorOptions,
) -> Result<BootstrapResult> {
    if replicas < 2 {
        return Err(Error::TooFewReplicas(replicas));
    }
    if counts.shots() == 0 {
        return Err(Error::NoEvents);
    }
    let rows = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, r as u64));
            let c = draw_replica(&counts.counts, &mut rng).ok_or(Error::DegenerateReplica {
                replica: r,
                attempts: MAX_REDRAWS,
            })?;
            let table = CountTable {
                counts: c,
                ..counts.clone()
            };
            let est = estimate(&table, model, options)?;
            Ok((c, est.phases()))
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<[f64; 2]> = rows.iter().map(|(_, p)| p.as_array()).collect();
    let (_, covariance) = sample_covariance(&points);
    Ok(BootstrapResult {
        covariance,
        estimates: rows.iter().map(|(_, p)| *p).collect(),
        counts: rows.into_iter().map(|(c, _)| c).collect(),
    })
}

/// Point estimate plus bootstrap covariance.
pub fn estimate_with_bootstrap<M: ForwardModel>(
    counts: &CountTable,
    model: &M,
    replicas: usize,
    seed: u64,
    options: &EstimatorOptions,
) -> Result<(EstimateResult, BootstrapResult)> {
    let mut est = estimate(counts, model, options)?;
    let boot = bootstrap_covariance(counts, model, replicas, seed, options)?;
    est.covariance = Some(boot.covariance);
    est.bootstrap_replicas = replicas;
    Ok((est, boot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::ExactModel;
    use crate::protocol::MeasurementStrength;

    fn model(k: f64) -> ExactModel {
        ExactModel::new(MeasurementStrength::new(k).unwrap())
    }

    #[test]
    fn zero_channels_stay_zero() {
        let counts = CountTable::new([500, 0, 0, 0], 0.6);
        let b = bootstrap_covariance(&counts, &model(0.6), 20, 9, &EstimatorOptions::default())
            .unwrap();
        for c in &b.counts {
            assert_eq!(&c[1..], &[0, 0, 0]);
            assert!(c[0] > 0);
        }
    }

    #[test]
    fn two_replicas_are_enough() {
        let counts = CountTable::new([300, 120, 80, 40], 0.785);
        let b = bootstrap_covariance(&counts, &model(0.785), 2, 1, &EstimatorOptions::default())
            .unwrap();
        let (_, cov) =
            sample_covariance(&b.estimates.iter().map(|p| p.as_array()).collect::<Vec<_>>());
        assert_eq!(b.covariance, cov);
        assert!(matches!(
            bootstrap_covariance(&counts, &model(0.785), 1, 1, &EstimatorOptions::default()),
            Err(Error::TooFewReplicas(1))
        ));
    }

    #[test]
    fn redraws_are_capped() {
        // A single observed event gives an all-zero replica with probability
        // 1/e, so ten in a row happens for roughly one stream in 22000.
        let observed = [1, 0, 0, 0];
        let failures = (0..200_000u64)
            .filter(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(3, s));
                draw_replica(&observed, &mut rng).is_none()
            })
            .count();
        assert!((1..=30).contains(&failures), "{failures}");
    }

    #[test]
    fn deterministic_and_order_independent() {
        let counts = CountTable::new([4000, 2500, 2000, 1500], 0.785);
        let opts = EstimatorOptions::default();
        let a = bootstrap_covariance(&counts, &model(0.785), 40, 77, &opts).unwrap();
        let b = bootstrap_covariance(&counts, &model(0.785), 40, 77, &opts).unwrap();
        assert_eq!(a, b);
        let prefix = bootstrap_covariance(&counts, &model(0.785), 10, 77, &opts).unwrap();
        assert_eq!(prefix.estimates[..], a.estimates[..10]);
    }
}
