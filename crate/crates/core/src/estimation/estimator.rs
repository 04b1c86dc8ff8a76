use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::sampling::CountTable;
use super::DOMAIN_MAX;
use crate::error::{Error, Result};
use crate::protocol::{self, MeasurementStrength, PhasePair};

/// Rectangular search region in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub theta1: (f64, f64),
    pub theta2: (f64, f64),
}

impl Domain {
    /// `[0, 22.5°]²`.
    pub fn standard() -> Self {
        Self {
            theta1: (0.0, DOMAIN_MAX),
            theta2: (0.0, DOMAIN_MAX),
        }
    }

    pub fn contains(&self, p: PhasePair) -> bool {
        let inside = |x: f64, (lo, hi): (f64, f64)| x >= lo - 1e-12 && x <= hi + 1e-12;
        inside(p.theta1, self.theta1) && inside(p.theta2, self.theta2)
    }

    pub fn clamp(&self, p: PhasePair) -> PhasePair {
        PhasePair {
            theta1: p.theta1.clamp(self.theta1.0, self.theta1.1),
            theta2: p.theta2.clamp(self.theta2.0, self.theta2.1),
        }
    }

    pub fn diameter(&self) -> f64 {
        (self.theta1.1 - self.theta1.0).hypot(self.theta2.1 - self.theta2.0)
    }
}

/// A map from phases to the four outcome probabilities.
pub trait ForwardModel: Sync {
    fn strength(&self) -> f64;
    fn domain(&self) -> Domain;
    fn probabilities(&self, phases: PhasePair) -> Result<[f64; 4]>;
}

/// The closed-form ideal protocol over the standard domain.
#[derive(Debug, Clone, Copy)]
pub struct ExactModel {
    pub strength: MeasurementStrength,
}

impl ExactModel {
    pub fn new(strength: MeasurementStrength) -> Self {
        Self { strength }
    }
}

impl ForwardModel for ExactModel {
    fn strength(&self) -> f64 {
        self.strength.k()
    }

    fn domain(&self) -> Domain {
        Domain::standard()
    }

    fn probabilities(&self, phases: PhasePair) -> Result<[f64; 4]> {
        Ok(protocol::outcome_distribution(phases, self.strength).probabilities)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// `sum_x (f_x - p_x)^2`.
    #[default]
    LeastSquares,
    /// Negative multinomial log-likelihood per shot.
    MaximumLikelihood,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorOptions {
    pub objective: Objective,
    /// Spacing of the exhaustive search, radians.
    pub coarse_step: f64,
    /// Pattern search stops once its step falls to this, radians.
    pub final_step: f64,
    /// Coarse nodes within this of the minimum belong to the valley.
    pub valley_tolerance: f64,
    /// Valley extent, as a fraction of the domain diagonal, above which the
    /// estimate is flagged degenerate.
    pub valley_fraction: f64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            objective: Objective::LeastSquares,
            coarse_step: 0.25f64.to_radians(),
            final_step: 0.001f64.to_radians(),
            valley_tolerance: 1e-6,
            valley_fraction: 0.25,
        }
    }
}

impl EstimatorOptions {
    pub fn with_objective(objective: Objective) -> Self {
        Self {
            objective,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub theta1_hat: f64,
    pub theta2_hat: f64,
    /// Bootstrap covariance in rad², when computed.
    pub covariance: Option<[[f64; 2]; 2]>,
    pub objective_value: f64,
    pub degenerate: bool,
    pub bootstrap_replicas: usize,
}

impl EstimateResult {
    pub fn phases(&self) -> PhasePair {
        PhasePair {
            theta1: self.theta1_hat,
            theta2: self.theta2_hat,
        }
    }
}

struct Cost<'a, M: ForwardModel> {
    model: &'a M,
    counts: [f64; 4],
    freqs: [f64; 4],
    objective: Objective,
}

impl<M: ForwardModel> Cost<'_, M> {
    fn eval(&self, p: PhasePair) -> Result<f64> {
        let model = self.model.probabilities(p)?;
        Ok(match self.objective {
            Objective::LeastSquares => self
                .freqs
                .iter()
                .zip(model.iter())
                .map(|(f, q)| (f - q) * (f - q))
                .sum(),
            Objective::MaximumLikelihood => {
                let n: f64 = self.counts.iter().sum();
                -self
                    .counts
                    .iter()
                    .zip(model.iter())
                    .filter(|(c, _)| **c > 0.0)
                    .map(|(c, q)| c * q.max(1e-300).ln())
                    .sum::<f64>()
                    / n
            }
        })
    }
}

fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    if hi - v[n] > 1e-12 {
        v.push(hi);
    }
    v
}

/// Fits the phases to observed counts.
///
/// Exhaustive search on a coarse grid, then a compass pattern search from
/// the best node. Ties on the grid go to the lowest `theta1`, then the
/// lowest `theta2`.
pub fn estimate<M: ForwardModel>(
    counts: &CountTable,
    model: &M,
    options: &EstimatorOptions,
) -> Result<EstimateResult> {
    if (counts.strength - model.strength()).abs() > 1e-9 {
        return Err(Error::StrengthMismatch {
            counts: counts.strength,
            calibration: model.strength(),
        });
    }
    let freqs = counts.frequencies().ok_or(Error::NoEvents)?;
    let cost = Cost {
        model,
        counts: counts.counts.map(|c| c as f64),
        freqs,
        objective: options.objective,
    };
    let domain = model.domain();

    let g1 = axis(domain.theta1.0, domain.theta1.1, options.coarse_step);
    let g2 = axis(domain.theta2.0, domain.theta2.1, options.coarse_step);
    let mut values = vec![0.0; g1.len() * g2.len()];
    let mut best = (f64::INFINITY, 0usize);
    for (i, &t1) in g1.iter().enumerate() {
        for (j, &t2) in g2.iter().enumerate() {
            let v = cost.eval(PhasePair {
                theta1: t1,
                theta2: t2,
            })?;
            values[i * g2.len() + j] = v;
            if v < best.0 {
                best = (v, i * g2.len() + j);
            }
        }
    }
    let degenerate = valley_extent(&values, &g1, &g2, best.1, options.valley_tolerance)
        > options.valley_fraction * domain.diameter();

    let mut point = PhasePair {
        theta1: g1[best.1 / g2.len()],
        theta2: g2[best.1 % g2.len()],
    };
    let mut value = best.0;
    let mut step = options.coarse_step;
    loop {
        let mut improved = None;
        for (j, sign) in [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)] {
            let trial = domain.clamp(point.shifted(j, sign * step));
            if trial == point {
                continue;
            }
            let v = cost.eval(trial)?;
            if v < improved.map_or(value, |(bv, _)| bv) {
                improved = Some((v, trial));
            }
        }
        match improved {
            Some((v, p)) => {
                value = v;
                point = p;
            }
            None if step <= options.final_step => break,
            None => step *= 0.5,
        }
    }

    Ok(EstimateResult {
        theta1_hat: point.theta1,
        theta2_hat: point.theta2,
        covariance: None,
        objective_value: value,
        degenerate,
        bootstrap_replicas: 0,
    })
}

/// Bounding-box diagonal of the 8-connected set of near-minimal nodes that
/// contains the minimum.
fn valley_extent(values: &[f64], g1: &[f64], g2: &[f64], start: usize, tol: f64) -> f64 {
    let (n1, n2) = (g1.len(), g2.len());
    let threshold = values[start] + tol;
    let mut seen = vec![false; values.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let (mut lo1, mut hi1, mut lo2, mut hi2) = (n1, 0, n2, 0);
    while let Some(idx) = queue.pop_front() {
        let (i, j) = (idx / n2, idx % n2);
        lo1 = lo1.min(i);
        hi1 = hi1.max(i);
        lo2 = lo2.min(j);
        hi2 = hi2.max(j);
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 || ni >= n1 as i64 || nj >= n2 as i64 {
                    continue;
                }
                let nidx = ni as usize * n2 + nj as usize;
                if !seen[nidx] && values[nidx] <= threshold {
                    seen[nidx] = true;
                    queue.push_back(nidx);
                }
            }
        }
    }
    (g1[hi1] - g1[lo1]).hypot(g2[hi2] - g2[lo2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(k: f64) -> MeasurementStrength {
        MeasurementStrength::new(k).unwrap()
    }

    /// Counts proportional to the exact probabilities.
    fn noiseless(phases: PhasePair, k: f64) -> CountTable {
        let p = protocol::outcome_distribution(phases, ks(k)).probabilities;
        CountTable::new(p.map(|x| (x * 1e12).round() as u64), k)
    }

    #[test]
    fn recovers_noiseless_truth() {
        let model = ExactModel::new(ks(0.934));
        for (a, b) in [(10.0, 5.0), (3.3, 17.9), (12.1, 12.7), (20.0, 2.0)] {
            let truth = PhasePair::from_degrees(a, b).unwrap();
            let est = estimate(
                &noiseless(truth, 0.934),
                &model,
                &EstimatorOptions::default(),
            )
            .unwrap();
            let (e1, e2) = est.phases().to_degrees();
            assert!((e1 - a).abs() < 0.01 && (e2 - b).abs() < 0.01, "{e1} {e2}");
            assert!(!est.degenerate);
        }
    }

    #[test]
    fn zero_strength_is_degenerate_along_the_sum() {
        let model = ExactModel::new(ks(0.0));
        let truth = PhasePair::from_degrees(8.0, 6.0).unwrap();
        let est = estimate(&noiseless(truth, 0.0), &model, &EstimatorOptions::default()).unwrap();
        assert!(est.degenerate);
        let (e1, e2) = est.phases().to_degrees();
        assert!((e1 + e2 - 14.0).abs() < 0.01);
    }

    #[test]
    fn ties_pick_the_lowest_node() {
        // A flat model makes every node tie.
        struct Flat;
        impl ForwardModel for Flat {
            fn strength(&self) -> f64 {
                0.5
            }
            fn domain(&self) -> Domain {
                Domain::standard()
            }
            fn probabilities(&self, _: PhasePair) -> Result<[f64; 4]> {
                Ok([0.25; 4])
            }
        }
        let est = estimate(
            &CountTable::new([1, 2, 3, 4], 0.5),
            &Flat,
            &EstimatorOptions::default(),
        )
        .unwrap();
        assert_eq!((est.theta1_hat, est.theta2_hat), (0.0, 0.0));
        assert!(est.degenerate);
    }

    #[test]
    fn rejects_empty_and_mismatched_counts() {
        let model = ExactModel::new(ks(0.5));
        let opts = EstimatorOptions::default();
        assert!(matches!(
            estimate(&CountTable::new([0; 4], 0.5), &model, &opts),
            Err(Error::NoEvents)
        ));
        assert!(matches!(
            estimate(&CountTable::new([1; 4], 0.6), &model, &opts),
            Err(Error::StrengthMismatch { .. })
        ));
    }

    #[test]
    fn maximum_likelihood_recovers_noiseless_truth() {
        let model = ExactModel::new(ks(0.785));
        let truth = PhasePair::from_degrees(11.0, 7.5).unwrap();
        let opts = EstimatorOptions::with_objective(Objective::MaximumLikelihood);
        let est = estimate(&noiseless(truth, 0.785), &model, &opts).unwrap();
        let (e1, e2) = est.phases().to_degrees();
        assert!((e1 - 11.0).abs() < 0.01 && (e2 - 7.5).abs() < 0.01);
    }

    #[test]
    fn axis_includes_both_ends() {
        let a = axis(0.0, 1.0, 0.3);
        assert_eq!(a.len(), 5);
        assert_eq!(*a.last().unwrap(), 1.0);
        assert_eq!(axis(0.0, 1.0, 0.25).len(), 5);
    }
}
