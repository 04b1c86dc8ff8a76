//! Shot sampling, calibration tables, the least-squares estimator and
//! Poisson-bootstrap covariance.

mod bootstrap;
mod calibration;
mod estimator;
pub mod io;
mod montecarlo;
mod sampling;

pub use bootstrap::{bootstrap_covariance, estimate_with_bootstrap, BootstrapResult, MAX_REDRAWS};
pub use calibration::{
    build_calibration, interpolate, CalibrationSource, CalibrationTable, GridSpec,
};
pub use estimator::{
    estimate, Domain, EstimateResult, EstimatorOptions, ExactModel, ForwardModel, Objective,
};
pub use montecarlo::{monte_carlo, MonteCarloSummary};
pub use sampling::{derive_seed, sample_counts, sample_multinomial, CountTable};

/// Upper end of the estimation range, 22.5° in radians.
pub const DOMAIN_MAX: f64 = std::f64::consts::FRAC_PI_8;

/// Mean and unbiased (divisor `n - 1`) covariance of 2-vectors.
pub fn sample_covariance(points: &[[f64; 2]]) -> ([f64; 2], [[f64; 2]; 2]) {
    let n = points.len() as f64;
    let mut mean = [0.0; 2];
    for p in points {
        mean[0] += p[0] / n;
        mean[1] += p[1] / n;
    }
    let mut cov = [[0.0; 2]; 2];
    if points.len() < 2 {
        return (mean, cov);
    }
    for p in points {
        let d = [p[0] - mean[0], p[1] - mean[1]];
        for a in 0..2 {
            for b in 0..2 {
                cov[a][b] += d[a] * d[b];
            }
        }
    }
    for row in cov.iter_mut() {
        for v in row.iter_mut() {
            *v /= n - 1.0;
        }
    }
    (mean, cov)
}
