//! Repeats a simulated experiment many times and compares the spread of
//! the maximum-likelihood estimates with the Cramér-Rao bound.

use sloppy_phase::estimation::{monte_carlo, EstimatorOptions, ExactModel, Objective};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let truth = PhasePair::from_degrees(12.0, 8.0)?;
    let (shots, trials) = (10_000, 300);
    let opts = EstimatorOptions::with_objective(Objective::MaximumLikelihood);
    for k in [0.322, 0.785, 0.934] {
        let model = ExactModel::new(MeasurementStrength::new(k)?);
        let mc = monte_carlo(truth, &model, &model, shots, trials, 2024, &opts)?;
        let bound = 1.0 / (16.0 * shots as f64 * k * k);
        println!(
            "K = {k}: var/bound = {:.3}, {:.3}   correlation {:+.3} (theory {:+.3})",
            mc.covariance[0][0] / bound,
            mc.covariance[1][1] / bound,
            mc.correlation(),
            -(1.0 - k * k).sqrt()
        );
    }
    Ok(())
}
