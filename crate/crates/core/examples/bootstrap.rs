//! Error bars from a single run by Poisson resampling of the counts,
//! checked against the spread over independent runs.

use sloppy_phase::estimation::{
    estimate_with_bootstrap, monte_carlo, sample_counts, EstimatorOptions, ExactModel,
};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let truth = PhasePair::from_degrees(11.0, 6.0)?;
    let k = MeasurementStrength::new(0.785)?;
    let model = ExactModel::new(k);
    let opts = EstimatorOptions::default();

    let counts = sample_counts(truth, k, 10_000, 7)?;
    let (est, boot) = estimate_with_bootstrap(&counts, &model, 500, 8, &opts)?;
    let (a, b) = est.phases().to_degrees();
    let c = boot.covariance;
    println!("estimate ({a:.3}°, {b:.3}°)");
    println!(
        "bootstrap σ = ({:.3}°, {:.3}°), ρ = {:+.3}",
        c[0][0].sqrt().to_degrees(),
        c[1][1].sqrt().to_degrees(),
        c[0][1] / (c[0][0] * c[1][1]).sqrt()
    );

    let mc = monte_carlo(truth, &model, &model, 10_000, 300, 9, &opts)?;
    let m = mc.covariance;
    println!(
        "repeated runs σ = ({:.3}°, {:.3}°), ρ = {:+.3}",
        m[0][0].sqrt().to_degrees(),
        m[1][1].sqrt().to_degrees(),
        mc.correlation()
    );
    Ok(())
}
