//! The experimental pipeline: tabulate a high-statistics calibration,
//! take a short run at unknown phases and estimate them by least squares
//! against the interpolated table.

use sloppy_phase::estimation::{
    build_calibration, estimate, sample_counts, CalibrationSource, EstimatorOptions, GridSpec,
};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let k = MeasurementStrength::new(0.934)?;
    let cal = build_calibration(
        k,
        &GridSpec::standard(),
        Some(100_000),
        1,
        CalibrationSource::Ideal,
    )?;
    println!(
        "calibration: {} x {} nodes, 1e5 shots each",
        cal.grid1.len(),
        cal.grid2.len()
    );

    for (i, (a, b)) in [(10.0, 5.0), (3.0, 17.0), (15.5, 15.5)]
        .into_iter()
        .enumerate()
    {
        let truth = PhasePair::from_degrees(a, b)?;
        let counts = sample_counts(truth, k, 2_000, 10 + i as u64)?;
        let est = estimate(&counts, &cal, &EstimatorOptions::default())?;
        let (e1, e2) = est.phases().to_degrees();
        println!(
            "truth ({a:5.2}°, {b:5.2}°)  counts {:?}  estimate ({e1:5.2}°, {e2:5.2}°)  residual {:.2e}",
            counts.counts, est.objective_value
        );
    }
    Ok(())
}
