//! Stiff and sloppy directions of the Fisher information, and how the
//! sloppy eigenvalue opens up as the measurement gets stronger.

use sloppy_phase::information::{classical_fim, sloppiness};
use sloppy_phase::protocol::outcome_distribution;
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let phases = PhasePair::from_degrees(8.0, 6.0)?;
    for k in [0.0, 0.322, 0.785, 0.934] {
        let r = sloppiness(&classical_fim(phases, MeasurementStrength::new(k)?));
        println!(
            "K = {k:<5}  stiff {:7.3} along ({:+.3}, {:+.3})  sloppy {:7.3} along ({:+.3}, {:+.3})  condition {:.3e}",
            r.stiff_value, r.stiff_dir[0], r.stiff_dir[1], r.sloppy_value, r.sloppy_dir[0], r.sloppy_dir[1], r.condition_number
        );
    }

    // Without the meter only the sum is visible: shifting along the sloppy
    // direction leaves every probability unchanged.
    let zero = MeasurementStrength::new(0.0)?;
    let shifted = PhasePair::from_degrees(11.0, 3.0)?;
    let a = outcome_distribution(phases, zero).probabilities;
    let b = outcome_distribution(shifted, zero).probabilities;
    println!("K = 0, (8°, 6°) vs (11°, 3°): {a:.6?} vs {b:.6?}");
    Ok(())
}
