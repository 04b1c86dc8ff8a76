//! Builds the two-photon state gate by gate and reads out the four
//! coincidence probabilities, next to the closed-form result.

use sloppy_phase::protocol::{self, full_state, Outcome};
use sloppy_phase::qcore::{self, project, Polarization, Wire};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let phases = PhasePair::from_degrees(10.0, 5.0)?;
    for k in [0.0, 0.785, 1.0] {
        let strength = MeasurementStrength::new(k)?;
        let state = full_state(phases, strength);
        let closed = protocol::outcome_distribution(phases, strength);
        println!(
            "K = {k}  (kappa {:.4}, lambda {:.4})",
            strength.kappa(),
            strength.lambda()
        );
        for o in Outcome::ALL {
            let circuit = qcore::joint_probability(&state, o.meter(), o.system());
            println!(
                "  p({o}) = {circuit:.6}   closed form {:.6}",
                closed.probability(o)
            );
        }
        let d = project(&state, Wire::Meter, Polarization::D);
        println!("  meter reads D with probability {:.6}", d.probability);
        println!("  Schmidt weights {:?}", state.schmidt_weights());
    }
    Ok(())
}
