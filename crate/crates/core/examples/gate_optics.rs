//! The controlled-Z as a post-selected partially polarizing beam splitter:
//! coincidence map, input balancing, and what imperfect two-photon
//! interference does to the Fisher information.

use sloppy_phase::information::classical_fim;
use sloppy_phase::optics::{self, balancing_attenuations, ppbs_coincidence_map, PpbsModel};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let phases = PhasePair::from_degrees(10.0, 5.0)?;
    let k = MeasurementStrength::new(0.785)?;
    let ideal = classical_fim(phases, k).determinant();

    for (name, model) in [
        ("T_H=1, T_V=1/3", PpbsModel::textbook()),
        ("T_H=2/3, T_V=1/3", PpbsModel::experimental()),
    ] {
        println!("{name}");
        let map = ppbs_coincidence_map(&model);
        for row in map.coherent() {
            println!(
                "  {:+.4} {:+.4} {:+.4} {:+.4}",
                row[0], row[1], row[2], row[3]
            );
        }
        println!("  singular values {:.4?}", map.singular_values());
        let att = balancing_attenuations(&model)?;
        println!(
            "  attenuations system {:.4?} meter {:.4?}",
            att.system, att.meter
        );
        for v in [1.0, 0.9, 0.5, 0.0] {
            let m = model.with_visibility(v);
            let out = optics::imperfect_distribution(phases, k, &m)?;
            let det = optics::effective_fim(phases, k, &m)?.determinant();
            println!(
                "  v = {v:.1}: p = {:.4?}  coincidence {:.4}  det F {det:8.3} (ideal {ideal:.3})",
                out.probabilities, out.success_probability
            );
        }
    }
    Ok(())
}
