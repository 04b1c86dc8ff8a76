//! Classical and quantum Fisher information across measurement strengths,
//! with the Cramér-Rao bound for a thousand shots.

use sloppy_phase::information::{classical_fim, crb, qfim, CramerRao};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn main() -> sloppy_phase::Result<()> {
    let phases = PhasePair::from_degrees(12.0, 4.0)?;
    let shots = 1000;
    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>12} {:>12}",
        "K", "Q12", "F12", "det F", "var bound", "cov bound"
    );
    for i in 0..=10 {
        let k = i as f64 / 10.0;
        let strength = MeasurementStrength::new(k)?;
        let q = qfim(phases, strength)?;
        let f = classical_fim(phases, strength);
        let (var, cov) = match crb(&f, shots) {
            CramerRao::Bounded(b) => (format!("{:.3e}", b.var1), format!("{:.3e}", b.cov + 0.0)),
            CramerRao::Unbounded { .. } => ("unbounded".into(), "unbounded".into()),
        };
        println!(
            "{k:>5.1} {:>9.4} {:>9.4} {:>9.3} {var:>12} {cov:>12}",
            q.m12,
            f.m12,
            f.determinant()
        );
    }
    Ok(())
}
