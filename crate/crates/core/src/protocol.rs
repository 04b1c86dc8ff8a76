//! The two-phase circuit with an intermediate weak measurement.
//!
//! The system photon starts in `|H>`, picks up `theta1`, is coupled to the
//! meter through a controlled-Z, picks up `theta2` and is finally measured
//! in H/V. The meter is measured in D/A. The four outcome amplitudes are
//! real and available in closed form, which is what everything downstream
//! uses; [`full_state`] builds the same state gate by gate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{self, Qubit2State, Qubit4State, Wire, C64};

/// The two phases under estimation, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub theta1: f64,
    pub theta2: f64,
}

impl PhasePair {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        if !theta1.is_finite() {
            return Err(Error::NonFinite("theta1"));
        }
        if !theta2.is_finite() {
            return Err(Error::NonFinite("theta2"));
        }
        Ok(Self { theta1, theta2 })
    }

    pub fn from_degrees(theta1: f64, theta2: f64) -> Result<Self> {
        Self::new(theta1.to_radians(), theta2.to_radians())
    }

    pub fn to_degrees(self) -> (f64, f64) {
        (self.theta1.to_degrees(), self.theta2.to_degrees())
    }

    pub fn as_array(self) -> [f64; 2] {
        [self.theta1, self.theta2]
    }

    pub(crate) fn shifted(self, index: usize, delta: f64) -> Self {
        match index {
            0 => Self {
                theta1: self.theta1 + delta,
                ..self
            },
            _ => Self {
                theta2: self.theta2 + delta,
                ..self
            },
        }
    }
}

/// Weak-measurement strength `K` together with the meter amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementStrength {
    k: f64,
    kappa: f64,
    lambda: f64,
}

impl MeasurementStrength {
    pub fn new(k: f64) -> Result<Self> {
        let (kappa, lambda) = qcore::meter_amplitudes(k)?;
        Ok(Self { k, kappa, lambda })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// One of the four joint outcomes, meter result first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    DH,
    DV,
    AH,
    AV,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::DH, Outcome::DV, Outcome::AH, Outcome::AV];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::DH => "DH",
            Outcome::DV => "DV",
            Outcome::AH => "AH",
            Outcome::AV => "AV",
        }
    }

    pub fn meter(self) -> qcore::Polarization {
        match self {
            Outcome::DH | Outcome::DV => qcore::Polarization::D,
            Outcome::AH | Outcome::AV => qcore::Polarization::A,
        }
    }

    pub fn system(self) -> qcore::Polarization {
        match self {
            Outcome::DH | Outcome::AH => qcore::Polarization::H,
            Outcome::DV | Outcome::AV => qcore::Polarization::V,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Real amplitudes and probabilities of the four outcomes, indexed by
/// [`Outcome::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    pub amplitudes: [f64; 4],
    pub probabilities: [f64; 4],
}

impl OutcomeDistribution {
    pub fn probability(&self, outcome: Outcome) -> f64 {
        self.probabilities[outcome.index()]
    }

    pub fn amplitude(&self, outcome: Outcome) -> f64 {
        self.amplitudes[outcome.index()]
    }
}

fn trig(phases: PhasePair) -> (f64, f64, f64, f64) {
    let (s1, c1) = (2.0 * phases.theta1).sin_cos();
    let (s2, c2) = (2.0 * phases.theta2).sin_cos();
    (c1, s1, c2, s2)
}

/// Closed-form outcome amplitudes.
pub fn amplitudes(phases: PhasePair, strength: MeasurementStrength) -> [f64; 4] {
    let (c1, s1, c2, s2) = trig(phases);
    let (k, l) = (strength.kappa, strength.lambda);
    [
        k * c1 * c2 - l * s1 * s2,
        k * c1 * s2 + l * s1 * c2,
        l * c1 * c2 - k * s1 * s2,
        l * c1 * s2 + k * s1 * c2,
    ]
}

pub fn outcome_distribution(
    phases: PhasePair,
    strength: MeasurementStrength,
) -> OutcomeDistribution {
    let amplitudes = amplitudes(phases, strength);
    OutcomeDistribution {
        amplitudes,
        probabilities: amplitudes.map(|a| a * a),
    }
}

/// `d A(x) / d theta_j`, rows indexed by outcome, columns by phase.
pub fn amplitude_jacobian(phases: PhasePair, strength: MeasurementStrength) -> [[f64; 2]; 4] {
    let (c1, s1, c2, s2) = trig(phases);
    let (k, l) = (strength.kappa, strength.lambda);
    // dc/dtheta = -2s, ds/dtheta = 2c
    [
        [
            2.0 * (-k * s1 * c2 - l * c1 * s2),
            2.0 * (-k * c1 * s2 - l * s1 * c2),
        ],
        [
            2.0 * (-k * s1 * s2 + l * c1 * c2),
            2.0 * (k * c1 * c2 - l * s1 * s2),
        ],
        [
            2.0 * (-l * s1 * c2 - k * c1 * s2),
            2.0 * (-l * c1 * s2 - k * s1 * c2),
        ],
        [
            2.0 * (-l * s1 * s2 + k * c1 * c2),
            2.0 * (l * c1 * c2 - k * s1 * s2),
        ],
    ]
}

/// `(U(theta2) (x) I) CZ (U(theta1) (x) I) |H>|mu>`, built from gates.
pub fn full_state(phases: PhasePair, strength: MeasurementStrength) -> Qubit4State {
    let first = qcore::phase_gate(phases.theta1).expect("PhasePair is finite");
    let second = qcore::phase_gate(phases.theta2).expect("PhasePair is finite");
    circuit(&first, &second, strength)
}

/// Derivatives of [`full_state`] with respect to `theta1` and `theta2`,
/// obtained by differentiating the phase gates.
pub fn full_state_derivatives(
    phases: PhasePair,
    strength: MeasurementStrength,
) -> [Qubit4State; 2] {
    let u1 = qcore::phase_gate(phases.theta1).expect("PhasePair is finite");
    let u2 = qcore::phase_gate(phases.theta2).expect("PhasePair is finite");
    let du1 = qcore::phase_gate_derivative(phases.theta1).expect("PhasePair is finite");
    let du2 = qcore::phase_gate_derivative(phases.theta2).expect("PhasePair is finite");
    [circuit(&du1, &u2, strength), circuit(&u1, &du2, strength)]
}

fn circuit(
    first: &qcore::Gate,
    second: &qcore::Gate,
    strength: MeasurementStrength,
) -> Qubit4State {
    let meter = meter_ket(strength);
    Qubit4State::product(&Qubit2State::h(), &meter)
        .apply(first, Some(Wire::System))
        .and_then(|s| s.apply(&qcore::cz_gate(), None))
        .and_then(|s| s.apply(second, Some(Wire::System)))
        .expect("gate dimensions are fixed")
}

fn meter_ket(strength: MeasurementStrength) -> Qubit2State {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (k, l) = (strength.kappa, strength.lambda);
    Qubit2State::new(C64::new(h * (k + l), 0.0), C64::new(h * (k - l), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(a: f64, b: f64) -> PhasePair {
        PhasePair::new(a, b).unwrap()
    }

    fn ks(k: f64) -> MeasurementStrength {
        MeasurementStrength::new(k).unwrap()
    }

    #[test]
    fn zero_phases() {
        for k in [0.0, 0.3, 0.785, 1.0] {
            let d = outcome_distribution(pp(0.0, 0.0), ks(k));
            assert!((d.probability(Outcome::DH) - (1.0 + k) / 2.0).abs() < 1e-12);
            assert!((d.probability(Outcome::AH) - (1.0 - k) / 2.0).abs() < 1e-12);
            assert!(d.probability(Outcome::DV).abs() < 1e-12);
            assert!(d.probability(Outcome::AV).abs() < 1e-12);
        }
    }

    #[test]
    fn projective_limit_factorizes() {
        let (t1, t2) = (0.21, 0.07);
        let d = outcome_distribution(pp(t1, t2), ks(1.0));
        let (c1, s1) = ((2.0 * t1).cos().powi(2), (2.0 * t1).sin().powi(2));
        let (c2, s2) = ((2.0 * t2).cos().powi(2), (2.0 * t2).sin().powi(2));
        let want = [c1 * c2, c1 * s2, s1 * s2, s1 * c2];
        for (got, want) in d.probabilities.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobian_at_origin() {
        let s = ks(0.6);
        let j = amplitude_jacobian(pp(0.0, 0.0), s);
        assert!((j[1][0] - 2.0 * s.lambda()).abs() < 1e-12);
        assert!((j[1][1] - 2.0 * s.kappa()).abs() < 1e-12);
        assert!(j[0][0].abs() < 1e-12 && j[0][1].abs() < 1e-12);
    }

    #[test]
    fn strength_invariants() {
        for k in [0.0, 0.322, 0.5, 0.785, 0.934, 1.0] {
            let s = ks(k);
            assert!((s.kappa().powi(2) + s.lambda().powi(2) - 1.0).abs() < 1e-12);
            assert!((2.0 * s.kappa().powi(2) - 1.0 - k).abs() < 1e-12);
        }
    }

    #[test]
    fn separable_at_zero_strength() {
        let w = full_state(pp(0.3, 0.1), ks(0.0)).schmidt_weights();
        assert!(w[1].abs() < 1e-12);
    }

    #[test]
    fn normalization_on_grid() {
        let pi = std::f64::consts::PI;
        for i in 0..50 {
            for j in 0..50 {
                for kk in 0..=10 {
                    let p = pp(i as f64 * pi / 50.0, j as f64 * pi / 50.0);
                    let d = outcome_distribution(p, ks(kk as f64 / 10.0));
                    let sum: f64 = d.probabilities.iter().sum();
                    assert!((sum - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn zero_strength_depends_only_on_the_sum(
            t1 in -3.0f64..3.0, t2 in -3.0f64..3.0, delta in -3.0f64..3.0
        ) {
            let a = outcome_distribution(pp(t1, t2), ks(0.0));
            let b = outcome_distribution(pp(t1 + delta, t2 - delta), ks(0.0));
            for (x, y) in a.probabilities.iter().zip(b.probabilities.iter()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn periodic_in_pi(t1 in -3.0f64..3.0, t2 in -3.0f64..3.0, k in 0.0f64..=1.0) {
            let pi = std::f64::consts::PI;
            let a = outcome_distribution(pp(t1, t2), ks(k));
            for shifted in [pp(t1 + pi, t2), pp(t1, t2 + pi)] {
                let b = outcome_distribution(shifted, ks(k));
                for (x, y) in a.probabilities.iter().zip(b.probabilities.iter()) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn swapping_phases_exchanges_the_v_outcomes(
            t1 in -3.0f64..3.0, t2 in -3.0f64..3.0, k in 0.0f64..=1.0
        ) {
            let s = ks(k);
            let a = outcome_distribution(pp(t1, t2), s);
            let b = outcome_distribution(pp(t2, t1), s);
            prop_assert!((a.probability(Outcome::DH) - b.probability(Outcome::DH)).abs() < 1e-12);
            prop_assert!((a.probability(Outcome::AH) - b.probability(Outcome::AH)).abs() < 1e-12);
            prop_assert!((a.probability(Outcome::DV) - b.probability(Outcome::AV)).abs() < 1e-12);
            prop_assert!((a.probability(Outcome::AV) - b.probability(Outcome::DV)).abs() < 1e-12);
        }
    }
}
