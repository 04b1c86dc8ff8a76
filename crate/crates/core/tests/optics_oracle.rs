mod common;

use proptest::prelude::*;
use sloppy_phase::optics::{self, balancing_attenuations, Attenuations, PpbsModel};
use sloppy_phase::{MeasurementStrength, PhasePair};

fn att_array(a: Attenuations) -> [[f64; 2]; 2] {
    [a.system, a.meter]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn coincidence_map_matches_mode_operators(
        t1 in 0.0..std::f64::consts::PI,
        t2 in 0.0..std::f64::consts::PI,
        k in 0.0..=1.0f64,
        t_h in 0.05..=1.0f64,
        t_v in 0.05..=1.0f64,
        v in 0.0..=1.0f64,
        rescale in any::<bool>(),
    ) {
        let model = PpbsModel::new(t_h, t_v, v, rescale).unwrap();
        let att = if rescale {
            match balancing_attenuations(&model) {
                Ok(a) => a,
                Err(_) => return Ok(()),
            }
        } else {
            Attenuations::none()
        };
        let (want, want_success) =
            common::two_photon_protocol(t1, t2, k, t_h, t_v, v, att_array(att));
        prop_assume!(want_success > 1e-9);
        let got = optics::imperfect_distribution(
            PhasePair::new(t1, t2).unwrap(),
            MeasurementStrength::new(k).unwrap(),
            &model,
        )
        .unwrap();
        for i in 0..4 {
            prop_assert!((got.probabilities[i] - want[i]).abs() < 1e-12, "{:?} vs {:?}", got.probabilities, want);
        }
        prop_assert!((got.success_probability - want_success).abs() < 1e-12);
    }
}

#[test]
fn oracle_reduces_to_the_ideal_protocol_for_the_textbook_gate() {
    let s = 1.0 / 3f64.sqrt();
    let att = [[s, 1.0], [s, 1.0]];
    for &(a, b, k) in &[(0.1, 0.3, 0.785), (0.25, 0.05, 0.934), (0.0, 0.39, 0.322)] {
        let (p, success) = common::two_photon_protocol(a, b, k, 1.0, 1.0 / 3.0, 1.0, att);
        let ideal = sloppy_phase::protocol::outcome_distribution(
            PhasePair::new(a, b).unwrap(),
            MeasurementStrength::new(k).unwrap(),
        )
        .probabilities;
        for i in 0..4 {
            assert!((p[i] - ideal[i]).abs() < 1e-12);
        }
        assert!((success - 1.0 / 9.0).abs() < 1e-12);
    }
}

#[test]
fn effective_fim_matches_the_oracle() {
    let p = PhasePair::from_degrees(10.0, 5.0).unwrap();
    let k = MeasurementStrength::new(0.785).unwrap();
    for model in [PpbsModel::experimental(), PpbsModel::textbook()] {
        for v in [1.0, 0.5, 0.0] {
            let m = model.with_visibility(v);
            let att = att_array(balancing_attenuations(&m).unwrap());
            let want = common::oracle_fim_det(p.theta1, p.theta2, 0.785, m.t_h, m.t_v, v, att);
            let got = optics::effective_fim(p, k, &m).unwrap().determinant();
            assert!(
                (got - want).abs() < 1e-6 * want.abs().max(1.0),
                "{got} vs {want}"
            );
        }
    }
}
