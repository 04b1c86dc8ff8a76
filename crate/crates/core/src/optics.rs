//! Post-selected linear-optics model of the controlled-Z gate.
//!
//! The two photons enter opposite ports of a partially polarizing beam
//! splitter (PPBS); a coincidence keeps one photon per output port. Each
//! input pair `|x, y>` (system port, meter port) contributes a
//! both-transmitted branch `t_x t_y |x, y>` and a both-reflected branch
//! `-r_x r_y |y, x>`. Indistinguishable photons add the branches coherently;
//! distinguishable ones add them at the probability level. Visibility `v`
//! mixes the two cases.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{Domain, ForwardModel};
use crate::information::{self, InfoMatrix};
use crate::protocol::{MeasurementStrength, Outcome, PhasePair};
use crate::qcore::{self, Qubit4State, Wire, C64};

/// PPBS transmittivities, two-photon visibility and input pre-compensation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpbsModel {
    pub t_h: f64,
    pub t_v: f64,
    pub visibility: f64,
    pub rescaling: bool,
}

impl PpbsModel {
    pub fn new(t_h: f64, t_v: f64, visibility: f64, rescaling: bool) -> Result<Self> {
        for (what, value) in [("T_H", t_h), ("T_V", t_v), ("visibility", visibility)] {
            if !value.is_finite() {
                return Err(Error::NonFinite(what));
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange {
                    what,
                    value,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        Ok(Self {
            t_h,
            t_v,
            visibility,
            rescaling,
        })
    }

    /// `T_H = 2/3`, `T_V = 1/3`, perfect visibility, rescaling on.
    pub fn experimental() -> Self {
        Self {
            t_h: 2.0 / 3.0,
            t_v: 1.0 / 3.0,
            visibility: 1.0,
            rescaling: true,
        }
    }

    /// The textbook single-PPBS gate, `T_H = 1`, `T_V = 1/3`.
    pub fn textbook() -> Self {
        Self {
            t_h: 1.0,
            t_v: 1.0 / 3.0,
            visibility: 1.0,
            rescaling: true,
        }
    }

    pub fn with_visibility(self, visibility: f64) -> Self {
        Self { visibility, ..self }
    }

    pub fn with_rescaling(self, rescaling: bool) -> Self {
        Self { rescaling, ..self }
    }

    fn amplitudes(&self) -> ([f64; 2], [f64; 2]) {
        (
            [self.t_h.sqrt(), self.t_v.sqrt()],
            [(1.0 - self.t_h).sqrt(), (1.0 - self.t_v).sqrt()],
        )
    }
}

/// Linear maps from the input pair to the coincidence subspace, in the
/// `{HH, HV, VH, VV}` basis (system port first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostselectedMap {
    pub transmitted: [[f64; 4]; 4],
    pub reflected: [[f64; 4]; 4],
    pub visibility: f64,
}

impl PostselectedMap {
    /// Amplitude map for fully indistinguishable photons.
    pub fn coherent(&self) -> [[f64; 4]; 4] {
        let mut m = self.transmitted;
        for (row, r) in m.iter_mut().zip(self.reflected.iter()) {
            for (a, b) in row.iter_mut().zip(r.iter()) {
                *a += b;
            }
        }
        m
    }

    pub fn singular_values(&self) -> [f64; 4] {
        let c = self.coherent();
        let m = Matrix4::from_fn(|i, j| c[i][j]);
        let sv = m.singular_values();
        let mut out = [sv[0], sv[1], sv[2], sv[3]];
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Branches of the post-selected mixture with their weights; the
    /// vectors are unnormalized.
    pub fn branches(&self, input: &[f64; 4]) -> Vec<(f64, [f64; 4])> {
        let apply = |m: &[[f64; 4]; 4]| {
            let mut out = [0.0; 4];
            for (o, row) in out.iter_mut().zip(m.iter()) {
                *o = row.iter().zip(input.iter()).map(|(a, b)| a * b).sum();
            }
            out
        };
        let v = self.visibility;
        let mut out = Vec::with_capacity(3);
        if v > 0.0 {
            out.push((v, apply(&self.coherent())));
        }
        if v < 1.0 {
            out.push((1.0 - v, apply(&self.transmitted)));
            out.push((1.0 - v, apply(&self.reflected)));
        }
        out
    }

    /// Probability that a normalized input pair yields a coincidence.
    pub fn success_probability(&self, input: &[f64; 4]) -> f64 {
        self.branches(input)
            .iter()
            .map(|(w, b)| w * b.iter().map(|x| x * x).sum::<f64>())
            .sum()
    }
}

fn idx(system: usize, meter: usize) -> usize {
    2 * system + meter
}

pub fn ppbs_coincidence_map(model: &PpbsModel) -> PostselectedMap {
    let (t, r) = model.amplitudes();
    let mut transmitted = [[0.0; 4]; 4];
    let mut reflected = [[0.0; 4]; 4];
    for x in 0..2 {
        for y in 0..2 {
            transmitted[idx(x, y)][idx(x, y)] = t[x] * t[y];
            reflected[idx(y, x)][idx(x, y)] = -r[x] * r[y];
        }
    }
    PostselectedMap {
        transmitted,
        reflected,
        visibility: model.visibility,
    }
}

/// Per-photon amplitude attenuations applied before the gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attenuations {
    /// `(a_H, a_V)` on the system photon.
    pub system: [f64; 2],
    /// `(b_H, b_V)` on the meter photon.
    pub meter: [f64; 2],
}

impl Attenuations {
    pub fn none() -> Self {
        Self {
            system: [1.0; 2],
            meter: [1.0; 2],
        }
    }
}

/// Attenuations that make `a_x b_y |g_xy|` as uniform as possible, with
/// `g_xy` the coherent gate gain on `|x, y>`.
///
/// The fit is additive in `ln|g|` (row and column effects of a 2×2 table);
/// it is exact when `|g_HH g_VV| = |g_HV g_VH|`. The largest attenuation in
/// each pair is 1.
pub fn balancing_attenuations(model: &PpbsModel) -> Result<Attenuations> {
    let c = ppbs_coincidence_map(model).coherent();
    let mut log_gain = [[0.0; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            let g = c[idx(x, y)][idx(x, y)].abs();
            if g < 1e-12 {
                return Err(Error::Rescaling(
                    "a diagonal coincidence amplitude vanishes",
                ));
            }
            log_gain[x][y] = -g.ln();
        }
    }
    let grand = 0.25 * log_gain.iter().flatten().sum::<f64>();
    let row = [0, 1].map(|x| 0.5 * (log_gain[x][0] + log_gain[x][1]) - grand);
    let col = [0, 1].map(|y| 0.5 * (log_gain[0][y] + log_gain[1][y]) - grand);
    let rmax = row[0].max(row[1]);
    let cmax = col[0].max(col[1]);
    Ok(Attenuations {
        system: row.map(|u| (u - rmax).exp()),
        meter: col.map(|u| (u - cmax).exp()),
    })
}

/// Outcome probabilities conditioned on a coincidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostselectedOutcome {
    /// Renormalized over the four coincidence outcomes.
    pub probabilities: [f64; 4],
    pub success_probability: f64,
}

/// Runs the protocol with the controlled-Z replaced by the post-selected
/// PPBS map.
pub fn imperfect_distribution(
    phases: PhasePair,
    strength: MeasurementStrength,
    model: &PpbsModel,
) -> Result<PostselectedOutcome> {
    let att = if model.rescaling {
        balancing_attenuations(model)?
    } else {
        Attenuations::none()
    };
    let (s1, c1) = (2.0 * phases.theta1).sin_cos();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (k, l) = (strength.kappa(), strength.lambda());
    let system = [c1 * att.system[0], s1 * att.system[1]];
    let meter = [h * (k + l) * att.meter[0], h * (k - l) * att.meter[1]];
    let input = [
        system[0] * meter[0],
        system[0] * meter[1],
        system[1] * meter[0],
        system[1] * meter[1],
    ];

    let map = ppbs_coincidence_map(model);
    let second = qcore::phase_gate(phases.theta2)?;
    let mut probabilities = [0.0; 4];
    for (weight, branch) in map.branches(&input) {
        let state = Qubit4State::from_amplitudes(branch.map(|a| C64::new(a, 0.0)))
            .apply(&second, Some(Wire::System))?;
        for o in Outcome::ALL {
            probabilities[o.index()] +=
                weight * qcore::joint_probability(&state, o.meter(), o.system());
        }
    }
    let success: f64 = probabilities.iter().sum();
    if !(success > 1e-300) {
        return Err(Error::ZeroPostselection);
    }
    Ok(PostselectedOutcome {
        probabilities: probabilities.map(|p| p / success),
        success_probability: success,
    })
}

/// Classical Fisher information of the post-selected model, by central
/// finite differences of its probabilities.
pub fn effective_fim(
    phases: PhasePair,
    strength: MeasurementStrength,
    model: &PpbsModel,
) -> Result<InfoMatrix> {
    information::fisher_from_probabilities(
        |p| Ok(imperfect_distribution(p, strength, model)?.probabilities),
        phases,
        information::FD_STEP,
        1e-8,
    )
}

/// The post-selected gate as a forward model over the standard domain.
#[derive(Debug, Clone, Copy)]
pub struct OpticsModel {
    pub strength: MeasurementStrength,
    pub ppbs: PpbsModel,
}

impl ForwardModel for OpticsModel {
    fn strength(&self) -> f64 {
        self.strength.k()
    }

    fn domain(&self) -> Domain {
        Domain::standard()
    }

    fn probabilities(&self, phases: PhasePair) -> Result<[f64; 4]> {
        Ok(imperfect_distribution(phases, self.strength, &self.ppbs)?.probabilities)
    }
}
