use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::estimator::{Domain, ForwardModel};
use super::sampling::{derive_seed, sample_multinomial};
use super::DOMAIN_MAX;
use crate::error::{Error, Result};
use crate::optics::{self, PpbsModel};
use crate::protocol::{self, MeasurementStrength, PhasePair};

/// Calibration node positions, radians.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
}

impl GridSpec {
    /// Uniform grid on `[0, 22.5°]` in both phases.
    pub fn uniform_degrees(step_deg: f64) -> Result<Self> {
        if !(step_deg > 0.0) || !step_deg.is_finite() {
            return Err(Error::OutOfRange {
                what: "grid step (deg)",
                value: step_deg,
                lo: 0.0,
                hi: 22.5,
            });
        }
        let n = (22.5 / step_deg + 1e-9).floor() as usize;
        let mut axis: Vec<f64> = (0..=n)
            .map(|i| (i as f64 * step_deg).to_radians())
            .collect();
        if DOMAIN_MAX - axis[n] > 1e-12 {
            axis.push(DOMAIN_MAX);
        }
        Ok(Self {
            theta1: axis.clone(),
            theta2: axis,
        })
    }

    /// The default 2.5° grid.
    pub fn standard() -> Self {
        Self::uniform_degrees(2.5).expect("positive step")
    }

    fn validate(&self) -> Result<()> {
        for (name, axis) in [("theta1 grid", &self.theta1), ("theta2 grid", &self.theta2)] {
            if axis.is_empty() {
                return Err(Error::Empty(name));
            }
            if axis.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::UnsortedGrid(name));
            }
            for &x in axis {
                if !(-1e-12..=DOMAIN_MAX + 1e-12).contains(&x) {
                    return Err(Error::OutOfRange {
                        what: name,
                        value: x.to_degrees(),
                        lo: 0.0,
                        hi: 22.5,
                    });
                }
            }
        }
        Ok(())
    }
}

/// What produces the probabilities at each calibration node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CalibrationSource {
    Ideal,
    Optics(PpbsModel),
}

impl CalibrationSource {
    fn probabilities(&self, phases: PhasePair, strength: MeasurementStrength) -> Result<[f64; 4]> {
        match self {
            CalibrationSource::Ideal => {
                Ok(protocol::outcome_distribution(phases, strength).probabilities)
            }
            CalibrationSource::Optics(model) => {
                Ok(optics::imperfect_distribution(phases, strength, model)?.probabilities)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CalibrationSource::Ideal => "ideal",
            CalibrationSource::Optics(_) => "optics",
        }
    }
}

/// Gridded reference probabilities used as the estimator's forward model.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationTable {
    pub grid1: Vec<f64>,
    pub grid2: Vec<f64>,
    /// Row-major over `(grid1, grid2)`.
    pub probs: Vec<[f64; 4]>,
    /// `None` for exact (noiseless) node probabilities.
    pub shots_per_node: Option<u64>,
    pub strength: f64,
    pub source: CalibrationSource,
    pub seed: Option<u64>,
}

impl CalibrationTable {
    pub fn node(&self, i: usize, j: usize) -> &[f64; 4] {
        &self.probs[i * self.grid2.len() + j]
    }
}

fn renormalize(p: [f64; 4]) -> [f64; 4] {
    let s: f64 = p.iter().sum();
    if s > 0.0 {
        p.map(|x| x / s)
    } else {
        p
    }
}

/// Tabulates outcome probabilities on a grid.
///
/// With `shots_per_node = Some(n)` each node holds the frequencies of an
/// `n`-shot multinomial draw, seeded per node from `seed`; with `None` the
/// exact probabilities are stored.
pub fn build_calibration(
    strength: MeasurementStrength,
    grid: &GridSpec,
    shots_per_node: Option<u64>,
    seed: u64,
    source: CalibrationSource,
) -> Result<CalibrationTable> {
    grid.validate()?;
    if shots_per_node == Some(0) {
        return Err(Error::NoEvents);
    }
    let n2 = grid.theta2.len();
    let probs = (0..grid.theta1.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let phases = PhasePair {
                theta1: grid.theta1[idx / n2],
                theta2: grid.theta2[idx % n2],
            };
            let exact = source.probabilities(phases, strength)?;
            Ok(match shots_per_node {
                None => renormalize(exact),
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, idx as u64));
                    let counts = sample_multinomial(&exact, n, &mut rng);
                    counts.map(|c| c as f64 / n as f64)
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CalibrationTable {
        grid1: grid.theta1.clone(),
        grid2: grid.theta2.clone(),
        probs,
        shots_per_node,
        strength: strength.k(),
        source,
        seed: shots_per_node.map(|_| seed),
    })
}

/// Index `i` with `axis[i] <= x <= axis[i + 1]` and the fractional position.
fn locate(axis: &[f64], x: f64) -> Option<(usize, f64)> {
    let tol = 1e-12;
    let (lo, hi) = (axis[0], axis[axis.len() - 1]);
    if x < lo - tol || x > hi + tol {
        return None;
    }
    if axis.len() == 1 {
        return Some((0, 0.0));
    }
    let x = x.clamp(lo, hi);
    let i = axis.partition_point(|&g| g <= x).clamp(1, axis.len() - 1) - 1;
    let t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    Some((i, t))
}

/// Bilinear interpolation of the node probabilities, renormalized.
pub fn interpolate(cal: &CalibrationTable, phases: PhasePair) -> Result<[f64; 4]> {
    let outside = || Error::OutsideGrid {
        theta1: phases.theta1,
        theta2: phases.theta2,
    };
    let (i, u) = locate(&cal.grid1, phases.theta1).ok_or_else(outside)?;
    let (j, v) = locate(&cal.grid2, phases.theta2).ok_or_else(outside)?;
    let i1 = (i + 1).min(cal.grid1.len() - 1);
    let j1 = (j + 1).min(cal.grid2.len() - 1);
    let (p00, p01, p10, p11) = (
        cal.node(i, j),
        cal.node(i, j1),
        cal.node(i1, j),
        cal.node(i1, j1),
    );
    let mut out = [0.0; 4];
    for x in 0..4 {
        out[x] = (1.0 - u) * (1.0 - v) * p00[x]
            + (1.0 - u) * v * p01[x]
            + u * (1.0 - v) * p10[x]
            + u * v * p11[x];
    }
    Ok(renormalize(out))
}

impl ForwardModel for CalibrationTable {
    fn strength(&self) -> f64 {
        self.strength
    }

    fn domain(&self) -> Domain {
        Domain {
            theta1: (self.grid1[0], self.grid1[self.grid1.len() - 1]),
            theta2: (self.grid2[0], self.grid2[self.grid2.len() - 1]),
        }
    }

    fn probabilities(&self, phases: PhasePair) -> Result<[f64; 4]> {
        interpolate(self, phases)
    }
}
