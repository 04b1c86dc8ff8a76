//! Simultaneous estimation of two phases with a tunable-strength
//! measurement on a meter qubit.
//!
//! A system photon in `|H>` picks up a phase `θ1`, is entangled with a meter
//! photon `κ|D> + λ|A>` through a controlled-Z, picks up a second phase `θ2`
//! and is read out jointly with the meter. The measurement strength
//! `K = κ² - λ²` decides how much the meter learns about the intermediate
//! state: at `K = 0` only `θ1 + θ2` is visible, at `K = 1` both phases are.
//!
//! Modules, from the bottom up:
//!
//! - [`qcore`]: pure one- and two-qubit states, gates, projective readout.
//! - [`protocol`]: the circuit above, outcome amplitudes and probabilities.
//! - [`information`]: classical and quantum Fisher information, Cramér-Rao
//!   bounds and the stiff/sloppy eigen-analysis.
//! - [`estimation`]: shot sampling, calibration grids, least-squares and
//!   maximum-likelihood estimation, bootstrap and Monte Carlo.
//! - [`optics`]: the post-selected PPBS model of the controlled-Z.
//! - [`cli`]: the `sloppy-phase` command line.

pub mod cli;
pub mod error;
pub mod estimation;
pub mod information;
pub mod optics;
pub mod protocol;
pub mod qcore;

pub use error::{Error, Result};
pub use information::{classical_fim, crb, qfim, sloppiness, CramerRao, InfoMatrix};
pub use protocol::{MeasurementStrength, Outcome, PhasePair};
