//! Exact pure-state simulation of one and two polarization qubits.
//!
//! Single-qubit vectors are ordered `{|H>, |V>}`. Two-qubit vectors are
//! ordered `{|HH>, |HV>, |VH>, |VV>}` with the system qubit first and the
//! meter second.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Which photon a single-qubit gate or measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wire {
    System,
    Meter,
}

/// Measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Horizontal / vertical, the Pauli Z eigenbasis.
    HV,
    /// Diagonal / antidiagonal.
    DA,
}

/// A polarization outcome; the basis is implied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    H,
    V,
    D,
    A,
}

impl Polarization {
    pub fn basis(self) -> Basis {
        match self {
            Polarization::H | Polarization::V => Basis::HV,
            Polarization::D | Polarization::A => Basis::DA,
        }
    }

    pub fn ket(self) -> Qubit2State {
        match self {
            Polarization::H => Qubit2State::h(),
            Polarization::V => Qubit2State::v(),
            Polarization::D => Qubit2State::d(),
            Polarization::A => Qubit2State::a(),
        }
    }
}

impl Basis {
    pub fn outcomes(self) -> [Polarization; 2] {
        match self {
            Basis::HV => [Polarization::H, Polarization::V],
            Basis::DA => [Polarization::D, Polarization::A],
        }
    }
}

/// Pure state of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit2State {
    amps: [C64; 2],
}

impl Qubit2State {
    pub fn new(h: C64, v: C64) -> Self {
        Self { amps: [h, v] }
    }

    pub fn real(h: f64, v: f64) -> Self {
        Self::new(re(h), re(v))
    }

    pub fn h() -> Self {
        Self::real(1.0, 0.0)
    }

    pub fn v() -> Self {
        Self::real(0.0, 1.0)
    }

    pub fn d() -> Self {
        Self::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    }

    pub fn a() -> Self {
        Self::real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
    }

    /// Right circular polarization, `(|H> + i|V>)/sqrt2`.
    pub fn r() -> Self {
        Self::new(re(FRAC_1_SQRT_2), C64::new(0.0, FRAC_1_SQRT_2))
    }

    /// Left circular polarization, `(|H> - i|V>)/sqrt2`.
    pub fn l() -> Self {
        Self::new(re(FRAC_1_SQRT_2), C64::new(0.0, -FRAC_1_SQRT_2))
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self::new(self.amps[0] / n, self.amps[1] / n))
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::new(self.amps[0] * factor, self.amps[1] * factor)
    }

    pub fn apply(&self, gate: &Gate) -> Result<Self> {
        let m = gate.single()?;
        Ok(Self::new(
            m[0][0] * self.amps[0] + m[0][1] * self.amps[1],
            m[1][0] * self.amps[0] + m[1][1] * self.amps[1],
        ))
    }
}

/// Pure state of the system–meter pair.
///
/// A state produced by projecting onto a branch keeps its amplitudes
/// unnormalized and records the branch probability in `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit4State {
    amps: [C64; 4],
    weight: f64,
}

impl Qubit4State {
    pub fn from_amplitudes(amps: [C64; 4]) -> Self {
        let weight = amps.iter().map(|a| a.norm_sqr()).sum();
        Self { amps, weight }
    }

    pub fn product(system: &Qubit2State, meter: &Qubit2State) -> Self {
        let s = system.amplitudes();
        let m = meter.amplitudes();
        Self::from_amplitudes([s[0] * m[0], s[0] * m[1], s[1] * m[0], s[1] * m[1]])
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        self.amps
    }

    pub fn amplitude(&self, system: usize, meter: usize) -> C64 {
        self.amps[2 * system + meter]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Squared norm at construction, i.e. the probability of the branch this
    /// state represents.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            amps: self.amps.map(|a| a / n),
            weight: 1.0,
        })
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut amps = self.amps;
        for (a, b) in amps.iter_mut().zip(other.amps.iter()) {
            *a += b;
        }
        Self::from_amplitudes(amps)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_amplitudes(self.amps.map(|a| a * factor))
    }

    /// Applies a 4×4 gate, or a 2×2 gate embedded on `target`.
    pub fn apply(&self, gate: &Gate, target: Option<Wire>) -> Result<Self> {
        let m = match (gate, target) {
            (Gate::Two(m), None) => *m,
            (Gate::Single(m), Some(wire)) => embed(m, wire),
            (Gate::Two(_), Some(_)) => {
                return Err(Error::DimensionMismatch(
                    "two-qubit gate takes no target wire",
                ))
            }
            (Gate::Single(_), None) => {
                return Err(Error::DimensionMismatch(
                    "single-qubit gate on a pair needs a target wire",
                ))
            }
        };
        let mut out = [ZERO; 4];
        for (i, row) in m.iter().enumerate() {
            out[i] = row.iter().zip(self.amps.iter()).map(|(g, a)| g * a).sum();
        }
        Ok(Self::from_amplitudes(out))
    }

    /// Schmidt coefficients (squared) of the normalized state.
    pub fn schmidt_weights(&self) -> [f64; 2] {
        // Eigenvalues of the reduced meter density matrix.
        let rho = self.reduced_meter();
        let tr = rho[0][0].re + rho[1][1].re;
        let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
        let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
        [0.5 * tr + disc, (0.5 * tr - disc).max(0.0)]
    }

    /// Reduced density matrix of the meter (system traced out).
    pub fn reduced_meter(&self) -> [[C64; 2]; 2] {
        let mut rho = [[ZERO; 2]; 2];
        for (i, row) in rho.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..2)
                    .map(|s| self.amplitude(s, i) * self.amplitude(s, j).conj())
                    .sum();
            }
        }
        rho
    }
}

/// A gate in matrix form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Single([[C64; 2]; 2]),
    Two([[C64; 4]; 4]),
}

impl Gate {
    pub fn identity() -> Self {
        Gate::Single([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn hadamard() -> Self {
        let h = re(FRAC_1_SQRT_2);
        Gate::Single([[h, h], [h, -h]])
    }

    pub fn pauli_z() -> Self {
        Gate::Single([[ONE, ZERO], [ZERO, -ONE]])
    }

    fn single(&self) -> Result<&[[C64; 2]; 2]> {
        match self {
            Gate::Single(m) => Ok(m),
            Gate::Two(_) => Err(Error::DimensionMismatch(
                "two-qubit gate applied to a single qubit",
            )),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Gate::Single(_) => 2,
            Gate::Two(_) => 4,
        }
    }

    /// Entry `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match self {
            Gate::Single(m) => m[row][col],
            Gate::Two(m) => m[row][col],
        }
    }

    pub fn compose(&self, rhs: &Gate) -> Result<Gate> {
        match (self, rhs) {
            (Gate::Single(a), Gate::Single(b)) => {
                let mut out = [[ZERO; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
                    }
                }
                Ok(Gate::Single(out))
            }
            (Gate::Two(a), Gate::Two(b)) => {
                let mut out = [[ZERO; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
                    }
                }
                Ok(Gate::Two(out))
            }
            _ => Err(Error::DimensionMismatch(
                "composing gates of different size",
            )),
        }
    }

    /// Largest entry-wise deviation of `G†G` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s: C64 = (0..n)
                    .map(|k| self.entry(k, i).conj() * self.entry(k, j))
                    .sum();
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

fn embed(m: &[[C64; 2]; 2], wire: Wire) -> [[C64; 4]; 4] {
    let mut out = [[ZERO; 4]; 4];
    for s_out in 0..2 {
        for m_out in 0..2 {
            for s_in in 0..2 {
                for m_in in 0..2 {
                    let v = match wire {
                        Wire::System if m_out == m_in => m[s_out][s_in],
                        Wire::Meter if s_out == s_in => m[m_out][m_in],
                        _ => ZERO,
                    };
                    out[2 * s_out + m_out][2 * s_in + m_in] = v;
                }
            }
        }
    }
    out
}

/// Phase-shifter rotation `exp(-2i theta Y)` in the `{|H>, |V>}` basis.
pub fn phase_gate(theta: f64) -> Result<Gate> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    let (s, c) = (2.0 * theta).sin_cos();
    Ok(Gate::Single([[re(c), re(-s)], [re(s), re(c)]]))
}

/// `d/dtheta` of [`phase_gate`]. Not unitary.
pub fn phase_gate_derivative(theta: f64) -> Result<Gate> {
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    let (s, c) = (2.0 * theta).sin_cos();
    Ok(Gate::Single([
        [re(-2.0 * s), re(-2.0 * c)],
        [re(2.0 * c), re(-2.0 * s)],
    ]))
}

/// Controlled-Z, `diag(1, 1, 1, -1)`.
pub fn cz_gate() -> Gate {
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = if i == 3 { -ONE } else { ONE };
    }
    Gate::Two(m)
}

/// Meter amplitudes `(kappa, lambda)` for strength `K = 2 kappa^2 - 1`.
pub fn meter_amplitudes(k: f64) -> Result<(f64, f64)> {
    if !k.is_finite() {
        return Err(Error::NonFinite("K"));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::StrengthOutOfRange(k));
    }
    Ok((((1.0 + k) / 2.0).sqrt(), ((1.0 - k) / 2.0).sqrt()))
}

/// Meter state `kappa|D> + lambda|A>`.
pub fn meter_state(k: f64) -> Result<Qubit2State> {
    let (kappa, lambda) = meter_amplitudes(k)?;
    let d = Qubit2State::d().amplitudes();
    let a = Qubit2State::a().amplitudes();
    Ok(Qubit2State::new(
        d[0] * kappa + a[0] * lambda,
        d[1] * kappa + a[1] * lambda,
    ))
}

/// Result of a projective measurement on one wire of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// State of the unmeasured wire, `None` when the branch has zero
    /// probability.
    pub collapsed: Option<Qubit2State>,
}

/// Projects `wire` of `state` onto `outcome`.
pub fn project(state: &Qubit4State, wire: Wire, outcome: Polarization) -> Projection {
    let bra = outcome.ket().amplitudes();
    let mut rest = [ZERO; 2];
    for (other, slot) in rest.iter_mut().enumerate() {
        *slot = (0..2)
            .map(|k| {
                let amp = match wire {
                    Wire::System => state.amplitude(k, other),
                    Wire::Meter => state.amplitude(other, k),
                };
                bra[k].conj() * amp
            })
            .sum();
    }
    let branch = Qubit2State::new(rest[0], rest[1]);
    let probability = branch.norm_sqr();
    let collapsed = if probability > 1e-300 {
        branch.normalize().ok()
    } else {
        None
    };
    Projection {
        probability,
        collapsed,
    }
}

/// Joint probability of measuring the meter and then the system.
pub fn joint_probability(state: &Qubit4State, meter: Polarization, system: Polarization) -> f64 {
    let m = meter.ket().amplitudes();
    let s = system.ket().amplitudes();
    let mut amp = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            amp += s[i].conj() * m[j].conj() * state.amplitude(i, j);
        }
    }
    amp.norm_sqr()
}
