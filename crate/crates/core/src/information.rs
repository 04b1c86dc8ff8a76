//! Classical and quantum Fisher information, Cramér-Rao bounds and the
//! stiff/sloppy decomposition of a 2×2 information matrix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocol::{self, MeasurementStrength, PhasePair};
use crate::qcore::Qubit4State;

/// Determinants below this are treated as singular.
pub const SINGULAR_DET: f64 = 1e-12;

/// Step used for finite-difference derivatives of states and probabilities.
pub const FD_STEP: f64 = 1e-5;

/// Maximum tolerated disagreement between the closed-form and the
/// finite-difference QFIM.
pub const QFIM_CONSISTENCY_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoKind {
    Classical,
    Quantum,
}

/// Symmetric 2×2 information matrix in rad⁻².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
    pub kind: InfoKind,
}

impl InfoMatrix {
    pub fn new(m11: f64, m12: f64, m22: f64, kind: InfoKind) -> Self {
        Self {
            m11,
            m12,
            m22,
            kind,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.m11,
            (1, 1) => self.m22,
            _ => self.m12,
        }
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let half_trace = 0.5 * self.trace();
        let half_gap = (0.25 * (self.m11 - self.m22).powi(2) + self.m12 * self.m12).sqrt();
        [half_trace + half_gap, half_trace - half_gap]
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.eigenvalues()[1] >= -tol
    }

    pub fn max_abs_diff(&self, other: &InfoMatrix) -> f64 {
        (self.m11 - other.m11)
            .abs()
            .max((self.m12 - other.m12).abs())
            .max((self.m22 - other.m22).abs())
    }
}

/// Classical Fisher information of the four-outcome measurement.
///
/// Evaluated as `4 JᵀJ` with `J` the amplitude Jacobian, which equals
/// `sum_x dp_j dp_k / p` wherever every `p > 0` and stays finite when some
/// `p` vanishes.
pub fn classical_fim(phases: PhasePair, strength: MeasurementStrength) -> InfoMatrix {
    let j = protocol::amplitude_jacobian(phases, strength);
    let dot = |a: usize, b: usize| 4.0 * j.iter().map(|row| row[a] * row[b]).sum::<f64>();
    InfoMatrix::new(dot(0, 0), dot(0, 1), dot(1, 1), InfoKind::Classical)
}

/// Classical Fisher information of an arbitrary four-outcome model given as
/// a probability function, by central finite differences.
///
/// Outcomes with probability below `floor` are skipped.
pub fn fisher_from_probabilities<F>(
    probabilities: F,
    phases: PhasePair,
    step: f64,
    floor: f64,
) -> Result<InfoMatrix>
where
    F: Fn(PhasePair) -> Result<[f64; 4]>,
{
    let p = probabilities(phases)?;
    let mut dp = [[0.0; 2]; 4];
    for j in 0..2 {
        let plus = probabilities(phases.shifted(j, step))?;
        let minus = probabilities(phases.shifted(j, -step))?;
        for x in 0..4 {
            dp[x][j] = (plus[x] - minus[x]) / (2.0 * step);
        }
    }
    let mut m = [[0.0; 2]; 2];
    for x in 0..4 {
        if p[x] < floor {
            continue;
        }
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] += dp[x][a] * dp[x][b] / p[x];
            }
        }
    }
    Ok(InfoMatrix::new(
        m[0][0],
        m[0][1],
        m[1][1],
        InfoKind::Classical,
    ))
}

/// How [`qfim_with`] obtains the quantum Fisher information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QfimMethod {
    /// `16 [[1, sqrt(1-K²)], [sqrt(1-K²), 1]]`.
    ClosedForm,
    /// Pure-state overlap formula with exact state derivatives.
    AnalyticDerivative,
    /// Pure-state overlap formula with central finite differences.
    FiniteDifference { step: f64 },
}

/// Quantum Fisher information matrix of the protocol state.
///
/// Returns the closed form after checking it against the finite-difference
/// evaluation of the pure-state formula.
pub fn qfim(phases: PhasePair, strength: MeasurementStrength) -> Result<InfoMatrix> {
    let closed = qfim_with(phases, strength, QfimMethod::ClosedForm);
    let numeric = qfim_with(
        phases,
        strength,
        QfimMethod::FiniteDifference { step: FD_STEP },
    );
    let gap = closed.max_abs_diff(&numeric);
    if gap > QFIM_CONSISTENCY_TOL {
        return Err(Error::Consistency(format!(
            "closed-form and finite-difference QFIM differ by {gap:e}"
        )));
    }
    Ok(closed)
}

pub fn qfim_with(
    phases: PhasePair,
    strength: MeasurementStrength,
    method: QfimMethod,
) -> InfoMatrix {
    match method {
        QfimMethod::ClosedForm => {
            let off = 16.0 * (1.0 - strength.k() * strength.k()).max(0.0).sqrt();
            InfoMatrix::new(16.0, off, 16.0, InfoKind::Quantum)
        }
        QfimMethod::AnalyticDerivative => {
            let psi = protocol::full_state(phases, strength);
            let d = protocol::full_state_derivatives(phases, strength);
            pure_state_qfim(&psi, &d)
        }
        QfimMethod::FiniteDifference { step } => {
            let psi = protocol::full_state(phases, strength);
            let d = [0, 1].map(|j| {
                let plus = protocol::full_state(phases.shifted(j, step), strength);
                let minus = protocol::full_state(phases.shifted(j, -step), strength);
                let mut amps = plus.amplitudes();
                for (a, m) in amps.iter_mut().zip(minus.amplitudes()) {
                    *a = (*a - m) / (2.0 * step);
                }
                Qubit4State::from_amplitudes(amps)
            });
            pure_state_qfim(&psi, &d)
        }
    }
}

/// `Q_jk = 4 Re[<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>]`.
fn pure_state_qfim(psi: &Qubit4State, d: &[Qubit4State; 2]) -> InfoMatrix {
    let q = |j: usize, k: usize| {
        let overlap = d[j].inner(&d[k]);
        let berry = d[j].inner(psi) * psi.inner(&d[k]);
        4.0 * (overlap - berry).re
    };
    InfoMatrix::new(q(0, 0), q(0, 1), q(1, 1), InfoKind::Quantum)
}

/// Covariance floor `info⁻¹ / N`, in rad².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceBound {
    pub var1: f64,
    pub var2: f64,
    pub cov: f64,
    pub shots: u64,
}

impl CovarianceBound {
    pub fn correlation(&self) -> f64 {
        self.cov / (self.var1 * self.var2).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CramerRao {
    Bounded(CovarianceBound),
    /// The information matrix is singular: some combination of the phases
    /// carries no information and its variance is unbounded.
    Unbounded {
        shots: u64,
        determinant: f64,
    },
}

impl CramerRao {
    pub fn bound(&self) -> Option<&CovarianceBound> {
        match self {
            CramerRao::Bounded(b) => Some(b),
            CramerRao::Unbounded { .. } => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, CramerRao::Unbounded { .. })
    }
}

pub fn crb(info: &InfoMatrix, shots: u64) -> CramerRao {
    assert!(shots > 0, "Cramér-Rao bound needs at least one shot");
    let det = info.determinant();
    if det < SINGULAR_DET {
        return CramerRao::Unbounded {
            shots,
            determinant: det,
        };
    }
    let n = shots as f64;
    CramerRao::Bounded(CovarianceBound {
        var1: info.m22 / (det * n),
        var2: info.m11 / (det * n),
        cov: -info.m12 / (det * n),
        shots,
    })
}

/// Eigen-decomposition of an information matrix into its stiff and sloppy
/// parameter combinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SloppinessReport {
    pub stiff_value: f64,
    pub sloppy_value: f64,
    pub stiff_dir: [f64; 2],
    pub sloppy_dir: [f64; 2],
    pub determinant: f64,
    /// `stiff / sloppy`; infinite when the sloppy eigenvalue vanishes.
    pub condition_number: f64,
}

pub fn sloppiness(info: &InfoMatrix) -> SloppinessReport {
    let [hi, lo] = info.eigenvalues();
    let stiff_dir = eigenvector(info, hi, [1.0, 0.0]);
    // The sloppy direction is orthogonal to the stiff one.
    let sloppy_dir = canonical_sign([stiff_dir[1], -stiff_dir[0]]);
    let lo = lo.max(0.0);
    let condition_number = if info.determinant() < SINGULAR_DET {
        f64::INFINITY
    } else {
        hi / lo
    };
    SloppinessReport {
        stiff_value: hi,
        sloppy_value: lo,
        stiff_dir,
        sloppy_dir,
        determinant: info.determinant(),
        condition_number,
    }
}

fn eigenvector(info: &InfoMatrix, value: f64, fallback: [f64; 2]) -> [f64; 2] {
    // Rows of (M - value I) are orthogonal to the eigenvector; use the
    // better-conditioned one.
    let a = [info.m12, value - info.m11];
    let b = [value - info.m22, info.m12];
    let na = a[0].hypot(a[1]);
    let nb = b[0].hypot(b[1]);
    let scale = info.trace().abs().max(1.0);
    let v = if na.max(nb) <= 1e-14 * scale {
        fallback
    } else if na >= nb {
        [a[0] / na, a[1] / na]
    } else {
        [b[0] / nb, b[1] / nb]
    };
    canonical_sign(v)
}

/// First non-negligible component made positive.
fn canonical_sign(v: [f64; 2]) -> [f64; 2] {
    let lead = if v[0].abs() > 1e-12 { v[0] } else { v[1] };
    if lead < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}
