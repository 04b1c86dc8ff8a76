//! Brute-force two-photon simulation of the PPBS gate, written against
//! creation operators rather than the library's coincidence map.
//!
//! Photon 1 (system) enters port 0, photon 2 (meter) port 1. Each photon's
//! state is a vector over (port, polarization). The splitter acts on a
//! single photon as `a0 -> t a0 + r a1`, `a1 -> t a1 - r a0`, separately
//! for H and V. Indistinguishable photons are bosons, so the amplitude of
//! an occupation is the sum over both photon labelings; distinguishable
//! ones add labelings in probability.

#![allow(dead_code)]

/// Mode index `2 * port + pol`, pol 0 = H, 1 = V.
fn mode(port: usize, pol: usize) -> usize {
    2 * port + pol
}

fn splitter(t_h: f64, t_v: f64) -> [[f64; 4]; 4] {
    let t = [t_h.sqrt(), t_v.sqrt()];
    let r = [(1.0 - t_h).sqrt(), (1.0 - t_v).sqrt()];
    let mut u = [[0.0; 4]; 4];
    for p in 0..2 {
        u[mode(0, p)][mode(0, p)] = t[p];
        u[mode(1, p)][mode(0, p)] = r[p];
        u[mode(1, p)][mode(1, p)] = t[p];
        u[mode(0, p)][mode(1, p)] = -r[p];
    }
    u
}

fn rotate(theta: f64, v: [f64; 2]) -> [f64; 2] {
    let (s, c) = (2.0 * theta).sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

/// Outcome probabilities `(DH, DV, AH, AV)` after post-selecting one photon
/// per port, renormalized, plus the coincidence probability.
///
/// `att` holds amplitude attenuations `[[a_H, a_V], [b_H, b_V]]` for the
/// system and meter photons before the splitter.
pub fn two_photon_protocol(
    theta1: f64,
    theta2: f64,
    k: f64,
    t_h: f64,
    t_v: f64,
    visibility: f64,
    att: [[f64; 2]; 2],
) -> ([f64; 4], f64) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let kappa = ((1.0 + k) / 2.0).sqrt();
    let lambda = ((1.0 - k) / 2.0).sqrt();
    let sys = rotate(theta1, [1.0, 0.0]);
    let met = [h * (kappa + lambda), h * (kappa - lambda)];

    let mut in1 = [0.0; 4];
    let mut in2 = [0.0; 4];
    for p in 0..2 {
        in1[mode(0, p)] = sys[p] * att[0][p];
        in2[mode(1, p)] = met[p] * att[1][p];
    }
    let u = splitter(t_h, t_v);
    let apply = |v: &[f64; 4]| {
        let mut o = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                o[i] += u[i][j] * v[j];
            }
        }
        o
    };
    let (out1, out2) = (apply(&in1), apply(&in2));

    // amp[labeling][x][y]: port-0 photon has pol x, port-1 photon pol y.
    // Labeling 0: photon 1 in port 0; labeling 1: photon 2 in port 0.
    let mut amp = [[[0.0; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            amp[0][x][y] = out1[mode(0, x)] * out2[mode(1, y)];
            amp[1][x][y] = out2[mode(0, x)] * out1[mode(1, y)];
        }
    }

    let readout = |a: &[[f64; 2]; 2]| {
        // Second phase on the port-0 photon, then system H/V and meter D/A.
        let mut rotated = [[0.0; 2]; 2];
        for y in 0..2 {
            let col = rotate(theta2, [a[0][y], a[1][y]]);
            rotated[0][y] = col[0];
            rotated[1][y] = col[1];
        }
        let mut p = [0.0; 4];
        for (mi, sign) in [(0usize, 1.0), (1, -1.0)] {
            for s in 0..2 {
                let amp = h * (rotated[s][0] + sign * rotated[s][1]);
                p[2 * mi + s] = amp * amp;
            }
        }
        p
    };

    let mut bosonic = [[0.0; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            bosonic[x][y] = amp[0][x][y] + amp[1][x][y];
        }
    }
    let coherent = readout(&bosonic);
    let first = readout(&amp[0]);
    let second = readout(&amp[1]);
    let mut p = [0.0; 4];
    for i in 0..4 {
        p[i] = visibility * coherent[i] + (1.0 - visibility) * (first[i] + second[i]);
    }
    let total: f64 = p.iter().sum();
    (p.map(|x| x / total), total)
}

/// Fisher information determinant of the oracle by central differences.
pub fn oracle_fim_det(
    theta1: f64,
    theta2: f64,
    k: f64,
    t_h: f64,
    t_v: f64,
    visibility: f64,
    att: [[f64; 2]; 2],
) -> f64 {
    let h = 1e-5;
    let p = |a: f64, b: f64| two_photon_protocol(a, b, k, t_h, t_v, visibility, att).0;
    let p0 = p(theta1, theta2);
    let (p1p, p1m) = (p(theta1 + h, theta2), p(theta1 - h, theta2));
    let (p2p, p2m) = (p(theta1, theta2 + h), p(theta1, theta2 - h));
    let mut f = [[0.0; 2]; 2];
    for i in 0..4 {
        if p0[i] < 1e-12 {
            continue;
        }
        let d1 = (p1p[i] - p1m[i]) / (2.0 * h);
        let d2 = (p2p[i] - p2m[i]) / (2.0 * h);
        f[0][0] += d1 * d1 / p0[i];
        f[0][1] += d1 * d2 / p0[i];
        f[1][1] += d2 * d2 / p0[i];
    }
    f[0][0] * f[1][1] - f[0][1] * f[0][1]
}
