//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_8, PI};
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sloppy_phase::cli;
use sloppy_phase::estimation::{
    build_calibration, estimate, monte_carlo, sample_counts, CalibrationSource, EstimatorOptions,
    ExactModel, GridSpec, Objective,
};
use sloppy_phase::information::{
    self, classical_fim, crb, qfim_with, sloppiness, InfoKind, InfoMatrix, QfimMethod,
};
use sloppy_phase::optics::{self, balancing_attenuations, PpbsModel};
use sloppy_phase::protocol::outcome_distribution;
use sloppy_phase::{MeasurementStrength, PhasePair};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn strength(k: f64) -> MeasurementStrength {
    MeasurementStrength::new(k).unwrap()
}

fn closed_form(k: f64) -> InfoMatrix {
    let off = 16.0 * (1.0 - k * k).sqrt();
    InfoMatrix::new(16.0, off, 16.0, InfoKind::Quantum)
}

fn k_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

fn random_pairs(seed: u64, n: usize, hi: f64) -> Vec<PhasePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| PhasePair::new(rng.random_range(0.0..hi), rng.random_range(0.0..hi)).unwrap())
        .collect()
}

fn qfim_identity() -> Outcome {
    let start = Instant::now();
    let (mut fd, mut analytic) = (0.0f64, 0.0f64);
    for k in k_grid() {
        let want = closed_form(k);
        for p in random_pairs(1, 25, PI) {
            let s = strength(k);
            let step = information::FD_STEP;
            fd = fd.max(qfim_with(p, s, QfimMethod::FiniteDifference { step }).max_abs_diff(&want));
            analytic =
                analytic.max(qfim_with(p, s, QfimMethod::AnalyticDerivative).max_abs_diff(&want));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        fd <= 1e-4 && analytic <= 1e-12 && secs < 5.0,
        format!("finite-difference {fd:.1e} (≤ 1e-4), analytic {analytic:.1e} (≤ 1e-12), {secs:.2} s (< 5 s)"),
    )
}

fn saturation() -> Outcome {
    let start = Instant::now();
    let axis: Vec<f64> = (0..25).map(|i| FRAC_PI_8 * i as f64 / 24.0).collect();
    let mut worst = 0.0f64;
    for k in k_grid() {
        let q = closed_form(k);
        for &a in &axis {
            for &b in &axis {
                let f = classical_fim(PhasePair::new(a, b).unwrap(), strength(k));
                worst = worst.max(f.max_abs_diff(&q));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-9 && secs < 5.0,
        format!("max |F - Q| {worst:.1e} over 25×25×11 (≤ 1e-9), {secs:.2} s (< 5 s)"),
    )
}

fn sloppiness_algebra() -> Outcome {
    let (mut det, mut eig, mut vec, mut sum) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in k_grid() {
        for p in random_pairs(3, 10, FRAC_PI_8) {
            let f = classical_fim(p, strength(k));
            let want_det = (16.0 * k).powi(2);
            det = det.max((f.determinant() - want_det).abs() / want_det.max(256.0 * 1e-2));
            let root = (1.0 - k * k).sqrt();
            let [fp, fm] = f.eigenvalues();
            eig = eig
                .max((fp - 16.0 * (1.0 + root)).abs())
                .max((fm - 16.0 * (1.0 - root)).abs());
            sum = sum.max((fp + fm - 32.0).abs());
            if k < 1.0 {
                // At K = 1 the spectrum is degenerate and any basis is an eigenbasis.
                let r = sloppiness(&f);
                let stiff = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
                let slop = [FRAC_1_SQRT_2, -FRAC_1_SQRT_2];
                for (got, want) in [(r.stiff_dir, stiff), (r.sloppy_dir, slop)] {
                    vec = vec
                        .max((got[0] - want[0]).abs())
                        .max((got[1] - want[1]).abs());
                }
            }
        }
    }
    check(
        det <= 1e-9 && eig <= 1e-9 && vec <= 1e-9 && sum <= 1e-12,
        format!(
            "det rel {det:.1e} (≤ 1e-9), eigenvalues {eig:.1e} (≤ 1e-9), eigenvectors {vec:.1e} (≤ 1e-9), F+ + F- - 32 {sum:.1e} (≤ 1e-12)"
        ),
    )
}

fn zero_strength() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = strength(0.0);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (a, b, d) = (
            rng.random_range(0.0..PI),
            rng.random_range(0.0..PI),
            rng.random_range(-PI..PI),
        );
        let p = outcome_distribution(PhasePair::new(a, b).unwrap(), s).probabilities;
        let q = outcome_distribution(PhasePair::new(a + d, b - d).unwrap(), s).probabilities;
        for i in 0..4 {
            worst = worst.max((p[i] - q[i]).abs());
        }
    }
    let at = PhasePair::from_degrees(10.0, 5.0).unwrap();
    let classical = crb(&classical_fim(at, s), 1000).is_unbounded();
    let quantum = crb(&information::qfim(at, s).unwrap(), 1000).is_unbounded();
    check(
        worst <= 1e-12 && classical && quantum,
        format!("max shift change {worst:.1e} over 10³ shifts (≤ 1e-12), CRB unbounded: classical {classical}, quantum {quantum}"),
    )
}

fn monte_carlo_crb() -> Outcome {
    let start = Instant::now();
    let truth = PhasePair::from_degrees(12.0, 8.0).unwrap();
    let (shots, trials) = (10_000u64, 300usize);
    let opts = EstimatorOptions::with_objective(Objective::MaximumLikelihood);
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, k) in [0.322, 0.785, 0.934].into_iter().enumerate() {
        let model = ExactModel::new(strength(k));
        let mc = monte_carlo(truth, &model, &model, shots, trials, 500 + i as u64, &opts).unwrap();
        let bound = 1.0 / (16.0 * shots as f64 * k * k);
        let r = [mc.covariance[0][0] / bound, mc.covariance[1][1] / bound];
        let corr = mc.correlation();
        let want = -(1.0 - k * k).sqrt();
        let good = r.iter().all(|x| (0.85..=1.30).contains(x)) && (corr - want).abs() <= 0.1;
        ok &= good;
        parts.push(format!(
            "K={k}: var/CRB {:.3},{:.3} corr {corr:.3} vs {want:.3}",
            r[0], r[1]
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 120.0;
    check(
        ok,
        format!(
            "{}; bands [0.85, 1.30], ±0.1; {secs:.1} s (< 120 s)",
            parts.join("; ")
        ),
    )
}

fn pipeline_fidelity() -> Outcome {
    let k = strength(0.934);
    let cal = build_calibration(
        k,
        &GridSpec::standard(),
        Some(100_000),
        61,
        CalibrationSource::Ideal,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let opts = EstimatorOptions::default();
    let (mut e1, mut e2) = (0.0, 0.0);
    let n = 100;
    for i in 0..n {
        let truth =
            PhasePair::from_degrees(rng.random_range(2.0..20.0), rng.random_range(2.0..20.0))
                .unwrap();
        let counts = sample_counts(truth, k, 2_000, 1_000 + i).unwrap();
        let est = estimate(&counts, &cal, &opts).unwrap();
        e1 += (est.theta1_hat - truth.theta1).abs().to_degrees() / n as f64;
        e2 += (est.theta2_hat - truth.theta2).abs().to_degrees() / n as f64;
    }
    check(
        e1 < 0.5 && e2 < 0.5,
        format!("mean |error| θ1 {e1:.3}°, θ2 {e2:.3}° over 100 truths (< 0.5°)"),
    )
}

fn ideal_reproduction(model: PpbsModel) -> f64 {
    let mut worst = 0.0f64;
    for k in [0.0, 0.322, 0.785, 0.934, 1.0] {
        for p in random_pairs(7, 25, FRAC_PI_8) {
            let got = optics::imperfect_distribution(p, strength(k), &model)
                .unwrap()
                .probabilities;
            let want = outcome_distribution(p, strength(k)).probabilities;
            for i in 0..4 {
                worst = worst.max((got[i] - want[i]).abs());
            }
        }
    }
    worst
}

fn optics_equivalence() -> Outcome {
    let worst = ideal_reproduction(PpbsModel::experimental());
    let textbook = ideal_reproduction(PpbsModel::textbook());
    let hv_block = {
        let m = PpbsModel::experimental();
        m.t_h * m.t_v - (1.0 - m.t_h) * (1.0 - m.t_v)
    };
    check(
        worst <= 1e-9,
        format!(
            "T_H=2/3, T_V=1/3, v=1, rescaled: max |p - p_ideal| {worst:.2e} (≤ 1e-9); HV/VH block determinant {hv_block:.1e}; T_H=1, T_V=1/3 gives {textbook:.1e}"
        ),
    )
}

fn visibility_reduces_information() -> Outcome {
    let p = PhasePair::from_degrees(10.0, 5.0).unwrap();
    let k = 0.785;
    // Oracle values at (10°, 5°), K = 0.785.
    let pinned = [
        (2.0 / 3.0, 908.7463783215, 24.9249979888),
        (1.0, 157.7535998316, 25.9057418580),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (t_h, pin_coherent, pin_mixed) in pinned {
        let base = PpbsModel::new(t_h, 1.0 / 3.0, 1.0, true).unwrap();
        let mut dets = [0.0; 2];
        for (slot, v) in [(0, 1.0), (1, 0.0)] {
            let m = base.with_visibility(v);
            let att = balancing_attenuations(&m).unwrap();
            let oracle = common::oracle_fim_det(
                p.theta1,
                p.theta2,
                k,
                m.t_h,
                m.t_v,
                v,
                [att.system, att.meter],
            );
            let got = optics::effective_fim(p, strength(k), &m)
                .unwrap()
                .determinant();
            let pin = if v == 1.0 { pin_coherent } else { pin_mixed };
            ok &= (got - oracle).abs() <= 1e-6 * oracle && (got - pin).abs() <= 1e-6 * pin;
            dets[slot] = got;
        }
        ok &= dets[1] < dets[0];
        parts.push(format!(
            "T_H={t_h:.3}: det F {:.4} (v=1) > {:.4} (v=0)",
            dets[0], dets[1]
        ));
    }
    let ideal = (16.0 * k).powi(2);
    check(
        ok,
        format!("{}; ideal 256K² = {ideal:.4}", parts.join("; ")),
    )
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn run(line: &str) -> Result<(), String> {
    let args = std::iter::once("sloppy-phase".to_string())
        .chain(line.split_whitespace().map(String::from));
    cli::run(args)
        .map(|_| ())
        .map_err(|e| format!("`{line}`: {e}"))
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = |name: &str| tmp.path().join(name).display().to_string();
    let cal = d("cal");
    let sim = d("sim");
    let commands = [
        ("simulate", format!("simulate --k 0.785 --theta1-deg 10 --theta2-deg 5 --shots 5000 --seed 11 --out {sim}")),
        ("calibrate", format!("calibrate --k 0.785 --shots 20000 --seed 12 --out {cal}")),
        (
            "estimate",
            format!("estimate --calibration {cal} --counts {sim}/counts.json --replicas 50 --seed 13 --out {}", d("est")),
        ),
        (
            "sweep-fig3",
            format!("sweep-fig3 --k 0.785 --grid-step-deg 11.25 --shots 2000 --trials 20 --seed 14 --out {}", d("sweep")),
        ),
        (
            "gate-sim",
            format!("gate-sim --model optics --visibility 0.8 --out {}", d("gate")),
        ),
    ];
    let mut checked = Vec::new();
    for (name, line) in &commands {
        run(line)?;
        let out = line.rsplit(' ').next().unwrap().to_string();
        let again = format!("{out}-again");
        run(&format!("{name} --config {out}/meta.toml --out {again}"))?;
        let (a, b) = (dir_bytes(Path::new(&out)), dir_bytes(Path::new(&again)));
        if a != b {
            return Err(format!("{name}: rerun from meta.toml differs"));
        }
        checked.push(format!("{name} ({} files)", a.len()));
    }
    Ok(format!(
        "byte-identical reruns from meta.toml: {}",
        checked.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 9] = [
        ("1", "QFIM identity", qfim_identity),
        ("2", "classical FIM saturates the QFIM", saturation),
        ("3", "sloppiness algebra", sloppiness_algebra),
        ("4", "full sloppiness at K=0", zero_strength),
        (
            "5",
            "Monte Carlo reaches the Cramér-Rao bound",
            monte_carlo_crb,
        ),
        ("6", "calibrated pipeline fidelity", pipeline_fidelity),
        (
            "7a",
            "PPBS gate reproduces the ideal protocol",
            optics_equivalence,
        ),
        (
            "7b",
            "distinguishability lowers det F",
            visibility_reduces_information,
        ),
        ("8", "CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {id:<3} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:<3} FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion line(s) failed");
        ExitCode::FAILURE
    }
}
