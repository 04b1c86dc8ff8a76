//! The `sloppy-phase` command line.
//!
//! Every command writes into `--out DIR`: a `data.csv`, any command-specific
//! artifacts, and a `meta.toml` holding the fully resolved configuration.
//! Running `sloppy-phase <command> --config DIR/meta.toml --out OTHER`
//! reproduces the outputs byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{
    self, build_calibration, estimate, estimate_with_bootstrap, io, monte_carlo,
    sample_multinomial, CalibrationSource, CountTable, Domain, EstimatorOptions, ExactModel,
    ForwardModel, GridSpec, Objective,
};
use crate::information::{self, crb, CramerRao};
use crate::optics::{self, OpticsModel, PpbsModel};
use crate::protocol::{self, MeasurementStrength, PhasePair};

#[derive(Debug, Parser)]
#[command(
    name = "sloppy-phase",
    version,
    about = "Two-phase estimation with a tunable weak measurement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Info,
    #[serde(rename = "sweep-fig3")]
    SweepFig3,
    Simulate,
    Calibrate,
    Estimate,
    GateSim,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// QFIM, classical FIM, eigenvalues and Cramér-Rao bounds over K.
    Info(RunConfig),
    /// Monte Carlo covariance against the Cramér-Rao bound over θ2.
    #[command(name = "sweep-fig3")]
    SweepFig3(RunConfig),
    /// Draw one set of counts.
    Simulate(RunConfig),
    /// Tabulate outcome probabilities on a grid.
    Calibrate(RunConfig),
    /// Estimate the phases from counts and a calibration.
    Estimate(RunConfig),
    /// Compare the post-selected PPBS gate with the ideal protocol.
    GateSim(RunConfig),
}

impl Command {
    pub fn split(self) -> (CommandKind, RunConfig) {
        match self {
            Command::Info(c) => (CommandKind::Info, c),
            Command::SweepFig3(c) => (CommandKind::SweepFig3, c),
            Command::Simulate(c) => (CommandKind::Simulate, c),
            Command::Calibrate(c) => (CommandKind::Calibrate, c),
            Command::Estimate(c) => (CommandKind::Estimate, c),
            Command::GateSim(c) => (CommandKind::GateSim, c),
        }
    }
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Info => "info",
            CommandKind::SweepFig3 => "sweep-fig3",
            CommandKind::Simulate => "simulate",
            CommandKind::Calibrate => "calibrate",
            CommandKind::Estimate => "estimate",
            CommandKind::GateSim => "gate-sim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ideal,
    Optics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    /// Least squares on the frequencies.
    Ls,
    /// Multinomial maximum likelihood.
    Ml,
}

impl From<EstimatorKind> for Objective {
    fn from(e: EstimatorKind) -> Self {
        match e {
            EstimatorKind::Ls => Objective::LeastSquares,
            EstimatorKind::Ml => Objective::MaximumLikelihood,
        }
    }
}

/// Flags shared by all commands. The same keys, in kebab case, make up the
/// flat TOML config file; flags win over the file.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    /// Measurement strength; a comma-separated list for `info` and `sweep-fig3`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1_deg: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta2_deg: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_step_deg: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replicas: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_h: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_v: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub visibility: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rescaling: Option<Switch>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<EstimatorKind>,
    /// Directory written by `calibrate`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<PathBuf>,
    /// Counts file written by `simulate`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MetaFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    command: Option<CommandKind>,
    #[serde(flatten)]
    config: RunConfig,
}

macro_rules! prefer {
    ($flags:ident, $file:ident; $($f:ident),*) => {
        $( if $flags.$f.is_none() { $flags.$f = $file.$f; } )*
    };
}

impl RunConfig {
    /// Fills every field the flags left unset from `file`.
    pub fn merged_with(mut self, file: RunConfig) -> Self {
        if self.k.is_empty() {
            self.k = file.k;
        }
        prefer!(self, file; theta1_deg, theta2_deg, grid_step_deg, shots, trials, replicas, seed,
            model, t_h, t_v, visibility, rescaling, estimator, calibration, counts);
        self
    }

    fn strength(&self) -> Result<MeasurementStrength> {
        match self.k.as_slice() {
            [k] => MeasurementStrength::new(*k),
            [] => Err(Error::Config("--k is required".into())),
            _ => Err(Error::Config("this command takes a single --k".into())),
        }
    }

    fn phases(&self) -> Result<PhasePair> {
        let a = self
            .theta1_deg
            .ok_or_else(|| Error::Config("--theta1-deg is required".into()))?;
        let b = self
            .theta2_deg
            .ok_or_else(|| Error::Config("--theta2-deg is required".into()))?;
        PhasePair::from_degrees(a, b)
    }

    fn seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::Config("--seed is required for stochastic commands".into()))
    }

    fn objective(&self) -> Objective {
        self.estimator.unwrap_or(EstimatorKind::Ls).into()
    }

    fn ppbs(&self) -> Result<PpbsModel> {
        PpbsModel::new(
            self.t_h.unwrap_or(2.0 / 3.0),
            self.t_v.unwrap_or(1.0 / 3.0),
            self.visibility.unwrap_or(1.0),
            self.rescaling.unwrap_or(Switch::On) == Switch::On,
        )
    }

    fn source(&self) -> Result<CalibrationSource> {
        Ok(match self.model.unwrap_or(ModelKind::Ideal) {
            ModelKind::Ideal => CalibrationSource::Ideal,
            ModelKind::Optics => CalibrationSource::Optics(self.ppbs()?),
        })
    }

    fn fill_optics_defaults(&mut self) {
        if self.model == Some(ModelKind::Optics) {
            let m = PpbsModel::experimental();
            self.t_h.get_or_insert(m.t_h);
            self.t_v.get_or_insert(m.t_v);
            self.visibility.get_or_insert(m.visibility);
            self.rescaling.get_or_insert(Switch::On);
        }
    }

    /// Applies per-command defaults so the written metadata is explicit.
    pub fn resolve(mut self, command: CommandKind) -> Result<Self> {
        match command {
            CommandKind::Info => {
                if self.k.is_empty() {
                    self.k = (0..=10).map(|i| i as f64 / 10.0).collect();
                }
                self.theta1_deg.get_or_insert(10.0);
                self.theta2_deg.get_or_insert(5.0);
                self.shots.get_or_insert(1);
            }
            CommandKind::SweepFig3 => {
                if self.k.is_empty() {
                    self.k = vec![0.322, 0.785, 0.934];
                }
                self.theta1_deg.get_or_insert(10.0);
                self.grid_step_deg.get_or_insert(2.5);
                self.shots.get_or_insert(10_000);
                self.trials.get_or_insert(300);
                self.model.get_or_insert(ModelKind::Ideal);
                self.estimator.get_or_insert(EstimatorKind::Ls);
                self.seed()?;
            }
            CommandKind::Simulate => {
                self.strength()?;
                self.phases()?;
                if self.shots.is_none() {
                    return Err(Error::Config("--shots is required".into()));
                }
                self.model.get_or_insert(ModelKind::Ideal);
                self.seed()?;
            }
            CommandKind::Calibrate => {
                self.strength()?;
                self.grid_step_deg.get_or_insert(2.5);
                self.model.get_or_insert(ModelKind::Ideal);
                if self.shots.is_some() {
                    self.seed()?;
                }
            }
            CommandKind::Estimate => {
                if self.calibration.is_none() || self.counts.is_none() {
                    return Err(Error::Config(
                        "--calibration and --counts are required".into(),
                    ));
                }
                self.estimator.get_or_insert(EstimatorKind::Ls);
                self.replicas.get_or_insert(0);
                if self.replicas != Some(0) {
                    self.seed()?;
                }
            }
            CommandKind::GateSim => {
                if self.k.is_empty() {
                    self.k = vec![0.785];
                }
                self.strength()?;
                self.theta1_deg.get_or_insert(10.0);
                self.grid_step_deg.get_or_insert(2.5);
                self.model = Some(ModelKind::Optics);
            }
        }
        self.fill_optics_defaults();
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let range = |what, value: f64, lo, hi| {
            if !value.is_finite() {
                Err(Error::NonFinite(what))
            } else if value < lo || value > hi {
                Err(Error::OutOfRange {
                    what,
                    value,
                    lo,
                    hi,
                })
            } else {
                Ok(())
            }
        };
        for &k in &self.k {
            range("K", k, 0.0, 1.0)?;
        }
        if let Some(t) = self.theta1_deg {
            range("theta1 (deg)", t, 0.0, 22.5)?;
        }
        if let Some(t) = self.theta2_deg {
            range("theta2 (deg)", t, 0.0, 22.5)?;
        }
        if let Some(s) = self.grid_step_deg {
            if !(s > 0.0) {
                return Err(Error::OutOfRange {
                    what: "grid step (deg)",
                    value: s,
                    lo: 0.0,
                    hi: 22.5,
                });
            }
            range("grid step (deg)", s, 0.0, 22.5)?;
        }
        if self.shots == Some(0) {
            return Err(Error::NoEvents);
        }
        if let Some(t) = self.trials {
            if t < 2 {
                return Err(Error::Config("--trials must be at least 2".into()));
            }
        }
        if let Some(r) = self.replicas {
            if r == 1 {
                return Err(Error::TooFewReplicas(1));
            }
        }
        for (what, v) in [
            ("T_H", self.t_h),
            ("T_V", self.t_v),
            ("visibility", self.visibility),
        ] {
            if let Some(v) = v {
                range(what, v, 0.0, 1.0)?;
            }
        }
        Ok(())
    }
}

/// Reads a config file; a `command` key, if present, must match.
pub fn read_config(path: &Path, command: CommandKind) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let meta: MetaFile =
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    if let Some(c) = meta.command {
        if c != command {
            return Err(Error::Config(format!(
                "{} was written by `{}`, not `{}`",
                path.display(),
                c.name(),
                command.name()
            )));
        }
    }
    Ok(meta.config)
}

pub fn meta_toml(command: CommandKind, config: &RunConfig) -> String {
    let meta = MetaFile {
        command: Some(command),
        config: config.clone(),
    };
    toml::to_string(&meta).expect("config serializes")
}

/// Either forward model, chosen at run time.
#[derive(Debug, Clone, Copy)]
pub enum AnyModel {
    Ideal(ExactModel),
    Optics(OpticsModel),
}

impl AnyModel {
    fn new(source: CalibrationSource, strength: MeasurementStrength) -> Self {
        match source {
            CalibrationSource::Ideal => AnyModel::Ideal(ExactModel::new(strength)),
            CalibrationSource::Optics(ppbs) => AnyModel::Optics(OpticsModel { strength, ppbs }),
        }
    }
}

impl ForwardModel for AnyModel {
    fn strength(&self) -> f64 {
        match self {
            AnyModel::Ideal(m) => m.strength(),
            AnyModel::Optics(m) => m.strength(),
        }
    }

    fn domain(&self) -> Domain {
        Domain::standard()
    }

    fn probabilities(&self, phases: PhasePair) -> Result<[f64; 4]> {
        match self {
            AnyModel::Ideal(m) => m.probabilities(phases),
            AnyModel::Optics(m) => m.probabilities(phases),
        }
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))
}

fn num(x: f64) -> String {
    io::format_number(x)
}

fn theta_axis(step_deg: f64) -> Result<Vec<f64>> {
    Ok(GridSpec::uniform_degrees(step_deg)?.theta2)
}

fn deg(rad: f64) -> f64 {
    (rad.to_degrees() * 1e9).round() / 1e9
}

fn cmd_info(cfg: &RunConfig) -> Result<String> {
    let phases = cfg.phases()?;
    let shots = cfg.shots.unwrap_or(1);
    let mut out = String::from("K,Q11,Q12,F11,F12,det_F,F_plus,F_minus,crb_var,crb_cov\n");
    for &k in &cfg.k {
        let strength = MeasurementStrength::new(k)?;
        let q = information::qfim(phases, strength)?;
        let f = information::classical_fim(phases, strength);
        let [fp, fm] = f.eigenvalues();
        let (var, cov) = match crb(&f, shots) {
            CramerRao::Bounded(b) => (b.var1, b.cov),
            CramerRao::Unbounded { .. } => (f64::INFINITY, f64::INFINITY),
        };
        let row = [
            k,
            q.m11,
            q.m12,
            f.m11,
            f.m12,
            f.determinant(),
            fp,
            fm,
            var,
            cov,
        ];
        let row: Vec<String> = row.iter().map(|&x| num(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<String> {
    let theta1 = cfg.theta1_deg.expect("resolved").to_radians();
    let shots = cfg.shots.expect("resolved");
    let trials = cfg.trials.expect("resolved");
    let seed = cfg.seed()?;
    let source = cfg.source()?;
    let options = EstimatorOptions::with_objective(cfg.objective());
    let axis = theta_axis(cfg.grid_step_deg.expect("resolved"))?;
    let mut out = String::from(
        "K,theta1_deg,theta2_deg,shots,trials,var1,var2,cov,corr,var_theory,cov_theory,corr_theory,degenerate_trials\n",
    );
    let mut point = 0u64;
    for &k in &cfg.k {
        let strength = MeasurementStrength::new(k)?;
        let model = AnyModel::new(source, strength);
        let n = shots as f64;
        let var_theory = 1.0 / (16.0 * n * k * k);
        let root = (1.0 - k * k).sqrt();
        for &theta2 in &axis {
            let truth = PhasePair::new(theta1, theta2)?;
            let mc = monte_carlo(
                truth,
                &model,
                &model,
                shots,
                trials,
                estimation::derive_seed(seed, point),
                &options,
            )?;
            point += 1;
            let c = mc.covariance;
            let _ = writeln!(
                out,
                "{},{},{},{shots},{trials},{},{},{},{},{},{},{},{}",
                num(k),
                num(deg(theta1)),
                num(deg(theta2)),
                num(c[0][0]),
                num(c[1][1]),
                num(c[0][1]),
                num(mc.correlation()),
                num(var_theory),
                num(-root * var_theory),
                num(-root),
                mc.degenerate_trials
            );
        }
    }
    Ok(out)
}

fn simulate_counts(cfg: &RunConfig) -> Result<(CountTable, [f64; 4])> {
    let strength = cfg.strength()?;
    let phases = cfg.phases()?;
    let shots = cfg.shots.expect("resolved");
    let seed = cfg.seed()?;
    let model = AnyModel::new(cfg.source()?, strength);
    let p = model.probabilities(phases)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = CountTable {
        counts: sample_multinomial(&p, shots, &mut rng),
        strength: strength.k(),
        truth: Some(phases),
        seed: Some(seed),
    };
    Ok((table, p))
}

fn cmd_simulate(cfg: &RunConfig, dir: &Path) -> Result<String> {
    let (table, p) = simulate_counts(cfg)?;
    io::write_counts(&table, &dir.join("counts.json"))?;
    let mut out = String::from("outcome,count,probability\n");
    for o in protocol::Outcome::ALL {
        let _ = writeln!(
            out,
            "{},{},{}",
            o.label(),
            table.counts[o.index()],
            num(p[o.index()])
        );
    }
    Ok(out)
}

fn cmd_calibrate(cfg: &RunConfig, dir: &Path) -> Result<()> {
    let strength = cfg.strength()?;
    let grid = GridSpec::uniform_degrees(cfg.grid_step_deg.expect("resolved"))?;
    let table = build_calibration(
        strength,
        &grid,
        cfg.shots,
        cfg.seed.unwrap_or(0),
        cfg.source()?,
    )?;
    let table = estimation::CalibrationTable {
        seed: cfg.shots.and(cfg.seed),
        ..table
    };
    io::write_calibration(&table, &dir.join("data.csv"), &dir.join("calibration.toml"))
}

fn cmd_estimate(cfg: &RunConfig, dir: &Path) -> Result<String> {
    let cal_dir = cfg.calibration.as_ref().expect("resolved");
    let cal = io::read_calibration(&cal_dir.join("data.csv"), &cal_dir.join("calibration.toml"))?;
    let counts = io::read_counts(cfg.counts.as_ref().expect("resolved"))?;
    if let Ok(k) = cfg.strength() {
        if (k.k() - counts.strength).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "--k {} does not match the counts file (K = {})",
                k.k(),
                counts.strength
            )));
        }
    }
    let objective = cfg.objective();
    let options = EstimatorOptions::with_objective(objective);
    let replicas = cfg.replicas.unwrap_or(0);
    let result = if replicas == 0 {
        estimate(&counts, &cal, &options)?
    } else {
        let (result, boot) =
            estimate_with_bootstrap(&counts, &cal, replicas, cfg.seed()?, &options)?;
        write(dir, "replicas.csv", &io::replicas_csv(&boot))?;
        result
    };
    write(dir, "estimate.json", &io::estimate_json(&result, objective))?;
    let (a, b) = result.phases().to_degrees();
    let mut out =
        String::from("theta1_deg,theta2_deg,var1,var2,cov,objective_value,degenerate,replicas\n");
    let cov = match result.covariance {
        Some(c) => [c[0][0], c[1][1], c[0][1]].map(num).join(","),
        None => ",,".into(),
    };
    let _ = writeln!(
        out,
        "{},{},{cov},{},{},{replicas}",
        num(a),
        num(b),
        num(result.objective_value),
        result.degenerate
    );
    Ok(out)
}

fn cmd_gate_sim(cfg: &RunConfig) -> Result<String> {
    let strength = cfg.strength()?;
    let ppbs = cfg.ppbs()?;
    let theta1 = cfg.theta1_deg.expect("resolved").to_radians();
    let mut out = String::from(
        "theta1_deg,theta2_deg,p_DH,p_DV,p_AH,p_AV,ideal_DH,ideal_DV,ideal_AH,ideal_AV,max_abs_dev,success_probability,det_F,det_F_ideal\n",
    );
    for theta2 in theta_axis(cfg.grid_step_deg.expect("resolved"))? {
        let phases = PhasePair::new(theta1, theta2)?;
        let got = optics::imperfect_distribution(phases, strength, &ppbs)?;
        let ideal = protocol::outcome_distribution(phases, strength).probabilities;
        let dev = (0..4)
            .map(|i| (got.probabilities[i] - ideal[i]).abs())
            .fold(0.0, f64::max);
        let det = optics::effective_fim(phases, strength, &ppbs)?.determinant();
        let det_ideal = information::classical_fim(phases, strength).determinant();
        let mut row = vec![deg(theta1), deg(theta2)];
        row.extend(got.probabilities);
        row.extend(ideal);
        row.extend([dev, got.success_probability, det, det_ideal]);
        let row: Vec<String> = row.into_iter().map(num).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Resolves the configuration for `command` and runs it.
pub fn execute(command: CommandKind, flags: RunConfig) -> Result<PathBuf> {
    let out = flags
        .out
        .clone()
        .ok_or_else(|| Error::Config("--out is required".into()))?;
    let cfg = match &flags.config {
        Some(path) => {
            let file = read_config(path, command)?;
            flags.merged_with(file)
        }
        None => flags,
    };
    let cfg = RunConfig {
        out: None,
        config: None,
        ..cfg
    }
    .resolve(command)?;
    fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
    let data = match command {
        CommandKind::Info => Some(cmd_info(&cfg)?),
        CommandKind::SweepFig3 => Some(cmd_sweep(&cfg)?),
        CommandKind::Simulate => Some(cmd_simulate(&cfg, &out)?),
        CommandKind::Calibrate => {
            cmd_calibrate(&cfg, &out)?;
            None
        }
        CommandKind::Estimate => Some(cmd_estimate(&cfg, &out)?),
        CommandKind::GateSim => Some(cmd_gate_sim(&cfg)?),
    };
    if let Some(data) = data {
        write(&out, "data.csv", &data)?;
    }
    write(&out, "meta.toml", &meta_toml(command, &cfg))?;
    Ok(out)
}

/// Parses `args` and runs the command. `--help` and `--version` print and
/// exit the process.
pub fn run<I, T>(args: I) -> Result<PathBuf>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => return Err(Error::Config(e.to_string())),
    };
    let (command, config) = cli.command.split();
    execute(command, config)
}
