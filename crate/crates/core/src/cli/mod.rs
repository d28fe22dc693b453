//! Command-line front end: builds a model from a config and flags, runs one suite and
//! writes `report.json`, `sweep.csv` and `terms.csv`.
//!
//! Exit status: 0 when every asserted slack or limit passes, 1 on an assertion failure,
//! 2 on a configuration error, 3 on a numerical failure.

pub mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::RunConfig;
pub use output::{sweep_csv, terms_csv};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::harness::{
    self, battery, bv_constant, refined_cs_campaign, CampaignSummary, Evaluator, InequalityReport, SweepParams,
    SweepTable,
};
use crate::model::{Measure, ModelSpace, Orientation};

#[derive(Debug, Parser)]
#[command(name = "finsler-hardy", version, about = "Hardy and Rellich inequalities on Finsler model spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hardy inequality with the curvature remainder, over a radial battery.
    Hardy(Flags),
    /// Hardy inequality with the Brezis-Vazquez term (k < 0).
    HardyBv(Flags),
    /// Sharpness sweep of the Hardy quotient.
    HardySweep(Flags),
    /// Rellich inequality over an admissible radial battery.
    Rellich(Flags),
    /// Refined five-term Rellich inequality (k < 0).
    RellichBv(Flags),
    /// Sharpness sweep of the Rellich quotient.
    RellichSweep(Flags),
    /// Uncertainty principle.
    Uncertainty(Flags),
    /// Evaluate the admissibility functional G^beta.
    GbetaCheck(Flags),
    /// Weighted Poincare inequality (k < 0).
    Poincare(Flags),
    /// Random campaign for the refined Cauchy-Schwarz inequality.
    RefinedCs(Flags),
    /// Model constants.
    Constants(Flags),
    /// List the suites with their parameter domains.
    List,
}

/// Flags shared by every suite; they override the config file.
#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// randers, euclidean or hyperbolic
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Randers drift (the norm parameter b for refined-cs)
    #[arg(long = "t", visible_alias = "b", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// bh or ht
    #[arg(long)]
    pub measure: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long = "r")]
    pub r: Option<f64>,
    #[arg(long = "R")]
    pub big_r: Option<f64>,
    /// Comma-separated, strictly decreasing
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Battery size for single-function suites
    #[arg(long)]
    pub count: Option<usize>,
    /// minus, plus or both
    #[arg(long)]
    pub orientation: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Flags {
    /// The config file (if any) with these flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let m = &mut c.model;
        if let Some(v) = &self.model {
            m.kind = v.clone();
        }
        if let Some(v) = self.n {
            m.n = v;
        }
        if let Some(v) = self.t {
            m.t = Some(v);
        }
        if let Some(v) = self.k {
            m.k = Some(v);
        }
        if let Some(v) = &self.measure {
            m.measure = v.clone();
        }
        let p = &mut c.params;
        if let Some(v) = self.beta {
            p.beta = v;
        }
        if let Some(v) = self.r {
            p.r = v;
        }
        if let Some(v) = self.big_r {
            p.big_r = v;
        }
        if let Some(v) = &self.eps {
            p.eps = v.clone();
        }
        if let Some(v) = self.samples {
            p.samples = v;
        }
        if let Some(v) = self.seed {
            p.seed = v;
        }
        if let Some(v) = self.tol {
            p.tol = Some(v);
        }
        if let Some(v) = self.count {
            p.count = v;
        }
        if let Some(v) = &self.orientation {
            p.orientation = v.clone();
        }
        if let Some(v) = &self.out {
            c.output.dir = Some(v.clone());
        }
        Ok(c)
    }
}

/// Closed-form and sampled constants of a model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantsReport {
    pub model: crate::model::ModelDescriptor,
    pub lambda_f: f64,
    #[serde(rename = "Lambda_F")]
    pub big_lambda_f: f64,
    pub k: f64,
    pub c_p_bh: f64,
    pub c_p_ht: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bv_constant: Option<f64>,
    pub sampled_lambda_f: f64,
    #[serde(rename = "sampled_Lambda_F")]
    pub sampled_big_lambda_f: f64,
    pub samples: usize,
}

/// Everything a run produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOutput {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<InequalityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub campaigns: Vec<CampaignSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsReport>,
}

impl RunOutput {
    fn new(command: &str, config: &RunConfig) -> Self {
        // The output location does not affect results; leaving it out keeps reports comparable.
        let mut config = config.clone();
        config.output.dir = None;
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            passed: true,
            reports: Vec::new(),
            sweeps: Vec::new(),
            campaigns: Vec::new(),
            constants: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outputs are serializable");
        s.push('\n');
        s
    }

    /// Writes `report.json` and, when non-empty, `sweep.csv` and `terms.csv` into `dir`.
    pub fn write(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json())?;
        if !self.sweeps.is_empty() {
            std::fs::write(dir.join("sweep.csv"), sweep_csv(&self.sweeps))?;
        }
        if !self.reports.is_empty() {
            std::fs::write(dir.join("terms.csv"), terms_csv(&self.reports))?;
        }
        Ok(())
    }
}

/// Suite names with their parameter domains, in a fixed order.
pub fn list_suites() -> String {
    const SUITES: [(&str, &str); 12] = [
        ("hardy", "Hardy inequality with curvature remainder; requires beta < n-2"),
        ("hardy-bv", "Hardy inequality with Brezis-Vazquez term; requires k < 0 and beta < n-2"),
        ("hardy-sweep", "sharpness of (n-2-beta)^2/4; requires beta < n-2 and 0 < eps < r < R"),
        ("rellich", "Rellich inequality on G^beta-admissible functions; requires -2 < beta < n-4"),
        ("rellich-bv", "five-term refined Rellich inequality; requires k < 0 and 0 <= beta < n-2"),
        ("rellich-sweep", "sharpness of (n+beta)^2(n-4-beta)^2/16; requires -2 < beta < n-4"),
        ("uncertainty", "uncertainty principle; requires K <= 0 and beta < n-2"),
        ("gbeta", "admissibility functional G^beta (subcommand gbeta-check); requires compact support"),
        ("poincare", "weighted Poincare inequality with constant 4 lambda_F^2/|k|; requires k < 0"),
        ("refined-cs", "refined Cauchy-Schwarz inequality for the dual Randers norm; requires 0 <= b < 1"),
        ("constants", "reversibility, uniformity and polar constants of a model"),
        ("list", "this list"),
    ];
    SUITES.iter().map(|(n, d)| format!("{n:<14} {d}\n")).collect()
}

fn orientations(c: &RunConfig) -> Vec<Orientation> {
    match c.params.orientation.as_str() {
        "minus" => vec![Orientation::MinusRadial],
        "plus" => vec![Orientation::PlusRadial],
        _ => vec![Orientation::MinusRadial, Orientation::PlusRadial],
    }
}

fn count_or(c: &RunConfig, default: usize) -> usize {
    if c.params.count == 0 {
        default
    } else {
        c.params.count
    }
}

fn evaluator(c: &RunConfig, model: &ModelSpace) -> Result<Evaluator> {
    Ok(Evaluator::new(model, &c.quadrature_spec()?).with_route(c.params.route))
}

fn battery_reports<F, U>(fields: &[U], mut f: F) -> Result<Vec<InequalityReport>>
where
    U: ScalarField,
    F: FnMut(&dyn ScalarField) -> Result<InequalityReport>,
{
    fields.iter().map(|u| f(u)).collect()
}

fn constants_report(model: &ModelSpace, c: &RunConfig) -> Result<ConstantsReport> {
    let norm = model.minkowski();
    let samples = c.params.samples.clamp(1000, 1_000_000);
    let lam = norm.sample_reversibility(samples, c.params.seed);
    let big = norm.sample_uniformity(samples.min(4_000), c.params.seed);
    Ok(ConstantsReport {
        model: model.descriptor(),
        lambda_f: model.reversibility(),
        big_lambda_f: model.uniformity(),
        k: model.curvature(),
        c_p_bh: model.with_measure(Measure::BusemannHausdorff).model_constant_cp()?,
        c_p_ht: model.with_measure(Measure::HolmesThompson).model_constant_cp()?,
        bv_constant: bv_constant(model).ok(),
        sampled_lambda_f: lam.estimate,
        sampled_big_lambda_f: big.estimate,
        samples,
    })
}

/// Runs `command` with a resolved configuration.
pub fn run(command: &str, c: &RunConfig) -> Result<RunOutput> {
    let mut out = RunOutput::new(command, c);
    if command == "refined-cs" {
        let b = c.model.t.unwrap_or(0.0);
        let s = refined_cs_campaign(c.model.n, b, c.params.samples, c.params.seed).map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::Config(format!("{name}: {reason}")),
            other => other,
        })?;
        out.passed = s.passed;
        out.campaigns.push(s);
        return Ok(out);
    }
    c.validate(command)?;
    let model = c.build_model()?;
    let beta = c.params.beta;
    match command {
        "constants" => {
            out.constants = Some(constants_report(&model, c)?);
        }
        "hardy-sweep" | "rellich-sweep" => {
            let ev = evaluator(c, &model)?;
            for o in orientations(c) {
                let p = SweepParams::new(beta, c.params.r, c.params.big_r, c.params.eps.clone()).with_orientation(o);
                let t = if command == "hardy-sweep" {
                    harness::hardy_sharpness_sweep(&ev, &p)?
                } else {
                    harness::rellich_sharpness_sweep(&ev, &p)?
                };
                out.sweeps.push(t);
            }
        }
        "hardy" | "hardy-bv" => {
            let ev = evaluator(c, &model)?;
            let fields = battery::hardy_battery(&model, count_or(c, 20))?;
            out.reports = battery_reports(&fields, |u| {
                if command == "hardy" {
                    harness::hardy_report(&ev, u, beta)
                } else {
                    harness::hardy_bv_report(&ev, u, beta)
                }
            })?;
        }
        "rellich" | "rellich-bv" => {
            let ev = evaluator(c, &model)?;
            let fields = battery::rellich_battery(&model, beta, count_or(c, 10))?;
            out.reports = battery_reports(&fields, |u| {
                if command == "rellich" {
                    harness::rellich_report(&ev, u, beta)
                } else {
                    harness::rellich_bv_report(&ev, u, beta)
                }
            })?;
        }
        "uncertainty" => {
            let ev = evaluator(c, &model)?;
            let fields = battery::gaussian_battery(&model, count_or(c, 10))?;
            out.reports = battery_reports(&fields, |u| harness::uncertainty_report(&ev, u, beta))?;
        }
        "poincare" => {
            let ev = evaluator(c, &model)?;
            let fields = battery::gaussian_battery(&model, count_or(c, 10))?;
            out.reports = battery_reports(&fields, |u| harness::poincare_report(&ev, u))?;
        }
        "gbeta-check" => {
            let ev = evaluator(c, &model)?;
            let fields = battery::hardy_battery(&model, count_or(c, 10))?;
            let fields: Vec<_> = fields
                .into_iter()
                .filter(|f| orientations(c).contains(&f.orientation))
                .collect();
            out.reports = battery_reports(&fields, |u| harness::gbeta_report(&ev, u, beta))?;
        }
        other => return Err(Error::Config(format!("unknown suite `{other}`"))),
    }
    out.passed = out.reports.iter().all(|r| r.passed) && out.sweeps.iter().all(|s| s.passed);
    Ok(out)
}

fn command_name(cmd: &Command) -> Option<(&'static str, &Flags)> {
    Some(match cmd {
        Command::Hardy(f) => ("hardy", f),
        Command::HardyBv(f) => ("hardy-bv", f),
        Command::HardySweep(f) => ("hardy-sweep", f),
        Command::Rellich(f) => ("rellich", f),
        Command::RellichBv(f) => ("rellich-bv", f),
        Command::RellichSweep(f) => ("rellich-sweep", f),
        Command::Uncertainty(f) => ("uncertainty", f),
        Command::GbetaCheck(f) => ("gbeta-check", f),
        Command::Poincare(f) => ("poincare", f),
        Command::RefinedCs(f) => ("refined-cs", f),
        Command::Constants(f) => ("constants", f),
        Command::List => return None,
    })
}

fn summary(out: &RunOutput) -> String {
    let mut s = String::new();
    for t in &out.sweeps {
        s.push_str(&format!(
            "{} [{}]: limit {:.6} (sharp {:.6}, rel. error {:.2e}) {}\n",
            t.theorem,
            t.orientation,
            t.limit,
            t.sharp_constant,
            t.limit_relative_error,
            if t.passed { "PASS" } else { "FAIL" }
        ));
    }
    for r in &out.reports {
        s.push_str(&format!(
            "{} {}: slack {:.6e} (tol {:.1e}) {}\n",
            r.theorem,
            r.function,
            r.slack,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    for c in &out.campaigns {
        s.push_str(&format!(
            "refined-cs n={} b={}: min scaled slack {:.3e} over {} pairs {}\n",
            c.n,
            c.b,
            c.min_scaled_slack,
            c.samples,
            if c.passed { "PASS" } else { "FAIL" }
        ));
    }
    if let Some(c) = &out.constants {
        s.push_str(&serde_json::to_string_pretty(c).expect("serializable"));
        s.push('\n');
    }
    s
}

/// Parses `args`, runs the suite and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let Some((name, flags)) = command_name(&cli.command) else {
        print!("{}", list_suites());
        return 0;
    };
    let result = flags.resolve().and_then(|c| {
        let out = run(name, &c)?;
        if let Some(dir) = &c.output.dir {
            out.write(dir)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", summary(&out));
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
