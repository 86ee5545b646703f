//! `quanta` argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use quanta_core::analysis::{
    chsh, degree_of_correlation, degree_of_correlation_analytic, lhv_bound_bruteforce,
    run_length_statistics, ChshMode, ChshResult, ChshSettings,
};
use quanta_core::experiments::{
    bin_impacts, default_screen_grid, delay_fractions, double_slit_intensity, fringe_visibility,
    measurement_report, rto_joint, run_delayed_choice, run_encounter_delayed_choice,
    run_mach_zehnder, run_rto, run_single_photon_collapse, sample_impacts, sample_mach_zehnder,
    sample_rto, ExperimentResult, MzConfig, RtoConfig, SlitGeometry, Slits, WavePacketEnvelope, D1,
    D2, DETECTORS, JOINT,
};
use quanta_core::optics::PhaseSetting;
use quanta_core::qcore::DensityOperator;

use crate::manifest::RunManifest;
use crate::report::{num, Format, Report};
use crate::stats::{cell_probabilities, chi_square_gof};

/// Points in every phase sweep, 0° to 360° inclusive.
pub const SWEEP_POINTS: usize = 16;

/// Probe phases in the measurement report.
pub const PROBE_PHASES: usize = 16;

/// Confidence level of the impact goodness-of-fit test.
pub const GOF_CONFIDENCE: f64 = 0.99;

#[derive(Debug, Parser)]
#[command(
    name = "quanta",
    version,
    about = "Photon interferometry, entanglement and double-slit simulator"
)]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mach–Zehnder interferometer.
    Mz(MzArgs),
    /// BS2 inserted or removed at random after the photon passes BS1.
    DelayedChoice(DelayedChoiceArgs),
    /// BS2 inserted while the photon is crossing, swept over insertion delay.
    Edc(EdcArgs),
    /// Entangled photon pair with a phase shifter on each side.
    Rto(RtoArgs),
    /// Bell–CHSH quantity of the entangled pair.
    Chsh(ChshArgs),
    /// Entangled photon–detector measurement state.
    Measure,
    /// Single photon split between two detectors.
    Collapse(CollapseArgs),
    /// Double-slit intensity and sampled screen impacts.
    DoubleSlit(DoubleSlitArgs),
    /// Run-length statistics of fair detector outcomes.
    Runs(RunsArgs),
}

fn finite(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("value must be positive".into())
    }
}

#[derive(Debug, Args, Serialize)]
pub struct MzArgs {
    #[arg(long = "phi1-deg", value_parser = finite, default_value_t = 0.0, conflicts_with = "sweep")]
    pub phi1_deg: f64,
    #[arg(long = "phi2-deg", value_parser = finite, default_value_t = 0.0)]
    pub phi2_deg: f64,
    /// Insert BS2 (default).
    #[arg(long, overrides_with = "no_bs2")]
    #[serde(skip)]
    pub bs2: bool,
    /// Remove BS2.
    #[arg(long = "no-bs2")]
    #[serde(skip)]
    pub no_bs2: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Sweep φ1 − φ2 over 0°–360°.
    #[arg(long)]
    pub sweep: bool,
}

impl MzArgs {
    fn bs2_present(&self) -> bool {
        !self.no_bs2 || self.bs2
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DelayedChoiceArgs {
    #[arg(long = "phi-deg", value_parser = finite, default_value_t = 0.0)]
    pub phi_deg: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 10_000)]
    pub trials: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct EdcArgs {
    #[arg(long = "phi-deg", value_parser = finite, default_value_t = 0.0)]
    pub phi_deg: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000), default_value_t = 16)]
    pub delays: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct RtoArgs {
    #[arg(long = "phia-deg", value_parser = finite, default_value_t = 0.0)]
    pub phia_deg: f64,
    #[arg(long = "phib-deg", value_parser = finite, default_value_t = 0.0, conflicts_with = "sweep")]
    pub phib_deg: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Sweep φB − φA over 0°–360°.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ChshArgs {
    #[arg(long, value_parser = finite, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, value_parser = finite, default_value_t = 90.0)]
    pub a2: f64,
    #[arg(long, value_parser = finite, default_value_t = 45.0)]
    pub b: f64,
    #[arg(long, value_parser = finite, default_value_t = 135.0)]
    pub b2: f64,
    /// Trials per setting pair.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct CollapseArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 100_000)]
    pub trials: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct DoubleSlitArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 2)]
    pub slits: u8,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 10_000)]
    pub impacts: u64,
    /// Wavelength in metres.
    #[arg(long, value_parser = positive, default_value_t = 500e-9)]
    pub wavelength: f64,
    /// Slit width in metres; 0.8 wavelengths when omitted.
    #[arg(long = "slit-width", value_parser = positive)]
    pub slit_width: Option<f64>,
    /// Centre-to-centre slit separation in metres; 4 wavelengths when omitted.
    #[arg(long = "slit-separation", value_parser = positive)]
    pub slit_separation: Option<f64>,
    /// Slit-to-screen distance in metres; 10⁴ wavelengths when omitted.
    #[arg(long = "screen-distance", value_parser = positive)]
    pub screen_distance: Option<f64>,
    /// Screen grid points spanning ±3 fringe periods.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=1_000_000), default_value_t = 601)]
    pub points: u64,
}

impl DoubleSlitArgs {
    fn geometry(&self) -> quanta_core::Result<SlitGeometry> {
        let l = self.wavelength;
        SlitGeometry::new(
            self.slit_separation.unwrap_or(4.0 * l),
            self.slit_width.unwrap_or(0.8 * l),
            l,
            self.screen_distance.unwrap_or(1e4 * l),
        )
    }

    fn slits(&self) -> Slits {
        if self.slits == 1 {
            Slits::One
        } else {
            Slits::Two
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct RunsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1 << 20)]
    pub trials: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=62), default_value_t = 10)]
    pub k: u64,
}

/// Parses `args`, runs the command and writes its output. Returns the process
/// exit code: 0 on success, 2 on an argument error, 1 on any other failure.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Command::DoubleSlit(a) = &cli.command {
        if let Err(e) = a.geometry() {
            let _ = Cli::command().error(ErrorKind::ValueValidation, e).print();
            return 2;
        }
    }
    match execute(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}")),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Runs the parsed command and renders its output.
pub fn execute(cli: &Cli) -> Result<String> {
    let (name, params, report) = match &cli.command {
        Command::Mz(a) => ("mz", params(a)?, mz(a, cli.seed)?),
        Command::DelayedChoice(a) => ("delayed-choice", params(a)?, delayed_choice(a, cli.seed)?),
        Command::Edc(a) => ("edc", params(a)?, edc(a)?),
        Command::Rto(a) => ("rto", params(a)?, rto(a, cli.seed)?),
        Command::Chsh(a) => ("chsh", params(a)?, chsh_cmd(a, cli.seed)?),
        Command::Measure => ("measure", Map::new(), measure()?),
        Command::Collapse(a) => ("collapse", params(a)?, collapse(a, cli.seed)?),
        Command::DoubleSlit(a) => ("double-slit", params(a)?, double_slit(a, cli.seed)?),
        Command::Runs(a) => ("runs", params(a)?, runs(a, cli.seed)?),
    };
    let mut params = params;
    if let Command::Mz(a) = &cli.command {
        params.insert("bs2".into(), Value::Bool(a.bs2_present()));
    }
    params.insert("format".into(), serde_json::to_value(cli.format)?);
    let manifest = RunManifest::new(name, params, cli.seed, cli.out.as_deref())?;
    report.render(cli.format, &manifest)
}

fn params<T: Serialize>(args: &T) -> Result<Map<String, Value>> {
    match serde_json::to_value(args)? {
        Value::Object(m) => Ok(m),
        _ => Ok(Map::new()),
    }
}

fn deg(v: f64) -> Result<PhaseSetting> {
    Ok(PhaseSetting::from_degrees(v)?)
}

fn sweep_degrees() -> Vec<f64> {
    (0..SWEEP_POINTS)
        .map(|k| 360.0 * k as f64 / (SWEEP_POINTS - 1) as f64)
        .collect()
}

/// `context,outcome,probability[,frequency]` rows plus the result's JSON.
fn table_report(
    result: &ExperimentResult,
    frequency: impl Fn(&str, &str) -> Option<f64>,
) -> Result<Report> {
    let sampled = result.trials.is_some();
    let mut report = if sampled {
        Report::new(&["context", "outcome", "probability", "frequency"])
    } else {
        Report::new(&["context", "outcome", "probability"])
    };
    for e in result.analytic.entries() {
        let mut row = vec![e.context.clone(), e.outcome.clone(), num(e.probability)];
        if sampled {
            row.push(
                frequency(&e.context, &e.outcome)
                    .map(num)
                    .unwrap_or_default(),
            );
        }
        report.row(row);
    }
    report.json = params(result)?;
    Ok(report)
}

fn mz(a: &MzArgs, seed: u64) -> Result<Report> {
    let bs2 = a.bs2_present();
    let phi2 = deg(a.phi2_deg)?;
    if !a.sweep {
        let config = MzConfig::new(deg(a.phi1_deg)?, phi2, bs2);
        let result = match a.trials {
            Some(n) => sample_mach_zehnder(&config, n, seed)?,
            None => run_mach_zehnder(&config)?,
        };
        return table_report(&result, |ctx, out| {
            (ctx == DETECTORS)
                .then(|| result.frequency(None, out))
                .flatten()
        });
    }
    let mut report = match a.trials {
        Some(_) => Report::new(&["phase_deg", "P_D1", "P_D2", "freq_D1", "freq_D2"]),
        None => Report::new(&["phase_deg", "P_D1", "P_D2"]),
    };
    let mut points = Vec::new();
    for d in sweep_degrees() {
        let config = MzConfig::new(deg(a.phi2_deg + d)?, phi2, bs2);
        let result = match a.trials {
            Some(n) => sample_mach_zehnder(&config, n, seed)?,
            None => run_mach_zehnder(&config)?,
        };
        let p1 = result.analytic.get(DETECTORS, D1).unwrap_or(f64::NAN);
        let p2 = result.analytic.get(DETECTORS, D2).unwrap_or(f64::NAN);
        let mut row = vec![num(d), num(p1), num(p2)];
        let mut point = json!({ "phase_deg": d, "P_D1": p1, "P_D2": p2 });
        if a.trials.is_some() {
            let f1 = result.frequency(None, D1).unwrap_or(0.0);
            let f2 = result.frequency(None, D2).unwrap_or(0.0);
            row.extend([num(f1), num(f2)]);
            point["freq_D1"] = json!(f1);
            point["freq_D2"] = json!(f2);
        }
        report.row(row);
        points.push(point);
    }
    report.json.insert("sweep".into(), Value::Array(points));
    Ok(report)
}

fn delayed_choice(a: &DelayedChoiceArgs, seed: u64) -> Result<Report> {
    let result = run_delayed_choice(deg(a.phi_deg)?, a.trials, seed)?;
    table_report(&result, |ctx, out| result.frequency(Some(ctx), out))
}

fn edc(a: &EdcArgs) -> Result<Report> {
    let phase = deg(a.phi_deg)?;
    let mut report = Report::new(&["delay_fraction", "P_D1", "P_D2"]);
    let mut points = Vec::new();
    for r in delay_fractions(a.delays as usize) {
        let run = run_encounter_delayed_choice(phase, WavePacketEnvelope::from_fraction(r)?)?;
        report.row(vec![num(r), num(run.p_d1()), num(run.p_d2())]);
        points.push(json!({
            "delay_fraction": r,
            "P_D1": run.p_d1(),
            "P_D2": run.p_d2(),
            "result": run.result,
            "sub_waves": run.sub_waves,
        }));
    }
    report.json.insert("phi_deg".into(), json!(phase.degrees()));
    report.json.insert("sweep".into(), Value::Array(points));
    Ok(report)
}

fn rto(a: &RtoArgs, seed: u64) -> Result<Report> {
    let phi_a = deg(a.phia_deg)?;
    if !a.sweep {
        let config = RtoConfig::new(phi_a, deg(a.phib_deg)?);
        let result = match a.trials {
            Some(n) => sample_rto(&config, n, seed)?,
            None => run_rto(&config)?,
        };
        let mut report = table_report(&result, |ctx, out| {
            if ctx == JOINT {
                let trials = result.trials();
                let hits = trials.iter().filter(|t| t.outcomes.concat() == out).count();
                Some(hits as f64 / trials.len() as f64)
            } else {
                result.frequency(None, out)
            }
        })?;
        let analytic = degree_of_correlation_analytic(&rto_joint(&config)?);
        report.row(vec![
            "correlation".into(),
            "C".into(),
            num(analytic.degree_of_correlation),
        ]);
        let mut corr = json!({ "analytic": analytic });
        if result.trials.is_some() {
            let sampled = degree_of_correlation(result.trials())?;
            let last = report.rows.last_mut().expect("row just pushed");
            last.push(num(sampled.degree_of_correlation));
            corr["sampled"] = json!(sampled);
        }
        report.json.insert("correlation".into(), corr);
        return Ok(report);
    }
    let mut report = match a.trials {
        Some(_) => Report::new(&["phase_diff_deg", "C_analytic", "C_sampled", "stderr"]),
        None => Report::new(&["phase_diff_deg", "C_analytic"]),
    };
    let mut points = Vec::new();
    for d in sweep_degrees() {
        let config = RtoConfig::new(phi_a, deg(a.phia_deg + d)?);
        let c = rto_joint(&config)?.correlation();
        let mut row = vec![num(d), num(c)];
        let mut point = json!({ "phase_diff_deg": d, "C_analytic": c });
        if let Some(n) = a.trials {
            let s = degree_of_correlation(sample_rto(&config, n, seed)?.trials())?;
            row.extend([num(s.degree_of_correlation), num(s.standard_error)]);
            point["C_sampled"] = json!(s.degree_of_correlation);
            point["stderr"] = json!(s.standard_error);
        }
        report.row(row);
        points.push(point);
    }
    report.json.insert("sweep".into(), Value::Array(points));
    Ok(report)
}

type ChshField = fn(&ChshResult) -> f64;

fn chsh_cmd(a: &ChshArgs, seed: u64) -> Result<Report> {
    let settings = ChshSettings::from_degrees(a.a, a.a2, a.b, a.b2)?;
    let analytic = chsh(&settings, ChshMode::Analytic)?;
    let sampled = a
        .trials
        .map(|n| {
            chsh(
                &settings,
                ChshMode::Sampled {
                    trials_per_pair: n,
                    seed,
                },
            )
        })
        .transpose()?;
    let mut report = match sampled {
        Some(_) => Report::new(&["quantity", "analytic", "sampled"]),
        None => Report::new(&["quantity", "analytic"]),
    };
    let rows: [(&str, ChshField); 7] = [
        ("E_ab", |r| r.e_ab),
        ("E_ab2", |r| r.e_ab2),
        ("E_a2b", |r| r.e_a2b),
        ("E_a2b2", |r| r.e_a2b2),
        ("S", |r| r.s),
        ("lhv_bound", |r| r.lhv_bound),
        ("stderr", |r| r.standard_error),
    ];
    for (name, get) in rows {
        let mut row = vec![name.to_owned(), num(get(&analytic))];
        if let Some(s) = &sampled {
            row.push(num(get(s)));
        }
        report.row(row);
    }
    report.json.insert("settings".into(), json!(settings));
    report.json.insert("analytic".into(), json!(analytic));
    if let Some(s) = sampled {
        report.json.insert("sampled".into(), json!(s));
        report
            .json
            .insert("trials_per_pair".into(), json!(a.trials));
    }
    report
        .json
        .insert("lhv_bound_bruteforce".into(), json!(lhv_bound_bruteforce()));
    Ok(report)
}

fn density_json(rho: &DensityOperator) -> Value {
    let n = rho.dim();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            let row: Vec<Value> = (0..n)
                .map(|j| {
                    let z = rho.entry(i, j);
                    json!([z.re, z.im])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    json!({ "labels": rho.subsystems()[0].labels(), "matrix": rows })
}

fn measure() -> Result<Report> {
    let m = measurement_report(PROBE_PHASES)?;
    let mut report = Report::new(&["section", "key", "value"]);
    for e in m.result.analytic.entries() {
        report.row(vec![
            e.context.clone(),
            e.outcome.clone(),
            num(e.probability),
        ]);
    }
    for (name, rho) in [
        ("rho_photon", &m.reduced_photon),
        ("rho_detector", &m.reduced_detector),
    ] {
        for i in 0..rho.dim() {
            for j in 0..rho.dim() {
                let z = rho.entry(i, j);
                report.row(vec![name.into(), format!("{i}{j}.re"), num(z.re)]);
                report.row(vec![name.into(), format!("{i}{j}.im"), num(z.im)]);
            }
        }
    }
    report.row(vec!["purity".into(), "photon".into(), num(m.purity_photon)]);
    report.row(vec![
        "purity".into(),
        "detector".into(),
        num(m.purity_detector),
    ]);
    let mut probe = Vec::new();
    for p in &m.probe {
        for (who, v) in [("photon", p.photon), ("detector", p.detector)] {
            for (k, value) in v.iter().enumerate() {
                report.row(vec![
                    "probe".into(),
                    format!("{}:{who}:{}", p.phase_deg, k + 1),
                    num(*value),
                ]);
            }
        }
        probe.push(json!({ "phase_deg": p.phase_deg, "photon": p.photon, "detector": p.detector }));
    }
    report.json = params(&m.result)?;
    report
        .json
        .insert("reduced_photon".into(), density_json(&m.reduced_photon));
    report
        .json
        .insert("reduced_detector".into(), density_json(&m.reduced_detector));
    report
        .json
        .insert("purity_photon".into(), json!(m.purity_photon));
    report
        .json
        .insert("purity_detector".into(), json!(m.purity_detector));
    report.json.insert("probe".into(), Value::Array(probe));
    Ok(report)
}

fn collapse(a: &CollapseArgs, seed: u64) -> Result<Report> {
    let run = run_single_photon_collapse(a.trials, seed)?;
    let mut report = Report::new(&["section", "key", "value"]);
    for e in run.result.analytic.entries() {
        report.row(vec![
            e.context.clone(),
            e.outcome.clone(),
            num(e.probability),
        ]);
    }
    let n = run.result.n_trials as f64;
    let summary = [
        ("trials", n),
        ("clicks_D1", run.clicks_d1 as f64),
        ("clicks_D2", run.clicks_d2 as f64),
        ("frequency_D1", run.clicks_d1 as f64 / n),
        ("frequency_D2", run.clicks_d2 as f64 / n),
        ("anomalies", run.anomalies as f64),
        ("unclicked_vacuum_deviation", run.unclicked_vacuum_deviation),
    ];
    for (k, v) in summary {
        report.row(vec!["summary".into(), k.into(), num(v)]);
    }
    report.json = params(&run.result)?;
    let summary: Map<String, Value> = summary
        .iter()
        .map(|(k, v)| ((*k).to_owned(), json!(v)))
        .collect();
    report.json.insert("summary".into(), Value::Object(summary));
    Ok(report)
}

fn double_slit(a: &DoubleSlitArgs, seed: u64) -> Result<Report> {
    let geometry = a.geometry()?;
    let slits = a.slits();
    let grid = default_screen_grid(&geometry, a.points as usize)?;
    let intensity = double_slit_intensity(&grid, slits, &geometry)?;
    let impacts = sample_impacts(&grid, &intensity, a.impacts, seed)?;
    let counts = bin_impacts(&grid, &impacts);
    let gof = chi_square_gof(
        &counts,
        &cell_probabilities(&grid, &geometry, slits),
        GOF_CONFIDENCE,
    )?;

    let mut report = Report::new(&["x", "intensity", "impact_count"]);
    let mut points = Vec::with_capacity(grid.len());
    for ((x, i), c) in grid.iter().zip(&intensity).zip(&counts) {
        report.row(vec![num(*x), num(*i), c.to_string()]);
        points.push(json!({ "x": x, "intensity": i, "impact_count": c }));
    }
    report.json.insert("geometry".into(), json!(geometry));
    report.json.insert("slits".into(), json!(a.slits));
    if slits == Slits::Two {
        report.json.insert(
            "fringe_visibility".into(),
            json!(fringe_visibility(&geometry)),
        );
    }
    report.json.insert("impacts".into(), json!(a.impacts));
    report.json.insert("goodness_of_fit".into(), json!(gof));
    report.json.insert("points".into(), Value::Array(points));
    Ok(report)
}

fn runs(a: &RunsArgs, seed: u64) -> Result<Report> {
    let fair = MzConfig::new(PhaseSetting::zero(), PhaseSetting::zero(), false);
    let result = sample_mach_zehnder(&fair, a.trials, seed)?;
    let outcomes: Vec<bool> = result.trials().iter().map(|t| t.outcomes == [D1]).collect();
    let r = run_length_statistics(&outcomes, a.k as usize)?;
    let mut report = Report::new(&["metric", "value"]);
    let metrics = [
        ("k", r.k as f64),
        ("length", r.length as f64),
        ("windows", r.windows as f64),
        ("observed_count", r.observed_count as f64),
        ("observed_fraction", r.observed_fraction),
        ("expected_fraction", r.expected_fraction),
        ("fraction_std_dev", r.fraction_std_dev),
        ("z_score", r.z_score),
        ("blocks", r.blocks as f64),
        ("chi_square", r.chi_square),
        ("dof", f64::from(r.dof)),
        ("p_value", r.p_value),
    ];
    for (k, v) in metrics {
        report.row(vec![k.into(), num(v)]);
    }
    report.json.insert("report".into(), json!(r));
    Ok(report)
}
