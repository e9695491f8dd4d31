//! Config loading and the four command drivers behind the `algas2` binary.
//!
//! Everything is validated before any output file is created. Exit codes:
//! 0 success, 1 criteria/run failure, 2 usage or config error. All emitted
//! CSV files start with a header row and are byte-identical across runs of
//! the same config and seed.

use crate::core::{FusionParams, Geometry};
use crate::fls::{self, FlsEngineConfig, QuantizedEngine};
use crate::interconnect::NUM_CORES;
use crate::scenario::{
    run_landing, DynamicsParams, FaultEntry, FaultPlan, LandingReport, RunTrace, ScenarioConfig,
    SensorModel, SimParams, TerrainModel,
};
use crate::systolic::{build_schedule, system_throughput};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// The config file and golden set shipped with the crate.
pub const DEFAULT_CONFIG_TOML: &str = include_str!("../data/default.toml");
pub const DEFAULT_GOLDEN_CSV: &str = include_str!("../data/golden.csv");

/// Published operating point the bench command checks against.
pub const DESIGN_CORES: u32 = 4;
pub const DESIGN_CLOCK_MHZ: f64 = 279.25;
pub const DESIGN_GOPS: f64 = 21.22;
pub const GOPS_TOLERANCE: f64 = 0.01;

/// Terrain section as written in config files (degrees for editing).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct TerrainSection {
    pub roll_deg: f64,
    pub pitch_deg: f64,
    pub elevation_m: f64,
}

impl TerrainSection {
    fn to_model(self) -> TerrainModel {
        TerrainModel {
            roll_rad: self.roll_deg.to_radians(),
            pitch_rad: self.pitch_deg.to_radians(),
            elevation_m: self.elevation_m,
        }
    }
}

/// Error-budget thresholds used by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyParams {
    /// Golden-set bound, strict: max relative error must stay below this.
    pub golden_max_rel: f64,
    /// Full-sweep budget, inclusive.
    pub sweep_max_rel: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self { golden_max_rel: 0.03, sweep_max_rel: 0.05 }
    }
}

/// Parsed and validated top-level configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub engine: FlsEngineConfig,
    pub fusion: FusionParams,
    pub geometry: Geometry,
    pub dynamics: DynamicsParams,
    pub terrain: TerrainSection,
    pub sensors: SensorModel,
    pub faults: Vec<FaultEntry>,
    pub sim: SimParams,
    pub verify: VerifyParams,
    pub seed: u64,
    pub output_dir: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    engine: Option<FlsEngineConfig>,
    engine_file: Option<PathBuf>,
    #[serde(default)]
    fusion: FusionParams,
    #[serde(default)]
    geometry: Geometry,
    #[serde(default)]
    dynamics: DynamicsParams,
    #[serde(default)]
    terrain: TerrainSection,
    #[serde(default)]
    sensors: SensorModel,
    #[serde(default)]
    faults: Vec<FaultEntry>,
    #[serde(default)]
    sim: SimParams,
    #[serde(default)]
    verify: VerifyParams,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Usage/config-class failures; the binary maps these to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
}

impl RunConfig {
    /// Parse and validate a config file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text, path.parent())
    }

    /// The embedded default configuration.
    pub fn load_default() -> Result<Self, CliError> {
        Self::from_toml(DEFAULT_CONFIG_TOML, None)
    }

    pub fn from_toml(text: &str, base_dir: Option<&Path>) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let engine = match (raw.engine, raw.engine_file) {
            (Some(engine), None) => engine,
            (None, Some(file)) => {
                let path = match base_dir {
                    Some(dir) => dir.join(&file),
                    None => file.clone(),
                };
                let text = fs::read_to_string(&path)
                    .map_err(|source| CliError::Io { path, source })?;
                toml::from_str::<FlsEngineConfig>(&text)
                    .map_err(|e| CliError::Parse(format!("engine file: {e}")))?
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Invalid(
                    "config has both an inline [engine] and engine_file".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Invalid(
                    "config needs an [engine] section or engine_file".into(),
                ))
            }
        };
        let config = Self {
            engine,
            fusion: raw.fusion,
            geometry: raw.geometry,
            dynamics: raw.dynamics,
            terrain: raw.terrain,
            sensors: raw.sensors,
            faults: raw.faults,
            sim: raw.sim,
            verify: raw.verify,
            seed: raw.seed,
            output_dir: raw.output_dir,
        };
        config.validate()?;
        Ok(config)
    }

    /// Fail-fast validation of every section.
    pub fn validate(&self) -> Result<(), CliError> {
        self.engine.validate().map_err(|e| CliError::Invalid(format!("engine: {e}")))?;
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Invalid(what.to_string()))
            }
        };
        check(self.sim.dt_s > 0.0, "sim.dt_s must be positive")?;
        check(self.sim.max_steps > 0, "sim.max_steps must be positive")?;
        check(self.sim.hub_ticks_per_step >= 1, "sim.hub_ticks_per_step must be >= 1")?;
        check(self.fusion.step_dt_s > 0.0, "fusion.step_dt_s must be positive")?;
        check(self.fusion.rate_window_steps >= 2, "fusion.rate_window_steps must be >= 2")?;
        check(
            self.fusion.rate_smooth_samples >= 1
                && self.fusion.rate_smooth_samples <= self.fusion.rate_window_steps / 2,
            "fusion.rate_smooth_samples must be in 1..=rate_window_steps/2",
        )?;
        check(self.fusion.agreement_mm >= 0, "fusion.agreement_mm must be >= 0")?;
        check(
            self.geometry.half_span_x_m > 0.0 && self.geometry.half_span_y_m > 0.0,
            "geometry half spans must be positive",
        )?;
        check(self.dynamics.gravity_mps2 > 0.0, "dynamics.gravity_mps2 must be positive")?;
        check(self.dynamics.brake_accel_mps2 > 0.0, "dynamics.brake_accel_mps2 must be positive")?;
        check(
            self.dynamics.attitude_time_const_s >= self.sim.dt_s,
            "dynamics.attitude_time_const_s must be at least one step",
        )?;
        check(
            (0.0..=1.0).contains(&self.sensors.dropout_prob),
            "sensors.dropout_prob must be a probability",
        )?;
        check(
            self.sensors.lidar_sigma_mm >= 0.0 && self.sensors.radar_sigma_mm >= 0.0,
            "sensor noise sigmas must be >= 0",
        )?;
        for (i, jam) in self.sensors.jam.iter().enumerate() {
            check(
                (jam.corner as usize) < NUM_CORES && jam.start_step <= jam.end_step,
                &format!("sensors.jam[{i}] is malformed"),
            )?;
        }
        for (i, fault) in self.faults.iter().enumerate() {
            check(fault.start_step <= fault.end_step, &format!("faults[{i}] has start > end"))?;
        }
        check(
            self.verify.golden_max_rel > 0.0 && self.verify.sweep_max_rel > 0.0,
            "verify thresholds must be positive",
        )?;
        Ok(())
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        if let Some(seed) = seed {
            self.seed = seed;
        }
        self
    }

    /// Assemble the scenario bundle; the descent-code full scale always
    /// follows the engine's output format.
    pub fn scenario(&self) -> ScenarioConfig {
        let mut dynamics = self.dynamics;
        dynamics.code_max = self.engine.widths.output.raw_max() as f64;
        ScenarioConfig {
            engine: self.engine.clone(),
            fusion: self.fusion,
            geometry: self.geometry,
            dynamics,
            terrain: self.terrain.to_model(),
            sensors: self.sensors.clone(),
            faults: FaultPlan { entries: self.faults.clone() },
            sim: self.sim,
            seed: self.seed,
        }
    }
}

/// Golden-set file contents: raw input pairs and their frozen reference
/// outputs.
pub type GoldenSet = (Vec<(i64, i64)>, Vec<f64>);

/// Parse a golden-set file: `input0_raw,input1_raw,reference` with header.
pub fn parse_golden_csv(text: &str) -> Result<GoldenSet, CliError> {
    let mut inputs = Vec::new();
    let mut references = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with("input0_raw")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Usage(format!(
                "golden file line {}: expected 3 comma-separated fields",
                lineno + 1
            )));
        }
        let parse = |s: &str, what: &str| {
            s.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("golden file line {}: bad {what}", lineno + 1))
            })
        };
        inputs.push((
            parse(fields[0], "input0")? as i64,
            parse(fields[1], "input1")? as i64,
        ));
        references.push(parse(fields[2], "reference")?);
    }
    if inputs.is_empty() {
        return Err(CliError::Usage("golden file contains no samples".into()));
    }
    Ok((inputs, references))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

/// Golden-set check plus the exhaustive input sweep.
///
/// Exit 0 only when the golden error is under the strict bound and the
/// sweep stays inside the budget.
pub fn cmd_verify(config: &RunConfig, golden_path: Option<&Path>) -> Result<i32, CliError> {
    let golden_text = match golden_path {
        Some(path) => fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?,
        None => DEFAULT_GOLDEN_CSV.to_string(),
    };
    let (inputs, references) = parse_golden_csv(&golden_text)?;

    let golden = fls::compare_golden(&config.engine, &inputs, Some(&references))
        .map_err(|e| CliError::Invalid(format!("golden sample: {e}")))?;

    let mut results =
        String::from("input0_raw,input1_raw,reference,quantized_raw,relative_error\n");
    for s in &golden.samples {
        writeln!(
            results,
            "{},{},{},{},{}",
            s.input0_raw, s.input1_raw, s.reference, s.quantized_raw, s.relative_error
        )
        .unwrap();
    }
    write_file(&config.output_dir, "golden_results.csv", &results)?;

    let sweep = fls::sweep_error(&config.engine)
        .map_err(|e| CliError::Invalid(format!("sweep: {e}")))?;

    let golden_ok = golden.max_relative_error < config.verify.golden_max_rel;
    let sweep_ok = sweep.max_relative_error <= config.verify.sweep_max_rel;
    println!(
        "golden set : {} samples, max relative error {:.5} (bound {:.5}) -> {}",
        golden.samples.len(),
        golden.max_relative_error,
        config.verify.golden_max_rel,
        if golden_ok { "pass" } else { "FAIL" }
    );
    println!(
        "full sweep : {} pairs, max relative error {:.5} at {:?} (budget {:.5}) -> {}",
        sweep.evaluated,
        sweep.max_relative_error,
        sweep.worst_input,
        config.verify.sweep_max_rel,
        if sweep_ok { "pass" } else { "FAIL" }
    );
    Ok(if golden_ok && sweep_ok { 0 } else { 1 })
}

/// Throughput report for the published operating point, plus a host-side
/// evaluation rate measurement (informational only).
pub fn cmd_bench(config: &RunConfig) -> Result<i32, CliError> {
    let schedule =
        build_schedule(&config.engine).map_err(|e| CliError::Invalid(e.to_string()))?;
    let report = system_throughput(&schedule, DESIGN_CORES, DESIGN_CLOCK_MHZ);

    println!("{}", report.table());
    println!();
    println!("{}", crate::systolic::ThroughputReport::csv_header());
    println!("{}", report.csv_row());

    let engine = QuantizedEngine::new(&config.engine)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let f0 = config.engine.inputs[0].format;
    let f1 = config.engine.inputs[1].format;
    let started = std::time::Instant::now();
    let mut acc = 0i64;
    let iterations = 200_000u64;
    for i in 0..iterations {
        let raw0 = f0.raw_min() + (i as i64 * 31) % (f0.raw_max() - f0.raw_min() + 1);
        let raw1 = f1.raw_min() + (i as i64 * 17) % (f1.raw_max() - f1.raw_min() + 1);
        acc ^= engine.evaluate(raw0, raw1).unwrap().raw;
    }
    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "\nhost evaluation rate (informational): {:.2} M evals/s (checksum {acc})",
        iterations as f64 / elapsed / 1e6
    );

    let ok = (report.gops - DESIGN_GOPS).abs() <= GOPS_TOLERANCE;
    if !ok {
        println!(
            "throughput {:.3} GOPS is outside {} +/- {}",
            report.gops, DESIGN_GOPS, GOPS_TOLERANCE
        );
    }
    Ok(if ok { 0 } else { 1 })
}

fn bool_cell(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Render the three trace files and the report pair into `dir`.
pub fn write_run_outputs(
    dir: &Path,
    report: &LandingReport,
    trace: &RunTrace,
) -> Result<(), CliError> {
    let mut steps = String::from(
        "step,time_s,altitude_m,v_z_mps,roll_rad,pitch_rad,roll_rate_rps,pitch_rate_rps,\
         mean_code,code0,code1,code2,code3,trim0,trim1,trim2,trim3\n",
    );
    for row in &trace.steps {
        let s = &row.state;
        writeln!(
            steps,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.step,
            row.time_s,
            s.altitude_m,
            s.v_z_mps,
            s.roll_rad,
            s.pitch_rad,
            s.roll_rate_rps,
            s.pitch_rate_rps,
            row.mean_code,
            row.codes[0],
            row.codes[1],
            row.codes[2],
            row.codes[3],
            row.trims[0],
            row.trims[1],
            row.trims[2],
            row.trims[3]
        )
        .unwrap();
    }
    write_file(dir, "trace.csv", &steps)?;

    let mut cores = String::from(
        "step,core,lidar_mm,radar_mm,fused_cm,health,closure_rate_cms,roll_mrad,pitch_mrad,\
         confidence,descent_code,thrust_trim\n",
    );
    for row in &trace.cores {
        let (fused, health, rate) = match row.siu {
            Some(siu) => (
                siu.fused_distance_raw.to_string(),
                siu.health.label(),
                siu.closure_rate_raw.to_string(),
            ),
            None => (String::new(), "BLACKOUT", String::new()),
        };
        writeln!(
            cores,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.step,
            row.core,
            row.lidar_mm,
            row.radar_mm,
            fused,
            health,
            rate,
            row.estimate.roll_mrad,
            row.estimate.pitch_mrad,
            row.estimate.confidence.label(),
            row.command.descent_code,
            row.command.thrust_trim
        )
        .unwrap();
    }
    write_file(dir, "cores.csv", &cores)?;

    let mut hub = String::from("tick,slot,src,seq,delivered_to\n");
    for record in &trace.hub {
        let (src, seq) = match record.delivered {
            Some(msg) => (msg.src_core.to_string(), msg.seq.to_string()),
            None => (String::new(), String::new()),
        };
        writeln!(
            hub,
            "{},{},{},{},{:04b}",
            record.tick, record.slot, src, seq, record.delivered_to
        )
        .unwrap();
    }
    write_file(dir, "hub.csv", &hub)?;

    let mut report_csv = String::from(LandingReport::csv_header());
    report_csv.push('\n');
    report_csv.push_str(&report.csv_row());
    report_csv.push('\n');
    write_file(dir, "report.csv", &report_csv)?;
    write_file(dir, "report.txt", &format!("{}\n", report.summary()))?;
    Ok(())
}

/// One closed-loop landing with full trace output. Exit 0 on a successful
/// (nominal-threshold) landing.
pub fn cmd_run(config: &RunConfig, trace_dir: Option<&Path>) -> Result<i32, CliError> {
    let dir = trace_dir.unwrap_or(&config.output_dir).to_path_buf();
    match run_landing(&config.scenario()) {
        Ok((report, trace)) => {
            write_run_outputs(&dir, &report, &trace)?;
            println!("{}", report.summary());
            println!("\ntraces written to {}", dir.display());
            Ok(if report.success { 0 } else { 1 })
        }
        Err(abort) => {
            eprintln!("simulation aborted: {abort}");
            Ok(1)
        }
    }
}

/// Which knob a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    InclinationDeg,
    NoiseSigmaMm,
    FaultStartStep,
    Seed,
}

impl SweepParam {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "inclination_deg" => Ok(Self::InclinationDeg),
            "noise_sigma_mm" => Ok(Self::NoiseSigmaMm),
            "fault_start_step" => Ok(Self::FaultStartStep),
            "seed" => Ok(Self::Seed),
            other => Err(CliError::Usage(format!(
                "unknown sweep parameter {other:?}; expected inclination_deg, noise_sigma_mm, \
                 fault_start_step or seed"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::InclinationDeg => "inclination_deg",
            Self::NoiseSigmaMm => "noise_sigma_mm",
            Self::FaultStartStep => "fault_start_step",
            Self::Seed => "seed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: u32,
}

/// Evenly spaced sweep values, inclusive of both ends.
pub fn sweep_values(from: f64, to: f64, steps: u32) -> Vec<f64> {
    if steps <= 1 {
        return vec![from];
    }
    (0..steps)
        .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Repeat the landing across a parameter range, one CSV row per run.
/// Success or failure of individual landings is data; the exit code only
/// reflects whether every run completed.
pub fn cmd_sweep(config: &RunConfig, spec: &SweepSpec) -> Result<i32, CliError> {
    if spec.steps == 0 {
        return Err(CliError::Usage("sweep needs --steps >= 1".into()));
    }
    if spec.param == SweepParam::FaultStartStep && config.faults.is_empty() {
        return Err(CliError::Usage(
            "fault_start_step sweep needs at least one fault entry in the config".into(),
        ));
    }

    let base = config.scenario();
    let mut rows = String::from(
        "param,value,seed,touchdown,touchdown_speed_mps,touchdown_inclination_error_rad,\
         steps_elapsed,success,degraded\n",
    );
    let mut all_complete = true;
    for value in sweep_values(spec.from, spec.to, spec.steps) {
        let mut scenario = base.clone();
        match spec.param {
            SweepParam::InclinationDeg => scenario.terrain.pitch_rad = value.to_radians(),
            SweepParam::NoiseSigmaMm => {
                scenario.sensors.lidar_sigma_mm = value;
                scenario.sensors.radar_sigma_mm = value;
            }
            SweepParam::FaultStartStep => {
                for fault in &mut scenario.faults.entries {
                    fault.start_step = value.round().max(0.0) as u64;
                }
            }
            SweepParam::Seed => scenario.seed = value.round().max(0.0) as u64,
        }
        match run_landing(&scenario) {
            Ok((report, _)) => {
                let line = format!(
                    "{},{},{},{},{},{},{},{},{}",
                    spec.param.name(),
                    value,
                    scenario.seed,
                    bool_cell(report.touchdown),
                    report.touchdown_speed_mps,
                    report.touchdown_inclination_error_rad,
                    report.steps_elapsed,
                    bool_cell(report.success),
                    bool_cell(report.degraded)
                );
                println!("{line}");
                rows.push_str(&line);
                rows.push('\n');
            }
            Err(abort) => {
                eprintln!("run at {}={value} aborted: {abort}", spec.param.name());
                all_complete = false;
            }
        }
    }
    write_file(&config.output_dir, "sweep.csv", &rows)?;
    Ok(if all_complete { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_default_config_parses_and_matches_builtin_engine() {
        let config = RunConfig::load_default().unwrap();
        assert_eq!(config.engine, FlsEngineConfig::default_landing());
        assert_eq!(config.seed, 0);
        assert_eq!(config.verify, VerifyParams::default());
        assert_eq!(config.fusion, FusionParams::default());
        assert_eq!(config.dynamics, DynamicsParams::default());
        assert_eq!(config.sim, SimParams::default());
    }

    #[test]
    fn config_rejects_missing_engine() {
        let err = RunConfig::from_toml("seed = 1", None).unwrap_err();
        assert!(matches!(err, CliError::Invalid(_)));
    }

    #[test]
    fn config_rejects_engine_and_engine_file_together() {
        let mut text = DEFAULT_CONFIG_TOML.to_string();
        text.insert_str(0, "engine_file = \"x.toml\"\n");
        assert!(matches!(
            RunConfig::from_toml(&text, None),
            Err(CliError::Invalid(_))
        ));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let mut text = DEFAULT_CONFIG_TOML.to_string();
        text.insert_str(0, "no_such_key = 1\n");
        assert!(matches!(RunConfig::from_toml(&text, None), Err(CliError::Parse(_))));
    }

    #[test]
    fn config_rejects_bad_sim_values() {
        let text = DEFAULT_CONFIG_TOML.replace("dt_s = 0.001", "dt_s = -1.0");
        assert!(matches!(RunConfig::from_toml(&text, None), Err(CliError::Invalid(_))));
    }

    #[test]
    fn terrain_section_converts_to_radians() {
        let section = TerrainSection { roll_deg: 0.0, pitch_deg: 10.0, elevation_m: 1.0 };
        let model = section.to_model();
        assert!((model.pitch_rad - 10f64.to_radians()).abs() < 1e-15);
        assert_eq!(model.elevation_m, 1.0);
    }

    #[test]
    fn scenario_assembly_derives_code_max_from_engine() {
        let config = RunConfig::load_default().unwrap();
        let scenario = config.scenario();
        assert_eq!(scenario.dynamics.code_max, 255.0);
    }

    #[test]
    fn golden_parse_happy_path_and_empty() {
        let (inputs, refs) = parse_golden_csv(DEFAULT_GOLDEN_CSV).unwrap();
        assert_eq!(inputs.len(), 12);
        assert_eq!(refs.len(), 12);
        assert!(matches!(
            parse_golden_csv("input0_raw,input1_raw,reference\n"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(parse_golden_csv(""), Err(CliError::Usage(_))));
    }

    #[test]
    fn golden_parse_rejects_malformed_rows() {
        assert!(matches!(parse_golden_csv("1,2\n"), Err(CliError::Usage(_))));
        assert!(matches!(parse_golden_csv("1,2,x\n"), Err(CliError::Usage(_))));
    }

    #[test]
    fn sweep_values_are_inclusive_and_even() {
        assert_eq!(
            sweep_values(0.0, 10.0, 11),
            (0..=10).map(|i| i as f64).collect::<Vec<_>>()
        );
        assert_eq!(sweep_values(3.0, 9.0, 1), vec![3.0]);
        assert_eq!(sweep_values(1.0, 2.0, 2), vec![1.0, 2.0]);
    }

    #[test]
    fn sweep_param_names_round_trip() {
        for name in ["inclination_deg", "noise_sigma_mm", "fault_start_step", "seed"] {
            assert_eq!(SweepParam::parse(name).unwrap().name(), name);
        }
        assert!(matches!(SweepParam::parse("bogus"), Err(CliError::Usage(_))));
    }
}
