//! Closed-loop descent simulator: 3-DOF plant (heave, roll, pitch),
//! inclined-terrain model, corner sensor models with noise / dropout / jam,
//! fault plans, and landing outcome scoring.
//!
//! Conventions: world z up, body x forward, y left. Positive vehicle pitch
//! raises the nose, positive roll raises the left side; terrain angles use
//! the same form, so corner ground clearance is
//! `(altitude - elevation) + (pitch - pitch_t) * x + (roll - roll_t) * y`
//! at small angles. Touchdown is the first step where the lowest corner
//! clearance reaches zero.
//!
//! Runs are deterministic: all randomness comes from per-channel generators
//! derived from the configured seed, so identical configs produce bitwise
//! identical traces.

use crate::core::{
    Algas2Core, CoreCommand, CoreError, Corner, FusionParams, Geometry, HoaSample, IicuEstimate,
    SiuOutput, CORNERS,
};
use crate::fls::FlsEngineConfig;
use crate::interconnect::{ActiveHub, NiMessage, TickRecord, NUM_CORES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Plant truth state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleState {
    /// CG height above the terrain reference elevation, meters.
    pub altitude_m: f64,
    /// Vertical speed, m/s, positive up.
    pub v_z_mps: f64,
    pub roll_rad: f64,
    pub pitch_rad: f64,
    pub roll_rate_rps: f64,
    pub pitch_rate_rps: f64,
}

impl VehicleState {
    pub fn at_rest(altitude_m: f64) -> Self {
        Self {
            altitude_m,
            v_z_mps: 0.0,
            roll_rad: 0.0,
            pitch_rad: 0.0,
            roll_rate_rps: 0.0,
            pitch_rate_rps: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            self.altitude_m,
            self.v_z_mps,
            self.roll_rad,
            self.pitch_rad,
            self.roll_rate_rps,
            self.pitch_rate_rps,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Inclined landing-surface plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TerrainModel {
    pub roll_rad: f64,
    pub pitch_rad: f64,
    pub elevation_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorKind {
    Lidar,
    Radar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaultMode {
    FailStop,
    Garbage,
}

/// Interval during which one corner sensor is jammed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JamWindow {
    pub corner: u8,
    pub sensor: SensorKind,
    pub start_step: u64,
    pub end_step: u64,
    pub mode: JamModel,
}

/// What a jammed sensor reads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JamModel {
    /// Uniform garbage over the whole range.
    Garbage,
    /// True reading plus a constant offset in mm.
    Bias(i64),
}

/// Per-sensor noise, dropout and jam description.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SensorModel {
    pub lidar_sigma_mm: f64,
    pub radar_sigma_mm: f64,
    pub dropout_prob: f64,
    #[serde(default)]
    pub jam: Vec<JamWindow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FaultTarget {
    Core { index: u8 },
    Sensor { corner: u8, sensor: SensorKind },
    Hub,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultEntry {
    #[serde(flatten)]
    pub target: FaultTarget,
    pub start_step: u64,
    pub end_step: u64,
    pub mode: FaultMode,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaultPlan {
    pub entries: Vec<FaultEntry>,
}

/// Faults in effect at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ActiveFaults {
    pub core_fail: [bool; NUM_CORES],
    pub core_garbage: [bool; NUM_CORES],
    pub sensor_fail: [[bool; 2]; NUM_CORES],
    pub sensor_garbage: [[bool; 2]; NUM_CORES],
    pub hub_fail: bool,
    pub hub_garbage: bool,
}

impl ActiveFaults {
    pub fn any(&self) -> bool {
        self.hub_fail
            || self.hub_garbage
            || self.core_fail.iter().chain(self.core_garbage.iter()).any(|&b| b)
            || self
                .sensor_fail
                .iter()
                .chain(self.sensor_garbage.iter())
                .flatten()
                .any(|&b| b)
    }
}

/// Resolve the fault plan at one step.
pub fn apply_faults(plan: &FaultPlan, step: u64) -> ActiveFaults {
    let mut active = ActiveFaults::default();
    for entry in &plan.entries {
        if step < entry.start_step || step > entry.end_step {
            continue;
        }
        let stop = entry.mode == FaultMode::FailStop;
        match entry.target {
            FaultTarget::Core { index } => {
                let slot = index as usize % NUM_CORES;
                if stop {
                    active.core_fail[slot] = true;
                } else {
                    active.core_garbage[slot] = true;
                }
            }
            FaultTarget::Sensor { corner, sensor } => {
                let c = corner as usize % NUM_CORES;
                let s = sensor as usize;
                if stop {
                    active.sensor_fail[c][s] = true;
                } else {
                    active.sensor_garbage[c][s] = true;
                }
            }
            FaultTarget::Hub => {
                if stop {
                    active.hub_fail = true;
                } else {
                    active.hub_garbage = true;
                }
            }
        }
    }
    active
}

/// Plant tuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsParams {
    pub gravity_mps2: f64,
    /// Upward acceleration margin at full braking (code 0); thrust at code 0
    /// is gravity plus this.
    pub brake_accel_mps2: f64,
    /// Largest representable descent code (full scale of the engine output).
    pub code_max: f64,
    /// Commanded attitude rate per trim unit, rad/s.
    pub attitude_rate_gain: f64,
    /// First-order lag of the attitude rate response, seconds.
    pub attitude_time_const_s: f64,
    pub max_attitude_rate_rps: f64,
}

impl Default for DynamicsParams {
    fn default() -> Self {
        Self {
            gravity_mps2: 9.81,
            brake_accel_mps2: 19.62,
            code_max: 255.0,
            attitude_rate_gain: 0.003,
            attitude_time_const_s: 0.15,
            max_attitude_rate_rps: 1.0,
        }
    }
}

impl DynamicsParams {
    pub fn max_thrust_accel(&self) -> f64 {
        self.gravity_mps2 + self.brake_accel_mps2
    }

    /// Thrust acceleration for a mean descent code: affine from full braking
    /// at code 0 down to zero thrust at full scale.
    pub fn thrust_accel(&self, mean_code: f64) -> f64 {
        (self.max_thrust_accel() * (1.0 - mean_code / self.code_max))
            .clamp(0.0, self.max_thrust_accel())
    }

    /// The code at which thrust exactly cancels gravity.
    pub fn hover_code(&self) -> f64 {
        self.code_max * self.brake_accel_mps2 / self.max_thrust_accel()
    }
}

/// One explicit-Euler step of the 3-DOF plant.
///
/// Collective thrust follows the mean descent code; roll and pitch rates are
/// driven first order by the differential trim sums. Positive trim pulls its
/// corner toward the terrain, so the rate commands carry a minus sign.
pub fn step_dynamics(
    state: &VehicleState,
    commands: &[CoreCommand; NUM_CORES],
    params: &DynamicsParams,
    dt_s: f64,
) -> VehicleState {
    let mean_code =
        commands.iter().map(|c| c.descent_code as f64).sum::<f64>() / NUM_CORES as f64;
    let thrust = params.thrust_accel(mean_code);

    let trim = |c: Corner| commands[c.id() as usize].thrust_trim as f64;
    let roll_sum = (trim(Corner::FrontLeft) + trim(Corner::RearLeft)
        - trim(Corner::FrontRight)
        - trim(Corner::RearRight))
        / 4.0;
    let pitch_sum = (trim(Corner::FrontLeft) + trim(Corner::FrontRight)
        - trim(Corner::RearLeft)
        - trim(Corner::RearRight))
        / 4.0;
    let clamp_rate = |r: f64| r.clamp(-params.max_attitude_rate_rps, params.max_attitude_rate_rps);
    let roll_rate_cmd = clamp_rate(-params.attitude_rate_gain * roll_sum);
    let pitch_rate_cmd = clamp_rate(-params.attitude_rate_gain * pitch_sum);
    let lag = dt_s / params.attitude_time_const_s;

    VehicleState {
        altitude_m: state.altitude_m + state.v_z_mps * dt_s,
        v_z_mps: state.v_z_mps + (thrust - params.gravity_mps2) * dt_s,
        roll_rad: state.roll_rad + state.roll_rate_rps * dt_s,
        pitch_rad: state.pitch_rad + state.pitch_rate_rps * dt_s,
        roll_rate_rps: state.roll_rate_rps + (roll_rate_cmd - state.roll_rate_rps) * lag,
        pitch_rate_rps: state.pitch_rate_rps + (pitch_rate_cmd - state.pitch_rate_rps) * lag,
    }
}

/// Ground clearance of each corner, meters, small-angle.
pub fn corner_clearances(
    state: &VehicleState,
    terrain: &TerrainModel,
    geometry: &Geometry,
) -> [f64; NUM_CORES] {
    let mut out = [0.0; NUM_CORES];
    let pitch_rel = state.pitch_rad - terrain.pitch_rad;
    let roll_rel = state.roll_rad - terrain.roll_rad;
    for corner in CORNERS {
        let (x, y) = corner.offset_m(geometry);
        out[corner.id() as usize] =
            (state.altitude_m - terrain.elevation_m) + pitch_rel * x + roll_rel * y;
    }
    out
}

/// Relative tilt between vehicle and terrain planes, radians.
pub fn inclination_error_rad(state: &VehicleState, terrain: &TerrainModel) -> f64 {
    let pitch_rel = state.pitch_rad - terrain.pitch_rad;
    let roll_rel = state.roll_rad - terrain.roll_rad;
    (pitch_rel * pitch_rel + roll_rel * roll_rel).sqrt()
}

/// Scenario-level knobs: timing, initial condition and scoring thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub dt_s: f64,
    pub initial_altitude_m: f64,
    pub initial_vz_mps: f64,
    pub max_steps: u64,
    pub hub_ticks_per_step: u32,
    pub v_touchdown_max_mps: f64,
    pub incl_error_max_deg: f64,
    pub v_touchdown_degraded_mps: f64,
    pub incl_error_degraded_deg: f64,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            dt_s: 0.001,
            initial_altitude_m: 10.0,
            initial_vz_mps: 0.0,
            max_steps: 60_000,
            hub_ticks_per_step: 4,
            v_touchdown_max_mps: 0.5,
            incl_error_max_deg: 3.0,
            v_touchdown_degraded_mps: 1.0,
            incl_error_degraded_deg: 5.0,
        }
    }
}

/// End-of-run outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandingReport {
    pub touchdown: bool,
    pub touchdown_speed_mps: f64,
    pub touchdown_inclination_error_rad: f64,
    pub steps_elapsed: u64,
    /// Touchdown within the nominal speed and inclination thresholds.
    pub success: bool,
    /// A fault, jam or blackout was active at some executed step.
    pub degraded: bool,
}

impl LandingReport {
    pub fn csv_header() -> &'static str {
        "touchdown,touchdown_speed_mps,touchdown_inclination_error_rad,steps_elapsed,success,degraded"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.touchdown,
            self.touchdown_speed_mps,
            self.touchdown_inclination_error_rad,
            self.steps_elapsed,
            self.success,
            self.degraded
        )
    }

    pub fn summary(&self) -> String {
        format!(
            "touchdown            : {}\n\
             touchdown speed      : {:.3} m/s\n\
             inclination error    : {:.2} deg\n\
             steps elapsed        : {}\n\
             success (nominal)    : {}\n\
             degraded operation   : {}",
            self.touchdown,
            self.touchdown_speed_mps,
            self.touchdown_inclination_error_rad.to_degrees(),
            self.steps_elapsed,
            self.success,
            self.degraded
        )
    }
}

/// Everything a landing run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub engine: FlsEngineConfig,
    pub fusion: FusionParams,
    pub geometry: Geometry,
    pub dynamics: DynamicsParams,
    pub terrain: TerrainModel,
    pub sensors: SensorModel,
    pub faults: FaultPlan,
    pub sim: SimParams,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn default_with_engine(engine: FlsEngineConfig) -> Self {
        Self {
            engine,
            fusion: FusionParams::default(),
            geometry: Geometry::default(),
            dynamics: DynamicsParams::default(),
            terrain: TerrainModel::default(),
            sensors: SensorModel::default(),
            faults: FaultPlan::default(),
            sim: SimParams::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum SimAbort {
    #[error("core setup failed: {0}")]
    Setup(#[from] CoreError),
    #[error("non-finite vehicle state at step {step}")]
    NonFinite { step: u64 },
}

/// One row of the per-step vehicle trace.
#[derive(Debug, Clone, PartialEq)]
pub struct StepTrace {
    pub step: u64,
    pub time_s: f64,
    pub state: VehicleState,
    pub mean_code: f64,
    pub codes: [u8; NUM_CORES],
    pub trims: [i32; NUM_CORES],
}

/// One row of the per-core trace; sensor-side fields are absent on blackout.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreTraceRow {
    pub step: u64,
    pub core: u8,
    pub lidar_mm: u32,
    pub radar_mm: u32,
    pub siu: Option<SiuOutput>,
    pub estimate: IicuEstimate,
    pub command: CoreCommand,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunTrace {
    pub steps: Vec<StepTrace>,
    pub cores: Vec<CoreTraceRow>,
    pub hub: Vec<TickRecord>,
}

const JAM_GARBAGE_MAX_MM: u32 = 20_470;
const SENSOR_MAX_MM: f64 = 60_000.0;

/// Per-sensor random streams; jamming one channel never shifts the draws of
/// any other.
pub struct SensorChannels {
    rngs: [[ChaCha8Rng; 2]; NUM_CORES],
    lidar_noise: Option<Normal<f64>>,
    radar_noise: Option<Normal<f64>>,
}

impl SensorChannels {
    pub fn new(seed: u64, model: &SensorModel) -> Self {
        let rngs = std::array::from_fn(|corner| {
            std::array::from_fn(|sensor| {
                ChaCha8Rng::seed_from_u64(derive_seed(seed, (corner * 2 + sensor) as u64))
            })
        });
        let noise = |sigma: f64| (sigma > 0.0).then(|| Normal::new(0.0, sigma).unwrap());
        Self {
            rngs,
            lidar_noise: noise(model.lidar_sigma_mm),
            radar_noise: noise(model.radar_sigma_mm),
        }
    }
}

/// Independent generator per purpose, so perturbing one channel never shifts
/// the draws of another.
fn derive_seed(seed: u64, channel: u64) -> u64 {
    seed ^ channel.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Sample all four sensor pods against the terrain plane, then apply noise,
/// jam windows, fault-plan effects and dropout per sensor.
pub fn sample_sensors(
    state: &VehicleState,
    terrain: &TerrainModel,
    model: &SensorModel,
    geometry: &Geometry,
    channels: &mut SensorChannels,
    active: &ActiveFaults,
    step: u64,
) -> [HoaSample; NUM_CORES] {
    let clearances = corner_clearances(state, terrain, geometry);
    std::array::from_fn(|corner| {
        let true_mm = (clearances[corner].max(0.0) * 1000.0).round();
        let mut readings = [0u32; 2];
        let mut valid = [true; 2];
        for (s, kind) in [(0usize, SensorKind::Lidar), (1, SensorKind::Radar)] {
            let rng = &mut channels.rngs[corner][s];
            let noise = match kind {
                SensorKind::Lidar => &channels.lidar_noise,
                SensorKind::Radar => &channels.radar_noise,
            };
            let mut reading = true_mm;
            if let Some(n) = noise {
                reading += n.sample(rng);
            }
            for jam in &model.jam {
                if jam.corner as usize == corner
                    && jam.sensor == kind
                    && (jam.start_step..=jam.end_step).contains(&step)
                {
                    match jam.mode {
                        JamModel::Garbage => {
                            reading = rng.random_range(0..=JAM_GARBAGE_MAX_MM) as f64;
                        }
                        JamModel::Bias(mm) => reading += mm as f64,
                    }
                }
            }
            if active.sensor_garbage[corner][s] {
                reading = rng.random_range(0..=JAM_GARBAGE_MAX_MM) as f64;
            }
            if active.sensor_fail[corner][s] {
                valid[s] = false;
            }
            if model.dropout_prob > 0.0 && rng.random::<f64>() < model.dropout_prob {
                valid[s] = false;
            }
            readings[s] = reading.clamp(0.0, SENSOR_MAX_MM) as u32;
        }
        HoaSample {
            lidar_mm: readings[0],
            radar_mm: readings[1],
            step,
            lidar_valid: valid[0],
            radar_valid: valid[1],
        }
    })
}

/// Run a full closed-loop landing.
///
/// Per control step: sample sensors, exchange the previous step's distance
/// broadcasts through the hub, step all four cores, then integrate the
/// plant. Ends at touchdown (lowest corner at the ground) or the step limit.
pub fn run_landing(config: &ScenarioConfig) -> Result<(LandingReport, RunTrace), SimAbort> {
    let mut cores: Vec<Algas2Core> = CORNERS
        .iter()
        .map(|&c| Algas2Core::new(c, &config.engine, config.fusion, config.geometry))
        .collect::<Result<_, _>>()?;

    let mut hub = ActiveHub::new();
    let mut channels = SensorChannels::new(config.seed, &config.sensors);
    let mut fault_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, 100));
    let mut hub_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, 101));

    let hover = config.dynamics.hover_code().round() as u8;
    // Actuator channels idle at hover trim until their core commands.
    let mut last_cmd: [CoreCommand; NUM_CORES] = std::array::from_fn(|i| CoreCommand {
        descent_code: hover,
        thrust_trim: 0,
        source_core: i as u8,
        step: 0,
        degraded: false,
    });
    let mut pending: [Option<NiMessage>; NUM_CORES] = [None; NUM_CORES];

    let mut state = VehicleState::at_rest(config.sim.initial_altitude_m);
    state.v_z_mps = config.sim.initial_vz_mps;

    let mut trace = RunTrace::default();
    let mut degraded = false;
    let code_cap = config.engine.widths.output.raw_max();

    let mut step = 0u64;
    let (touchdown, steps_elapsed) = loop {
        if !state.is_finite() {
            return Err(SimAbort::NonFinite { step });
        }
        let clearances = corner_clearances(&state, &config.terrain, &config.geometry);
        if clearances.iter().cloned().fold(f64::INFINITY, f64::min) <= 0.0 {
            break (true, step);
        }
        if step >= config.sim.max_steps {
            break (false, step);
        }

        let active = apply_faults(&config.faults, step);
        degraded |= active.any();
        degraded |= config
            .sensors
            .jam
            .iter()
            .any(|j| (j.start_step..=j.end_step).contains(&step));

        let samples = sample_sensors(
            &state,
            &config.terrain,
            &config.sensors,
            &config.geometry,
            &mut channels,
            &active,
            step,
        );

        // Hub exchange: post last step's broadcasts, then run the rotation.
        if !active.hub_fail {
            for msg in pending.iter_mut() {
                if let Some(mut m) = msg.take() {
                    if active.hub_garbage {
                        m.fused_distance_raw = hub_rng.random_range(0..=2047);
                    }
                    hub.ni_post(m);
                }
            }
            for _ in 0..config.sim.hub_ticks_per_step {
                trace.hub.push(hub.hub_tick());
            }
        }

        for (i, core) in cores.iter_mut().enumerate() {
            if active.core_fail[i] {
                continue;
            }
            if active.core_garbage[i] {
                last_cmd[i] = CoreCommand {
                    descent_code: fault_rng.random_range(0..=code_cap) as u8,
                    thrust_trim: 0,
                    source_core: i as u8,
                    step,
                    degraded: true,
                };
                continue;
            }
            let inbox = hub.ni_collect(i as u8);
            let out = core.step(&samples[i], &inbox, step);
            degraded |= out.siu.is_none();
            last_cmd[i] = out.command;
            pending[i] = out.message;
            trace.cores.push(CoreTraceRow {
                step,
                core: i as u8,
                lidar_mm: samples[i].lidar_mm,
                radar_mm: samples[i].radar_mm,
                siu: out.siu,
                estimate: out.estimate,
                command: out.command,
            });
        }

        let mean_code =
            last_cmd.iter().map(|c| c.descent_code as f64).sum::<f64>() / NUM_CORES as f64;
        trace.steps.push(StepTrace {
            step,
            time_s: step as f64 * config.sim.dt_s,
            state,
            mean_code,
            codes: std::array::from_fn(|i| last_cmd[i].descent_code),
            trims: std::array::from_fn(|i| last_cmd[i].thrust_trim),
        });

        state = step_dynamics(&state, &last_cmd, &config.dynamics, config.sim.dt_s);
        step += 1;
    };

    let speed = state.v_z_mps.abs();
    let incl = inclination_error_rad(&state, &config.terrain);
    let report = LandingReport {
        touchdown,
        touchdown_speed_mps: speed,
        touchdown_inclination_error_rad: incl,
        steps_elapsed,
        success: touchdown
            && speed <= config.sim.v_touchdown_max_mps
            && incl <= config.sim.incl_error_max_deg.to_radians(),
        degraded,
    };
    Ok((report, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_config() -> ScenarioConfig {
        ScenarioConfig::default_with_engine(FlsEngineConfig::default_landing())
    }

    fn cmd(code: u8, trim: i32, id: u8) -> CoreCommand {
        CoreCommand {
            descent_code: code,
            thrust_trim: trim,
            source_core: id,
            step: 0,
            degraded: false,
        }
    }

    #[test]
    fn hover_code_is_an_equilibrium() {
        let params = DynamicsParams::default();
        assert_eq!(params.hover_code(), 170.0);
        let state = VehicleState::at_rest(5.0);
        let commands = std::array::from_fn(|i| cmd(170, 0, i as u8));
        let next = step_dynamics(&state, &commands, &params, 0.001);
        assert!((next.v_z_mps).abs() < 1e-12);
    }

    #[test]
    fn full_descent_code_free_falls() {
        let params = DynamicsParams::default();
        let state = VehicleState::at_rest(5.0);
        let commands = std::array::from_fn(|i| cmd(255, 0, i as u8));
        let next = step_dynamics(&state, &commands, &params, 0.001);
        assert!((next.v_z_mps - (-params.gravity_mps2 * 0.001)).abs() < 1e-12);
    }

    #[test]
    fn full_brake_code_accelerates_up() {
        let params = DynamicsParams::default();
        let state = VehicleState::at_rest(5.0);
        let commands = std::array::from_fn(|i| cmd(0, 0, i as u8));
        let next = step_dynamics(&state, &commands, &params, 0.001);
        assert!((next.v_z_mps - params.brake_accel_mps2 * 0.001).abs() < 1e-12);
    }

    #[test]
    fn diagonally_symmetric_trims_cancel() {
        let params = DynamicsParams::default();
        let state = VehicleState::at_rest(5.0);
        // FL and RR push down, FR and RL push up: both differential sums are
        // zero, so no attitude rate develops.
        let commands = [cmd(170, 500, 0), cmd(170, -500, 1), cmd(170, -500, 2), cmd(170, 500, 3)];
        let next = step_dynamics(&state, &commands, &params, 0.001);
        assert_eq!(next.roll_rate_rps, 0.0);
        assert_eq!(next.pitch_rate_rps, 0.0);
    }

    #[test]
    fn trim_feedback_levels_the_vehicle() {
        // Positive roll estimate (left high) gives the left corners positive
        // trim; the commanded roll rate must be negative (left side down).
        let params = DynamicsParams::default();
        let state = VehicleState::at_rest(5.0);
        let commands = [cmd(170, 100, 0), cmd(170, -100, 1), cmd(170, 100, 2), cmd(170, -100, 3)];
        let next = step_dynamics(&state, &commands, &params, 0.001);
        assert!(next.roll_rate_rps < 0.0);
        assert_eq!(next.pitch_rate_rps, 0.0);
    }

    #[test]
    fn clearances_follow_relative_inclination() {
        let geometry = Geometry::default();
        let terrain = TerrainModel { roll_rad: 0.0, pitch_rad: 0.1, elevation_m: 0.0 };
        let state = VehicleState::at_rest(2.0);
        let c = corner_clearances(&state, &terrain, &geometry);
        // Terrain rises toward the nose: front corners are closer.
        assert!(c[Corner::FrontLeft.id() as usize] < c[Corner::RearLeft.id() as usize]);
        assert_eq!(c[0], c[1]);
        assert_eq!(c[2], c[3]);
    }

    #[test]
    fn nominal_flat_landing_succeeds() {
        let (report, trace) = run_landing(&default_config()).unwrap();
        assert!(report.touchdown, "must reach the ground: {report:?}");
        assert!(
            report.touchdown_speed_mps <= 0.5,
            "touchdown speed {} too high",
            report.touchdown_speed_mps
        );
        assert!(report.success, "{report:?}");
        assert!(!report.degraded);
        assert!(!trace.steps.is_empty());
    }

    #[test]
    fn zero_altitude_touches_down_immediately() {
        let mut config = default_config();
        config.sim.initial_altitude_m = 0.0;
        let (report, trace) = run_landing(&config).unwrap();
        assert!(report.touchdown);
        assert_eq!(report.steps_elapsed, 0);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn identical_seeds_give_bitwise_identical_runs() {
        let mut config = default_config();
        config.sensors.lidar_sigma_mm = 15.0;
        config.sensors.radar_sigma_mm = 25.0;
        config.sensors.dropout_prob = 0.001;
        config.seed = 1234;
        let (r1, t1) = run_landing(&config).unwrap();
        let (r2, t2) = run_landing(&config).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(t1, t2);
    }

    #[test]
    fn flat_zero_noise_keeps_cores_identical() {
        // Each core sees its own corner one step fresher than the others,
        // so trims need not be zero, but by symmetry all four must agree
        // and the vehicle must stay level.
        let (report, trace) = run_landing(&default_config()).unwrap();
        for row in &trace.steps {
            assert!(row.codes.windows(2).all(|w| w[0] == w[1]), "diverged at step {}", row.step);
            assert!(row.trims.windows(2).all(|w| w[0] == w[1]), "trims diverged at {}", row.step);
        }
        assert!(report.touchdown_inclination_error_rad < 1e-6);
    }

    #[test]
    fn vertical_speed_stays_inside_energy_bound() {
        let config = default_config();
        let (_, trace) = run_landing(&config).unwrap();
        let v0 = config.sim.initial_vz_mps.abs();
        let a = config.dynamics.max_thrust_accel();
        let g = config.dynamics.gravity_mps2;
        for row in &trace.steps {
            let bound = v0 + (g + a) * row.time_s + 1e-9;
            assert!(row.state.v_z_mps.abs() <= bound, "step {}", row.step);
        }
    }

    #[test]
    fn core_fail_stop_still_lands_within_degraded_limits() {
        let mut config = default_config();
        config.faults.entries.push(FaultEntry {
            target: FaultTarget::Core { index: 1 },
            start_step: 2000,
            end_step: u64::MAX,
            mode: FaultMode::FailStop,
        });
        let (report, _) = run_landing(&config).unwrap();
        assert!(report.touchdown);
        assert!(report.degraded);
        assert!(report.touchdown_speed_mps <= config.sim.v_touchdown_degraded_mps);
        assert!(
            report.touchdown_inclination_error_rad
                <= config.sim.incl_error_degraded_deg.to_radians()
        );
    }

    #[test]
    fn single_lidar_jam_barely_moves_touchdown_speed() {
        let clean = default_config();
        let (clean_report, _) = run_landing(&clean).unwrap();

        let mut jammed = clean.clone();
        jammed.sensors.jam.push(JamWindow {
            corner: 2,
            sensor: SensorKind::Lidar,
            start_step: 1500,
            end_step: 4500,
            mode: JamModel::Garbage,
        });
        let (jam_report, trace) = run_landing(&jammed).unwrap();
        assert!(jam_report.touchdown);
        assert!(jam_report.degraded);
        let margin = jammed.sim.v_touchdown_degraded_mps - jammed.sim.v_touchdown_max_mps;
        assert!(
            (jam_report.touchdown_speed_mps - clean_report.touchdown_speed_mps).abs() < margin,
            "jam moved touchdown speed from {} to {}",
            clean_report.touchdown_speed_mps,
            jam_report.touchdown_speed_mps
        );
        // The affected SIU must call out the lidar during the window.
        let suspect = trace.cores.iter().any(|row| {
            row.core == 2
                && (1500..=4500).contains(&row.step)
                && row.siu.map(|s| s.health) == Some(crate::core::SiuHealth::LidarSuspect)
        });
        assert!(suspect, "no LIDAR_SUSPECT reported during the jam window");
    }

    #[test]
    fn non_finite_initial_state_aborts_with_diagnostic() {
        let mut config = default_config();
        config.sim.initial_altitude_m = f64::NAN;
        match run_landing(&config) {
            Err(SimAbort::NonFinite { step: 0 }) => {}
            other => panic!("expected non-finite abort, got {other:?}"),
        }
    }
}
