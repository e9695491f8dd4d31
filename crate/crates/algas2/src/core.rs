//! One decision core: dual-sensor fusion, the local fuzzy engine and the
//! inclination trim estimator, composed into an independent per-step
//! decision.
//!
//! A core's step is a function of its own sensor sample, its mailbox of
//! neighbor distances and its own state; nothing is shared between cores,
//! so the four of them can run in any order (or in parallel) with identical
//! results.

use crate::fls::{ConfigError, FlsEngineConfig, QuantizedEngine};
use crate::fxp::{div_round, quantize, QFormat};
use crate::interconnect::{NiMessage, NUM_CORES};
use std::collections::VecDeque;
use thiserror::Error;

/// Corner positions, doubling as core ids 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    FrontLeft = 0,
    FrontRight = 1,
    RearLeft = 2,
    RearRight = 3,
}

pub const CORNERS: [Corner; NUM_CORES] =
    [Corner::FrontLeft, Corner::FrontRight, Corner::RearLeft, Corner::RearRight];

impl Corner {
    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Corner {
        CORNERS[id as usize]
    }

    /// Body-frame offset in meters: x forward, y left.
    pub fn offset_m(self, geometry: &Geometry) -> (f64, f64) {
        let (sx, sy) = match self {
            Corner::FrontLeft => (1.0, 1.0),
            Corner::FrontRight => (1.0, -1.0),
            Corner::RearLeft => (-1.0, 1.0),
            Corner::RearRight => (-1.0, -1.0),
        };
        (sx * geometry.half_span_x_m, sy * geometry.half_span_y_m)
    }

    /// Trim sign pattern (roll, pitch): positive trim means "descend harder
    /// at this corner", so a corner that sits too high gets pulled toward
    /// the terrain.
    pub fn trim_signs(self) -> (i32, i32) {
        match self {
            Corner::FrontLeft => (1, 1),
            Corner::FrontRight => (-1, 1),
            Corner::RearLeft => (1, -1),
            Corner::RearRight => (-1, -1),
        }
    }
}

/// Sensor-pod footprint: corner half-spans from the center of gravity.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Geometry {
    pub half_span_x_m: f64,
    pub half_span_y_m: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Self { half_span_x_m: 0.5, half_span_y_m: 0.5 }
    }
}

/// One raw reading pair from a corner sensor pod.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HoaSample {
    pub lidar_mm: u32,
    pub radar_mm: u32,
    pub step: u64,
    pub lidar_valid: bool,
    pub radar_valid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiuHealth {
    Nominal,
    LidarSuspect,
    RadarSuspect,
    Degraded,
}

impl SiuHealth {
    pub fn label(self) -> &'static str {
        match self {
            SiuHealth::Nominal => "NOMINAL",
            SiuHealth::LidarSuspect => "LIDAR_SUSPECT",
            SiuHealth::RadarSuspect => "RADAR_SUSPECT",
            SiuHealth::Degraded => "DEGRADED",
        }
    }
}

/// Fused sensor information handed to the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiuOutput {
    /// Fused distance to ground, cm, 11-bit unsigned.
    pub fused_distance_raw: i64,
    /// Closure rate, cm/s, 10-bit two's complement; positive while the gap
    /// shrinks.
    pub closure_rate_raw: i64,
    pub health: SiuHealth,
}

/// Fusion result plus the millimeter-precision value kept for rate
/// derivation and the inclination estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiuFusion {
    pub output: SiuOutput,
    pub fused_mm: i64,
}

/// Both sensors of a pod invalid in the same step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("sensor blackout: no valid reading from either sensor")]
pub struct SensorBlackout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IicuConfidence {
    /// All four corner distances were available.
    Full,
    /// Exactly three; the plane through them is still unique.
    Partial,
    /// Fewer than three; the previous estimate is carried.
    #[default]
    None,
}

impl IicuConfidence {
    pub fn label(self) -> &'static str {
        match self {
            IicuConfidence::Full => "FULL",
            IicuConfidence::Partial => "PARTIAL",
            IicuConfidence::None => "NONE",
        }
    }
}

/// Landing-surface inclination relative to the vehicle, in milliradians.
/// Positive roll: left corners farther from the ground; positive pitch:
/// front corners farther.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IicuEstimate {
    pub roll_mrad: i32,
    pub pitch_mrad: i32,
    pub confidence: IicuConfidence,
}

impl IicuEstimate {
    pub const fn zero() -> Self {
        Self { roll_mrad: 0, pitch_mrad: 0, confidence: IicuConfidence::None }
    }
}

/// One core's decision output for a control step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreCommand {
    /// Engine output code: 0 commands maximum braking thrust, full scale the
    /// fastest allowed descent.
    pub descent_code: u8,
    /// Differential correction, positive pulls this corner toward terrain.
    pub thrust_trim: i32,
    pub source_core: u8,
    pub step: u64,
    /// Set when this is a held command emitted through a sensor blackout.
    pub degraded: bool,
}

/// Fusion and trim tuning knobs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FusionParams {
    /// Lidar/radar agreement threshold in mm.
    pub agreement_mm: i64,
    /// Control-step period in seconds.
    pub step_dt_s: f64,
    /// Steps spanned by the closure-rate backward difference. One step of a
    /// 1 cm-grade sensor at 1 kHz is pure quantization noise, so the
    /// difference is taken across this window instead.
    pub rate_window_steps: usize,
    /// Samples averaged at each end of the window before differencing;
    /// knocks sensor noise out of the rate estimate.
    pub rate_smooth_samples: usize,
    /// Mailbox entries older than this many steps are ignored by the
    /// inclination estimator.
    pub neighbor_staleness_max_steps: u64,
    /// Trim units per milliradian of estimated inclination.
    pub trim_gain: f64,
}

impl Default for FusionParams {
    fn default() -> Self {
        Self {
            agreement_mm: 200,
            step_dt_s: 0.001,
            rate_window_steps: 80,
            rate_smooth_samples: 16,
            neighbor_staleness_max_steps: 3,
            trim_gain: 1.0,
        }
    }
}

const DISTANCE_FORMAT: QFormat = QFormat::unsigned(11, 0);
const RATE_FORMAT: QFormat = QFormat::signed(10, 0);

/// Rolling per-core state between steps.
#[derive(Debug, Clone, Default)]
pub struct CoreState {
    /// Fused distances (mm) of recent steps, oldest first; bounded by the
    /// rate window.
    fused_history_mm: VecDeque<i64>,
    /// Last non-empty engine output, the defuzzifier hold value.
    hold_output_raw: i64,
    last_command: Option<CoreCommand>,
    prev_estimate: IicuEstimate,
    /// Latest distance heard from each core, with its step stamp.
    neighbors: [Option<(u16, u64)>; NUM_CORES],
}

impl CoreState {
    pub fn new() -> Self {
        Self { prev_estimate: IicuEstimate::zero(), ..Default::default() }
    }

    /// Extrapolate the next distance from history: last value plus the
    /// recent slope over one step.
    fn predicted_mm(&self, dt_s: f64) -> Option<f64> {
        let last = *self.fused_history_mm.back()? as f64;
        if self.fused_history_mm.len() < 2 {
            return Some(last);
        }
        let first = *self.fused_history_mm.front()? as f64;
        let span = (self.fused_history_mm.len() - 1) as f64 * dt_s;
        Some(last + (last - first) / span * dt_s)
    }

    fn push_fused(&mut self, fused_mm: i64, window: usize) {
        self.fused_history_mm.push_back(fused_mm);
        while self.fused_history_mm.len() > window {
            self.fused_history_mm.pop_front();
        }
    }
}

/// Fuse one lidar/radar pair into a distance and health status.
///
/// Agreeing sensors are averaged. Disagreeing sensors are arbitrated by the
/// prediction from recent history: the reading closer to it wins and the
/// other sensor is flagged suspect, which is what shrugs off a jammed
/// sensor. With no history yet the mean is used and health is degraded.
pub fn siu_fuse(
    sample: &HoaSample,
    state: &CoreState,
    params: &FusionParams,
) -> Result<SiuFusion, SensorBlackout> {
    let (fused_mm, health) = match (sample.lidar_valid, sample.radar_valid) {
        (false, false) => return Err(SensorBlackout),
        (true, false) => (sample.lidar_mm as i64, SiuHealth::Degraded),
        (false, true) => (sample.radar_mm as i64, SiuHealth::Degraded),
        (true, true) => {
            let lidar = sample.lidar_mm as i64;
            let radar = sample.radar_mm as i64;
            if (lidar - radar).abs() <= params.agreement_mm {
                (div_round(lidar + radar, 2).unwrap(), SiuHealth::Nominal)
            } else {
                match state.predicted_mm(params.step_dt_s) {
                    Some(prediction) => {
                        let lidar_err = (lidar as f64 - prediction).abs();
                        let radar_err = (radar as f64 - prediction).abs();
                        if lidar_err <= radar_err {
                            (lidar, SiuHealth::RadarSuspect)
                        } else {
                            (radar, SiuHealth::LidarSuspect)
                        }
                    }
                    None => (div_round(lidar + radar, 2).unwrap(), SiuHealth::Degraded),
                }
            }
        }
    };
    let fused_cm = div_round(fused_mm, 10).unwrap();
    let fused_distance_raw = DISTANCE_FORMAT.clamp_raw(fused_cm);
    let closure_rate_raw = closure_rate_from_history(fused_mm, state, params);
    Ok(SiuFusion {
        output: SiuOutput { fused_distance_raw, closure_rate_raw, health },
        fused_mm,
    })
}

/// Difference of the window's end-block means: the newest block includes the
/// current sample, the span runs center to center.
fn closure_rate_from_history(fused_mm: i64, state: &CoreState, params: &FusionParams) -> i64 {
    let history = &state.fused_history_mm;
    let k = params.rate_smooth_samples.max(1);
    if history.len() < k.max(2) {
        return 0;
    }
    let old_mean = history.iter().take(k).sum::<i64>() as f64 / k as f64;
    let new_sum = history.iter().rev().take(k - 1).sum::<i64>() + fused_mm;
    let new_mean = new_sum as f64 / k as f64;
    let span_steps = (history.len() + 1 - k) as f64;
    derive_closure_rate(new_mean, old_mean, span_steps * params.step_dt_s)
}

/// Backward-difference closure rate, saturated to the 10-bit rate bus.
/// Positive while the distance shrinks.
pub fn derive_closure_rate(current_mm: f64, previous_mm: f64, dt_s: f64) -> i64 {
    let rate_cm_per_s = (previous_mm - current_mm) / dt_s / 10.0;
    quantize(rate_cm_per_s, RATE_FORMAT).raw()
}

/// Fit the landing-surface plane through the available corner distances.
///
/// Distances follow `d = d_center + pitch * x + roll * y` in body frame, so
/// with all four corners the symmetric front/rear and left/right means give
/// the slopes directly; with three the unique plane through them is solved;
/// with fewer the previous estimate is returned with no confidence.
pub fn iicu_update(
    corner_distances_m: &[Option<f64>; NUM_CORES],
    geometry: &Geometry,
    previous: &IicuEstimate,
) -> IicuEstimate {
    assert!(geometry.half_span_x_m > 0.0 && geometry.half_span_y_m > 0.0);
    let present: Vec<(Corner, f64)> = CORNERS
        .iter()
        .filter_map(|&c| corner_distances_m[c.id() as usize].map(|d| (c, d)))
        .collect();
    let to_mrad = |angle_rad: f64| (angle_rad * 1000.0).round() as i32;
    match present.len() {
        4 => {
            let d = |c: Corner| corner_distances_m[c.id() as usize].unwrap();
            let front = (d(Corner::FrontLeft) + d(Corner::FrontRight)) / 2.0;
            let rear = (d(Corner::RearLeft) + d(Corner::RearRight)) / 2.0;
            let left = (d(Corner::FrontLeft) + d(Corner::RearLeft)) / 2.0;
            let right = (d(Corner::FrontRight) + d(Corner::RearRight)) / 2.0;
            IicuEstimate {
                pitch_mrad: to_mrad(((front - rear) / (2.0 * geometry.half_span_x_m)).atan()),
                roll_mrad: to_mrad(((left - right) / (2.0 * geometry.half_span_y_m)).atan()),
                confidence: IicuConfidence::Full,
            }
        }
        3 => {
            // Solve [x y 1][pitch roll d0]' = d by Cramer's rule; any three
            // distinct corners are non-collinear.
            let rows: Vec<(f64, f64, f64)> = present
                .iter()
                .map(|&(c, d)| {
                    let (x, y) = c.offset_m(geometry);
                    (x, y, d)
                })
                .collect();
            let det3 = |col: [f64; 3], mid: [f64; 3], last: [f64; 3]| {
                col[0] * (mid[1] * last[2] - mid[2] * last[1])
                    - mid[0] * (col[1] * last[2] - col[2] * last[1])
                    + last[0] * (col[1] * mid[2] - col[2] * mid[1])
            };
            let xs = [rows[0].0, rows[1].0, rows[2].0];
            let ys = [rows[0].1, rows[1].1, rows[2].1];
            let ds = [rows[0].2, rows[1].2, rows[2].2];
            let ones = [1.0, 1.0, 1.0];
            let det = det3(xs, ys, ones);
            debug_assert!(det.abs() > 1e-9);
            let pitch_slope = det3(ds, ys, ones) / det;
            let roll_slope = det3(xs, ds, ones) / det;
            IicuEstimate {
                pitch_mrad: to_mrad(pitch_slope.atan()),
                roll_mrad: to_mrad(roll_slope.atan()),
                confidence: IicuConfidence::Partial,
            }
        }
        _ => IicuEstimate { confidence: IicuConfidence::None, ..*previous },
    }
}

#[derive(Debug, Error)]
pub enum CoreError {
    #[error(transparent)]
    Engine(#[from] ConfigError),
    #[error("descent command needs an unsigned output of at most 8 bits")]
    OutputFormat,
}

/// Everything one core produced in a step.
#[derive(Debug, Clone)]
pub struct CoreStepOutput {
    pub command: CoreCommand,
    /// Distance broadcast for the next hub exchange; absent on blackout.
    pub message: Option<NiMessage>,
    /// Fused sensor view; absent on blackout.
    pub siu: Option<SiuOutput>,
    pub estimate: IicuEstimate,
}

/// A complete decision core: fusion front end, fuzzy engine, inclination
/// estimator and the rolling state tying them together.
#[derive(Debug, Clone)]
pub struct Algas2Core {
    corner: Corner,
    engine: QuantizedEngine,
    params: FusionParams,
    geometry: Geometry,
    state: CoreState,
}

impl Algas2Core {
    pub fn new(
        corner: Corner,
        engine_config: &FlsEngineConfig,
        params: FusionParams,
        geometry: Geometry,
    ) -> Result<Self, CoreError> {
        let out = engine_config.widths.output;
        if out.signed || out.total_bits > 8 {
            return Err(CoreError::OutputFormat);
        }
        let engine = QuantizedEngine::new(engine_config)?;
        let mut state = CoreState::new();
        state.hold_output_raw = engine.hold_raw();
        Ok(Self { corner, engine, params, geometry, state })
    }

    pub fn corner(&self) -> Corner {
        self.corner
    }

    pub fn state(&self) -> &CoreState {
        &self.state
    }

    /// One control step: ingest the mailbox, fuse the sensor pair, estimate
    /// inclination, run the engine, and emit the command plus the distance
    /// broadcast for the next exchange.
    ///
    /// Depends only on the explicit inputs and this core's own state; no
    /// data is shared with other cores.
    pub fn step(&mut self, sample: &HoaSample, inbox: &[NiMessage], step: u64) -> CoreStepOutput {
        for msg in inbox {
            if msg.src_core != self.corner.id() {
                self.state.neighbors[msg.src_core as usize] =
                    Some((msg.fused_distance_raw, msg.seq));
            }
        }

        let fusion = siu_fuse(sample, &self.state, &self.params);

        // Corner distances for the plane fit: own fused value plus fresh
        // neighbor reports.
        let mut corner_distances: [Option<f64>; NUM_CORES] = [None; NUM_CORES];
        for (src, entry) in self.state.neighbors.iter().enumerate() {
            if let Some((raw_cm, seq)) = entry {
                if step.saturating_sub(*seq) <= self.params.neighbor_staleness_max_steps {
                    corner_distances[src] = Some(*raw_cm as f64 / 100.0);
                }
            }
        }
        // Own distance enters at the same cm quantization the neighbors
        // report over the wire, keeping the plane fit symmetric.
        if let Ok(f) = &fusion {
            corner_distances[self.corner.id() as usize] =
                Some(f.output.fused_distance_raw as f64 / 100.0);
        }
        let estimate = iicu_update(&corner_distances, &self.geometry, &self.state.prev_estimate);
        self.state.prev_estimate = estimate;

        match fusion {
            Ok(f) => {
                self.state.push_fused(f.fused_mm, self.params.rate_window_steps);
                let eval = self
                    .engine
                    .evaluate_with_hold(
                        f.output.fused_distance_raw,
                        f.output.closure_rate_raw,
                        self.state.hold_output_raw,
                    )
                    .expect("SIU saturates to the engine input formats");
                self.state.hold_output_raw = eval.raw;
                let (roll_sign, pitch_sign) = self.corner.trim_signs();
                let trim = self.params.trim_gain
                    * (roll_sign * estimate.roll_mrad + pitch_sign * estimate.pitch_mrad) as f64;
                let command = CoreCommand {
                    descent_code: eval.raw as u8,
                    thrust_trim: trim.round() as i32,
                    source_core: self.corner.id(),
                    step,
                    degraded: false,
                };
                self.state.last_command = Some(command);
                CoreStepOutput {
                    command,
                    message: Some(NiMessage::new(
                        self.corner.id(),
                        f.output.fused_distance_raw,
                        step,
                    )),
                    siu: Some(f.output),
                    estimate,
                }
            }
            Err(SensorBlackout) => {
                // Keep the rate window aligned by repeating the last value.
                if let Some(&last) = self.state.fused_history_mm.back() {
                    let window = self.params.rate_window_steps;
                    self.state.push_fused(last, window);
                }
                let held = self.state.last_command.unwrap_or(CoreCommand {
                    descent_code: self.state.hold_output_raw as u8,
                    thrust_trim: 0,
                    source_core: self.corner.id(),
                    step,
                    degraded: true,
                });
                let command = CoreCommand { step, degraded: true, ..held };
                self.state.last_command = Some(command);
                CoreStepOutput { command, message: None, siu: None, estimate }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(lidar_mm: u32, radar_mm: u32, step: u64) -> HoaSample {
        HoaSample { lidar_mm, radar_mm, step, lidar_valid: true, radar_valid: true }
    }

    fn state_with_history(values_mm: &[i64]) -> CoreState {
        let mut state = CoreState::new();
        for &v in values_mm {
            state.push_fused(v, 80);
        }
        state
    }

    #[test]
    fn fuse_identical_readings() {
        let f = siu_fuse(&sample(5000, 5000, 0), &CoreState::new(), &FusionParams::default())
            .unwrap();
        assert_eq!(f.output.fused_distance_raw, 500);
        assert_eq!(f.output.health, SiuHealth::Nominal);
    }

    #[test]
    fn fuse_agreeing_readings_takes_mean() {
        let f = siu_fuse(&sample(5000, 5040, 0), &CoreState::new(), &FusionParams::default())
            .unwrap();
        assert_eq!(f.fused_mm, 5020);
        assert_eq!(f.output.fused_distance_raw, 502);
        assert_eq!(f.output.health, SiuHealth::Nominal);
    }

    #[test]
    fn fuse_jammed_lidar_follows_prediction() {
        // Prediction sits at 5000 mm; the jumped lidar loses arbitration.
        let state = state_with_history(&[5000, 5000]);
        let f = siu_fuse(&sample(9000, 5020, 2), &state, &FusionParams::default()).unwrap();
        assert_eq!(f.output.fused_distance_raw, 502);
        assert_eq!(f.output.health, SiuHealth::LidarSuspect);
    }

    #[test]
    fn fuse_jammed_radar_flagged_too() {
        let state = state_with_history(&[5000, 5000]);
        let f = siu_fuse(&sample(5020, 600, 2), &state, &FusionParams::default()).unwrap();
        assert_eq!(f.output.fused_distance_raw, 502);
        assert_eq!(f.output.health, SiuHealth::RadarSuspect);
    }

    #[test]
    fn fuse_single_sensor_is_degraded() {
        let mut s = sample(5000, 0, 0);
        s.radar_valid = false;
        let f = siu_fuse(&s, &CoreState::new(), &FusionParams::default()).unwrap();
        assert_eq!(f.output.fused_distance_raw, 500);
        assert_eq!(f.output.health, SiuHealth::Degraded);
    }

    #[test]
    fn fuse_blackout_is_an_error() {
        let mut s = sample(5000, 5000, 0);
        s.lidar_valid = false;
        s.radar_valid = false;
        assert_eq!(
            siu_fuse(&s, &CoreState::new(), &FusionParams::default()),
            Err(SensorBlackout)
        );
    }

    #[test]
    fn fused_distance_stays_between_the_sensors() {
        let params = FusionParams::default();
        for (lidar, radar) in [(100u32, 90u32), (5000, 5199), (9000, 5020), (1, 20000)] {
            let state = state_with_history(&[5000, 5000]);
            let f = siu_fuse(&sample(lidar, radar, 2), &state, &params).unwrap();
            let lo = lidar.min(radar) as i64;
            let hi = lidar.max(radar) as i64;
            assert!(f.fused_mm >= lo && f.fused_mm <= hi);
        }
    }

    #[test]
    fn closure_rate_saturates_and_scales() {
        // 500 mm closed over 50 ms = 1000 cm/s, beyond the 10-bit bus.
        assert_eq!(derive_closure_rate(4000.0, 4500.0, 0.05), 511);
        // 10 mm over 50 ms = 20 cm/s.
        assert_eq!(derive_closure_rate(5000.0, 5010.0, 0.05), 20);
        // Opening gap goes negative.
        assert_eq!(derive_closure_rate(5010.0, 5000.0, 0.05), -20);
    }

    #[test]
    fn smoothed_rate_recovers_a_linear_descent() {
        // Constant 2 mm/step descent at 1 kHz is 200 cm/s; block means on a
        // ramp reproduce the slope exactly.
        let params = FusionParams::default();
        let mut state = CoreState::new();
        let len = params.rate_window_steps as i64;
        for j in 0..len {
            state.push_fused(9000 - 2 * j, params.rate_window_steps);
        }
        let current = 9000 - 2 * len;
        let rate = closure_rate_from_history(current, &state, &params);
        assert_eq!(rate, 200);
    }

    #[test]
    fn iicu_flat_plane_is_zero() {
        let est = iicu_update(
            &[Some(2.0), Some(2.0), Some(2.0), Some(2.0)],
            &Geometry::default(),
            &IicuEstimate::zero(),
        );
        assert_eq!(est.roll_mrad, 0);
        assert_eq!(est.pitch_mrad, 0);
        assert_eq!(est.confidence, IicuConfidence::Full);
    }

    #[test]
    fn iicu_pitch_from_front_rear_difference() {
        // Front mean 0.2 m above rear mean with 0.5 m half-span:
        // atan(0.2 / 1.0) = 197.4 mrad.
        let est = iicu_update(
            &[Some(2.2), Some(2.2), Some(2.0), Some(2.0)],
            &Geometry::default(),
            &IicuEstimate::zero(),
        );
        assert_eq!(est.pitch_mrad, 197);
        assert_eq!(est.roll_mrad, 0);
        assert_eq!(est.confidence, IicuConfidence::Full);
    }

    #[test]
    fn iicu_three_corners_match_four_corner_fit() {
        // Distances generated from a known plane; dropping any one corner
        // must recover the same slopes.
        let geometry = Geometry::default();
        let pitch = 0.15f64;
        let roll = -0.08f64;
        let gen = |c: Corner| {
            let (x, y) = c.offset_m(&geometry);
            2.0 + pitch * x + roll * y
        };
        let full: [Option<f64>; 4] = [
            Some(gen(Corner::FrontLeft)),
            Some(gen(Corner::FrontRight)),
            Some(gen(Corner::RearLeft)),
            Some(gen(Corner::RearRight)),
        ];
        let reference = iicu_update(&full, &geometry, &IicuEstimate::zero());
        for drop in 0..4 {
            let mut partial = full;
            partial[drop] = None;
            let est = iicu_update(&partial, &geometry, &IicuEstimate::zero());
            assert_eq!(est.confidence, IicuConfidence::Partial);
            assert_eq!(est.pitch_mrad, reference.pitch_mrad, "dropped corner {drop}");
            assert_eq!(est.roll_mrad, reference.roll_mrad, "dropped corner {drop}");
        }
    }

    #[test]
    fn iicu_under_three_corners_carries_previous() {
        let previous = IicuEstimate {
            roll_mrad: 12,
            pitch_mrad: -7,
            confidence: IicuConfidence::Full,
        };
        let est = iicu_update(
            &[Some(2.0), None, Some(2.1), None],
            &Geometry::default(),
            &previous,
        );
        assert_eq!(est.roll_mrad, 12);
        assert_eq!(est.pitch_mrad, -7);
        assert_eq!(est.confidence, IicuConfidence::None);
    }

    fn core(corner: Corner) -> Algas2Core {
        Algas2Core::new(
            corner,
            &FlsEngineConfig::default_landing(),
            FusionParams::default(),
            Geometry::default(),
        )
        .unwrap()
    }

    #[test]
    fn identical_inputs_yield_identical_commands() {
        // Flat terrain: every corner sees the same distances, so all four
        // commands must agree bit for bit.
        let mut cores: Vec<Algas2Core> = CORNERS.iter().map(|&c| core(c)).collect();
        for step in 0..20u64 {
            let s = sample(8000 - 10 * step as u32, 8000 - 10 * step as u32, step);
            let commands: Vec<CoreCommand> =
                cores.iter_mut().map(|c| c.step(&s, &[], step).command).collect();
            for w in commands.windows(2) {
                assert_eq!(w[0].descent_code, w[1].descent_code);
                assert_eq!(w[0].thrust_trim, w[1].thrust_trim);
            }
        }
    }

    #[test]
    fn execution_order_does_not_matter() {
        let inputs: Vec<HoaSample> = (0..30u64)
            .map(|step| sample(9000 - 25 * step as u32, 9000 - 25 * step as u32, step))
            .collect();
        let run = |order: &[usize]| -> Vec<Vec<u8>> {
            let mut cores: Vec<Algas2Core> = CORNERS.iter().map(|&c| core(c)).collect();
            let mut all = Vec::new();
            for (step, s) in inputs.iter().enumerate() {
                let mut codes = vec![0u8; 4];
                for &i in order {
                    codes[i] = cores[i].step(s, &[], step as u64).command.descent_code;
                }
                all.push(codes);
            }
            all
        };
        assert_eq!(run(&[0, 1, 2, 3]), run(&[3, 1, 0, 2]));
        assert_eq!(run(&[0, 1, 2, 3]), run(&[2, 3, 1, 0]));
    }

    #[test]
    fn empty_inbox_still_produces_a_command() {
        let mut c = core(Corner::FrontLeft);
        let out = c.step(&sample(5000, 5000, 0), &[], 0);
        assert!(!out.command.degraded);
        assert_eq!(out.estimate.confidence, IicuConfidence::None);
        assert_eq!(out.command.thrust_trim, 0);
    }

    #[test]
    fn blackout_emits_held_command_with_flag() {
        let mut c = core(Corner::FrontLeft);
        let first = c.step(&sample(5000, 5000, 0), &[], 0);
        let mut dead = sample(0, 0, 1);
        dead.lidar_valid = false;
        dead.radar_valid = false;
        let out = c.step(&dead, &[], 1);
        assert!(out.command.degraded);
        assert_eq!(out.command.descent_code, first.command.descent_code);
        assert_eq!(out.command.step, 1);
        assert!(out.message.is_none());
        assert!(out.siu.is_none());
    }

    #[test]
    fn neighbors_feed_the_inclination_estimate() {
        let mut c = core(Corner::FrontLeft);
        // Three neighbors report 2.0 m while this corner fuses 2.2 m: the
        // fitted plane leans toward the front-left.
        let inbox = [
            NiMessage::new(1, 200, 5),
            NiMessage::new(2, 200, 5),
            NiMessage::new(3, 200, 5),
        ];
        let out = c.step(&sample(2200, 2200, 5), &inbox, 5);
        assert_eq!(out.estimate.confidence, IicuConfidence::Full);
        assert!(out.estimate.roll_mrad > 0);
        assert!(out.estimate.pitch_mrad > 0);
        // FrontLeft pattern (+roll, +pitch): positive trim pulls it down.
        assert!(out.command.thrust_trim > 0);
    }

    #[test]
    fn stale_neighbors_are_ignored() {
        let mut c = core(Corner::FrontLeft);
        let inbox = [
            NiMessage::new(1, 200, 0),
            NiMessage::new(2, 200, 0),
            NiMessage::new(3, 200, 0),
        ];
        c.step(&sample(2200, 2200, 0), &inbox, 0);
        // Ten steps later those reports are long stale.
        let out = c.step(&sample(2200, 2200, 10), &[], 10);
        assert_eq!(out.estimate.confidence, IicuConfidence::None);
    }

    #[test]
    fn command_at_engine_peak_matches_reference_oracle() {
        // Fused inputs sitting exactly on the MID/OK rule peak must hit the
        // rule's code in both evaluators. A 3 mm-per-2 ms ramp makes the
        // smoothed rate exactly 150 cm/s.
        let config = FlsEngineConfig::default_landing();
        let params = FusionParams { step_dt_s: 0.002, ..FusionParams::default() };
        let mut c = Algas2Core::new(
            Corner::FrontLeft,
            &config,
            params,
            Geometry::default(),
        )
        .unwrap();
        let len = params.rate_window_steps as i64;
        for j in 0..len {
            let v = 4500 + 3 * (len - j);
            c.state.push_fused(v, params.rate_window_steps);
        }
        let out = c.step(&sample(4500, 4500, 80), &[], 80);
        let siu = out.siu.unwrap();
        assert_eq!(siu.fused_distance_raw, 450);
        assert_eq!(siu.closure_rate_raw, 150);
        let reference = crate::fls::evaluate_reference(&config, 450.0, 150.0);
        assert!((out.command.descent_code as f64 - reference.value).abs() <= 1.0);
    }
}
