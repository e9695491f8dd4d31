//! Quad-core fuzzy-logic landing guidance model.
//!
//! A software reconstruction of a four-core V/STOL landing guidance
//! processing unit: bit-width-faithful fixed-point fuzzy inference engines
//! verified against a real-valued reference model, four segregated decision
//! cores with dual-sensor fusion and inclination trim, a collision-free hub
//! interconnect, a closed-loop descent simulator with fault injection, and a
//! throughput model for the systolic pipeline.
//!
//! # Modules
//!
//! - [`fxp`] — saturating fixed-point primitives (widths, scales, rounding)
//! - [`fls`] — the fuzzy engine: reference oracle, quantized datapath,
//!   golden-sample comparison
//! - [`systolic`] — pipeline schedule, ops/cycle accounting, GOPS reports,
//!   cycle-stamped stream simulation
//! - [`interconnect`] — the active hub and NI units (TDM round robin)
//! - [`core`] — one decision core: sensor fusion, inclination estimation,
//!   per-step command output
//! - [`scenario`] — vehicle dynamics, terrain and sensor models, fault
//!   plans, closed-loop landing runs
//! - [`cli`] — config loading and the `verify` / `bench` / `run` / `sweep`
//!   commands behind the `algas2` binary
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example engine_accuracy        # reference vs quantized engine
//! cargo run --example pipeline_throughput    # schedule + GOPS accounting
//! cargo run --example hub_round_robin        # collision-free exchange
//! cargo run --example sensor_fusion_jam      # lidar jam arbitration
//! cargo run --example landing_flat           # nominal closed-loop descent
//! cargo run --example landing_core_failure   # fail-stop fault injection
//! cargo run --example inclination_sweep      # terrain inclination sweep
//! ```

pub mod cli;
pub mod core;
pub mod fls;
pub mod fxp;
pub mod interconnect;
pub mod scenario;
pub mod systolic;
