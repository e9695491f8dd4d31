//! Nominal closed-loop landing from 10 m over flat terrain.
//!
//! Runs the full stack (sensors, fusion, hub exchange, four cores, plant)
//! and prints the descent profile plus the landing report.
//!
//! ```bash
//! cargo run --release --example landing_flat
//! ```

use algas2::fls::FlsEngineConfig;
use algas2::scenario::{run_landing, ScenarioConfig};

fn main() {
    let config = ScenarioConfig::default_with_engine(FlsEngineConfig::default_landing());
    let (report, trace) = run_landing(&config).expect("nominal run completes");

    println!("time_s  altitude_m  v_z_mps  mean_code");
    for row in trace.steps.iter().step_by(500) {
        println!(
            "{:>6.2}  {:>10.3}  {:>7.3}  {:>9.1}",
            row.time_s, row.state.altitude_m, row.state.v_z_mps, row.mean_code
        );
    }
    if let Some(last) = trace.steps.last() {
        println!(
            "{:>6.2}  {:>10.3}  {:>7.3}  {:>9.1}",
            last.time_s, last.state.altitude_m, last.state.v_z_mps, last.mean_code
        );
    }

    println!("\n{}", report.summary());
}
