//! Landing through a core fail-stop.
//!
//! Kills one decision core partway down and compares the outcome against
//! the clean run: the remaining three cores keep commanding their corners
//! (the dead corner's actuator holds its last command) and the touchdown
//! stays inside the degraded thresholds.
//!
//! ```bash
//! cargo run --release --example landing_core_failure
//! ```

use algas2::fls::FlsEngineConfig;
use algas2::scenario::{
    run_landing, FaultEntry, FaultMode, FaultTarget, ScenarioConfig,
};

fn main() {
    let clean = ScenarioConfig::default_with_engine(FlsEngineConfig::default_landing());
    let (clean_report, _) = run_landing(&clean).unwrap();
    println!("clean run:\n{}\n", clean_report.summary());

    for core in 0..4u8 {
        let mut faulted = clean.clone();
        faulted.faults.entries.push(FaultEntry {
            target: FaultTarget::Core { index: core },
            start_step: clean_report.steps_elapsed / 3,
            end_step: u64::MAX,
            mode: FaultMode::FailStop,
        });
        let (report, _) = run_landing(&faulted).unwrap();
        let degraded_ok = report.touchdown
            && report.touchdown_speed_mps <= faulted.sim.v_touchdown_degraded_mps
            && report.touchdown_inclination_error_rad
                <= faulted.sim.incl_error_degraded_deg.to_radians();
        println!(
            "core {core} fail-stop at step {}: touchdown speed {:.3} m/s, \
             inclination {:.2} deg, degraded thresholds {}",
            clean_report.steps_elapsed / 3,
            report.touchdown_speed_mps,
            report.touchdown_inclination_error_rad.to_degrees(),
            if degraded_ok { "met" } else { "MISSED" }
        );
    }
}
