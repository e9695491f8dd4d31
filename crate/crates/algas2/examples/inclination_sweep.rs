//! Landing outcome across terrain inclinations.
//!
//! Repeats the nominal descent over landing surfaces pitched from flat to
//! 12 degrees and tabulates the touchdown metrics; the inclination trim
//! loop aligns the vehicle to the surface on the way down.
//!
//! ```bash
//! cargo run --release --example inclination_sweep
//! ```

use algas2::fls::FlsEngineConfig;
use algas2::scenario::{run_landing, ScenarioConfig};

fn main() {
    let base = ScenarioConfig::default_with_engine(FlsEngineConfig::default_landing());

    println!("terrain_pitch_deg  steps  v_touchdown_mps  incl_error_deg  success");
    for tenth_deg in (0..=120).step_by(20) {
        let deg = tenth_deg as f64 / 10.0;
        let mut config = base.clone();
        config.terrain.pitch_rad = deg.to_radians();
        let (report, _) = run_landing(&config).unwrap();
        println!(
            "{:>17.1}  {:>5}  {:>15.3}  {:>14.3}  {}",
            deg,
            report.steps_elapsed,
            report.touchdown_speed_mps,
            report.touchdown_inclination_error_rad.to_degrees(),
            report.success
        );
    }
}
