//! Dual-sensor fusion shrugging off a jammed lidar.
//!
//! Feeds one decision core a steady descent in which the lidar suddenly
//! starts returning garbage. While both sensors agree the SIU averages
//! them; once they split, the reading closer to the prediction from recent
//! history wins and the lidar is flagged suspect.
//!
//! ```bash
//! cargo run --example sensor_fusion_jam
//! ```

use algas2::core::{Algas2Core, Corner, FusionParams, Geometry, HoaSample};
use algas2::fls::FlsEngineConfig;

fn main() {
    let engine = FlsEngineConfig::default_landing();
    let mut core =
        Algas2Core::new(Corner::FrontLeft, &engine, FusionParams::default(), Geometry::default())
            .unwrap();

    println!("step  lidar_mm  radar_mm  fused_cm  health         code");
    for step in 0..40u64 {
        let truth = 6000 - 25 * step as u32;
        // Lidar jams between steps 15 and 30: full-scale garbage.
        let lidar = if (15..30).contains(&step) {
            19_000 - 37 * step as u32
        } else {
            truth
        };
        let sample = HoaSample {
            lidar_mm: lidar,
            radar_mm: truth + 8,
            step,
            lidar_valid: true,
            radar_valid: true,
        };
        let out = core.step(&sample, &[], step);
        let siu = out.siu.expect("both sensors reported");
        if step % 3 == 0 || (14..=30).contains(&step) {
            println!(
                "{:>4}  {:>8}  {:>8}  {:>8}  {:<13}  {:>4}",
                step,
                sample.lidar_mm,
                sample.radar_mm,
                siu.fused_distance_raw,
                siu.health.label(),
                out.command.descent_code
            );
        }
    }
}
