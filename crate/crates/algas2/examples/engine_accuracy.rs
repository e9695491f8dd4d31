//! Reference oracle vs fixed-point engine.
//!
//! Evaluates the shipped landing engine both ways on the golden sample set
//! and reports the per-sample and worst-case relative errors, then runs the
//! exhaustive sweep over every representable input pair.
//!
//! ```bash
//! cargo run --release --example engine_accuracy
//! ```

use algas2::cli::{parse_golden_csv, DEFAULT_GOLDEN_CSV};
use algas2::fls::{compare_golden, sweep_error, FlsEngineConfig};

fn main() {
    let config = FlsEngineConfig::default_landing();
    let (inputs, references) = parse_golden_csv(DEFAULT_GOLDEN_CSV).expect("shipped golden set");

    let report = compare_golden(&config, &inputs, Some(&references)).unwrap();
    println!("distance_cm  rate_cms  reference  quantized  rel_error");
    for s in &report.samples {
        println!(
            "{:>11}  {:>8}  {:>9.3}  {:>9}  {:>9.5}",
            s.input0_raw, s.input1_raw, s.reference, s.quantized_raw, s.relative_error
        );
    }
    println!("\ngolden set max relative error: {:.5}", report.max_relative_error);

    let sweep = sweep_error(&config).unwrap();
    println!(
        "full sweep: {} input pairs, max relative error {:.5} at {:?}",
        sweep.evaluated, sweep.max_relative_error, sweep.worst_input
    );
}
