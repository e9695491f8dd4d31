//! Systolic schedule and throughput accounting.
//!
//! Builds the pipeline schedule for the shipped engine, prints the stage
//! breakdown and the ops/cycle arithmetic at the published operating point,
//! then streams a few inputs through the cycle simulator to show the
//! steady-state initiation interval.
//!
//! ```bash
//! cargo run --release --example pipeline_throughput
//! ```

use algas2::fls::FlsEngineConfig;
use algas2::systolic::{build_schedule, ops_per_cycle, system_throughput, PipelineSim};

fn main() {
    let config = FlsEngineConfig::default_landing();
    let schedule = build_schedule(&config).unwrap();

    println!("stage                 latency  parallel ops");
    for stage in &schedule.stages {
        println!("{:<21} {:>7}  {:>12}", stage.name, stage.latency_cycles, stage.parallel_ops);
    }
    println!(
        "total: {} ops/cycle/core, initiation interval {}, depth {} cycles\n",
        ops_per_cycle(&schedule),
        schedule.initiation_interval,
        schedule.depth_cycles()
    );

    for (cores, clock_mhz) in [(4u32, 279.25f64), (5, 266.03)] {
        let report = system_throughput(&schedule, cores, clock_mhz);
        println!("{} cores @ {} MHz:", cores, clock_mhz);
        println!("{}\n", report.table());
    }

    let mut sim = PipelineSim::new(&config).unwrap();
    let inputs: Vec<(i64, i64)> = (0..8).map(|i| (200 + i * 150, 40 * i - 100)).collect();
    let results = sim.run(&inputs).unwrap();
    println!("input (dist, rate)  ->  code @ completion cycle");
    for ((d, r), out) in inputs.iter().zip(&results) {
        println!(
            "({:>4}, {:>4})        ->  {:>3} @ {}",
            d, r, out.output.raw, out.completion_cycle
        );
    }
}
