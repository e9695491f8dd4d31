//! Cycle-level model of the engine as a systolic pipeline.
//!
//! The pipeline accepts a new input pair every initiation interval and
//! streams it through four stages: membership interpolators, rule-min units,
//! the weighted-accumulate tree, and the fully pipelined divider. One
//! "operation" is one arithmetic unit active per cycle in steady state;
//! summing them over the stages gives the per-core ops/cycle figure that the
//! throughput report scales by core count and clock.

use crate::fls::{FlsEngineConfig, QuantizedEngine, QuantizedEval};
use thiserror::Error;

/// Most rule-min units a single engine build may instantiate.
pub const DEFAULT_RULE_UNIT_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineStage {
    pub name: &'static str,
    pub latency_cycles: u32,
    /// Arithmetic units active in this stage each steady-state cycle.
    pub parallel_ops: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineSchedule {
    pub stages: Vec<PipelineStage>,
    pub initiation_interval: u32,
}

impl PipelineSchedule {
    /// Cycles from input acceptance to result, the pipeline fill time.
    pub fn depth_cycles(&self) -> u64 {
        self.stages.iter().map(|s| s.latency_cycles as u64).sum()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("cannot schedule an empty rule base")]
    EmptyRuleBase,
    #[error("rule base needs {needed} min units, budget is {budget}")]
    RuleUnitsExceeded { needed: usize, budget: usize },
}

/// Decompose an engine config into the four-stage schedule.
///
/// Unit accounting: one interpolator per membership function, one min unit
/// per rule, one multiply-accumulate unit per three rules (each folds up to
/// three weighted products), and a single divider. The default nine-rule
/// grid therefore costs 6 + 9 + 3 + 1 = 19 ops per cycle per core.
pub fn build_schedule(config: &FlsEngineConfig) -> Result<PipelineSchedule, ScheduleError> {
    build_schedule_with_budget(config, DEFAULT_RULE_UNIT_BUDGET)
}

pub fn build_schedule_with_budget(
    config: &FlsEngineConfig,
    rule_unit_budget: usize,
) -> Result<PipelineSchedule, ScheduleError> {
    let rules = config.rules.len();
    if rules == 0 {
        return Err(ScheduleError::EmptyRuleBase);
    }
    if rules > rule_unit_budget {
        return Err(ScheduleError::RuleUnitsExceeded { needed: rules, budget: rule_unit_budget });
    }
    let fuzzify_ops: usize = config.inputs.iter().map(|i| i.mfs.len()).sum();
    let accumulate_ops = rules.div_ceil(3);
    Ok(PipelineSchedule {
        stages: vec![
            PipelineStage { name: "fuzzify", latency_cycles: 2, parallel_ops: fuzzify_ops as u32 },
            PipelineStage { name: "rule-min", latency_cycles: 1, parallel_ops: rules as u32 },
            PipelineStage {
                name: "weighted-accumulate",
                latency_cycles: 3,
                parallel_ops: accumulate_ops as u32,
            },
            PipelineStage { name: "divide", latency_cycles: 4, parallel_ops: 1 },
        ],
        initiation_interval: 1,
    })
}

/// Steady-state parallel operations per cycle for one core.
pub fn ops_per_cycle(schedule: &PipelineSchedule) -> u32 {
    schedule.stages.iter().map(|s| s.parallel_ops).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    pub ops_per_cycle_per_core: u32,
    pub cores: u32,
    pub system_ops_per_cycle: u32,
    pub clock_mhz: f64,
    pub gops: f64,
}

impl ThroughputReport {
    pub fn csv_header() -> &'static str {
        "ops_per_cycle_per_core,cores,system_ops_per_cycle,clock_mhz,gops"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.5}",
            self.ops_per_cycle_per_core,
            self.cores,
            self.system_ops_per_cycle,
            self.clock_mhz,
            self.gops
        )
    }

    /// Aligned table for terminal output.
    pub fn table(&self) -> String {
        format!(
            "parallel ops / cycle / core : {:>10}\n\
             cores                       : {:>10}\n\
             system ops / cycle          : {:>10}\n\
             clock (MHz)                 : {:>10.2}\n\
             throughput (GOPS)           : {:>10.2}",
            self.ops_per_cycle_per_core, self.cores, self.system_ops_per_cycle, self.clock_mhz, self.gops
        )
    }
}

/// Scale one core's schedule to a multi-core system at a given clock.
pub fn system_throughput(
    schedule: &PipelineSchedule,
    cores: u32,
    clock_mhz: f64,
) -> ThroughputReport {
    let per_core = ops_per_cycle(schedule);
    let system = per_core * cores;
    ThroughputReport {
        ops_per_cycle_per_core: per_core,
        cores,
        system_ops_per_cycle: system,
        clock_mhz,
        // ops/cycle * MHz * 1e6 / 1e9
        gops: clock_mhz * system as f64 / 1000.0,
    }
}

/// One result leaving the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineResult {
    pub output: QuantizedEval,
    pub completion_cycle: u64,
}

/// Per-item payload as it moves through the stages.
#[derive(Debug, Clone)]
enum StageData {
    Inputs(i64, i64),
    Degrees([Vec<i64>; 2], crate::fls::FlsFlags),
    Strengths(Vec<i64>, crate::fls::FlsFlags),
    Sums(i64, i64, crate::fls::FlsFlags),
    Done(QuantizedEval),
}

#[derive(Debug)]
struct InFlight {
    stage: usize,
    cycles_left: u32,
    index: usize,
    data: StageData,
}

/// Cycle stepper: owns the engine, the schedule and the in-flight items.
///
/// Not shared between threads; create one instance per stream of inputs.
#[derive(Debug)]
pub struct PipelineSim {
    engine: QuantizedEngine,
    schedule: PipelineSchedule,
    hold_raw: i64,
}

impl PipelineSim {
    pub fn new(config: &FlsEngineConfig) -> Result<Self, ScheduleError> {
        let schedule = build_schedule(config)?;
        let engine = QuantizedEngine::new(config).expect("schedulable config validates");
        let hold_raw = engine.hold_raw();
        Ok(Self { engine, schedule, hold_raw })
    }

    pub fn schedule(&self) -> &PipelineSchedule {
        &self.schedule
    }

    /// Stream every input through the pipeline, one new acceptance per
    /// initiation interval, and stamp each result with its completion cycle.
    /// Results come back in input order; values are bitwise identical to
    /// direct engine evaluation.
    pub fn run(&mut self, inputs: &[(i64, i64)]) -> Result<Vec<PipelineResult>, crate::fls::EvalError> {
        let ii = self.schedule.initiation_interval as u64;
        let mut results: Vec<Option<PipelineResult>> = vec![None; inputs.len()];
        let mut in_flight: Vec<InFlight> = Vec::new();
        let mut next_input = 0usize;
        let mut cycle: u64 = 0;
        let mut done = 0usize;

        while done < inputs.len() {
            // Accept a new item on its initiation slot.
            if next_input < inputs.len() && cycle == next_input as u64 * ii {
                let (raw0, raw1) = inputs[next_input];
                self.engine.check_inputs(raw0, raw1)?;
                in_flight.push(InFlight {
                    stage: 0,
                    cycles_left: self.schedule.stages[0].latency_cycles,
                    index: next_input,
                    data: StageData::Inputs(raw0, raw1),
                });
                next_input += 1;
            }

            cycle += 1;
            let mut still_flying = Vec::with_capacity(in_flight.len());
            for mut item in in_flight {
                item.cycles_left -= 1;
                if item.cycles_left == 0 {
                    item.data = self.advance(item.data);
                    item.stage += 1;
                    if item.stage == self.schedule.stages.len() {
                        let StageData::Done(output) = item.data else { unreachable!() };
                        results[item.index] = Some(PipelineResult { output, completion_cycle: cycle });
                        done += 1;
                        continue;
                    }
                    item.cycles_left = self.schedule.stages[item.stage].latency_cycles;
                }
                still_flying.push(item);
            }
            in_flight = still_flying;
        }
        Ok(results.into_iter().map(|r| r.expect("all items completed")).collect())
    }

    /// Apply one stage's arithmetic as the item leaves it.
    fn advance(&self, data: StageData) -> StageData {
        match data {
            StageData::Inputs(raw0, raw1) => {
                let (degrees, flags) = self.engine.fuzzify_raw(raw0, raw1);
                StageData::Degrees(degrees, flags)
            }
            StageData::Degrees(degrees, mut flags) => {
                let (strengths, f) = self.engine.infer_raw(&degrees);
                flags.merge(f);
                StageData::Strengths(strengths, flags)
            }
            StageData::Strengths(strengths, mut flags) => {
                let (num, den, f) = self.engine.aggregate_raw(&strengths);
                flags.merge(f);
                StageData::Sums(num, den, flags)
            }
            StageData::Sums(num, den, flags) => {
                let mut eval = self.engine.finalize_raw(num, den, self.hold_raw);
                eval.flags.merge(flags);
                StageData::Done(eval)
            }
            StageData::Done(_) => unreachable!("result left the pipeline already"),
        }
    }
}
