//! Fuzzy logic engine in two interchangeable evaluators.
//!
//! The [`evaluate_reference`] path runs the whole
//! fuzzify / infer / defuzzify chain in real arithmetic and acts as the
//! golden model. [`QuantizedEngine`] runs the same chain on saturating
//! fixed-point buses declared in the config's [`WidthTable`], matching the
//! hardware datapath bit for bit. [`compare_golden`] and [`sweep_error`]
//! measure the two against each other.
//!
//! The engine is a zero-order system: rule strengths come from a min t-norm
//! and the crisp output is the strength-weighted average of per-rule
//! singleton codes.

mod quantized;

pub use quantized::{evaluate_quantized, FlsFlags, QuantizedEngine, QuantizedEval};

use crate::fxp::{dequantize, FxpValue, QFormat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Piecewise-linear membership function over one crisp input, in input units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MfSpec", into = "MfSpec")]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

/// Serde shape for membership functions: `{ kind = "...", points = [...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct MfSpec {
    kind: String,
    points: Vec<f64>,
}

impl TryFrom<MfSpec> for MembershipFunction {
    type Error = ConfigError;

    fn try_from(spec: MfSpec) -> Result<Self, ConfigError> {
        match (spec.kind.as_str(), spec.points.as_slice()) {
            ("triangular", &[a, b, c]) => MembershipFunction::triangular(a, b, c),
            ("trapezoidal", &[a, b, c, d]) => MembershipFunction::trapezoidal(a, b, c, d),
            _ => Err(ConfigError::BadMembership(format!(
                "kind {:?} with {} points",
                spec.kind,
                spec.points.len()
            ))),
        }
    }
}

impl From<MembershipFunction> for MfSpec {
    fn from(mf: MembershipFunction) -> MfSpec {
        match mf {
            MembershipFunction::Triangular { a, b, c } => MfSpec {
                kind: "triangular".into(),
                points: vec![a, b, c],
            },
            MembershipFunction::Trapezoidal { a, b, c, d } => MfSpec {
                kind: "trapezoidal".into(),
                points: vec![a, b, c, d],
            },
        }
    }
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, ConfigError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || !(a <= b && b <= c) {
            return Err(ConfigError::BadMembership(format!(
                "triangular breakpoints must be finite and non-decreasing: {a}, {b}, {c}"
            )));
        }
        Ok(Self::Triangular { a, b, c })
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, ConfigError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite())
            || !(a <= b && b <= c && c <= d)
        {
            return Err(ConfigError::BadMembership(format!(
                "trapezoidal breakpoints must be finite and non-decreasing: {a}, {b}, {c}, {d}"
            )));
        }
        Ok(Self::Trapezoidal { a, b, c, d })
    }

    /// Membership degree in [0, 1]; exactly 1.0 on the peak or plateau.
    pub fn degree(&self, x: f64) -> f64 {
        match *self {
            Self::Triangular { a, b, c } => {
                // In the final arm x > b and x <= c force b < c.
                if x < a || x > c {
                    0.0
                } else if x <= b {
                    if a == b {
                        1.0
                    } else {
                        (x - a) / (b - a)
                    }
                } else {
                    (c - x) / (c - b)
                }
            }
            Self::Trapezoidal { a, b, c, d } => {
                // x > c together with x <= d forces c < d, so the down ramp
                // never divides by zero.
                if x < a || x > d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else if x <= c {
                    1.0
                } else {
                    (d - x) / (d - c)
                }
            }
        }
    }

    /// Breakpoints in declaration order (3 or 4 of them).
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Self::Triangular { a, b, c } => vec![a, b, c],
            Self::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }
}

/// One crisp input: name, physical unit, bus format and linguistic terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    pub name: String,
    pub unit: String,
    pub format: QFormat,
    pub mfs: Vec<MembershipFunction>,
}

/// One rule of the grid: an MF index per input and a consequent index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedents: [usize; 2],
    pub consequent: usize,
}

/// Formats of every internal signal of the quantized datapath.
///
/// Input buses are declared on the [`InputSpec`]s; everything downstream is
/// here. Accumulators are wider than any single bus in the width palette so
/// that worst-case sums never overflow; each widening is deliberate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthTable {
    pub membership_degree: QFormat,
    pub rule_strength: QFormat,
    pub weighted_product: QFormat,
    pub numerator: QFormat,
    pub denominator: QFormat,
    pub output_preclamp: QFormat,
    pub output: QFormat,
    pub control_flags: QFormat,
}

impl Default for WidthTable {
    fn default() -> Self {
        Self {
            // raw 256 is exactly degree 1.0
            membership_degree: QFormat::unsigned(9, 8),
            rule_strength: QFormat::unsigned(9, 8),
            // strength x consequent: up to 256 * 255 = 65280
            weighted_product: QFormat::unsigned(17, 8),
            // nine products: up to 587520
            numerator: QFormat::unsigned(20, 8),
            // nine strengths: up to 2304
            denominator: QFormat::unsigned(12, 8),
            output_preclamp: QFormat::unsigned(9, 0),
            output: QFormat::unsigned(8, 0),
            control_flags: QFormat::unsigned(7, 0),
        }
    }
}

/// Complete definition of one FLS engine.
///
/// Plain-valued fields come first so the config serializes cleanly to TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlsEngineConfig {
    /// Output substituted (with a flag) when no rule fires.
    #[serde(default)]
    pub hold_code: f64,
    /// Per-entry singleton codes on the output axis, referenced by rules.
    pub consequents: Vec<f64>,
    pub rules: Vec<Rule>,
    pub inputs: [InputSpec; 2],
    #[serde(default)]
    pub widths: WidthTable,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bad membership function: {0}")]
    BadMembership(String),
    #[error("input {index} must be {expected} bits wide, got {got}")]
    InputWidth { index: usize, expected: u32, got: u32 },
    #[error("input {0} has no membership functions")]
    NoMembershipFunctions(usize),
    #[error("rule {rule} references missing {what} index {index}")]
    RuleIndex { rule: usize, what: &'static str, index: usize },
    #[error("membership function {mf} of input {input} is referenced by no rule")]
    UnusedMembership { input: usize, mf: usize },
    #[error("consequent {index} value {value} is outside the output format")]
    ConsequentRange { index: usize, value: f64 },
    #[error("invalid format in width table or inputs: {0}")]
    BadFormat(String),
    #[error("width table scales are inconsistent: {0}")]
    ScaleMismatch(String),
    #[error("hold code {0} is outside the output format")]
    HoldRange(f64),
}

impl FlsEngineConfig {
    /// Structural validation; every loaded config passes through here before
    /// any evaluation or run starts.
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (i, expected) in [(0usize, 11u32), (1, 10)] {
            let got = self.inputs[i].format.total_bits;
            if got != expected {
                return Err(ConfigError::InputWidth { index: i, expected, got });
            }
        }
        for (i, input) in self.inputs.iter().enumerate() {
            if !input.format.is_valid() {
                return Err(ConfigError::BadFormat(format!("input {i}")));
            }
            if input.mfs.is_empty() {
                return Err(ConfigError::NoMembershipFunctions(i));
            }
        }
        let w = &self.widths;
        for (name, fmt) in [
            ("membership_degree", w.membership_degree),
            ("rule_strength", w.rule_strength),
            ("weighted_product", w.weighted_product),
            ("numerator", w.numerator),
            ("denominator", w.denominator),
            ("output_preclamp", w.output_preclamp),
            ("output", w.output),
            ("control_flags", w.control_flags),
        ] {
            if !fmt.is_valid() {
                return Err(ConfigError::BadFormat(name.into()));
            }
        }
        if w.membership_degree.scale_pow2 < 0
            || !w.membership_degree.contains_raw(1i64 << w.membership_degree.scale_pow2)
        {
            return Err(ConfigError::BadFormat(
                "membership_degree cannot represent degree 1.0".into(),
            ));
        }
        if w.rule_strength.scale_pow2 != w.membership_degree.scale_pow2 {
            return Err(ConfigError::ScaleMismatch(
                "rule_strength scale must match membership_degree".into(),
            ));
        }
        let product_scale = w.rule_strength.scale_pow2 + w.output.scale_pow2;
        if w.weighted_product.scale_pow2 != product_scale
            || w.numerator.scale_pow2 != product_scale
        {
            return Err(ConfigError::ScaleMismatch(
                "weighted_product and numerator scale must be strength + output scale".into(),
            ));
        }
        if w.denominator.scale_pow2 != w.rule_strength.scale_pow2 {
            return Err(ConfigError::ScaleMismatch(
                "denominator scale must match rule_strength".into(),
            ));
        }
        if w.output_preclamp.scale_pow2 != w.output.scale_pow2 {
            return Err(ConfigError::ScaleMismatch(
                "output_preclamp scale must match output".into(),
            ));
        }
        let mut used = [vec![], vec![]];
        for (i, input) in self.inputs.iter().enumerate() {
            used[i] = vec![false; input.mfs.len()];
        }
        for (r, rule) in self.rules.iter().enumerate() {
            for (i, &mf) in rule.antecedents.iter().enumerate() {
                if mf >= self.inputs[i].mfs.len() {
                    return Err(ConfigError::RuleIndex { rule: r, what: "mf", index: mf });
                }
                used[i][mf] = true;
            }
            if rule.consequent >= self.consequents.len() {
                return Err(ConfigError::RuleIndex {
                    rule: r,
                    what: "consequent",
                    index: rule.consequent,
                });
            }
        }
        for (i, flags) in used.iter().enumerate() {
            if let Some(mf) = flags.iter().position(|&u| !u) {
                return Err(ConfigError::UnusedMembership { input: i, mf });
            }
        }
        let out = w.output;
        let out_min = out.raw_min() as f64 * out.lsb();
        let out_max = out.raw_max() as f64 * out.lsb();
        for (i, &c) in self.consequents.iter().enumerate() {
            if !c.is_finite() || c < out_min || c > out_max {
                return Err(ConfigError::ConsequentRange { index: i, value: c });
            }
        }
        if !self.hold_code.is_finite() || self.hold_code < out_min || self.hold_code > out_max {
            return Err(ConfigError::HoldRange(self.hold_code));
        }
        Ok(())
    }

    pub fn output_format(&self) -> QFormat {
        self.widths.output
    }

    /// One output LSB in real units; the floor used by the relative-error
    /// metric so readings near zero do not blow it up.
    pub fn output_lsb(&self) -> f64 {
        self.widths.output.lsb()
    }

    /// The shipped landing engine: fused distance-to-ground (cm) and closure
    /// rate (cm/s, positive while the gap shrinks) mapped to a descent
    /// command on an 8-bit axis where 0 commands maximum braking thrust and
    /// 255 the fastest allowed descent.
    ///
    /// Breakpoints and codes are tuned against the closed-loop descent
    /// scenarios and then frozen; they are engineering defaults, not ground
    /// truth.
    pub fn default_landing() -> Self {
        use MembershipFunction as Mf;
        let distance = InputSpec {
            name: "distance".into(),
            unit: "cm".into(),
            format: QFormat::unsigned(11, 0),
            mfs: vec![
                Mf::trapezoidal(0.0, 0.0, 60.0, 350.0).unwrap(),
                Mf::triangular(150.0, 450.0, 900.0).unwrap(),
                Mf::trapezoidal(600.0, 1100.0, 2047.0, 2047.0).unwrap(),
            ],
        };
        let closure = InputSpec {
            name: "closure_rate".into(),
            unit: "cm/s".into(),
            format: QFormat::signed(10, 0),
            mfs: vec![
                Mf::trapezoidal(-512.0, -512.0, 0.0, 120.0).unwrap(),
                Mf::triangular(20.0, 150.0, 320.0).unwrap(),
                Mf::trapezoidal(250.0, 400.0, 511.0, 511.0).unwrap(),
            ],
        };
        // 3x3 grid: rows NEAR/MID/FAR, columns SLOW/OK/FAST. The lowest code
        // is kept at 32 so that blended outputs never dip into the regime
        // where one integer output step exceeds the relative error budget;
        // code 32 still commands about 87% of braking authority.
        let table = [
            [180.0, 120.0, 32.0],
            [215.0, 180.0, 96.0],
            [235.0, 205.0, 165.0],
        ];
        let mut rules = Vec::new();
        let mut consequents = Vec::new();
        for (d, row) in table.iter().enumerate() {
            for (r, &code) in row.iter().enumerate() {
                rules.push(Rule { antecedents: [d, r], consequent: consequents.len() });
                consequents.push(code);
            }
        }
        Self {
            hold_code: 0.0,
            consequents,
            rules,
            inputs: [distance, closure],
            widths: WidthTable::default(),
        }
    }
}

/// Per-input, per-MF membership degrees.
pub type DegreeMatrix = [Vec<f64>; 2];

/// Fuzzification: degree of every membership function at the crisp inputs.
pub fn fuzzify(config: &FlsEngineConfig, x0: f64, x1: f64) -> DegreeMatrix {
    let eval = |input: &InputSpec, x: f64| input.mfs.iter().map(|mf| mf.degree(x)).collect();
    [eval(&config.inputs[0], x0), eval(&config.inputs[1], x1)]
}

/// Inference: rule strength is the min of its antecedent degrees.
pub fn infer(config: &FlsEngineConfig, degrees: &DegreeMatrix) -> Vec<f64> {
    config
        .rules
        .iter()
        .map(|rule| {
            degrees[0][rule.antecedents[0]].min(degrees[1][rule.antecedents[1]])
        })
        .collect()
}

/// Defuzzification: strength-weighted average of the singleton codes.
///
/// Returns `(output, empty)`; when every strength is zero the `hold` value
/// is returned with `empty = true`.
pub fn defuzzify(strengths: &[f64], consequents: &[f64], hold: f64) -> (f64, bool) {
    let mut num = 0.0;
    let mut den = 0.0;
    for (&w, &c) in strengths.iter().zip(consequents) {
        num += w * c;
        den += w;
    }
    if den == 0.0 {
        (hold, true)
    } else {
        (num / den, false)
    }
}

/// Real-valued reference evaluation of the whole engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceEval {
    pub value: f64,
    /// True when no rule fired and the hold value was substituted.
    pub empty: bool,
}

pub fn evaluate_reference(config: &FlsEngineConfig, x0: f64, x1: f64) -> ReferenceEval {
    evaluate_reference_with_hold(config, x0, x1, config.hold_code)
}

pub fn evaluate_reference_with_hold(
    config: &FlsEngineConfig,
    x0: f64,
    x1: f64,
    hold: f64,
) -> ReferenceEval {
    let degrees = fuzzify(config, x0, x1);
    let strengths = infer(config, &degrees);
    let per_rule: Vec<f64> = config.rules.iter().map(|r| config.consequents[r.consequent]).collect();
    let (value, empty) = defuzzify(&strengths, &per_rule, hold);
    ReferenceEval { value, empty }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("input {input} raw value {raw} is outside its declared format")]
    InputOutOfRange { input: usize, raw: i64 },
}

/// One verified sample: raw inputs, both evaluator outputs and their
/// relative difference (floored at one output LSB).
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenSample {
    pub input0_raw: i64,
    pub input1_raw: i64,
    pub reference: f64,
    pub quantized_raw: i64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenReport {
    pub samples: Vec<GoldenSample>,
    pub max_relative_error: f64,
}

pub fn relative_error(quantized_as_real: f64, reference: f64, floor: f64) -> f64 {
    (quantized_as_real - reference).abs() / reference.abs().max(floor)
}

/// Run both evaluators over a list of raw input pairs.
///
/// When `frozen_reference` values are supplied (the golden-set workflow)
/// they are used as the truth column; otherwise the reference model is
/// evaluated on the dequantized inputs.
pub fn compare_golden(
    config: &FlsEngineConfig,
    samples: &[(i64, i64)],
    frozen_reference: Option<&[f64]>,
) -> Result<GoldenReport, EvalError> {
    let engine = QuantizedEngine::new(config).expect("validated config");
    let floor = config.output_lsb();
    let mut out = Vec::with_capacity(samples.len());
    let mut max_err = 0.0f64;
    for (i, &(raw0, raw1)) in samples.iter().enumerate() {
        let x0 = dequantize(FxpValue::new(raw0, config.inputs[0].format));
        let x1 = dequantize(FxpValue::new(raw1, config.inputs[1].format));
        let reference = match frozen_reference {
            Some(vals) => vals[i],
            None => evaluate_reference(config, x0, x1).value,
        };
        let q = engine.evaluate(raw0, raw1)?;
        let q_real = q.raw as f64 * config.output_lsb();
        let err = relative_error(q_real, reference, floor);
        max_err = max_err.max(err);
        out.push(GoldenSample {
            input0_raw: raw0,
            input1_raw: raw1,
            reference,
            quantized_raw: q.raw,
            relative_error: err,
        });
    }
    Ok(GoldenReport { samples: out, max_relative_error: max_err })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepReport {
    pub evaluated: u64,
    pub max_relative_error: f64,
    pub worst_input: (i64, i64),
}

/// Exhaustive quantized-vs-reference sweep over every representable input
/// pair (2^11 x 2^10 with the default formats).
pub fn sweep_error(config: &FlsEngineConfig) -> Result<SweepReport, EvalError> {
    let engine = QuantizedEngine::new(config).expect("validated config");
    let floor = config.output_lsb();
    let f0 = config.inputs[0].format;
    let f1 = config.inputs[1].format;
    let mut max_err = 0.0f64;
    let mut worst = (0, 0);
    let mut evaluated = 0u64;
    for raw0 in f0.raw_min()..=f0.raw_max() {
        let x0 = raw0 as f64 * f0.lsb();
        for raw1 in f1.raw_min()..=f1.raw_max() {
            let x1 = raw1 as f64 * f1.lsb();
            let reference = evaluate_reference(config, x0, x1).value;
            let q = engine.evaluate(raw0, raw1)?;
            let err = relative_error(q.raw as f64 * floor, reference, floor);
            if err > max_err {
                max_err = err;
                worst = (raw0, raw1);
            }
            evaluated += 1;
        }
    }
    Ok(SweepReport { evaluated, max_relative_error: max_err, worst_input: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(a: f64, b: f64, c: f64) -> MembershipFunction {
        MembershipFunction::triangular(a, b, c).unwrap()
    }

    #[test]
    fn membership_peak_outside_and_midpoint() {
        let mf = tri(0.0, 5.0, 10.0);
        assert_eq!(mf.degree(5.0), 1.0);
        assert_eq!(mf.degree(12.0), 0.0);
        assert_eq!(mf.degree(2.5), 0.5);
        assert_eq!(mf.degree(-0.1), 0.0);
    }

    #[test]
    fn membership_shoulders() {
        let left = MembershipFunction::trapezoidal(0.0, 0.0, 2.0, 4.0).unwrap();
        assert_eq!(left.degree(0.0), 1.0);
        assert_eq!(left.degree(2.0), 1.0);
        assert_eq!(left.degree(3.0), 0.5);
        assert_eq!(left.degree(4.5), 0.0);
        let spike = tri(1.0, 1.0, 1.0);
        assert_eq!(spike.degree(1.0), 1.0);
        assert_eq!(spike.degree(1.1), 0.0);
    }

    #[test]
    fn membership_rejects_unordered_breakpoints() {
        assert!(MembershipFunction::triangular(5.0, 1.0, 10.0).is_err());
        assert!(MembershipFunction::trapezoidal(0.0, 2.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn infer_takes_rule_minimum() {
        let config = FlsEngineConfig::default_landing();
        let degrees: DegreeMatrix = [vec![0.3, 0.0, 0.0], vec![0.7, 0.0, 0.0]];
        let strengths = infer(&config, &degrees);
        assert_eq!(strengths[0], 0.3);
        let degrees: DegreeMatrix = [vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]];
        assert_eq!(infer(&config, &degrees)[0], 1.0);
        let degrees: DegreeMatrix = [vec![0.25, 0.0, 0.0], vec![0.25, 0.0, 0.0]];
        assert_eq!(infer(&config, &degrees)[0], 0.25);
    }

    #[test]
    fn defuzzify_examples() {
        let (v, empty) = defuzzify(&[0.8], &[100.0], 0.0);
        assert_eq!(v, 100.0);
        assert!(!empty);

        let (v, empty) = defuzzify(&[0.4, 0.4], &[40.0, 80.0], 0.0);
        assert_eq!(v, 60.0);
        assert!(!empty);

        let (v, empty) = defuzzify(&[0.0, 0.0], &[40.0, 80.0], 7.0);
        assert_eq!(v, 7.0);
        assert!(empty);
    }

    #[test]
    fn default_config_validates() {
        FlsEngineConfig::default_landing().validate().unwrap();
    }

    #[test]
    fn engine_config_round_trips_through_toml() {
        let config = FlsEngineConfig::default_landing();
        let text = toml::to_string(&config).unwrap();
        let back: FlsEngineConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn validation_catches_bad_input_width() {
        let mut config = FlsEngineConfig::default_landing();
        config.inputs[0].format = QFormat::unsigned(12, 0);
        assert!(matches!(config.validate(), Err(ConfigError::InputWidth { .. })));
    }

    #[test]
    fn validation_catches_unused_mf() {
        let mut config = FlsEngineConfig::default_landing();
        config.rules.retain(|r| r.antecedents[0] != 2);
        assert!(matches!(
            config.validate(),
            Err(ConfigError::UnusedMembership { input: 0, mf: 2 })
        ));
    }

    #[test]
    fn validation_catches_consequent_out_of_range() {
        let mut config = FlsEngineConfig::default_landing();
        config.consequents[0] = 300.0;
        assert!(matches!(config.validate(), Err(ConfigError::ConsequentRange { .. })));
    }

    #[test]
    fn reference_hits_consequent_exactly_at_rule_peak() {
        // (450, 150) fires only the MID/OK rule.
        let config = FlsEngineConfig::default_landing();
        let eval = evaluate_reference(&config, 450.0, 150.0);
        assert_eq!(eval.value, 180.0);
        assert!(!eval.empty);
    }

    #[test]
    fn reference_monotone_in_distance_at_ok_rate() {
        // Fixed closure rate at the middle-MF peak; sampled every cm.
        let config = FlsEngineConfig::default_landing();
        let mut prev = f64::NEG_INFINITY;
        for raw0 in 0..=2047 {
            let v = evaluate_reference(&config, raw0 as f64, 150.0).value;
            assert!(
                v >= prev - 1e-12,
                "output decreased at distance {raw0}: {v} < {prev}"
            );
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn reference_output_within_consequent_hull(
            x0 in 0.0f64..2047.0,
            x1 in -512.0f64..511.0,
        ) {
            let config = FlsEngineConfig::default_landing();
            let eval = evaluate_reference(&config, x0, x1);
            prop_assert!(!eval.empty, "default MFs must cover the domain");
            let lo = config.consequents.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = config.consequents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(eval.value >= lo - 1e-9 && eval.value <= hi + 1e-9);
        }

        #[test]
        fn membership_degree_always_unit_interval(
            x in -3000.0f64..3000.0,
            a in -100.0f64..100.0,
            w1 in 0.0f64..500.0,
            w2 in 0.0f64..500.0,
        ) {
            let mf = tri(a, a + w1, a + w1 + w2);
            let d = mf.degree(x);
            prop_assert!((0.0..=1.0).contains(&d));
        }
    }
}
