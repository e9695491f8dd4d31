//! Fixed-point evaluation of the engine on the declared bus widths.
//!
//! Breakpoints and consequents are quantized once at engine construction;
//! evaluation is then pure integer arithmetic: ramp interpolation by the
//! rounding divider, min for rule strengths, saturating multiply/accumulate,
//! and one final division. Saturation and hold events are reported on a
//! flags bus rather than as errors.

use super::{ConfigError, EvalError, FlsEngineConfig, MembershipFunction};
use crate::fxp::{div_round, quantize, QFormat};

/// Sticky event bits carried on the control/flag bus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FlsFlags(u8);

impl FlsFlags {
    /// No rule fired; the hold value was substituted.
    pub const EMPTY_HOLD: u8 = 1 << 0;
    /// A membership degree or rule strength clipped at its bus bound.
    pub const STRENGTH_SAT: u8 = 1 << 1;
    /// A weighted product or accumulator clipped at its bus bound.
    pub const ACCUM_SAT: u8 = 1 << 2;
    /// The divider result clipped at the pre-clamp or output bound.
    pub const OUTPUT_CLAMP: u8 = 1 << 3;

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, mask: u8) -> bool {
        self.0 & mask != 0
    }

    fn set(&mut self, mask: u8) {
        self.0 |= mask;
    }

    pub fn merge(&mut self, other: FlsFlags) {
        self.0 |= other.0;
    }
}

/// Result of one quantized evaluation: output raw plus the flag bus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizedEval {
    pub raw: i64,
    pub flags: FlsFlags,
}

/// Membership function with breakpoints snapped to the input raw grid.
#[derive(Debug, Clone)]
enum QuantMf {
    Triangular { a: i64, b: i64, c: i64 },
    Trapezoidal { a: i64, b: i64, c: i64, d: i64 },
}

impl QuantMf {
    fn new(mf: &MembershipFunction, input_fmt: QFormat) -> Self {
        let q = |x: f64| quantize(x, input_fmt).raw();
        match *mf {
            MembershipFunction::Triangular { a, b, c } => {
                Self::Triangular { a: q(a), b: q(b), c: q(c) }
            }
            MembershipFunction::Trapezoidal { a, b, c, d } => {
                Self::Trapezoidal { a: q(a), b: q(b), c: q(c), d: q(d) }
            }
        }
    }

    /// Piecewise-linear degree at raw `x`, in degree-format raw units.
    /// `one` is the raw encoding of degree 1.0.
    fn degree_raw(&self, x: i64, one: i64) -> i64 {
        let ramp_up = |a: i64, b: i64| div_round(one * (x - a), b - a).unwrap();
        let ramp_down = |b: i64, c: i64| div_round(one * (c - x), c - b).unwrap();
        match *self {
            Self::Triangular { a, b, c } => {
                // In the final arm x > b and x <= c force b < c.
                if x < a || x > c {
                    0
                } else if x <= b {
                    if a == b {
                        one
                    } else {
                        ramp_up(a, b)
                    }
                } else {
                    ramp_down(b, c)
                }
            }
            Self::Trapezoidal { a, b, c, d } => {
                // x > c with x <= d forces c < d; no zero division below.
                if x < a || x > d {
                    0
                } else if x < b {
                    ramp_up(a, b)
                } else if x <= c {
                    one
                } else {
                    ramp_down(c, d)
                }
            }
        }
    }
}

/// The fixed-point engine, ready to evaluate raw input pairs.
#[derive(Debug, Clone)]
pub struct QuantizedEngine {
    input_formats: [QFormat; 2],
    mfs: [Vec<QuantMf>; 2],
    rules: Vec<super::Rule>,
    consequent_raws: Vec<i64>,
    degree_one: i64,
    degree_fmt: QFormat,
    strength_fmt: QFormat,
    product_fmt: QFormat,
    numerator_fmt: QFormat,
    denominator_fmt: QFormat,
    preclamp_fmt: QFormat,
    output_fmt: QFormat,
    hold_raw: i64,
}

impl QuantizedEngine {
    pub fn new(config: &FlsEngineConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let w = &config.widths;
        let out_fmt = w.output;
        let mfs = [
            config.inputs[0]
                .mfs
                .iter()
                .map(|mf| QuantMf::new(mf, config.inputs[0].format))
                .collect(),
            config.inputs[1]
                .mfs
                .iter()
                .map(|mf| QuantMf::new(mf, config.inputs[1].format))
                .collect(),
        ];
        Ok(Self {
            input_formats: [config.inputs[0].format, config.inputs[1].format],
            mfs,
            rules: config.rules.clone(),
            consequent_raws: config
                .consequents
                .iter()
                .map(|&c| quantize(c, out_fmt).raw())
                .collect(),
            degree_one: 1i64 << w.membership_degree.scale_pow2,
            degree_fmt: w.membership_degree,
            strength_fmt: w.rule_strength,
            product_fmt: w.weighted_product,
            numerator_fmt: w.numerator,
            denominator_fmt: w.denominator,
            preclamp_fmt: w.output_preclamp,
            output_fmt: w.output,
            hold_raw: quantize(config.hold_code, out_fmt).raw(),
        })
    }

    pub fn output_format(&self) -> QFormat {
        self.output_fmt
    }

    pub fn hold_raw(&self) -> i64 {
        self.hold_raw
    }

    /// Input register check: raws must sit inside their declared formats.
    pub fn check_inputs(&self, raw0: i64, raw1: i64) -> Result<(), EvalError> {
        for (input, raw) in [(0usize, raw0), (1, raw1)] {
            if !self.input_formats[input].contains_raw(raw) {
                return Err(EvalError::InputOutOfRange { input, raw });
            }
        }
        Ok(())
    }

    /// Stage 1: membership degrees of both inputs, on the degree bus.
    pub fn fuzzify_raw(&self, raw0: i64, raw1: i64) -> ([Vec<i64>; 2], FlsFlags) {
        let mut flags = FlsFlags::default();
        let eval = |mfs: &[QuantMf], x: i64, flags: &mut FlsFlags| {
            mfs.iter()
                .map(|mf| {
                    let d = mf.degree_raw(x, self.degree_one);
                    let clamped = self.degree_fmt.clamp_raw(d);
                    if clamped != d {
                        flags.set(FlsFlags::STRENGTH_SAT);
                    }
                    clamped
                })
                .collect()
        };
        let degrees = [
            eval(&self.mfs[0], raw0, &mut flags),
            eval(&self.mfs[1], raw1, &mut flags),
        ];
        (degrees, flags)
    }

    /// Stage 2: per-rule strength, min over the antecedent degrees.
    pub fn infer_raw(&self, degrees: &[Vec<i64>; 2]) -> (Vec<i64>, FlsFlags) {
        let mut flags = FlsFlags::default();
        let strengths = self
            .rules
            .iter()
            .map(|rule| {
                let s = degrees[0][rule.antecedents[0]].min(degrees[1][rule.antecedents[1]]);
                let clamped = self.strength_fmt.clamp_raw(s);
                if clamped != s {
                    flags.set(FlsFlags::STRENGTH_SAT);
                }
                clamped
            })
            .collect();
        (strengths, flags)
    }

    /// Stage 3: weighted products and both accumulator sums.
    pub fn aggregate_raw(&self, strengths: &[i64]) -> (i64, i64, FlsFlags) {
        let mut flags = FlsFlags::default();
        let mut num = 0i64;
        let mut den = 0i64;
        for (rule, &w) in self.rules.iter().zip(strengths) {
            let product = w * self.consequent_raws[rule.consequent];
            let product = self.clamp_flag(product, self.product_fmt, &mut flags);
            num = self.clamp_flag(num + product, self.numerator_fmt, &mut flags);
            den = self.clamp_flag(den + w, self.denominator_fmt, &mut flags);
        }
        (num, den, flags)
    }

    /// Stage 4: the rounding divider plus pre-clamp and output registers.
    pub fn finalize_raw(&self, num: i64, den: i64, hold_raw: i64) -> QuantizedEval {
        let mut flags = FlsFlags::default();
        let raw = match div_round(num, den) {
            None => {
                flags.set(FlsFlags::EMPTY_HOLD);
                hold_raw
            }
            Some(q) => {
                let pre = self.preclamp_fmt.clamp_raw(q);
                if pre != q {
                    flags.set(FlsFlags::OUTPUT_CLAMP);
                }
                let out = self.output_fmt.clamp_raw(pre);
                if out != pre {
                    flags.set(FlsFlags::OUTPUT_CLAMP);
                }
                out
            }
        };
        QuantizedEval { raw, flags }
    }

    fn clamp_flag(&self, raw: i64, fmt: QFormat, flags: &mut FlsFlags) -> i64 {
        let clamped = fmt.clamp_raw(raw);
        if clamped != raw {
            flags.set(FlsFlags::ACCUM_SAT);
        }
        clamped
    }

    /// Full evaluation with the engine's configured hold value.
    pub fn evaluate(&self, raw0: i64, raw1: i64) -> Result<QuantizedEval, EvalError> {
        self.evaluate_with_hold(raw0, raw1, self.hold_raw)
    }

    /// Full evaluation with a caller-held last-valid output.
    pub fn evaluate_with_hold(
        &self,
        raw0: i64,
        raw1: i64,
        hold_raw: i64,
    ) -> Result<QuantizedEval, EvalError> {
        self.check_inputs(raw0, raw1)?;
        let (degrees, mut flags) = self.fuzzify_raw(raw0, raw1);
        let (strengths, f2) = self.infer_raw(&degrees);
        flags.merge(f2);
        let (num, den, f3) = self.aggregate_raw(&strengths);
        flags.merge(f3);
        let mut eval = self.finalize_raw(num, den, hold_raw);
        eval.flags.merge(flags);
        Ok(eval)
    }
}

/// Convenience wrapper building a throwaway engine for one evaluation.
pub fn evaluate_quantized(
    config: &FlsEngineConfig,
    raw0: i64,
    raw1: i64,
) -> Result<QuantizedEval, EvalError> {
    let engine = QuantizedEngine::new(config).expect("validated config");
    engine.evaluate(raw0, raw1)
}
