//! Saturating fixed-point primitives parameterized by bus width and scale.
//!
//! Every quantized signal in the engine datapath is an integer `raw` value
//! interpreted as `raw / 2^scale_pow2` in some [`QFormat`]. All arithmetic
//! saturates at the format bounds; nothing here ever wraps or fails on
//! overflow.

use serde::{Deserialize, Serialize};

/// Width-and-scale description of one bus: `value = raw / 2^scale_pow2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFormat {
    /// Total bus width in bits, 2..=32.
    pub total_bits: u32,
    /// Two's complement when true, otherwise unsigned.
    pub signed: bool,
    /// Binary point position; may be negative (coarser than integer steps).
    pub scale_pow2: i32,
}

impl QFormat {
    pub const fn unsigned(total_bits: u32, scale_pow2: i32) -> Self {
        Self { total_bits, signed: false, scale_pow2 }
    }

    pub const fn signed(total_bits: u32, scale_pow2: i32) -> Self {
        Self { total_bits, signed: true, scale_pow2 }
    }

    pub fn is_valid(&self) -> bool {
        (2..=32).contains(&self.total_bits)
    }

    /// Smallest representable raw value.
    pub fn raw_min(&self) -> i64 {
        if self.signed {
            -(1i64 << (self.total_bits - 1))
        } else {
            0
        }
    }

    /// Largest representable raw value.
    pub fn raw_max(&self) -> i64 {
        if self.signed {
            (1i64 << (self.total_bits - 1)) - 1
        } else {
            (1i64 << self.total_bits) - 1
        }
    }

    pub fn contains_raw(&self, raw: i64) -> bool {
        raw >= self.raw_min() && raw <= self.raw_max()
    }

    /// Clamp a raw value into the representable range.
    pub fn clamp_raw(&self, raw: i64) -> i64 {
        raw.clamp(self.raw_min(), self.raw_max())
    }

    /// Real value of one LSB step.
    pub fn lsb(&self) -> f64 {
        2f64.powi(-self.scale_pow2)
    }
}

/// One quantized sample: a raw integer tagged with its format.
///
/// Construction saturates, so the raw value is always in range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FxpValue {
    raw: i64,
    format: QFormat,
}

impl FxpValue {
    /// Build from a raw integer, saturating to the format range.
    pub fn new(raw: i64, format: QFormat) -> Self {
        debug_assert!(format.is_valid());
        Self { raw: format.clamp_raw(raw), format }
    }

    /// Build from a raw integer that must already be in range.
    pub fn checked(raw: i64, format: QFormat) -> Option<Self> {
        format.contains_raw(raw).then_some(Self { raw, format })
    }

    pub fn raw(&self) -> i64 {
        self.raw
    }

    pub fn format(&self) -> QFormat {
        self.format
    }

    pub fn to_real(&self) -> f64 {
        dequantize(*self)
    }
}

/// Quantize a real value: round half away from zero, then saturate.
///
/// Non-finite inputs map to the nearest bound (NaN to 0).
pub fn quantize(x: f64, fmt: QFormat) -> FxpValue {
    let scaled = x * 2f64.powi(fmt.scale_pow2);
    let raw = if scaled.is_nan() {
        0
    } else if scaled >= fmt.raw_max() as f64 {
        fmt.raw_max()
    } else if scaled <= fmt.raw_min() as f64 {
        fmt.raw_min()
    } else {
        scaled.round() as i64
    };
    FxpValue::new(raw, fmt)
}

/// Real value of a quantized sample. Exact (power-of-two rescale).
pub fn dequantize(v: FxpValue) -> f64 {
    v.raw() as f64 * 2f64.powi(-v.format().scale_pow2)
}

/// Saturating add of two samples in the same format.
pub fn sat_add(a: FxpValue, b: FxpValue) -> FxpValue {
    assert_eq!(a.format(), b.format(), "sat_add requires matching formats");
    FxpValue::new(a.raw() + b.raw(), a.format())
}

/// Saturating multiply into a declared product format.
///
/// The wide product carries scale `a.scale + b.scale`; it is rescaled to the
/// product format (rounding half away from zero when dropping bits) and then
/// saturated.
pub fn sat_mul(a: FxpValue, b: FxpValue, product_fmt: QFormat) -> FxpValue {
    let wide = a.raw() as i128 * b.raw() as i128;
    let natural_scale = a.format().scale_pow2 + b.format().scale_pow2;
    let raw = rescale_i128(wide, natural_scale, product_fmt.scale_pow2);
    FxpValue::new(raw, product_fmt)
}

/// Shift a wide raw value from one scale to another, rounding half away from
/// zero when the scale decreases. Saturates to i64 on the way out.
fn rescale_i128(raw: i128, from_scale: i32, to_scale: i32) -> i64 {
    let shift = to_scale - from_scale;
    let shifted = if shift >= 0 {
        raw.checked_shl(shift as u32).unwrap_or(if raw < 0 { i128::MIN } else { i128::MAX })
    } else {
        let down = (-shift) as u32;
        let half = 1i128 << (down - 1);
        if raw >= 0 {
            (raw + half) >> down
        } else {
            -((-raw + half) >> down)
        }
    };
    shifted.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

/// Integer division with round-half-up, the defuzzification divider.
///
/// Returns `None` when the denominator is zero so the caller can apply its
/// empty-aggregation rule. The denominator must not be negative.
pub fn div_round(num: i64, den: i64) -> Option<i64> {
    assert!(den >= 0, "div_round denominator must be non-negative");
    if den == 0 {
        return None;
    }
    // floor((2n + d) / 2d) == round-half-up(n / d), including negative n.
    Some((2 * num + den).div_euclid(2 * den))
}
