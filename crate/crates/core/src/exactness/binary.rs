//! The value spaces of `xsd:float` and `xsd:double` and the exact mappings
//! between them and decimals.
//!
//! A finite value is `m * 2^e` with `0 < |m| < 2^precision` and
//! `min_exponent <= e <= max_exponent`. Every decision in here is made with
//! integer arithmetic; no host floating point operation is involved, so the
//! results do not depend on the platform.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::decimal::{decimal_digits, pow10, pow5, ExactDecimal};
use super::lexical::ScaledNumeral;
use super::NumericError;

/// The two IEEE 754 binary interchange formats used by XSD.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryFormat {
    /// `xsd:float`
    Binary32,
    /// `xsd:double`
    Binary64,
}

impl BinaryFormat {
    pub const ALL: [BinaryFormat; 2] = [BinaryFormat::Binary32, BinaryFormat::Binary64];

    pub const fn name(self) -> &'static str {
        match self {
            BinaryFormat::Binary32 => "binary32",
            BinaryFormat::Binary64 => "binary64",
        }
    }

    pub const fn precision_bits(self) -> u32 {
        match self {
            BinaryFormat::Binary32 => 24,
            BinaryFormat::Binary64 => 53,
        }
    }

    pub const fn min_exponent(self) -> i32 {
        match self {
            BinaryFormat::Binary32 => -149,
            BinaryFormat::Binary64 => -1074,
        }
    }

    pub const fn max_exponent(self) -> i32 {
        match self {
            BinaryFormat::Binary32 => 104,
            BinaryFormat::Binary64 => 971,
        }
    }

    /// Width of the stored fraction field of the interchange encoding.
    const fn fraction_bits(self) -> u32 {
        self.precision_bits() - 1
    }

    const fn exponent_field_max(self) -> u64 {
        match self {
            BinaryFormat::Binary32 => 0xff,
            BinaryFormat::Binary64 => 0x7ff,
        }
    }

    const fn total_bits(self) -> u32 {
        match self {
            BinaryFormat::Binary32 => 32,
            BinaryFormat::Binary64 => 64,
        }
    }

    fn significand_limit(self) -> i64 {
        1i64 << self.precision_bits()
    }
}

impl fmt::Display for BinaryFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BinaryFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary32" | "float" => Ok(BinaryFormat::Binary32),
            "binary64" | "double" => Ok(BinaryFormat::Binary64),
            other => Err(format!(
                "unknown binary format `{other}` (expected binary32 or binary64)"
            )),
        }
    }
}

/// What a [`BinaryFloatValue`] is.
///
/// `Finite` is always in canonical form and never zero: either
/// `|significand| >= 2^(precision - 1)` or `exponent == min_exponent`.
/// Equality on this enum is structural, so `NotANumber == NotANumber`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FloatKind {
    Finite { significand: i64, exponent: i32 },
    PositiveZero,
    NegativeZero,
    PositiveInfinity,
    NegativeInfinity,
    NotANumber,
}

/// A value of the `xsd:float` or `xsd:double` value space.
///
/// `PartialEq` and `PartialOrd` follow IEEE comparison: `NaN` is unordered
/// and unequal to itself, and the two zeros are equal. Use
/// [`BinaryFloatValue::total_cmp`] or compare [`BinaryFloatValue::kind`] for
/// identity.
#[derive(Clone, Copy, Debug, Hash)]
pub struct BinaryFloatValue {
    format: BinaryFormat,
    kind: FloatKind,
}

impl BinaryFloatValue {
    pub const fn special(format: BinaryFormat, kind: FloatKind) -> Self {
        Self { format, kind }
    }

    pub const fn positive_zero(format: BinaryFormat) -> Self {
        Self::special(format, FloatKind::PositiveZero)
    }

    pub const fn negative_zero(format: BinaryFormat) -> Self {
        Self::special(format, FloatKind::NegativeZero)
    }

    pub const fn infinity(format: BinaryFormat, negative: bool) -> Self {
        let kind = if negative {
            FloatKind::NegativeInfinity
        } else {
            FloatKind::PositiveInfinity
        };
        Self::special(format, kind)
    }

    pub const fn nan(format: BinaryFormat) -> Self {
        Self::special(format, FloatKind::NotANumber)
    }

    fn zero(format: BinaryFormat, negative: bool) -> Self {
        if negative {
            Self::negative_zero(format)
        } else {
            Self::positive_zero(format)
        }
    }

    /// The value `significand * 2^exponent`, canonicalized, or `None` when it
    /// is not in the value space of `format`. A zero significand gives
    /// positive zero.
    pub fn from_parts(format: BinaryFormat, significand: i64, exponent: i32) -> Option<Self> {
        if significand == 0 {
            return Some(Self::positive_zero(format));
        }
        let negative = significand < 0;
        let mut m = significand.unsigned_abs();
        let mut e = exponent;
        let limit = format.significand_limit() as u64;
        while m >= limit {
            if m & 1 == 1 {
                return None;
            }
            m >>= 1;
            e += 1;
        }
        while m < limit / 2 && e > format.min_exponent() {
            m <<= 1;
            e -= 1;
        }
        if e < format.min_exponent() || e > format.max_exponent() {
            return None;
        }
        let m = m as i64;
        Some(Self {
            format,
            kind: FloatKind::Finite {
                significand: if negative { -m } else { m },
                exponent: e,
            },
        })
    }

    /// Decodes an IEEE 754 interchange encoding held in the low bits.
    pub fn from_bits(format: BinaryFormat, bits: u64) -> Self {
        let fraction_bits = format.fraction_bits();
        let exponent_max = format.exponent_field_max();
        let negative = (bits >> (format.total_bits() - 1)) & 1 == 1;
        let biased = (bits >> fraction_bits) & exponent_max;
        let fraction = bits & ((1u64 << fraction_bits) - 1);
        let bias = exponent_max as i32 / 2;

        let kind = if biased == exponent_max {
            if fraction == 0 {
                return Self::infinity(format, negative);
            }
            FloatKind::NotANumber
        } else if biased == 0 && fraction == 0 {
            return Self::zero(format, negative);
        } else {
            let (m, e) = if biased == 0 {
                (fraction, format.min_exponent())
            } else {
                (
                    fraction | (1u64 << fraction_bits),
                    biased as i32 - bias - fraction_bits as i32,
                )
            };
            let m = m as i64;
            FloatKind::Finite {
                significand: if negative { -m } else { m },
                exponent: e,
            }
        };
        Self { format, kind }
    }

    /// The IEEE 754 interchange encoding. `NotANumber` encodes as the
    /// positive quiet NaN.
    pub fn to_bits(&self) -> u64 {
        let format = self.format;
        let fraction_bits = format.fraction_bits();
        let exponent_max = format.exponent_field_max();
        let sign_bit = 1u64 << (format.total_bits() - 1);
        let bias = exponent_max as i32 / 2;
        match self.kind {
            FloatKind::PositiveZero => 0,
            FloatKind::NegativeZero => sign_bit,
            FloatKind::PositiveInfinity => exponent_max << fraction_bits,
            FloatKind::NegativeInfinity => sign_bit | exponent_max << fraction_bits,
            FloatKind::NotANumber => exponent_max << fraction_bits | 1u64 << (fraction_bits - 1),
            FloatKind::Finite {
                significand,
                exponent,
            } => {
                let sign = if significand < 0 { sign_bit } else { 0 };
                let m = significand.unsigned_abs();
                let hidden = 1u64 << fraction_bits;
                if m < hidden {
                    // subnormal
                    sign | m
                } else {
                    let biased = (exponent + bias + fraction_bits as i32) as u64;
                    sign | biased << fraction_bits | (m - hidden)
                }
            }
        }
    }

    pub fn format(&self) -> BinaryFormat {
        self.format
    }

    pub fn kind(&self) -> FloatKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FloatKind::Finite { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, FloatKind::PositiveZero | FloatKind::NegativeZero)
    }

    /// Finite or zero: has an exact decimal expansion.
    pub fn is_number(&self) -> bool {
        self.is_finite() || self.is_zero()
    }

    pub fn is_infinite(&self) -> bool {
        matches!(
            self.kind,
            FloatKind::PositiveInfinity | FloatKind::NegativeInfinity
        )
    }

    pub fn is_nan(&self) -> bool {
        self.kind == FloatKind::NotANumber
    }

    /// Sign bit, as carried by zeros and infinities too. `false` for NaN.
    pub fn is_sign_negative(&self) -> bool {
        match self.kind {
            FloatKind::Finite { significand, .. } => significand < 0,
            FloatKind::NegativeZero | FloatKind::NegativeInfinity => true,
            _ => false,
        }
    }

    /// Total order: `-INF < negatives < -0 < +0 < positives < +INF < NaN`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        fn rank(v: &BinaryFloatValue) -> i8 {
            match v.kind {
                FloatKind::NegativeInfinity => -3,
                FloatKind::Finite { significand, .. } if significand < 0 => -2,
                FloatKind::NegativeZero => -1,
                FloatKind::PositiveZero => 0,
                FloatKind::Finite { .. } => 1,
                FloatKind::PositiveInfinity => 2,
                FloatKind::NotANumber => 3,
            }
        }
        match (self.kind, other.kind) {
            (
                FloatKind::Finite {
                    significand: m1,
                    exponent: e1,
                },
                FloatKind::Finite {
                    significand: m2,
                    exponent: e2,
                },
            ) if (m1 < 0) == (m2 < 0) => {
                let by_magnitude = compare_dyadic(m1.unsigned_abs(), e1, m2.unsigned_abs(), e2);
                if m1 < 0 {
                    by_magnitude.reverse()
                } else {
                    by_magnitude
                }
            }
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

/// Compares `a * 2^ea` with `b * 2^eb` for non-zero 53-bit magnitudes.
fn compare_dyadic(a: u64, ea: i32, b: u64, eb: i32) -> Ordering {
    let top_a = (64 - a.leading_zeros()) as i32 + ea;
    let top_b = (64 - b.leading_zeros()) as i32 + eb;
    if top_a != top_b {
        return top_a.cmp(&top_b);
    }
    // Same leading bit position, so the exponent gap is below 64.
    if ea >= eb {
        ((a as u128) << (ea - eb)).cmp(&(b as u128))
    } else {
        (a as u128).cmp(&((b as u128) << (eb - ea)))
    }
}

impl PartialEq for BinaryFloatValue {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BinaryFloatValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.is_nan() || other.is_nan() {
            return None;
        }
        if self.is_zero() && other.is_zero() {
            return Some(Ordering::Equal);
        }
        Some(self.total_cmp(other))
    }
}

impl From<f32> for BinaryFloatValue {
    fn from(v: f32) -> Self {
        Self::from_bits(BinaryFormat::Binary32, v.to_bits() as u64)
    }
}

impl From<f64> for BinaryFloatValue {
    fn from(v: f64) -> Self {
        Self::from_bits(BinaryFormat::Binary64, v.to_bits())
    }
}

/// Rounds an exact decimal to the nearest value of `format`, ties to even.
///
/// Magnitudes that round (with unbounded exponent) to `2^128` or `2^1024`
/// and beyond become infinities; values that round to zero keep their sign.
pub fn round_to_binary(d: &ExactDecimal, format: BinaryFormat) -> BinaryFloatValue {
    let (magnitude, exponent) = d.magnitude_parts();
    round_scaled(d.is_negative(), magnitude, exponent, format)
}

pub(crate) fn round_numeral(n: &ScaledNumeral, format: BinaryFormat) -> BinaryFloatValue {
    round_scaled(n.negative, &n.magnitude, n.exponent, format)
}

/// Decimal magnitudes beyond `10^OVERFLOW_DECADE` overflow every format.
const OVERFLOW_DECADE: i64 = 310;
/// Decimal magnitudes below `10^UNDERFLOW_DECADE` round to zero in every
/// format (half the smallest binary64 subnormal is about `2.5e-324`).
const UNDERFLOW_DECADE: i64 = -330;

/// Rounds `±magnitude * 10^exponent`.
fn round_scaled(
    negative: bool,
    magnitude: &BigUint,
    exponent: i64,
    format: BinaryFormat,
) -> BinaryFloatValue {
    if magnitude.is_zero() {
        return BinaryFloatValue::zero(format, negative);
    }
    // Bound the magnitude by decades before building any big power.
    let bits = magnitude.bits() as i64;
    let floor_decade = exponent.saturating_add((bits - 1) * 30102 / 100_000);
    let ceil_decade = exponent.saturating_add(bits * 30103 / 100_000 + 1);
    if floor_decade > OVERFLOW_DECADE {
        return BinaryFloatValue::infinity(format, negative);
    }
    if ceil_decade < UNDERFLOW_DECADE {
        return BinaryFloatValue::zero(format, negative);
    }

    let (num, den) = if exponent >= 0 {
        (magnitude * pow10(exponent as u64), BigUint::from(1u32))
    } else {
        (magnitude.clone(), pow10(exponent.unsigned_abs()))
    };

    let precision = format.precision_bits() as i64;
    let min_exponent = format.min_exponent() as i64;
    let quotient = |e2: i64| -> (BigUint, BigUint, BigUint) {
        let (n, d) = if e2 >= 0 {
            (num.clone(), &den << e2 as usize)
        } else {
            (&num << e2.unsigned_abs() as usize, den.clone())
        };
        let (q, r) = n.div_rem(&d);
        (q, r, d)
    };

    // Pick e2 with 2^(p-1) <= num / (den * 2^e2) < 2^p.
    let mut e2 = num.bits() as i64 - den.bits() as i64 - precision;
    let (mut q, mut r, mut d) = quotient(e2);
    loop {
        let q_bits = q.bits() as i64;
        if q_bits > precision {
            e2 += 1;
        } else if q_bits < precision {
            e2 -= 1;
        } else {
            break;
        }
        (q, r, d) = quotient(e2);
    }
    if e2 < min_exponent {
        e2 = min_exponent;
        (q, r, d) = quotient(e2);
    }

    let mut m = q.to_u64().expect("significand fits in 64 bits");
    let twice_remainder: BigUint = r << 1;
    match twice_remainder.cmp(&d) {
        Ordering::Greater => m += 1,
        Ordering::Equal if m & 1 == 1 => m += 1,
        _ => {}
    }
    if m == 1u64 << precision {
        m >>= 1;
        e2 += 1;
    }
    if m == 0 {
        return BinaryFloatValue::zero(format, negative);
    }
    if e2 > format.max_exponent() as i64 {
        return BinaryFloatValue::infinity(format, negative);
    }
    let m = m as i64;
    BinaryFloatValue {
        format,
        kind: FloatKind::Finite {
            significand: if negative { -m } else { m },
            exponent: e2 as i32,
        },
    }
}

/// The exact decimal value of a finite value or zero.
///
/// Both zeros map to decimal zero; the decimal value space has no signed
/// zero.
pub fn binary_to_exact_decimal(v: &BinaryFloatValue) -> Result<ExactDecimal, NumericError> {
    match v.kind {
        FloatKind::PositiveZero | FloatKind::NegativeZero => Ok(ExactDecimal::zero()),
        FloatKind::Finite {
            significand,
            exponent,
        } => Ok(ExactDecimal::from_dyadic(significand, exponent as i64)),
        _ => Err(NumericError::NotFinite(v.kind)),
    }
}

/// The numerically identical `binary64` value of a `binary32` value.
/// `binary64` values are returned unchanged.
pub fn widen(v: &BinaryFloatValue) -> BinaryFloatValue {
    let kind = match v.kind {
        FloatKind::Finite {
            significand,
            exponent,
        } => {
            return BinaryFloatValue::from_parts(BinaryFormat::Binary64, significand, exponent)
                .expect("binary32 values are binary64 values");
        }
        other => other,
    };
    BinaryFloatValue::special(BinaryFormat::Binary64, kind)
}

/// Whether `d` is in the value space of `format`.
///
/// Decided on the reduced fraction of `d`: the denominator has to be a power
/// of two, and the odd part and binary exponent have to fit the format.
pub fn is_exactly_representable(d: &ExactDecimal, format: BinaryFormat) -> bool {
    if d.is_zero() {
        return true;
    }
    let (magnitude, exponent) = d.magnitude_parts();
    let digits = decimal_digits(magnitude) as i64;
    let decade = exponent + digits - 1;
    if decade > OVERFLOW_DECADE || decade < UNDERFLOW_DECADE {
        return false;
    }

    // d = odd * 2^twos
    let (odd, twos) = if exponent >= 0 {
        let k = exponent as u64;
        (magnitude * pow5(k), k as i64)
    } else {
        // d = magnitude / (2^k * 5^k), needs 5^k | magnitude.
        let k = exponent.unsigned_abs();
        // 5^k has more than 0.69k digits.
        if (k as i64) * 69 / 100 > digits {
            return false;
        }
        let (quotient, remainder) = magnitude.div_rem(&pow5(k));
        if !remainder.is_zero() {
            return false;
        }
        (quotient, -(k as i64))
    };
    let trailing = odd.trailing_zeros().unwrap_or(0);
    let odd = odd >> trailing as usize;
    let twos = twos + trailing as i64;

    let precision = format.precision_bits() as i64;
    let odd_bits = odd.bits() as i64;
    if odd_bits > precision || twos < format.min_exponent() as i64 {
        return false;
    }
    // Spend spare significand bits to pull the exponent under the maximum.
    let spare = precision - odd_bits;
    twos - spare <= format.max_exponent() as i64
}

/// The same verdict as [`is_exactly_representable`], reached by rounding to
/// the format and expanding the result back.
pub fn is_exactly_representable_by_round_trip(d: &ExactDecimal, format: BinaryFormat) -> bool {
    match binary_to_exact_decimal(&round_to_binary(d, format)) {
        Ok(expanded) => expanded == *d,
        Err(_) => false,
    }
}

/// Runs both representability decisions and reports whether they agree.
pub fn representability_self_check(d: &ExactDecimal, format: BinaryFormat) -> bool {
    is_exactly_representable(d, format) == is_exactly_representable_by_round_trip(d, format)
}

/// Unit in the last place of the normal binade containing `d`, which must be
/// non-zero. Subnormal magnitudes get the subnormal spacing.
pub fn ulp(d: &ExactDecimal, format: BinaryFormat) -> ExactDecimal {
    let (magnitude, exponent) = d.magnitude_parts();
    // floor(log2 |d|)
    let log2 = if exponent >= 0 {
        (magnitude * pow10(exponent as u64)).bits() as i64 - 1
    } else {
        let den = pow10(exponent.unsigned_abs());
        let mut e = magnitude.bits() as i64 - den.bits() as i64;
        // Adjust until 2^e <= |d| < 2^(e+1).
        let at_least = |e: i64| -> bool {
            if e >= 0 {
                *magnitude >= &den << e as usize
            } else {
                magnitude << e.unsigned_abs() as usize >= den
            }
        };
        while !at_least(e) {
            e -= 1;
        }
        while at_least(e + 1) {
            e += 1;
        }
        e
    };
    let e = (log2 - format.precision_bits() as i64 + 1).max(format.min_exponent() as i64);
    ExactDecimal::from_dyadic(BigInt::from(1), e)
}
