//! Arbitrary precision decimal values, the value space of `xsd:decimal`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lexical::{collapse_whitespace, split_numeral, ScaledNumeral};
use super::NumericError;

/// An exact decimal number `coefficient / 10^scale`.
///
/// Internally the value is kept as `significand * 10^exponent` with the
/// significand stripped of trailing decimal zeros, so that large positive
/// exponents (`1e400`) do not have to be materialized. Two values are equal
/// exactly when their representations are equal, which makes the derived
/// `Eq` and `Hash` compare by value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactDecimal {
    significand: BigInt,
    exponent: i64,
}

pub(crate) fn pow10(n: u64) -> BigUint {
    BigUint::from(10u32).pow(u32::try_from(n).expect("decimal exponent fits in u32"))
}

pub(crate) fn pow5(n: u64) -> BigUint {
    BigUint::from(5u32).pow(u32::try_from(n).expect("decimal exponent fits in u32"))
}

/// Number of decimal digits of a non-zero magnitude.
pub(crate) fn decimal_digits(n: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    // bits * log10(2) is within one of the digit count; settle the boundary
    // with a single comparison.
    let bits = n.bits();
    let estimate = ((bits - 1) * 30103 / 100_000) + 1;
    if *n >= pow10(estimate) {
        estimate + 1
    } else {
        estimate
    }
}

/// Removes trailing decimal zeros, returning how many were removed.
fn strip_trailing_zeros(n: &mut BigInt) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let ten = BigInt::from(10);
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(&ten);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

impl ExactDecimal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_scientific(BigInt::one(), 0)
    }

    /// Builds `coefficient / 10^scale` in canonical form.
    pub fn new(coefficient: impl Into<BigInt>, scale: u64) -> Self {
        let exponent = -i64::try_from(scale).expect("scale fits in i64");
        Self::from_scientific(coefficient, exponent)
    }

    /// Builds `significand * 10^exponent` in canonical form.
    pub fn from_scientific(significand: impl Into<BigInt>, exponent: i64) -> Self {
        let mut significand = significand.into();
        if significand.is_zero() {
            return Self::zero();
        }
        let stripped = strip_trailing_zeros(&mut significand) as i64;
        Self {
            significand,
            exponent: exponent + stripped,
        }
    }

    pub(crate) fn from_scaled_numeral(n: ScaledNumeral) -> Self {
        let sign = if n.negative { Sign::Minus } else { Sign::Plus };
        if n.magnitude.is_zero() {
            return Self::zero();
        }
        Self {
            significand: BigInt::from_biguint(sign, n.magnitude),
            exponent: n.exponent,
        }
    }

    /// Multiplies by a power of two, exactly.
    pub fn from_dyadic(significand: impl Into<BigInt>, binary_exponent: i64) -> Self {
        let significand = significand.into();
        if binary_exponent >= 0 {
            Self::from_scientific(significand << binary_exponent as usize, 0)
        } else {
            let k = binary_exponent.unsigned_abs();
            Self::from_scientific(significand * BigInt::from(pow5(k)), binary_exponent)
        }
    }

    /// The integer `i` of the `i / 10^n` form.
    ///
    /// For values with a large positive exponent this materializes every
    /// trailing zero.
    pub fn coefficient(&self) -> BigInt {
        if self.exponent > 0 {
            &self.significand * BigInt::from(pow10(self.exponent as u64))
        } else {
            self.significand.clone()
        }
    }

    /// The `n` of the `i / 10^n` form.
    pub fn scale(&self) -> u64 {
        if self.exponent < 0 {
            self.exponent.unsigned_abs()
        } else {
            0
        }
    }

    /// Significand without trailing zeros.
    pub fn significand(&self) -> &BigInt {
        &self.significand
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.significand.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.significand.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            significand: self.significand.abs(),
            exponent: self.exponent,
        }
    }

    /// `floor(log10(|self|))`, or `None` for zero.
    pub fn adjusted_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.exponent + decimal_digits(self.significand.magnitude()) as i64 - 1)
    }

    /// Both operands brought to the smaller of the two exponents.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let exponent = self.exponent.min(other.exponent);
        let lift = |d: &Self| {
            let shift = (d.exponent - exponent) as u64;
            if shift == 0 {
                d.significand.clone()
            } else {
                &d.significand * BigInt::from(pow10(shift))
            }
        };
        (lift(self), lift(other), exponent)
    }

    pub(crate) fn magnitude_parts(&self) -> (&BigUint, i64) {
        (self.significand.magnitude(), self.exponent)
    }

    /// `floor(self / 10^power)` for a non-negative value.
    pub(crate) fn floor_div_pow10(&self, power: i64) -> BigInt {
        debug_assert!(!self.is_negative());
        let shift = self.exponent - power;
        if shift >= 0 {
            &self.significand * BigInt::from(pow10(shift as u64))
        } else {
            &self.significand / BigInt::from(pow10(shift.unsigned_abs()))
        }
    }

    /// Whether the value is an integer multiple of `10^power`.
    pub(crate) fn is_multiple_of_pow10(&self, power: i64) -> bool {
        self.is_zero() || self.exponent >= power
    }
}

/// Returns the exact value denoted by an integer, decimal or exponential
/// numeral.
pub fn parse_exact_decimal(s: &str) -> Result<ExactDecimal, NumericError> {
    let parts = split_numeral(collapse_whitespace(s))
        .ok_or_else(|| NumericError::MalformedNumeral(s.to_owned()))?;
    let scaled = parts.scale();
    if scaled.exponent_saturated {
        return Err(NumericError::ExponentOutOfRange(s.to_owned()));
    }
    Ok(ExactDecimal::from_scaled_numeral(scaled))
}

pub fn exact_add(a: &ExactDecimal, b: &ExactDecimal) -> ExactDecimal {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (x, y, exponent) = a.aligned(b);
    ExactDecimal::from_scientific(x + y, exponent)
}

pub fn exact_sub(a: &ExactDecimal, b: &ExactDecimal) -> ExactDecimal {
    exact_add(a, &-b)
}

impl Add for &ExactDecimal {
    type Output = ExactDecimal;
    fn add(self, rhs: Self) -> ExactDecimal {
        exact_add(self, rhs)
    }
}

impl Sub for &ExactDecimal {
    type Output = ExactDecimal;
    fn sub(self, rhs: Self) -> ExactDecimal {
        exact_sub(self, rhs)
    }
}

impl Add for ExactDecimal {
    type Output = ExactDecimal;
    fn add(self, rhs: Self) -> ExactDecimal {
        exact_add(&self, &rhs)
    }
}

impl Sub for ExactDecimal {
    type Output = ExactDecimal;
    fn sub(self, rhs: Self) -> ExactDecimal {
        exact_sub(&self, &rhs)
    }
}

impl Neg for &ExactDecimal {
    type Output = ExactDecimal;
    fn neg(self) -> ExactDecimal {
        ExactDecimal {
            significand: -&self.significand,
            exponent: self.exponent,
        }
    }
}

impl Neg for ExactDecimal {
    type Output = ExactDecimal;
    fn neg(self) -> ExactDecimal {
        -&self
    }
}

impl Ord for ExactDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_sign = self.significand.sign().cmp(&other.significand.sign());
        if by_sign != Ordering::Equal || self.is_zero() {
            return by_sign;
        }
        // Same non-zero sign: order magnitudes, flipping for negatives.
        let magnitude_order = match self.adjusted_exponent().cmp(&other.adjusted_exponent()) {
            Ordering::Equal => {
                let (x, y, _) = self.aligned(other);
                x.magnitude().cmp(y.magnitude())
            }
            o => o,
        };
        if self.is_negative() {
            magnitude_order.reverse()
        } else {
            magnitude_order
        }
    }
}

impl PartialOrd for ExactDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for ExactDecimal {
    fn from(v: i64) -> Self {
        Self::from_scientific(v, 0)
    }
}

impl From<BigInt> for ExactDecimal {
    fn from(v: BigInt) -> Self {
        Self::from_scientific(v, 0)
    }
}

impl FromStr for ExactDecimal {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_exact_decimal(s)
    }
}

/// Plain decimal notation: no exponent, no trailing fractional zeros.
impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        let digits = self.significand.magnitude().to_str_radix(10);
        if self.exponent >= 0 {
            f.write_str(&digits)?;
            for _ in 0..self.exponent {
                f.write_str("0")?;
            }
            return Ok(());
        }
        let frac_len = self.exponent.unsigned_abs() as usize;
        if digits.len() > frac_len {
            let (int_part, frac_part) = digits.split_at(digits.len() - frac_len);
            write!(f, "{int_part}.{frac_part}")
        } else {
            f.write_str("0.")?;
            for _ in 0..frac_len - digits.len() {
                f.write_str("0")?;
            }
            f.write_str(&digits)
        }
    }
}

impl fmt::Debug for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactDecimal({self})")
    }
}
