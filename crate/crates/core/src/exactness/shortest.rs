//! Shortest round-trip decimal strings for binary floating point values.
//!
//! The search runs on exact decimals: it computes the interval of decimals
//! that round back to the value, then looks for the coarsest decimal grid
//! that has a point inside it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::binary::{binary_to_exact_decimal, BinaryFloatValue, FloatKind};
use super::decimal::ExactDecimal;

/// Plain notation is used for `10^PLAIN_MIN_DECADE <= |v| < 10^PLAIN_END_DECADE`.
const PLAIN_MIN_DECADE: i64 = -4;
const PLAIN_END_DECADE: i64 = 17;

/// Formats `v` with the fewest significant digits that map back to `v` in
/// its own format. Among equally short candidates the one closest to `v`
/// wins, then the one with an even last digit.
pub fn shortest_roundtrip_string(v: &BinaryFloatValue) -> String {
    let (significand, exponent) = match v.kind() {
        FloatKind::PositiveZero => return "0".into(),
        FloatKind::NegativeZero => return "-0".into(),
        FloatKind::PositiveInfinity => return "INF".into(),
        FloatKind::NegativeInfinity => return "-INF".into(),
        FloatKind::NotANumber => return "NaN".into(),
        FloatKind::Finite {
            significand,
            exponent,
        } => (significand, exponent),
    };
    let (digits, decade) = shortest_digits(v, significand.unsigned_abs(), exponent);
    let mut out = String::new();
    if significand < 0 {
        out.push('-');
    }
    render(&mut out, &digits, decade);
    out
}

/// Returns the digit string (no trailing zeros) and the decimal exponent of
/// its leading digit.
fn shortest_digits(v: &BinaryFloatValue, magnitude: u64, exponent: i32) -> (String, i64) {
    let format = v.format();
    let value = binary_to_exact_decimal(v)
        .expect("finite value")
        .abs();

    // Half-gaps to the neighbours. At the bottom of a binade the gap below
    // is half as wide, except where the binade is the subnormal range.
    let e = exponent as i64;
    let half_up = ExactDecimal::from_dyadic(1, e - 1);
    let at_binade_floor = magnitude == 1u64 << (format.precision_bits() - 1)
        && exponent > format.min_exponent();
    let half_down = if at_binade_floor {
        ExactDecimal::from_dyadic(1, e - 2)
    } else {
        half_up.clone()
    };
    let low = &value - &half_down;
    let high = &value + &half_up;
    // A midpoint rounds to the even significand.
    let inclusive = magnitude % 2 == 0;
    let admits = |c: &ExactDecimal| match (c.cmp(&low), c.cmp(&high)) {
        (Ordering::Greater, Ordering::Less) => true,
        (Ordering::Equal, _) | (_, Ordering::Equal) => inclusive,
        _ => false,
    };

    let top = value.adjusted_exponent().expect("non-zero value");
    for n in 1i64.. {
        let unit_power = top - n + 1;
        let below = value.floor_div_pow10(unit_power);
        let above = if value.is_multiple_of_pow10(unit_power) {
            below.clone()
        } else {
            &below + BigInt::one()
        };
        let candidate = |q: &BigInt| ExactDecimal::from_scientific(q.clone(), unit_power);
        let (c_below, c_above) = (candidate(&below), candidate(&above));
        let pick = match (admits(&c_below), admits(&c_above)) {
            (true, true) if below != above => {
                let d_below = &value - &c_below;
                let d_above = &c_above - &value;
                match d_below.cmp(&d_above) {
                    Ordering::Less => Some(c_below),
                    Ordering::Greater => Some(c_above),
                    Ordering::Equal if below.is_even() => Some(c_below),
                    Ordering::Equal => Some(c_above),
                }
            }
            (true, _) => Some(c_below),
            (false, true) => Some(c_above),
            (false, false) => None,
        };
        if let Some(chosen) = pick {
            let digits = chosen.significand().magnitude().to_str_radix(10);
            let decade = chosen.adjusted_exponent().expect("non-zero candidate");
            return (digits, decade);
        }
    }
    unreachable!("some digit count always round-trips")
}

fn render(out: &mut String, digits: &str, decade: i64) {
    if (PLAIN_MIN_DECADE..PLAIN_END_DECADE).contains(&decade) {
        let int_len = decade + 1;
        if int_len <= 0 {
            out.push_str("0.");
            for _ in 0..-int_len {
                out.push('0');
            }
            out.push_str(digits);
        } else if int_len as usize >= digits.len() {
            out.push_str(digits);
            for _ in 0..int_len as usize - digits.len() {
                out.push('0');
            }
        } else {
            let (int_part, frac_part) = digits.split_at(int_len as usize);
            out.push_str(int_part);
            out.push('.');
            out.push_str(frac_part);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('E');
        out.push_str(&decade.to_string());
    }
}
