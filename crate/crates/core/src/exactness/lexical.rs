//! Lexical classification of numeric literals.
//!
//! The grammar follows the XSD 1.1 lexical spaces of `xsd:integer`,
//! `xsd:decimal`, `xsd:float` and `xsd:double`. Leading and trailing
//! whitespace is collapsed away before anything else is looked at.

use std::fmt;

use num_bigint::BigUint;

/// The notation a lexical form is written in.
///
/// Every string falls into exactly one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NotationClass {
    Integer,
    Decimal,
    Exponential,
    InfOrNaN,
    Invalid,
}

impl NotationClass {
    pub fn name(self) -> &'static str {
        match self {
            NotationClass::Integer => "Integer",
            NotationClass::Decimal => "Decimal",
            NotationClass::Exponential => "Exponential",
            NotationClass::InfOrNaN => "InfOrNaN",
            NotationClass::Invalid => "Invalid",
        }
    }

    /// Integer, decimal and exponential notations denote a finite number.
    pub fn is_numeric(self) -> bool {
        matches!(
            self,
            NotationClass::Integer | NotationClass::Decimal | NotationClass::Exponential
        )
    }
}

impl fmt::Display for NotationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strips the whitespace that `whiteSpace="collapse"` would remove from the
/// ends of a lexical form.
pub fn collapse_whitespace(s: &str) -> &str {
    s.trim_matches(|c| matches!(c, ' ' | '\t' | '\n' | '\r'))
}

/// Classifies `s` into its notation class.
pub fn classify_lexical(s: &str) -> NotationClass {
    let s = collapse_whitespace(s);
    if special_value(s).is_some() {
        return NotationClass::InfOrNaN;
    }
    match split_numeral(s) {
        Some(parts) if parts.exponent.is_some() => NotationClass::Exponential,
        Some(parts) if parts.has_point => NotationClass::Decimal,
        Some(_) => NotationClass::Integer,
        None => NotationClass::Invalid,
    }
}

/// The special lexicals of the binary floating point datatypes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SpecialLexical {
    PositiveInfinity,
    NegativeInfinity,
    NotANumber,
}

pub(crate) fn special_value(collapsed: &str) -> Option<SpecialLexical> {
    match collapsed {
        "INF" | "+INF" => Some(SpecialLexical::PositiveInfinity),
        "-INF" => Some(SpecialLexical::NegativeInfinity),
        "NaN" => Some(SpecialLexical::NotANumber),
        _ => None,
    }
}

/// Borrowed pieces of a syntactically valid numeral.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NumeralParts<'a> {
    pub negative: bool,
    pub int_digits: &'a str,
    pub frac_digits: &'a str,
    pub has_point: bool,
    /// Sign and digits of the exponent, if present.
    pub exponent: Option<(bool, &'a str)>,
}

fn digit_run(s: &str) -> usize {
    s.bytes().take_while(u8::is_ascii_digit).count()
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

/// Splits an already collapsed string into numeral parts, or `None` when it
/// is not an integer, decimal or exponential numeral.
pub(crate) fn split_numeral(s: &str) -> Option<NumeralParts<'_>> {
    let (negative, rest) = split_sign(s);
    let int_len = digit_run(rest);
    let int_digits = &rest[..int_len];
    let mut rest = &rest[int_len..];

    let mut has_point = false;
    let mut frac_digits = "";
    if let Some(after) = rest.strip_prefix('.') {
        has_point = true;
        let frac_len = digit_run(after);
        frac_digits = &after[..frac_len];
        rest = &after[frac_len..];
    }
    if int_digits.is_empty() && frac_digits.is_empty() {
        return None;
    }

    let mut exponent = None;
    if let Some(after) = rest.strip_prefix(['e', 'E']) {
        let (exp_negative, exp_rest) = split_sign(after);
        let exp_len = digit_run(exp_rest);
        if exp_len == 0 {
            return None;
        }
        exponent = Some((exp_negative, &exp_rest[..exp_len]));
        rest = &exp_rest[exp_len..];
    }
    if !rest.is_empty() {
        return None;
    }
    Some(NumeralParts {
        negative,
        int_digits,
        frac_digits,
        has_point,
        exponent,
    })
}

/// A numeral reduced to `magnitude * 10^exponent`.
///
/// `magnitude` carries no trailing decimal zeros unless it is zero, in which
/// case `exponent` is zero. `exponent_saturated` is set when the written
/// exponent did not fit in an `i64`; the exponent then holds a saturated
/// value far outside any binary format range.
#[derive(Debug, Clone)]
pub(crate) struct ScaledNumeral {
    pub negative: bool,
    pub magnitude: BigUint,
    pub exponent: i64,
    pub exponent_saturated: bool,
}

impl NumeralParts<'_> {
    pub(crate) fn scale(&self) -> ScaledNumeral {
        let mut digits = String::with_capacity(self.int_digits.len() + self.frac_digits.len());
        digits.push_str(self.int_digits);
        digits.push_str(self.frac_digits);

        let significant = digits.trim_start_matches('0');
        let trimmed = significant.trim_end_matches('0');
        if trimmed.is_empty() {
            return ScaledNumeral {
                negative: self.negative,
                magnitude: BigUint::default(),
                exponent: 0,
                exponent_saturated: false,
            };
        }
        let stripped_zeros = (significant.len() - trimmed.len()) as i64;
        let magnitude = BigUint::parse_bytes(trimmed.as_bytes(), 10)
            .expect("digit run parses as an unsigned integer");

        let (written, mut saturated) = match self.exponent {
            None => (0i64, false),
            Some((negative, digits)) => {
                let digits = digits.trim_start_matches('0');
                match digits.parse::<i64>() {
                    Ok(v) if digits.is_empty() => (v, false),
                    Ok(v) if negative => (-v, false),
                    Ok(v) => (v, false),
                    Err(_) if digits.is_empty() => (0, false),
                    Err(_) if negative => (i64::MIN, true),
                    Err(_) => (i64::MAX, true),
                }
            }
        };
        let shift = stripped_zeros - self.frac_digits.len() as i64;
        let exponent = match written.checked_add(shift) {
            Some(v) => v,
            None => {
                saturated = true;
                if written < 0 {
                    i64::MIN
                } else {
                    i64::MAX
                }
            }
        };
        ScaledNumeral {
            negative: self.negative,
            magnitude,
            exponent,
            exponent_saturated: saturated,
        }
    }
}
