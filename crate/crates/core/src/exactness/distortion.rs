//! Detection of literals whose binary floating point value differs from the
//! decimal value they are written as.

use super::binary::{binary_to_exact_decimal, round_numeral, BinaryFloatValue, BinaryFormat};
use super::decimal::{exact_sub, ExactDecimal};
use super::lexical::{classify_lexical, collapse_whitespace, split_numeral, NotationClass};
use super::lexical_to_binary;

/// Everything known about how one lexical form maps into a binary format.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    pub lexical: String,
    pub format: BinaryFormat,
    pub notation: NotationClass,
    /// The decimal value of the lexical form. Absent for special values,
    /// invalid lexicals and numerals whose exponent exceeds 64 bits.
    pub parsed: Option<ExactDecimal>,
    /// Absent only for invalid lexicals.
    pub mapped: Option<BinaryFloatValue>,
    /// Exact decimal value of `mapped` when it is finite or zero.
    pub mapped_exact: Option<ExactDecimal>,
    pub distorted: bool,
    /// `|mapped_exact - parsed|` when both exist.
    pub absolute_error: Option<ExactDecimal>,
}

/// Compares the default mapping of `s` into `format`, expanded back to a
/// decimal, with the decimal value of `s`.
///
/// Special values are never distorted. A numeral that overflows to an
/// infinity is. A negative numeral mapping to negative zero is not, since
/// decimal zero is unsigned.
pub fn distortion_report(s: &str, format: BinaryFormat) -> DistortionReport {
    let notation = classify_lexical(s);
    let mut report = DistortionReport {
        lexical: s.to_owned(),
        format,
        notation,
        parsed: None,
        mapped: None,
        mapped_exact: None,
        distorted: false,
        absolute_error: None,
    };
    match notation {
        NotationClass::Invalid => {}
        NotationClass::InfOrNaN => {
            report.mapped = lexical_to_binary(s, format).ok();
        }
        NotationClass::Integer | NotationClass::Decimal | NotationClass::Exponential => {
            let scaled = split_numeral(collapse_whitespace(s))
                .expect("classified as a numeral")
                .scale();
            let mapped = round_numeral(&scaled, format);
            let mapped_exact = binary_to_exact_decimal(&mapped).ok();
            if scaled.exponent_saturated {
                // Non-zero with a decimal exponent beyond 64 bits: no binary
                // value can be equal to it.
                report.distorted = true;
            } else {
                let parsed = ExactDecimal::from_scaled_numeral(scaled);
                match &mapped_exact {
                    Some(exact) => {
                        report.distorted = *exact != parsed;
                        report.absolute_error = Some(exact_sub(exact, &parsed).abs());
                    }
                    None => report.distorted = true,
                }
                report.parsed = Some(parsed);
            }
            report.mapped = Some(mapped);
            report.mapped_exact = mapped_exact;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactness::{is_exactly_representable, parse_exact_decimal, FloatKind};

    #[test]
    fn detection_examples() {
        let f = BinaryFormat::Binary32;
        let r = distortion_report("0.5", f);
        assert!(!r.distorted);
        assert_eq!(r.absolute_error, Some(ExactDecimal::zero()));

        let r = distortion_report("0.1", f);
        assert!(r.distorted);
        assert_eq!(
            r.absolute_error.unwrap(),
            parse_exact_decimal("0.000000001490116119384765625").unwrap()
        );

        let r = distortion_report("10", f);
        assert!(!r.distorted);
        assert_eq!(r.notation, NotationClass::Integer);
    }

    #[test]
    fn absolute_error_by_hand_subtraction() {
        // 0.100000001490116119384765625 - 0.1, column by column
        let expansion = "100000001490116119384765625";
        let tenth = format!("1{}", "0".repeat(expansion.len() - 1));
        let diff = expansion.parse::<u128>().unwrap() - tenth.parse::<u128>().unwrap();
        assert_eq!(diff, 1490116119384765625);
        let expected = ExactDecimal::new(diff as i64, expansion.len() as u64);
        assert_eq!(distortion_report("0.1", BinaryFormat::Binary32).absolute_error, Some(expected));
    }

    #[test]
    fn specials_and_invalid() {
        let r = distortion_report("-INF", BinaryFormat::Binary64);
        assert!(!r.distorted);
        assert_eq!(r.mapped.unwrap().kind(), FloatKind::NegativeInfinity);
        assert!(r.parsed.is_none() && r.mapped_exact.is_none() && r.absolute_error.is_none());

        let r = distortion_report("abc", BinaryFormat::Binary64);
        assert_eq!(r.notation, NotationClass::Invalid);
        assert!(!r.distorted);
        assert!(r.mapped.is_none() && r.parsed.is_none());
    }

    #[test]
    fn overflow_and_underflow_are_distortions() {
        let r = distortion_report("1e39", BinaryFormat::Binary32);
        assert!(r.distorted);
        assert!(r.mapped.unwrap().is_infinite());
        assert!(r.absolute_error.is_none());

        let r = distortion_report("1e-46", BinaryFormat::Binary32);
        assert!(r.distorted);
        assert_eq!(r.mapped_exact, Some(ExactDecimal::zero()));
        assert_eq!(r.absolute_error, Some(parse_exact_decimal("1e-46").unwrap()));
    }

    #[test]
    fn negative_zero_is_not_distorted() {
        let r = distortion_report("-0.0", BinaryFormat::Binary64);
        assert!(!r.distorted);
        assert_eq!(r.mapped.unwrap().kind(), FloatKind::NegativeZero);
    }

    #[test]
    fn saturated_exponent() {
        let r = distortion_report("5e-99999999999999999999", BinaryFormat::Binary64);
        assert!(r.distorted);
        assert!(r.parsed.is_none());
        assert!(r.mapped.unwrap().is_zero());
    }

    #[test]
    fn consistent_with_representability() {
        for s in ["0.1", "0.5", "16777217", "1e39", "-2.75", "3e-7", "1e-46"] {
            for f in BinaryFormat::ALL {
                let d = parse_exact_decimal(s).unwrap();
                assert_eq!(distortion_report(s, f).distorted, !is_exactly_representable(&d, f), "{s} {f}");
            }
        }
    }
}
