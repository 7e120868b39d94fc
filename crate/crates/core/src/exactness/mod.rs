//! Exact numeric semantics of `xsd:decimal`, `xsd:float` and `xsd:double`.

mod binary;
mod decimal;
mod distortion;
mod lexical;
mod shortest;

pub use binary::{
    binary_to_exact_decimal, is_exactly_representable, is_exactly_representable_by_round_trip,
    representability_self_check, round_to_binary, ulp, widen, BinaryFloatValue, BinaryFormat,
    FloatKind,
};
pub use decimal::{exact_add, exact_sub, parse_exact_decimal, ExactDecimal};
pub use distortion::{distortion_report, DistortionReport};
pub use lexical::{classify_lexical, collapse_whitespace, NotationClass};
pub use shortest::shortest_roundtrip_string;

use lexical::{special_value, split_numeral, SpecialLexical};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("not a numeral: {0:?}")]
    MalformedNumeral(String),
    /// The numeral is well formed but its exponent does not fit in 64 bits.
    #[error("exponent out of range: {0:?}")]
    ExponentOutOfRange(String),
    #[error("{0:?} has no finite decimal value")]
    NotFinite(FloatKind),
}

/// The lexical-to-value mapping of `xsd:float` (`Binary32`) or `xsd:double`
/// (`Binary64`), rounding ties to even.
///
/// Numerals with an exponent too large for [`ExactDecimal`] still map to the
/// infinity or zero they round to.
pub fn lexical_to_binary(s: &str, format: BinaryFormat) -> Result<BinaryFloatValue, NumericError> {
    let collapsed = collapse_whitespace(s);
    if let Some(special) = special_value(collapsed) {
        return Ok(match special {
            SpecialLexical::PositiveInfinity => BinaryFloatValue::infinity(format, false),
            SpecialLexical::NegativeInfinity => BinaryFloatValue::infinity(format, true),
            SpecialLexical::NotANumber => BinaryFloatValue::nan(format),
        });
    }
    let parts =
        split_numeral(collapsed).ok_or_else(|| NumericError::MalformedNumeral(s.to_owned()))?;
    Ok(binary::round_numeral(&parts.scale(), format))
}
