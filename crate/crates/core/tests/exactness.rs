use std::cmp::Ordering;

use proptest::prelude::*;
use rdf_numeric_lint_core::exactness::{
    binary_to_exact_decimal, classify_lexical, distortion_report, is_exactly_representable,
    is_exactly_representable_by_round_trip, lexical_to_binary, parse_exact_decimal,
    round_to_binary, shortest_roundtrip_string, ulp, BinaryFloatValue, BinaryFormat, ExactDecimal,
    NotationClass, NumericError,
};
use regex::Regex;

fn finite32() -> impl Strategy<Value = BinaryFloatValue> {
    any::<u32>()
        .prop_filter("finite", |b| (b >> 23) & 0xff != 0xff)
        .prop_map(|b| BinaryFloatValue::from_bits(BinaryFormat::Binary32, b as u64))
}

fn finite64() -> impl Strategy<Value = BinaryFloatValue> {
    any::<u64>()
        .prop_filter("finite", |b| (b >> 52) & 0x7ff != 0x7ff)
        .prop_map(|b| BinaryFloatValue::from_bits(BinaryFormat::Binary64, b))
}

fn finite() -> impl Strategy<Value = BinaryFloatValue> {
    prop_oneof![finite32(), finite64()]
}

fn format() -> impl Strategy<Value = BinaryFormat> {
    prop_oneof![Just(BinaryFormat::Binary32), Just(BinaryFormat::Binary64)]
}

/// Mixed-scale decimals: long coefficients, small coefficients at extreme
/// exponents, and products of powers of two.
fn decimal() -> impl Strategy<Value = ExactDecimal> {
    prop_oneof![
        ("-?[1-9][0-9]{0,69}", 0u64..=60).prop_map(|(c, s)| ExactDecimal::new(
            c.parse::<num_bigint::BigInt>().unwrap(),
            s
        )),
        (any::<i64>(), -340i64..320).prop_map(|(m, e)| ExactDecimal::from_scientific(m, e)),
        (-(1i64 << 54)..(1i64 << 54), -1100i64..1030).prop_map(|(m, e)| ExactDecimal::from_dyadic(m, e)),
    ]
}

fn numeral() -> impl Strategy<Value = String> {
    prop_oneof![
        "[+-]?[0-9]{1,30}",
        "[+-]?[0-9]{0,20}\\.[0-9]{1,40}",
        "[+-]?[0-9]{1,20}\\.[0-9]{0,20}",
        ("[+-]?[0-9]{1,20}(\\.[0-9]{0,20})?", "[eE][+-]?", 0u32..400).prop_map(|(m, e, x)| format!("{m}{e}{x}")),
        ("[1-9]", -350i32..330).prop_map(|(d, e)| format!("{d}e{e}")),
        // midpoints between neighbouring floats
        (any::<u64>(), any::<bool>()).prop_map(|(bits, narrow)| {
            let fmt = if narrow { BinaryFormat::Binary32 } else { BinaryFormat::Binary64 };
            let mask = if narrow { 0x7f7f_ffff } else { 0x7fef_ffff_ffff_ffff };
            let v = BinaryFloatValue::from_bits(fmt, bits & mask);
            let lo = binary_to_exact_decimal(&v).unwrap();
            let next = BinaryFloatValue::from_bits(fmt, (bits & mask) + 1);
            let hi = binary_to_exact_decimal(&next).unwrap();
            let sum = &lo + &hi;
            // halve exactly: x/2 = 5x/10
            let half = ExactDecimal::from_scientific(sum.significand() * 5, sum.exponent() - 1);
            half.to_string()
        }),
    ]
}

fn expansion(v: &BinaryFloatValue) -> ExactDecimal {
    binary_to_exact_decimal(v).unwrap()
}

fn same_value(a: &BinaryFloatValue, b: &BinaryFloatValue) -> bool {
    a.format() == b.format() && a.to_bits() == b.to_bits()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn expansion_round_trips(v in finite()) {
        let d = expansion(&v);
        prop_assert!(same_value(&round_to_binary(&d, v.format()), &v) || (d.is_zero() && v.is_zero()));
        prop_assert!(is_exactly_representable(&d, v.format()));
    }

    #[test]
    fn representability_oracles_agree(d in decimal(), fmt in format()) {
        prop_assert_eq!(
            is_exactly_representable(&d, fmt),
            is_exactly_representable_by_round_trip(&d, fmt),
            "{}", d
        );
    }

    #[test]
    fn mapping_matches_host_parser(s in numeral()) {
        let host32 = s.parse::<f32>().unwrap();
        let host64 = s.parse::<f64>().unwrap();
        let ours32 = lexical_to_binary(&s, BinaryFormat::Binary32).unwrap();
        let ours64 = lexical_to_binary(&s, BinaryFormat::Binary64).unwrap();
        prop_assert_eq!(ours32.to_bits(), host32.to_bits() as u64, "{}", s);
        prop_assert_eq!(ours64.to_bits(), host64.to_bits(), "{}", s);
    }

    #[test]
    fn rounding_is_monotone(a in decimal(), b in decimal(), fmt in format()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (rl, rh) = (round_to_binary(&lo, fmt), round_to_binary(&hi, fmt));
        prop_assert_ne!(rl.partial_cmp(&rh), Some(Ordering::Greater), "{} {}", lo, hi);
        prop_assert_ne!(rl.partial_cmp(&rh), None);
    }

    #[test]
    fn rounding_is_monotone_for_close_pairs(a in decimal(), digits in 1u64..40, fmt in format()) {
        let delta = ExactDecimal::new(1, a.scale() + digits);
        let b = &a + &delta;
        let (ra, rb) = (round_to_binary(&a, fmt), round_to_binary(&b, fmt));
        prop_assert_ne!(ra.partial_cmp(&rb), Some(Ordering::Greater), "{} {}", a, b);
    }

    #[test]
    fn rounding_error_is_at_most_half_ulp(d in decimal(), fmt in format()) {
        prop_assume!(!d.is_zero());
        let r = round_to_binary(&d, fmt);
        prop_assume!(r.is_finite());
        let error = (&expansion(&r) - &d).abs();
        let unit = ulp(&d, fmt);
        prop_assert!(&error + &error <= unit, "d={} error={} ulp={}", d, error, unit);
    }

    #[test]
    fn shortest_string_round_trips(v in finite()) {
        let s = shortest_roundtrip_string(&v);
        let back = lexical_to_binary(&s, v.format()).unwrap();
        prop_assert!(same_value(&back, &v), "{} -> {}", s, back.to_bits());
    }

    #[test]
    fn shortest_digits_match_host_formatter(v in finite()) {
        prop_assume!(!v.is_zero());
        let host = match v.format() {
            BinaryFormat::Binary32 => format!("{:e}", f32::from_bits(v.to_bits() as u32)),
            BinaryFormat::Binary64 => format!("{:e}", f64::from_bits(v.to_bits())),
        };
        let ours = parse_exact_decimal(&shortest_roundtrip_string(&v)).unwrap();
        let host = parse_exact_decimal(&host).unwrap();
        if ours != host {
            // The host printer rounds exact ties up; ours goes to the even digit.
            let exact = expansion(&v);
            let digits = |d: &ExactDecimal| d.significand().magnitude().to_string();
            prop_assert_eq!(digits(&ours).len(), digits(&host).len());
            prop_assert_eq!((&ours - &exact).abs(), (&host - &exact).abs(), "{} vs {}", ours, host);
            let last = digits(&ours).pop().unwrap();
            prop_assert!(matches!(last, '0' | '2' | '4' | '6' | '8'), "{} vs {}", ours, host);
        }
    }

    #[test]
    fn no_shorter_string_round_trips(v in finite()) {
        prop_assume!(!v.is_zero());
        let ours = parse_exact_decimal(&shortest_roundtrip_string(&v)).unwrap();
        let our_digits = ours.significand().magnitude().to_string().len();
        // For each shorter length only the two grid points around v can be
        // closest; if neither maps back, no string of that length does.
        let exact = expansion(&v).abs();
        let digits = exact.significand().magnitude().to_string();
        for n in 1..our_digits {
            let cut = digits.len().saturating_sub(n);
            let floor: num_bigint::BigUint = digits[..digits.len() - cut].parse().unwrap();
            let exponent = exact.exponent() + cut as i64;
            for candidate in [floor.clone(), floor + 1u32] {
                let text = format!("{}{candidate}e{exponent}", if v.is_sign_negative() { "-" } else { "" });
                let maps_back = match v.format() {
                    BinaryFormat::Binary32 => text.parse::<f32>().unwrap().to_bits() as u64 == v.to_bits(),
                    BinaryFormat::Binary64 => text.parse::<f64>().unwrap().to_bits() == v.to_bits(),
                };
                prop_assert!(!maps_back, "{} is shorter than {}", text, ours);
            }
        }
    }

    #[test]
    fn classification_partitions_strings(s in "[ \t]?[+-]?[0-9.eEINFNa]{0,8}[ \n]?") {
        let integer = Regex::new(r"^[+-]?[0-9]+$").unwrap();
        let decimal = Regex::new(r"^[+-]?([0-9]+\.[0-9]*|\.[0-9]+)$").unwrap();
        let exponential = Regex::new(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)[eE][+-]?[0-9]+$").unwrap();
        let special = Regex::new(r"^(\+?INF|-INF|NaN)$").unwrap();
        let t = s.trim_matches([' ', '\t', '\n', '\r']);
        let hits = [
            (integer.is_match(t), NotationClass::Integer),
            (decimal.is_match(t), NotationClass::Decimal),
            (exponential.is_match(t), NotationClass::Exponential),
            (special.is_match(t), NotationClass::InfOrNaN),
        ];
        let matched: Vec<NotationClass> = hits.iter().filter(|h| h.0).map(|h| h.1).collect();
        prop_assert!(matched.len() <= 1);
        let expected = matched.first().copied().unwrap_or(NotationClass::Invalid);
        let class = classify_lexical(&s);
        prop_assert_eq!(class, expected, "{:?}", s);
        match parse_exact_decimal(&s) {
            Ok(_) | Err(NumericError::ExponentOutOfRange(_)) => prop_assert!(class.is_numeric()),
            Err(_) => prop_assert!(!class.is_numeric()),
        }
    }

    #[test]
    fn distortion_matches_representability(s in numeral(), fmt in format()) {
        let report = distortion_report(&s, fmt);
        let parsed = parse_exact_decimal(&s).unwrap();
        prop_assert_eq!(report.distorted, !is_exactly_representable(&parsed, fmt));
        prop_assert_eq!(report.parsed.as_ref(), Some(&parsed));
        let mapped = report.mapped.unwrap();
        prop_assert!(same_value(&mapped, &lexical_to_binary(&s, fmt).unwrap()));
        if let (Some(exact), Some(error)) = (&report.mapped_exact, &report.absolute_error) {
            prop_assert_eq!(&(exact - &parsed).abs(), error);
        }
    }
}

#[test]
fn zero_expansions_map_back_with_sign() {
    for fmt in BinaryFormat::ALL {
        let neg = lexical_to_binary("-0", fmt).unwrap();
        assert!(neg.is_zero() && neg.is_sign_negative());
        assert!(is_exactly_representable(&expansion(&neg), fmt));
    }
}
