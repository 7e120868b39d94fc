//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdf_numeric_lint_core::exactness::{
    binary_to_exact_decimal, exact_add, exact_sub, is_exactly_representable,
    is_exactly_representable_by_round_trip, lexical_to_binary, round_to_binary,
    shortest_roundtrip_string, ulp, widen, BinaryFloatValue, BinaryFormat, ExactDecimal, FloatKind,
};
use rdf_numeric_lint_core::stream::{scan_stream, ScanOptions};
use rdf_numeric_lint_core::survey::{aggregate, SurveyConfig};

const BIN: &str = env!("CARGO_BIN_EXE_rdf-numeric-lint");

type Verdict = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn within(start: Instant, limit: Duration, detail: String) -> Verdict {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail}; {:.2?} (limit {limit:?})", took))
    } else {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    }
}

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn dec(s: &str) -> ExactDecimal {
    s.parse().unwrap()
}

fn shown32(lexical: &str) -> String {
    let v = lexical_to_binary(lexical, BinaryFormat::Binary32).unwrap();
    shortest_roundtrip_string(&widen(&v))
}

fn fig3_check() -> Verdict {
    let start = Instant::now();
    let expected = [
        ("10", false, "10"),
        ("1", false, "1"),
        ("0.1", true, "0.10000000149011612"),
        ("0.5", false, "0.5"),
    ];
    for (lexical, distorted, display) in expected {
        let out = Command::new(BIN)
            .args(["check", lexical, "--format", "binary32", "--json"])
            .output()
            .map_err(|e| e.to_string())?;
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| format!("{lexical}: {e}"))?;
        ensure(report["distorted"] == distorted, || format!("{lexical}: distorted = {}", report["distorted"]))?;
        ensure(report["mapped"] == display, || format!("{lexical}: mapped = {}", report["mapped"]))?;
        let code = out.status.code();
        ensure(code == Some(if distorted { 3 } else { 0 }), || format!("{lexical}: exit {code:?}"))?;
    }
    within(start, Duration::from_secs(1), "flags {false,false,true,false}, displays match".into())
}

fn fig2_rows() -> Verdict {
    let start = Instant::now();
    let f32_of = |s: &str| lexical_to_binary(s, BinaryFormat::Binary32).unwrap();
    ensure(shown32("0.1") == "0.10000000149011612", || format!("rounded: {}", shown32("0.1")))?;
    let overflow = f32_of("1000000000000000000000000000000000000000");
    ensure(overflow.kind() == FloatKind::PositiveInfinity, || format!("overflow: {overflow:?}"))?;
    let underflow = f32_of("0.0000000000000000000000000000000000000000000001");
    ensure(underflow.kind() == FloatKind::PositiveZero, || format!("underflow: {underflow:?}"))?;
    let a = binary_to_exact_decimal(&f32_of("1.0000001")).unwrap();
    let b = binary_to_exact_decimal(&f32_of("1.0000000")).unwrap();
    let cancellation = exact_sub(&a, &b);
    ensure(cancellation == dec("0.00000011920928955078125"), || format!("cancellation: {cancellation}"))?;
    within(start, Duration::from_secs(1), format!("cancellation = {cancellation}"))
}

fn interval_endpoints() -> Verdict {
    let (x, y) = (shown32("73.1"), shown32("0.1"));
    ensure(x == "73.0999984741211", || format!("73.1 shown as {x}"))?;
    ensure(y == "0.10000000149011612", || format!("0.1 shown as {y}"))?;
    let low = exact_sub(&dec(&x), &dec(&y));
    let high = exact_add(&dec(&x), &dec(&y));
    ensure(low == dec("72.99999847263098388"), || format!("low endpoint {low}"))?;
    ensure(high == dec("73.19999847561121612"), || format!("high endpoint {high}"))?;
    Ok(format!("[{low}, {high}]"))
}

fn random_finite(rng: &mut ChaCha8Rng, format: BinaryFormat) -> BinaryFloatValue {
    loop {
        let v = match format {
            BinaryFormat::Binary32 => BinaryFloatValue::from_bits(format, rng.gen::<u32>() as u64),
            BinaryFormat::Binary64 => BinaryFloatValue::from_bits(format, rng.gen::<u64>()),
        };
        if v.is_finite() {
            return v;
        }
    }
}

fn round_trip_suite() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0u64;
    for format in BinaryFormat::ALL {
        for _ in 0..100_000 {
            let v = random_finite(&mut rng, format);
            let d = binary_to_exact_decimal(&v).unwrap();
            let back = round_to_binary(&d, format);
            let same = back.to_bits() == v.to_bits() || (v.is_zero() && back.is_zero());
            if !same || !is_exactly_representable(&d, format) {
                failures += 1;
            }
        }
    }
    ensure(failures == 0, || format!("{failures} failures"))?;
    within(start, Duration::from_secs(60), "2 x 10^5 values, 0 failures".into())
}

fn random_coefficient(rng: &mut ChaCha8Rng, max_digits: usize) -> BigInt {
    let len = rng.gen_range(1..=max_digits);
    let mut digits = String::with_capacity(len + 1);
    if rng.gen_bool(0.5) {
        digits.push('-');
    }
    digits.push(char::from(b'1' + rng.gen_range(0..9u8)));
    for _ in 1..len {
        digits.push(char::from(b'0' + rng.gen_range(0..10u8)));
    }
    digits.parse().unwrap()
}

/// Half arbitrary decimals, half dyadic values written at scale <= 60 so that
/// both verdicts occur.
fn random_decimal(rng: &mut ChaCha8Rng) -> ExactDecimal {
    if rng.gen_bool(0.5) {
        ExactDecimal::new(random_coefficient(rng, 70), rng.gen_range(0..=60))
    } else {
        let bits = rng.gen_range(1..=56u32);
        let m = BigInt::from(rng.gen_range(1u64 << (bits - 1)..=(1u64 << bits) - 1));
        let k = rng.gen_range(0..=60u32);
        ExactDecimal::new(m * BigInt::from(5u32).pow(k), k as u64)
    }
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut disagreements = 0u64;
    let mut exact = [0u64; 2];
    for i in 0..100_000 {
        let d = random_decimal(&mut rng);
        let format = BinaryFormat::ALL[i % 2];
        let analytic = is_exactly_representable(&d, format);
        if analytic != is_exactly_representable_by_round_trip(&d, format) {
            disagreements += 1;
        }
        exact[i % 2] += analytic as u64;
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    within(
        start,
        Duration::from_secs(60),
        format!("10^5 decimals, 0 disagreements ({} / {} representable)", exact[0], exact[1]),
    )
}

fn monotone_and_half_ulp() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0u64;
    for format in BinaryFormat::ALL {
        for _ in 0..10_000 {
            let a = random_decimal(&mut rng);
            let b = if rng.gen_bool(0.5) {
                random_decimal(&mut rng)
            } else {
                // a close neighbour
                let step = ExactDecimal::new(rng.gen_range(1..1000), a.scale() + rng.gen_range(0..30));
                &a + &step
            };
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (rl, rh) = (round_to_binary(&lo, format), round_to_binary(&hi, format));
            if !matches!(rl.partial_cmp(&rh), Some(Ordering::Less | Ordering::Equal)) {
                violations += 1;
            }
            for d in [&lo, &hi] {
                let r = round_to_binary(d, format);
                if d.is_zero() || !r.is_finite() {
                    continue;
                }
                let error = (&binary_to_exact_decimal(&r).unwrap() - d).abs();
                if &error + &error > ulp(d, format) {
                    violations += 1;
                }
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("2 x 10^4 pairs, 0 violations".into())
}

fn scan(inputs: &[PathBuf], jobs: &str, out: &Path) -> Result<(Vec<u8>, Vec<u8>), String> {
    let status = Command::new(BIN)
        .arg("scan")
        .args(inputs)
        .args(["--source", "fixture", "--jobs", jobs, "--output-dir"])
        .arg(out)
        .env_remove("RDF_NUMERIC_LINT_JOBS")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        format!("scan exited {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr))
    })?;
    let read = |name: &str| fs::read(out.join(name)).map_err(|e| e.to_string());
    Ok((read("measures.csv")?, read("failures.csv")?))
}

fn fixture_survey() -> Verdict {
    let start = Instant::now();
    let dir = fixtures();
    let golden_measures = fs::read(dir.join("measures.csv")).map_err(|e| e.to_string())?;
    let golden_failures = fs::read(dir.join("failures.csv")).map_err(|e| e.to_string())?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, jobs) in [("corpus.nq", "1"), ("corpus.nq.gz", "8")] {
        let out = tmp.path().join(format!("{name}-{jobs}"));
        let (measures, failures) = scan(&[dir.join(name)], jobs, &out)?;
        ensure(measures == golden_measures, || format!("{name}: measures.csv differs from golden"))?;
        ensure(failures == golden_failures, || format!("{name}: failures.csv differs from golden"))?;
    }
    let shards: Vec<PathBuf> = ["shard-0.nq", "shard-1.nq.gz", "shard-2.nq", "shard-3.nq.gz", "corpus.nq"]
        .iter()
        .map(|n| dir.join(n))
        .collect();
    let one = scan(&shards, "1", &tmp.path().join("j1"))?;
    let eight = scan(&shards, "8", &tmp.path().join("j8"))?;
    ensure(one == eight, || "jobs=1 and jobs=8 outputs differ".into())?;
    let rows = golden_measures.iter().filter(|&&b| b == b'\n').count() - 1;
    within(
        start,
        Duration::from_secs(10),
        format!("plain and gzip match goldens ({rows} measure rows, 3 failures), jobs=1 == jobs=8"),
    )
}

fn digits(rng: &mut ChaCha8Rng, lengths: std::ops::Range<usize>) -> String {
    let n = rng.gen_range(lengths);
    (0..n).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect()
}

fn random_lexical(rng: &mut ChaCha8Rng) -> String {
    let sign = ["", "-", "+"][rng.gen_range(0..3)];
    match rng.gen_range(0..8) {
        0 => format!("{sign}{}", digits(rng, 1..25)),
        1 => {
            let int = digits(rng, 0..8);
            format!("{sign}{int}.{}", digits(rng, 1..20))
        }
        2 => {
            let mantissa = digits(rng, 1..6);
            format!("{sign}{mantissa}E{}", rng.gen_range(-400..400))
        }
        3 => ["INF", "-INF", "+INF", "NaN"][rng.gen_range(0..4)].to_owned(),
        4 => ["abc", "1,5", "", "1e", "--1", "inf", " ", "0x1p3"][rng.gen_range(0..8)].to_owned(),
        5 => format!("{}", rng.gen::<f32>() * 1000.0),
        6 => {
            let int = digits(rng, 3..4);
            format!(" {int}.{} ", digits(rng, 2..3))
        }
        _ => format!("{}e-{}", rng.gen_range(1..10), rng.gen_range(0..50)),
    }
}

fn inequality_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let datatypes = ["float", "double", "decimal", "integer", "string", "int"];
    let properties = ["price", "width", "ratingValue"];
    let config = SurveyConfig::default();
    let mut groups = 0usize;
    for corpus in 0..1_000 {
        let mut text = String::new();
        for _ in 0..rng.gen_range(0..80) {
            let p = properties[rng.gen_range(0..properties.len())];
            let d = datatypes[rng.gen_range(0..datatypes.len())];
            let scheme = if rng.gen_bool(0.2) { "https" } else { "http" };
            text.push_str(&format!(
                "<http://ex.org/{}> <{scheme}://schema.org/{p}> \"{}\"^^<http://www.w3.org/2001/XMLSchema#{d}> .\n",
                rng.gen::<u16>(),
                random_lexical(&mut rng)
            ));
        }
        let outcomes = scan_stream(std::io::Cursor::new(text.into_bytes()), "c", ScanOptions::default())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let (table, _) = aggregate(outcomes, "s", &config);
        groups += table.groups().count();
        table
            .check_inequalities()
            .map_err(|(key, what)| format!("corpus {corpus}: {what} at {key:?}"))?;
    }
    Ok(format!("10^3 corpora, {groups} groups, 0 violations"))
}

fn desk_scale_substitute(fixture_passed: bool) -> Verdict {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts/smoke_wdc.sh");
    ensure(fixture_passed, || "fixture goldens did not pass".into())?;
    ensure(script.is_file(), || format!("{} missing", script.display()))?;
    Ok("full-corpus figures not reproducible offline; substitute = fixture goldens + scripts/smoke_wdc.sh".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |name: &str, verdict: &Verdict| {
        match verdict {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
        verdict.is_ok()
    };
    report("detection of distorted literals (check)", &fig3_check());
    report("numerical problems: rounded, overflow, underflow, cancellation", &fig2_rows());
    report("interval endpoints from displayed values", &interval_endpoints());
    report("round-trip property suite", &round_trip_suite());
    report("representability oracle equivalence", &oracle_equivalence());
    report("monotonicity and half-ulp bound", &monotone_and_half_ulp());
    let fixture_ok = report("fixture corpus survey goldens", &fixture_survey());
    report("measure inequality suite", &inequality_suite());
    report("survey figures at desk scale", &desk_scale_substitute(fixture_ok));
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
