use std::io::Write;
use std::process::ExitCode;

use rdf_numeric_lint_core::exactness::{
    distortion_report, shortest_roundtrip_string, widen, BinaryFormat, DistortionReport,
    NotationClass,
};
use serde_json::json;

const EXIT_DISTORTED: u8 = 3;
const EXIT_INVALID: u8 = 2;

/// The mapped value as a double would print it, so binary32 results show
/// the digits a widening reader sees.
pub fn mapped_display(report: &DistortionReport) -> Option<String> {
    report.mapped.map(|v| {
        let shown = match v.format() {
            BinaryFormat::Binary32 => widen(&v),
            BinaryFormat::Binary64 => v,
        };
        shortest_roundtrip_string(&shown)
    })
}

fn text(report: &DistortionReport) -> String {
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".to_owned());
    let rows = [
        ("lexical", report.lexical.clone()),
        ("format", report.format.to_string()),
        ("notation", report.notation.to_string()),
        ("parsed", show(report.parsed.as_ref().map(ToString::to_string))),
        ("mapped", show(mapped_display(report))),
        ("mapped exact", show(report.mapped_exact.as_ref().map(ToString::to_string))),
        ("distorted", report.distorted.to_string()),
        ("absolute error", show(report.absolute_error.as_ref().map(ToString::to_string))),
    ];
    rows.iter()
        .map(|(name, value)| format!("{:<15} {value}\n", format!("{name}:")))
        .collect()
}

fn json(report: &DistortionReport) -> String {
    let value = json!({
        "lexical": report.lexical,
        "format": report.format.to_string(),
        "notation": report.notation.to_string(),
        "parsed": report.parsed.as_ref().map(ToString::to_string),
        "mapped": mapped_display(report),
        "mapped_exact": report.mapped_exact.as_ref().map(ToString::to_string),
        "distorted": report.distorted,
        "absolute_error": report.absolute_error.as_ref().map(ToString::to_string),
    });
    format!("{value}\n")
}

pub fn run(lexical: &str, format: BinaryFormat, as_json: bool) -> ExitCode {
    let report = distortion_report(lexical, format);
    let out = if as_json { json(&report) } else { text(&report) };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    if report.notation == NotationClass::Invalid {
        eprintln!("error: {lexical:?} is not a numeric lexical form");
        ExitCode::from(EXIT_INVALID)
    } else if report.distorted {
        ExitCode::from(EXIT_DISTORTED)
    } else {
        ExitCode::SUCCESS
    }
}
