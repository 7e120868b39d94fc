use std::fs::File;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use rdf_numeric_lint_core::survey::{read_measures_csv, render_report, MeasuresCsvError, ReportOptions};
use rdf_numeric_lint_core::vocab::DISPLAY_PREFIXES;

use crate::{EXIT_DATA, EXIT_USAGE};

/// Accepts a full IRI or a name under one of the display prefixes.
fn expand_datatype(name: &str) -> String {
    if let Some((prefix, local)) = name.split_once(':') {
        if let Some((_, namespace)) = DISPLAY_PREFIXES.iter().find(|(p, _)| *p == prefix) {
            return format!("{namespace}{local}");
        }
    }
    name.to_owned()
}

pub fn run(path: &str, top_n: usize, datatypes: &[String]) -> ExitCode {
    let input: Box<dyn Read> = if path == "-" {
        Box::new(io::stdin())
    } else {
        match File::open(path) {
            Ok(file) => Box::new(file),
            Err(e) => {
                eprintln!("error: {path}: {e}");
                return ExitCode::FAILURE;
            }
        }
    };
    let table = match read_measures_csv(io::BufReader::new(input)) {
        Ok(table) => table,
        Err(MeasuresCsvError::Malformed { line, message }) => {
            eprintln!("error: {path}:{line}: {message}");
            return ExitCode::from(EXIT_DATA);
        }
        Err(MeasuresCsvError::Io(e)) => {
            eprintln!("error: {path}: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut options = ReportOptions {
        top_n,
        ..ReportOptions::default()
    };
    if !datatypes.is_empty() {
        options.focus_datatypes = datatypes.iter().map(|d| expand_datatype(d)).collect();
    }
    if options.focus_datatypes.iter().any(String::is_empty) {
        eprintln!("error: empty --datatype");
        return ExitCode::from(EXIT_USAGE);
    }
    let text = render_report(&table, &options);
    match io::stdout().lock().write_all(text.as_bytes()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
