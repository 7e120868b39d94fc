//! `rdf-numeric-lint`: check single literals for float distortion, survey
//! N-Quads corpora and summarise the results.

mod check;
mod report;
mod scan;

use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rdf_numeric_lint_core::exactness::BinaryFormat;

/// Exit status for command line usage errors.
const EXIT_USAGE: u8 = 64;
/// Exit status for malformed input data.
const EXIT_DATA: u8 = 65;

#[derive(Debug, Parser)]
#[command(name = "rdf-numeric-lint", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map one lexical form to a binary float and report any distortion.
    ///
    /// Exits 0 when the value is kept exactly, 3 when it is distorted and 2
    /// when the lexical form is not a number at all.
    Check {
        /// Lexical form to check, e.g. `0.1` or `-1.5E300`.
        #[arg(allow_hyphen_values = true)]
        lexical: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Binary32)]
        format: FormatArg,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Measure datatype usage in N-Triples / N-Quads files, plain or gzip.
    ///
    /// Writes `measures.csv` and `failures.csv` to the output directory.
    /// Exits 1 if any input could not be read; the others are still scanned.
    Scan {
        /// Input files; `-` reads standard input.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Label for the `source` column, e.g. `json-ld` or `rdfa`.
        #[arg(long = "source", default_value = "default")]
        source_label: String,
        #[arg(long, short = 'o')]
        output_dir: PathBuf,
        /// CSV with header `prefix,namespace`; enables prefix expansion.
        #[arg(long = "prefix-map")]
        prefix_map_path: Option<PathBuf>,
        /// Keep `https` IRIs apart from their `http` forms.
        #[arg(long)]
        no_unify_scheme: bool,
        /// Also count `schema:rangeIncludes` as a range declaration.
        #[arg(long)]
        range_includes: bool,
        /// Files scanned in parallel [default: available parallelism].
        #[arg(long, short = 'j', env = "RDF_NUMERIC_LINT_JOBS")]
        jobs: Option<NonZeroUsize>,
        /// Lines longer than this are logged as failures without parsing.
        #[arg(long, default_value_t = rdf_numeric_lint_core::stream::DEFAULT_MAX_LINE_BYTES)]
        max_line_bytes: usize,
    },
    /// Render summary tables from a `measures.csv`.
    ///
    /// Exits 65 if the file is not a valid measures CSV.
    Report {
        /// Path to `measures.csv`; `-` reads standard input.
        measures_csv: String,
        /// Rows per ranking.
        #[arg(long, default_value = "10")]
        top_n: NonZeroUsize,
        /// Datatype to rank properties for; repeatable [default: xsd:float, xsd:double].
        #[arg(long = "datatype")]
        datatypes: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    #[value(alias = "float")]
    Binary32,
    #[value(alias = "double")]
    Binary64,
}

impl From<FormatArg> for BinaryFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Binary32 => BinaryFormat::Binary32,
            FormatArg::Binary64 => BinaryFormat::Binary64,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Check {
            lexical,
            format,
            json,
        } => check::run(&lexical, format.into(), json),
        Command::Scan {
            inputs,
            source_label,
            output_dir,
            prefix_map_path,
            no_unify_scheme,
            range_includes,
            jobs,
            max_line_bytes,
        } => scan::run(scan::ScanArgs {
            inputs,
            source_label,
            output_dir,
            prefix_map_path,
            unify_scheme: !no_unify_scheme,
            count_range_includes: range_includes,
            jobs,
            max_line_bytes,
        }),
        Command::Report {
            measures_csv,
            top_n,
            datatypes,
        } => report::run(&measures_csv, top_n.get(), &datatypes),
    }
}
