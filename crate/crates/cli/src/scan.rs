use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use rayon::prelude::*;
use rdf_numeric_lint_core::stream::{scan_path, scan_stream, ScanOptions};
use rdf_numeric_lint_core::survey::{
    read_prefix_map, try_aggregate, write_failures_csv, write_measures_csv, CleaningConfig,
    FailureLog, MeasureTable, SurveyConfig,
};
use tempfile::NamedTempFile;

use crate::EXIT_USAGE;

pub struct ScanArgs {
    pub inputs: Vec<String>,
    pub source_label: String,
    pub output_dir: PathBuf,
    pub prefix_map_path: Option<PathBuf>,
    pub unify_scheme: bool,
    pub count_range_includes: bool,
    pub jobs: Option<NonZeroUsize>,
    pub max_line_bytes: usize,
}

pub const MEASURES_FILE: &str = "measures.csv";
pub const FAILURES_FILE: &str = "failures.csv";

/// The `file` column value: the base name without a `.gz` suffix, so a
/// compressed copy of a file is counted under the same name.
pub fn file_label(input: &str) -> String {
    if input == "-" {
        return "-".to_owned();
    }
    let name = Path::new(input)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.to_owned());
    match name.strip_suffix(".gz") {
        Some(stem) if !stem.is_empty() => stem.to_owned(),
        _ => name,
    }
}

fn survey_config(args: &ScanArgs) -> Result<SurveyConfig> {
    let mut cleaning = match &args.prefix_map_path {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("{}", path.display()))?;
            let map = read_prefix_map(file).with_context(|| format!("{}", path.display()))?;
            CleaningConfig::with_prefix_map(map).with_context(|| format!("{}", path.display()))?
        }
        None => CleaningConfig::default(),
    };
    cleaning.unify_scheme = args.unify_scheme;
    Ok(SurveyConfig {
        cleaning,
        count_range_includes: args.count_range_includes,
    })
}

fn scan_one(
    input: &str,
    source: &str,
    config: &SurveyConfig,
    options: ScanOptions,
) -> Result<(MeasureTable, FailureLog)> {
    let label = file_label(input);
    let stream = if input == "-" {
        scan_stream(io::stdin(), label, options)
    } else {
        scan_path(Path::new(input), label, options).with_context(|| input.to_owned())?
    };
    try_aggregate(stream, source, config).with_context(|| input.to_owned())
}

/// Writes both files under temporary names first and only then renames
/// them into place.
fn write_outputs(dir: &Path, table: &MeasureTable, log: &FailureLog) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("{}", dir.display()))?;
    let write = |render: &dyn Fn(&mut BufWriter<&mut File>) -> io::Result<()>| -> Result<NamedTempFile> {
        let mut temp = NamedTempFile::new_in(dir).with_context(|| format!("{}", dir.display()))?;
        {
            let mut out = BufWriter::new(temp.as_file_mut());
            render(&mut out)?;
            out.flush()?;
        }
        temp.as_file().sync_all()?;
        Ok(temp)
    };
    let measures = write(&|out| write_measures_csv(table, out))?;
    let failures = write(&|out| write_failures_csv(log, out))?;
    for (temp, name) in [(measures, MEASURES_FILE), (failures, FAILURES_FILE)] {
        let target = dir.join(name);
        temp.persist(&target)
            .with_context(|| format!("{}", target.display()))?;
    }
    Ok(())
}

pub fn run(args: ScanArgs) -> ExitCode {
    if args.inputs.iter().filter(|i| *i == "-").count() > 1 {
        eprintln!("error: standard input can only be given once");
        return ExitCode::from(EXIT_USAGE);
    }
    let config = match survey_config(&args) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut labels: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for input in &args.inputs {
        labels.entry(file_label(input)).or_default().push(input);
    }
    for (label, inputs) in labels.iter().filter(|(_, v)| v.len() > 1) {
        eprintln!("warning: {} are all counted as file {label:?}", inputs.join(", "));
    }

    let jobs = args
        .jobs
        .map(NonZeroUsize::get)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::FAILURE;
        }
    };
    let options = ScanOptions {
        max_line_bytes: args.max_line_bytes,
    };
    let results: Vec<Result<(MeasureTable, FailureLog)>> = pool.install(|| {
        args.inputs
            .par_iter()
            .map(|input| scan_one(input, &args.source_label, &config, options))
            .collect()
    });

    let mut table = MeasureTable::new();
    let mut log = FailureLog::new();
    let mut failed = false;
    let mut scanned = 0usize;
    for result in results {
        match result {
            Ok((part, part_log)) => {
                table.merge(&part);
                log.merge(part_log);
                scanned += 1;
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                failed = true;
            }
        }
    }
    if let Err(e) = write_outputs(&args.output_dir, &table, &log) {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    eprintln!(
        "scanned {scanned} of {} inputs, {} unparsable lines",
        args.inputs.len(),
        log.len()
    );
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
