//! CSV result files.

use std::io::{self, Read, Write};

use super::measure::{FailureLog, GroupKey, Measure, MeasureTable};

pub const MEASURES_HEADER: [&str; 6] = ["source", "file", "property", "datatype", "measure", "count"];
pub const FAILURES_HEADER: [&str; 5] = ["source", "file", "line", "reason", "snippet"];

fn writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

/// Writes one row per non-zero count, sorted by key.
pub fn write_measures_csv<W: Write>(table: &MeasureTable, sink: W) -> io::Result<()> {
    let mut out = writer(sink);
    out.write_record(MEASURES_HEADER)?;
    for (key, measure, count) in table.entries() {
        out.write_record([
            key.source.as_str(),
            &key.file,
            &key.property,
            &key.datatype,
            measure.name(),
            &count.to_string(),
        ])?;
    }
    out.flush()
}

pub fn write_failures_csv<W: Write>(log: &FailureLog, sink: W) -> io::Result<()> {
    let mut out = writer(sink);
    out.write_record(FAILURES_HEADER)?;
    for entry in log.entries() {
        let record = &entry.record;
        out.write_record([
            entry.source.as_str(),
            &record.source_file,
            &record.line_number.to_string(),
            record.reason.name(),
            &record.snippet,
        ])?;
    }
    out.flush()
}

#[derive(Debug, thiserror::Error)]
pub enum MeasuresCsvError {
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: u64, message: impl Into<String>) -> MeasuresCsvError {
    MeasuresCsvError::Malformed {
        line,
        message: message.into(),
    }
}

impl From<csv::Error> for MeasuresCsvError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map_or(0, |p| p.line());
        match e.into_kind() {
            csv::ErrorKind::Io(e) => MeasuresCsvError::Io(e),
            csv::ErrorKind::Utf8 { err, .. } => malformed(line, format!("invalid UTF-8: {err}")),
            other => malformed(line, format!("{other:?}")),
        }
    }
}

/// Reads a file written by [`write_measures_csv`]. Repeated keys are summed.
pub fn read_measures_csv<R: Read>(input: R) -> Result<MeasureTable, MeasuresCsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = reader.records();
    match records.next() {
        Some(header) => {
            let header = header?;
            if header.iter().ne(MEASURES_HEADER) {
                return Err(malformed(1, format!("header must be `{}`", MEASURES_HEADER.join(","))));
            }
        }
        None => return Err(malformed(1, "missing header")),
    }
    let mut table = MeasureTable::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != MEASURES_HEADER.len() {
            return Err(malformed(
                line,
                format!("expected {} fields, found {}", MEASURES_HEADER.len(), record.len()),
            ));
        }
        let measure: Measure = record[4]
            .parse()
            .map_err(|e| malformed(line, format!("{e}")))?;
        let count_field = &record[5];
        let count = count_field
            .bytes()
            .all(|b| b.is_ascii_digit())
            .then(|| count_field.parse::<u64>().ok())
            .flatten()
            .ok_or_else(|| malformed(line, format!("invalid count {count_field:?}")))?;
        let key = GroupKey {
            source: record[0].to_owned(),
            file: record[1].to_owned(),
            property: record[2].to_owned(),
            datatype: record[3].to_owned(),
        };
        if table.get(&key, measure).checked_add(count).is_none() {
            return Err(malformed(line, "count overflow"));
        }
        table.add(&key, measure, count);
    }
    Ok(table)
}
