//! Line-isolated N-Triples / N-Quads scanning.
//!
//! Every physical line is parsed on its own, so a malformed statement only
//! ever costs its own line. Lines that cannot be parsed become
//! [`FailureRecord`]s instead of errors.

mod line;
mod reader;

pub use line::{
    parse_statement_line, FailureReason, FailureRecord, LineOutcome, Literal, Quad, Term,
    SNIPPET_CHARS,
};
pub use reader::{
    scan_path, scan_stream, Outcome, ScanOptions, StatementStream, StreamError,
    DEFAULT_MAX_LINE_BYTES,
};
