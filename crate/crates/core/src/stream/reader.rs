//! Streaming over whole N-Triples / N-Quads inputs, plain or gzip.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Cursor, Read};
use std::path::Path;
use std::sync::Arc;

use flate2::read::MultiGzDecoder;

use super::line::{is_blank, parse_statement_line, FailureReason, FailureRecord, LineOutcome, Quad};

pub const DEFAULT_MAX_LINE_BYTES: usize = 1 << 20;

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Longer lines are skipped and reported as [`FailureReason::Other`].
    pub max_line_bytes: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            max_line_bytes: DEFAULT_MAX_LINE_BYTES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Quad(Quad),
    Failure(FailureRecord),
}

#[derive(Debug, thiserror::Error)]
pub enum StreamError {
    #[error("stream {file} aborted after line {line}: {source}")]
    StreamAborted {
        file: Arc<str>,
        line: u64,
        #[source]
        source: io::Error,
    },
}

/// Iterator over the statements and failures of one input, in line order.
///
/// Blank and comment lines are skipped. After an I/O error the iterator
/// yields that error once and then ends; everything yielded before it
/// stays valid.
pub struct StatementStream {
    reader: Box<dyn BufRead + Send>,
    file: Arc<str>,
    options: ScanOptions,
    line_number: u64,
    buffer: Vec<u8>,
    pending_error: Option<io::Error>,
    finished: bool,
}

/// Streams `input`, decompressing transparently when it starts with the
/// gzip magic bytes.
pub fn scan_stream<R: Read + Send + 'static>(
    mut input: R,
    file: impl Into<Arc<str>>,
    options: ScanOptions,
) -> StatementStream {
    let mut head = Vec::with_capacity(GZIP_MAGIC.len());
    let sniffed = (&mut input)
        .take(GZIP_MAGIC.len() as u64)
        .read_to_end(&mut head);
    let gzip = head == GZIP_MAGIC;
    let rejoined = Cursor::new(head).chain(input);
    let reader: Box<dyn BufRead + Send> = if gzip {
        Box::new(BufReader::new(MultiGzDecoder::new(rejoined)))
    } else {
        Box::new(BufReader::new(rejoined))
    };
    StatementStream {
        reader,
        file: file.into(),
        options,
        line_number: 0,
        buffer: Vec::new(),
        pending_error: sniffed.err(),
        finished: false,
    }
}

/// Opens and streams a file.
pub fn scan_path(
    path: &Path,
    file: impl Into<Arc<str>>,
    options: ScanOptions,
) -> io::Result<StatementStream> {
    let handle = File::open(path)?;
    Ok(scan_stream(handle, file, options))
}

impl StatementStream {
    pub fn file(&self) -> &Arc<str> {
        &self.file
    }

    /// Reads the next physical line into `buffer`, keeping at most
    /// `max_line_bytes` of it. Returns `None` at end of input and whether the
    /// line was cut otherwise.
    fn read_line(&mut self) -> io::Result<Option<bool>> {
        self.buffer.clear();
        let cap = self.options.max_line_bytes;
        let mut seen_any = false;
        let mut overlong = false;
        loop {
            let available = match self.reader.fill_buf() {
                Ok(bytes) => bytes,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(e),
            };
            if available.is_empty() {
                return Ok(seen_any.then_some(overlong));
            }
            seen_any = true;
            let newline = available.iter().position(|&b| b == b'\n');
            let take = newline.unwrap_or(available.len());
            let room = cap.saturating_sub(self.buffer.len());
            if take > room {
                overlong = true;
            }
            self.buffer.extend_from_slice(&available[..take.min(room)]);
            let consumed = take + usize::from(newline.is_some());
            self.reader.consume(consumed);
            if newline.is_some() {
                return Ok(Some(overlong));
            }
        }
    }

    fn abort(&mut self, source: io::Error) -> StreamError {
        self.finished = true;
        StreamError::StreamAborted {
            file: Arc::clone(&self.file),
            line: self.line_number,
            source,
        }
    }
}

impl Iterator for StatementStream {
    type Item = Result<Outcome, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.finished {
                return None;
            }
            if let Some(e) = self.pending_error.take() {
                return Some(Err(self.abort(e)));
            }
            let overlong = match self.read_line() {
                Ok(Some(overlong)) => overlong,
                Ok(None) => {
                    self.finished = true;
                    return None;
                }
                Err(e) => return Some(Err(self.abort(e))),
            };
            self.line_number += 1;
            if self.buffer.last() == Some(&b'\r') {
                self.buffer.pop();
            }
            if overlong {
                let snippet = String::from_utf8_lossy(&self.buffer);
                return Some(Ok(Outcome::Failure(FailureRecord::new(
                    Arc::clone(&self.file),
                    self.line_number,
                    FailureReason::Other,
                    &snippet,
                ))));
            }
            let line = match std::str::from_utf8(&self.buffer) {
                Ok(line) => line,
                Err(_) => {
                    let snippet = String::from_utf8_lossy(&self.buffer);
                    if is_blank(&snippet) {
                        continue;
                    }
                    return Some(Ok(Outcome::Failure(FailureRecord::new(
                        Arc::clone(&self.file),
                        self.line_number,
                        FailureReason::BadEncoding,
                        &snippet,
                    ))));
                }
            };
            match parse_statement_line(line, &self.file, self.line_number) {
                LineOutcome::Blank => continue,
                LineOutcome::Quad(quad) => return Some(Ok(Outcome::Quad(quad))),
                LineOutcome::Failure(failure) => return Some(Ok(Outcome::Failure(failure))),
            }
        }
    }
}
