//! Detects and measures distortion of numeric RDF literals typed with the
//! binary floating point datatypes `xsd:float` and `xsd:double`.
//!
//! - [`exactness`]: exact decimal values, the binary32/binary64 value spaces,
//!   lexical mappings and distortion reports.
//! - [`stream`]: line-isolated N-Triples / N-Quads scanning.
//! - [`survey`]: IRI cleaning, per-(property, datatype) measures, CSV output
//!   and summary reports.

pub mod exactness;
pub mod stream;
pub mod survey;
pub mod vocab;
