//! Corpus survey: IRI cleaning, per-(property, datatype) measures, CSV
//! result files and summary tables.

mod clean;
mod measure;
mod output;
mod report;

pub use clean::{clean_iri, read_prefix_map, CleaningConfig, PrefixMapError};
pub use measure::{
    aggregate, measure_quad, try_aggregate, Aggregator, FailureLog, GroupKey, LoggedFailure,
    Measure, MeasureCounts, MeasureTable, Observation, SurveyConfig, UnknownMeasure,
};
pub use output::{
    read_measures_csv, write_failures_csv, write_measures_csv, MeasuresCsvError, FAILURES_HEADER,
    MEASURES_HEADER,
};
pub use report::{render_report, share, ReportOptions, DEFAULT_TOP_N};
