//! The eight per-(property, datatype) measures and their aggregation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::exactness::{
    classify_lexical, is_exactly_representable, parse_exact_decimal, BinaryFormat, NotationClass,
};
use crate::stream::{FailureRecord, Outcome, Quad, Term};
use crate::vocab::{RDFS_RANGE, SCHEMA_RANGE_INCLUDES};

use super::clean::{clean_iri, CleaningConfig};

/// A counter kept per source, file, property and datatype.
///
/// Variants are declared in name order, so the derived ordering sorts like
/// the names do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Lexicals in the lexical space but not the value space of `xsd:double`.
    UnpreciseRepresentableInDouble,
    /// Lexicals in the lexical space but not the value space of `xsd:float`.
    UnpreciseRepresentableInFloat,
    /// Literals with the datatype.
    UsedAsDatatype,
    /// Statements declaring the datatype as range of the property.
    UsedAsPropertyRange,
    ValidDecimalNotation,
    ValidExponentialNotation,
    ValidInfOrNaNNotation,
    ValidIntegerNotation,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::UnpreciseRepresentableInDouble,
        Measure::UnpreciseRepresentableInFloat,
        Measure::UsedAsDatatype,
        Measure::UsedAsPropertyRange,
        Measure::ValidDecimalNotation,
        Measure::ValidExponentialNotation,
        Measure::ValidInfOrNaNNotation,
        Measure::ValidIntegerNotation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::UnpreciseRepresentableInDouble => "UnpreciseRepresentableInDouble",
            Measure::UnpreciseRepresentableInFloat => "UnpreciseRepresentableInFloat",
            Measure::UsedAsDatatype => "UsedAsDatatype",
            Measure::UsedAsPropertyRange => "UsedAsPropertyRange",
            Measure::ValidDecimalNotation => "ValidDecimalNotation",
            Measure::ValidExponentialNotation => "ValidExponentialNotation",
            Measure::ValidInfOrNaNNotation => "ValidInfOrNaNNotation",
            Measure::ValidIntegerNotation => "ValidIntegerNotation",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// The notation measure counted for a lexical of class `class`.
    pub fn for_notation(class: NotationClass) -> Option<Measure> {
        match class {
            NotationClass::Integer => Some(Measure::ValidIntegerNotation),
            NotationClass::Decimal => Some(Measure::ValidDecimalNotation),
            NotationClass::Exponential => Some(Measure::ValidExponentialNotation),
            NotationClass::InfOrNaN => Some(Measure::ValidInfOrNaNNotation),
            NotationClass::Invalid => None,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown measure {0:?}")]
pub struct UnknownMeasure(pub String);

impl FromStr for Measure {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMeasure(s.to_owned()))
    }
}

/// Where a count belongs, apart from the measure itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupKey {
    pub source: String,
    pub file: String,
    pub property: String,
    pub datatype: String,
}

/// The eight counters of one group, indexed in [`Measure::ALL`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeasureCounts([u64; 8]);

impl MeasureCounts {
    pub fn get(&self, measure: Measure) -> u64 {
        self.0[measure.index()]
    }

    pub fn add(&mut self, measure: Measure, count: u64) {
        let slot = &mut self.0[measure.index()];
        *slot = slot.checked_add(count).expect("measure count overflow");
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Non-zero counts in measure order.
    pub fn iter(&self) -> impl Iterator<Item = (Measure, u64)> + '_ {
        Measure::ALL
            .into_iter()
            .map(|m| (m, self.get(m)))
            .filter(|&(_, c)| c > 0)
    }

    /// The first violated table inequality, if any.
    pub fn violated_inequality(&self) -> Option<&'static str> {
        use Measure::*;
        let numeric =
            self.get(ValidIntegerNotation) + self.get(ValidDecimalNotation) + self.get(ValidExponentialNotation);
        if numeric + self.get(ValidInfOrNaNNotation) > self.get(UsedAsDatatype) {
            return Some("Valid*Notation > UsedAsDatatype");
        }
        if self.get(UnpreciseRepresentableInFloat) > numeric {
            return Some("UnpreciseRepresentableInFloat > numeric notations");
        }
        if self.get(UnpreciseRepresentableInDouble) > numeric {
            return Some("UnpreciseRepresentableInDouble > numeric notations");
        }
        if self.get(UnpreciseRepresentableInDouble) > self.get(UnpreciseRepresentableInFloat) {
            return Some("UnpreciseRepresentableInDouble > UnpreciseRepresentableInFloat");
        }
        None
    }
}

/// Mergeable counts keyed by (source, file, property, datatype, measure).
///
/// Zero counts are never stored, so two tables with the same non-zero
/// counts compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MeasureTable {
    groups: BTreeMap<GroupKey, MeasureCounts>,
}

impl MeasureTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn add(&mut self, key: &GroupKey, measure: Measure, count: u64) {
        if count == 0 {
            return;
        }
        match self.groups.get_mut(key) {
            Some(counts) => counts.add(measure, count),
            None => {
                let mut counts = MeasureCounts::default();
                counts.add(measure, count);
                self.groups.insert(key.clone(), counts);
            }
        }
    }

    pub fn get(&self, key: &GroupKey, measure: Measure) -> u64 {
        self.groups.get(key).map_or(0, |c| c.get(measure))
    }

    /// Key-wise addition.
    pub fn merge(&mut self, other: &MeasureTable) {
        for (key, counts) in &other.groups {
            for (measure, count) in counts.iter() {
                self.add(key, measure, count);
            }
        }
    }

    pub fn groups(&self) -> impl Iterator<Item = (&GroupKey, &MeasureCounts)> {
        self.groups.iter()
    }

    /// Every non-zero count, sorted by (source, file, property, datatype,
    /// measure).
    pub fn entries(&self) -> impl Iterator<Item = (&GroupKey, Measure, u64)> {
        self.groups
            .iter()
            .flat_map(|(key, counts)| counts.iter().map(move |(m, c)| (key, m, c)))
    }

    /// Sum of `measure` over all groups matching `filter`.
    pub fn total(&self, measure: Measure, mut filter: impl FnMut(&GroupKey) -> bool) -> u64 {
        self.groups
            .iter()
            .filter(|(key, _)| filter(key))
            .map(|(_, counts)| counts.get(measure))
            .sum()
    }

    /// The first group violating a table inequality.
    pub fn check_inequalities(&self) -> Result<(), (GroupKey, &'static str)> {
        for (key, counts) in &self.groups {
            if let Some(violation) = counts.violated_inequality() {
                return Err((key.clone(), violation));
            }
        }
        Ok(())
    }
}

/// What is counted besides IRI cleaning.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurveyConfig {
    pub cleaning: CleaningConfig,
    /// Also count `schema:rangeIncludes` statements as range declarations.
    pub count_range_includes: bool,
}

/// One increment produced by a statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Observation {
    pub property: String,
    pub datatype: String,
    pub measure: Measure,
}

/// The measures a single statement contributes to.
pub fn measure_quad(quad: &Quad, config: &SurveyConfig) -> Vec<Observation> {
    let cleaning = &config.cleaning;
    let property = clean_iri(&quad.predicate, cleaning);
    let mut out = Vec::new();
    match &quad.object {
        Term::Literal(literal) => {
            let datatype = clean_iri(&literal.datatype_iri, cleaning);
            let mut emit = |measure| {
                out.push(Observation {
                    property: property.clone().into_owned(),
                    datatype: datatype.clone().into_owned(),
                    measure,
                })
            };
            emit(Measure::UsedAsDatatype);
            let class = classify_lexical(&literal.lexical);
            if let Some(measure) = Measure::for_notation(class) {
                emit(measure);
            }
            if class.is_numeric() {
                // A numeral whose exponent overflows 64 bits is far outside
                // both value spaces unless it is zero, which parses fine.
                let parsed = parse_exact_decimal(&literal.lexical).ok();
                let exact_in = |format| {
                    parsed
                        .as_ref()
                        .is_some_and(|d| is_exactly_representable(d, format))
                };
                if !exact_in(BinaryFormat::Binary32) {
                    emit(Measure::UnpreciseRepresentableInFloat);
                }
                if !exact_in(BinaryFormat::Binary64) {
                    emit(Measure::UnpreciseRepresentableInDouble);
                }
            }
        }
        Term::Iri(range) => {
            let is_range = property == RDFS_RANGE
                || (config.count_range_includes && property == SCHEMA_RANGE_INCLUDES);
            if let (true, Term::Iri(subject)) = (is_range, &quad.subject) {
                out.push(Observation {
                    property: clean_iri(subject, cleaning).into_owned(),
                    datatype: clean_iri(range, cleaning).into_owned(),
                    measure: Measure::UsedAsPropertyRange,
                });
            }
        }
        Term::BlankNode(_) => {}
    }
    out
}

/// A failure record tagged with the source label of its batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoggedFailure {
    pub source: String,
    pub record: FailureRecord,
}

impl LoggedFailure {
    fn sort_key(&self) -> (&str, &str, u64, crate::stream::FailureReason, &str) {
        (
            &self.source,
            &self.record.source_file,
            self.record.line_number,
            self.record.reason,
            &self.record.snippet,
        )
    }
}

/// Parse failures, kept sorted by (source, file, line).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FailureLog {
    entries: Vec<LoggedFailure>,
}

impl FailureLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, source: &str, record: FailureRecord) {
        let entry = LoggedFailure {
            source: source.to_owned(),
            record,
        };
        let at = self
            .entries
            .partition_point(|e| e.sort_key() <= entry.sort_key());
        self.entries.insert(at, entry);
    }

    pub fn merge(&mut self, other: FailureLog) {
        self.entries.extend(other.entries);
        self.entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn entries(&self) -> &[LoggedFailure] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds measure tables and failure logs for one source label.
#[derive(Debug, Clone)]
pub struct Aggregator<'a> {
    source: &'a str,
    config: &'a SurveyConfig,
    table: MeasureTable,
    failures: Vec<FailureRecord>,
    key: GroupKey,
    file: Option<Arc<str>>,
}

impl<'a> Aggregator<'a> {
    pub fn new(source: &'a str, config: &'a SurveyConfig) -> Self {
        Self {
            source,
            config,
            table: MeasureTable::new(),
            failures: Vec::new(),
            key: GroupKey {
                source: source.to_owned(),
                file: String::new(),
                property: String::new(),
                datatype: String::new(),
            },
            file: None,
        }
    }

    pub fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Quad(quad) => self.add_quad(&quad),
            Outcome::Failure(failure) => self.failures.push(failure),
        }
    }

    pub fn add_quad(&mut self, quad: &Quad) {
        if self.file.as_ref() != Some(&quad.source_file) {
            self.key.file = quad.source_file.to_string();
            self.file = Some(Arc::clone(&quad.source_file));
        }
        for observation in measure_quad(quad, self.config) {
            self.key.property = observation.property;
            self.key.datatype = observation.datatype;
            self.table.add(&self.key, observation.measure, 1);
        }
    }

    pub fn finish(self) -> (MeasureTable, FailureLog) {
        let mut log = FailureLog::new();
        let mut entries: Vec<LoggedFailure> = self
            .failures
            .into_iter()
            .map(|record| LoggedFailure {
                source: self.source.to_owned(),
                record,
            })
            .collect();
        entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        log.entries = entries;
        (self.table, log)
    }
}

/// Folds a stream of outcomes into a measure table and a failure log.
pub fn aggregate(
    outcomes: impl IntoIterator<Item = Outcome>,
    source: &str,
    config: &SurveyConfig,
) -> (MeasureTable, FailureLog) {
    let mut aggregator = Aggregator::new(source, config);
    for outcome in outcomes {
        aggregator.add(outcome);
    }
    aggregator.finish()
}

/// Like [`aggregate`], but stops at the first error.
pub fn try_aggregate<E>(
    outcomes: impl IntoIterator<Item = Result<Outcome, E>>,
    source: &str,
    config: &SurveyConfig,
) -> Result<(MeasureTable, FailureLog), E> {
    let mut aggregator = Aggregator::new(source, config);
    for outcome in outcomes {
        aggregator.add(outcome?);
    }
    Ok(aggregator.finish())
}
