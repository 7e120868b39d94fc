//! Plain-text summary tables over a measure table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::vocab::{abbreviate, is_numeric_datatype, SCHEMA, XSD, XSD_DOUBLE, XSD_FLOAT};

use super::measure::{Measure, MeasureTable};

pub const DEFAULT_TOP_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    /// Rows per ranking.
    pub top_n: usize,
    /// Datatypes whose properties get their own ranking.
    pub focus_datatypes: Vec<String>,
    /// Datatypes listed under the occurrence ranking even when outside the top.
    pub always_listed: Vec<String>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        let xsd = |local: &str| format!("{XSD}{local}");
        let schema = |local: &str| format!("{SCHEMA}{local}");
        Self {
            top_n: DEFAULT_TOP_N,
            focus_datatypes: vec![XSD_FLOAT.to_owned(), XSD_DOUBLE.to_owned()],
            always_listed: vec![
                xsd("decimal"),
                xsd("double"),
                xsd("float"),
                schema("Number"),
                schema("Integer"),
                schema("Float"),
            ],
        }
    }
}

/// `count / total` with two decimals, rounding half up; `0.00` for an
/// empty total.
pub fn share(count: u64, total: u64) -> String {
    if total == 0 {
        return "0.00".to_owned();
    }
    let hundredths = (200 * count as u128 + total as u128) / (2 * total as u128);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

fn with_share(count: u64, total: u64) -> String {
    format!("{count} ({})", share(count, total))
}

/// Per source, sums `measure` by the value `by` picks from matching groups.
fn tally(
    table: &MeasureTable,
    measure: Measure,
    mut by: impl FnMut(&str, &str) -> Option<String>,
) -> BTreeMap<String, BTreeMap<String, u64>> {
    let mut out: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    for (key, counts) in table.groups() {
        let count = counts.get(measure);
        if count == 0 {
            continue;
        }
        if let Some(label) = by(&key.property, &key.datatype) {
            *out.entry(key.source.clone())
                .or_default()
                .entry(label)
                .or_default() += count;
        }
    }
    out
}

/// Largest counts first, ties by IRI.
fn ranked(counts: &BTreeMap<String, u64>, top_n: usize) -> Vec<(&str, u64)> {
    let mut rows: Vec<(&str, u64)> = counts.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    rows.truncate(top_n);
    rows
}

fn sources(table: &MeasureTable) -> BTreeSet<&str> {
    table.groups().map(|(key, _)| key.source.as_str()).collect()
}

/// Left-aligns the first column and right-aligns the rest.
fn push_grid(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let columns = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut text = String::new();
        for (i, cell) in cells.enumerate() {
            let pad = widths[i] - cell.chars().count();
            if i == 0 {
                text.push_str(cell);
                text.extend(std::iter::repeat(' ').take(pad));
            } else {
                text.push_str("  ");
                text.extend(std::iter::repeat(' ').take(pad));
                text.push_str(cell);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&mut rule.iter().map(String::as_str));
    for row in rows {
        debug_assert_eq!(row.len(), columns);
        line(&mut row.iter().map(String::as_str));
    }
}

fn push_title(out: &mut String, title: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str(title);
    out.push('\n');
    out.push_str(&"=".repeat(title.chars().count()));
    out.push('\n');
}

fn push_empty(out: &mut String) {
    out.push_str("(no data)\n");
}

fn datatype_occurrences(out: &mut String, table: &MeasureTable, options: &ReportOptions) {
    push_title(out, "Table 1: Datatype occurrences");
    let tallies = tally(table, Measure::UsedAsDatatype, |_, d| Some(d.to_owned()));
    let sources = sources(table);
    if sources.is_empty() {
        return push_empty(out);
    }
    let empty = BTreeMap::new();
    for source in sources {
        let counts = tallies.get(source).unwrap_or(&empty);
        let total: u64 = counts.values().sum();
        let _ = writeln!(out, "\nSource: {source} ({total} literals)");
        let top = ranked(counts, options.top_n);
        let mut rows: Vec<Vec<String>> = top
            .iter()
            .map(|&(d, c)| vec![abbreviate(d), with_share(c, total)])
            .collect();
        let mut listed: BTreeSet<&str> = top.iter().map(|&(d, _)| d).collect();
        let extra: Vec<&String> = options
            .always_listed
            .iter()
            .filter(|d| listed.insert(d.as_str()))
            .collect();
        if !extra.is_empty() {
            rows.push(vec!["..".to_owned(), String::new()]);
            for d in extra {
                let c = counts.get(d).copied().unwrap_or(0);
                rows.push(vec![abbreviate(d), with_share(c, total)]);
            }
        }
        push_grid(out, &["Datatype", "Occurrences (rel)"], &rows);
    }
}

fn property_ranking(
    out: &mut String,
    counts: Option<&BTreeMap<String, u64>>,
    top_n: usize,
) {
    let empty = BTreeMap::new();
    let counts = counts.unwrap_or(&empty);
    let total: u64 = counts.values().sum();
    let rows: Vec<Vec<String>> = ranked(counts, top_n)
        .into_iter()
        .map(|(p, c)| vec![abbreviate(p), with_share(c, total)])
        .collect();
    push_grid(out, &["Property", "Occurrences (rel)"], &rows);
}

fn numeric_properties(out: &mut String, table: &MeasureTable, options: &ReportOptions) {
    push_title(out, "Table 2: Properties with numeric datatypes");
    let tallies = tally(table, Measure::UsedAsDatatype, |p, d| {
        is_numeric_datatype(d).then(|| p.to_owned())
    });
    let sources = sources(table);
    if sources.is_empty() {
        return push_empty(out);
    }
    for source in sources {
        let total: u64 = tallies.get(source).map_or(0, |c| c.values().sum());
        let _ = writeln!(out, "\nSource: {source} ({total} numeric literals)");
        property_ranking(out, tallies.get(source), options.top_n);
    }
}

fn focus_properties(out: &mut String, table: &MeasureTable, options: &ReportOptions) {
    push_title(out, "Table 3: Properties per datatype");
    let sources = sources(table);
    if sources.is_empty() || options.focus_datatypes.is_empty() {
        return push_empty(out);
    }
    for datatype in &options.focus_datatypes {
        let tallies = tally(table, Measure::UsedAsDatatype, |p, d| {
            (d == datatype).then(|| p.to_owned())
        });
        for &source in &sources {
            let total: u64 = tallies.get(source).map_or(0, |c| c.values().sum());
            let _ = writeln!(
                out,
                "\n{} in {source} ({total} literals)",
                abbreviate(datatype)
            );
            property_ranking(out, tallies.get(source), options.top_n);
        }
    }
}

/// Per source, the numeric datatypes present with the given measures summed.
fn per_numeric_datatype(
    table: &MeasureTable,
    measures: &[Measure],
) -> BTreeMap<String, BTreeMap<String, Vec<u64>>> {
    let mut out: BTreeMap<String, BTreeMap<String, Vec<u64>>> = BTreeMap::new();
    for (key, counts) in table.groups() {
        if !is_numeric_datatype(&key.datatype) || counts.get(Measure::UsedAsDatatype) == 0 {
            continue;
        }
        let sums = out
            .entry(key.source.clone())
            .or_default()
            .entry(key.datatype.clone())
            .or_insert_with(|| vec![0; measures.len() + 1]);
        sums[0] += counts.get(Measure::UsedAsDatatype);
        for (sum, &m) in sums[1..].iter_mut().zip(measures) {
            *sum += counts.get(m);
        }
    }
    out
}

fn breakdown(
    out: &mut String,
    table: &MeasureTable,
    title: &str,
    header: &[&str],
    measures: &[Measure],
) {
    push_title(out, title);
    let data = per_numeric_datatype(table, measures);
    let sources = sources(table);
    if sources.is_empty() {
        return push_empty(out);
    }
    for source in sources {
        let _ = writeln!(out, "\nSource: {source}");
        let mut rows: Vec<(String, Vec<String>)> = data
            .get(source)
            .into_iter()
            .flatten()
            .map(|(datatype, sums)| {
                let total = sums[0];
                let mut row = vec![abbreviate(datatype)];
                row.extend(sums[1..].iter().map(|&c| with_share(c, total)));
                (abbreviate(datatype), row)
            })
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let rows: Vec<Vec<String>> = rows.into_iter().map(|(_, row)| row).collect();
        push_grid(out, header, &rows);
    }
}

/// Renders the five summary tables.
pub fn render_report(table: &MeasureTable, options: &ReportOptions) -> String {
    let mut out = String::new();
    datatype_occurrences(&mut out, table, options);
    numeric_properties(&mut out, table, options);
    focus_properties(&mut out, table, options);
    breakdown(
        &mut out,
        table,
        "Table 4: Numeric notations per datatype",
        &["Datatype", "Integer", "Decimal", "Exponential", "Inf/NaN"],
        &[
            Measure::ValidIntegerNotation,
            Measure::ValidDecimalNotation,
            Measure::ValidExponentialNotation,
            Measure::ValidInfOrNaNNotation,
        ],
    );
    breakdown(
        &mut out,
        table,
        "Table 5: Lexicals without exact value per datatype",
        &["Datatype", "Unprecise in xsd:float", "Unprecise in xsd:double"],
        &[
            Measure::UnpreciseRepresentableInFloat,
            Measure::UnpreciseRepresentableInDouble,
        ],
    );
    out
}
