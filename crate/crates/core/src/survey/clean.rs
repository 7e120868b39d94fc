//! IRI cleaning applied before measures are keyed.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::io::Read;

/// How property and datatype IRIs are normalised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaningConfig {
    /// Rewrite `https://` to `http://`.
    pub unify_scheme: bool,
    /// Prefix label to namespace IRI.
    pub prefix_map: BTreeMap<String, String>,
    pub apply_prefix_expansion: bool,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        Self {
            unify_scheme: true,
            prefix_map: BTreeMap::new(),
            apply_prefix_expansion: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PrefixMapError {
    #[error("prefix map: {0}")]
    Csv(#[from] csv::Error),
    #[error("prefix map: header must be exactly `prefix,namespace`")]
    BadHeader,
    #[error("prefix map line {line}: expected 2 fields, found {found}")]
    FieldCount { line: u64, found: usize },
    #[error("prefix map line {line}: invalid prefix label {prefix:?}")]
    BadPrefix { line: u64, prefix: String },
    #[error("prefix map line {line}: duplicate prefix {prefix:?}")]
    DuplicatePrefix { line: u64, prefix: String },
    #[error("prefix {prefix:?}: namespace {namespace:?} is not an absolute IRI ending in '/' or '#'")]
    BadNamespace { prefix: String, namespace: String },
    #[error("prefix {prefix:?}: namespace {namespace:?} would itself be expanded by prefix {scheme:?}")]
    SelfExpanding {
        prefix: String,
        namespace: String,
        scheme: String,
    },
}

impl CleaningConfig {
    /// A config with scheme unification on and the given prefixes expanded.
    pub fn with_prefix_map(prefix_map: BTreeMap<String, String>) -> Result<Self, PrefixMapError> {
        let config = Self {
            unify_scheme: true,
            prefix_map,
            apply_prefix_expansion: true,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks that every namespace is an absolute IRI ending in `/` or `#`
    /// and that no expansion produces something that expands again.
    pub fn validate(&self) -> Result<(), PrefixMapError> {
        for (prefix, namespace) in &self.prefix_map {
            let bad = || PrefixMapError::BadNamespace {
                prefix: prefix.clone(),
                namespace: namespace.clone(),
            };
            let (scheme, rest) = namespace.split_once(':').ok_or_else(bad)?;
            if !is_scheme(scheme) || !(namespace.ends_with('/') || namespace.ends_with('#')) {
                return Err(bad());
            }
            if !rest.starts_with("//") && self.prefix_map.contains_key(scheme) {
                return Err(PrefixMapError::SelfExpanding {
                    prefix: prefix.clone(),
                    namespace: namespace.clone(),
                    scheme: scheme.to_owned(),
                });
            }
        }
        Ok(())
    }
}

/// Reads a `prefix,namespace` CSV with a header row.
pub fn read_prefix_map<R: Read>(input: R) -> Result<BTreeMap<String, String>, PrefixMapError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = reader.records();
    match records.next() {
        Some(header) => {
            let header = header?;
            if header.iter().collect::<Vec<_>>() != ["prefix", "namespace"] {
                return Err(PrefixMapError::BadHeader);
            }
        }
        None => return Err(PrefixMapError::BadHeader),
    }
    let mut map = BTreeMap::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(PrefixMapError::FieldCount {
                line,
                found: record.len(),
            });
        }
        let prefix = &record[0];
        if prefix.is_empty() || prefix.contains([':', '/', '#']) || prefix.contains(char::is_whitespace) {
            return Err(PrefixMapError::BadPrefix {
                line,
                prefix: prefix.to_owned(),
            });
        }
        if map.insert(prefix.to_owned(), record[1].to_owned()).is_some() {
            return Err(PrefixMapError::DuplicatePrefix {
                line,
                prefix: prefix.to_owned(),
            });
        }
    }
    Ok(map)
}

/// Expands known prefixed names, then unifies the scheme. Anything else is
/// returned as is.
pub fn clean_iri<'a>(iri: &'a str, config: &CleaningConfig) -> Cow<'a, str> {
    let mut out = Cow::Borrowed(iri);
    if config.apply_prefix_expansion {
        if let Some((label, local)) = iri.split_once(':') {
            if !local.starts_with("//") {
                if let Some(namespace) = config.prefix_map.get(label) {
                    out = Cow::Owned(format!("{namespace}{local}"));
                }
            }
        }
    }
    if config.unify_scheme {
        if let Some(rest) = out.strip_prefix("https://") {
            out = Cow::Owned(format!("http://{rest}"));
        }
    }
    out
}

fn is_scheme(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}
