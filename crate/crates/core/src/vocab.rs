//! IRIs the survey needs to recognise.

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const SCHEMA: &str = "http://schema.org/";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const SCHEMA_RANGE_INCLUDES: &str = "http://schema.org/rangeIncludes";

/// Local names of the XSD numeric datatypes: the three primitives and every
/// type derived from `xsd:integer`.
const XSD_NUMERIC: [&str; 16] = [
    "decimal",
    "float",
    "double",
    "integer",
    "long",
    "int",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "unsignedLong",
    "unsignedInt",
    "unsignedShort",
    "unsignedByte",
    "nonPositiveInteger",
    "negativeInteger",
];

const SCHEMA_NUMERIC: [&str; 3] = ["Number", "Integer", "Float"];

/// XSD or schema.org numeric datatype.
pub fn is_numeric_datatype(iri: &str) -> bool {
    if let Some(local) = iri.strip_prefix(XSD) {
        XSD_NUMERIC.contains(&local)
    } else if let Some(local) = iri.strip_prefix(SCHEMA) {
        SCHEMA_NUMERIC.contains(&local)
    } else {
        false
    }
}

/// Prefixes used to abbreviate IRIs in reports.
pub const DISPLAY_PREFIXES: [(&str, &str); 9] = [
    ("dcterms", "http://purl.org/dc/terms/"),
    ("dv", "http://rdf.data-vocabulary.org/#"),
    ("gr", "http://purl.org/goodrelations/v1#"),
    ("rev", "http://purl.org/stuff/rev#"),
    ("rdf", RDF),
    ("schema", SCHEMA),
    ("use", "http://search.yahoo.com/searchmonkey-datatype/use/"),
    ("vcard", "http://www.w3.org/2006/vcard/ns#"),
    ("xsd", XSD),
];

/// `prefix:local` for IRIs under one of [`DISPLAY_PREFIXES`], the IRI in
/// angle brackets otherwise.
pub fn abbreviate(iri: &str) -> String {
    for (prefix, namespace) in DISPLAY_PREFIXES {
        if let Some(local) = iri.strip_prefix(namespace) {
            if !local.is_empty() && !local.contains(['/', '#']) {
                return format!("{prefix}:{local}");
            }
        }
    }
    format!("<{iri}>")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric() {
        assert!(is_numeric_datatype(XSD_FLOAT));
        assert!(is_numeric_datatype("http://www.w3.org/2001/XMLSchema#unsignedByte"));
        assert!(is_numeric_datatype("http://schema.org/Number"));
        assert!(!is_numeric_datatype(XSD_STRING));
        assert!(!is_numeric_datatype("http://schema.org/Date"));
    }

    #[test]
    fn abbreviation() {
        assert_eq!(abbreviate(XSD_FLOAT), "xsd:float");
        assert_eq!(abbreviate("http://schema.org/price"), "schema:price");
        assert_eq!(abbreviate("http://example.org/p"), "<http://example.org/p>");
        assert_eq!(abbreviate("http://schema.org/a/b"), "<http://schema.org/a/b>");
    }
}
