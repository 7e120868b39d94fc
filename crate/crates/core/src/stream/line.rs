//! Single-line N-Triples / N-Quads statement parsing.

use std::fmt;
use std::sync::Arc;

use crate::vocab::{RDF_LANG_STRING, XSD_STRING};

/// Snippets in failure records keep this many characters of the line.
pub const SNIPPET_CHARS: usize = 200;

/// An RDF literal. The lexical form is kept exactly as written, apart from
/// decoding escape sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub lexical: String,
    /// `xsd:string` when undecorated, `rdf:langString` when language tagged.
    pub datatype_iri: String,
    pub language_tag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(literal) => Some(literal),
            _ => None,
        }
    }
}

/// One statement together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quad {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
    pub graph: Option<Term>,
    /// 1-based physical line in `source_file`.
    pub line_number: u64,
    pub source_file: Arc<str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailureReason {
    MalformedIri,
    BadEncoding,
    SyntaxError,
    Other,
}

impl FailureReason {
    pub fn name(self) -> &'static str {
        match self {
            FailureReason::MalformedIri => "MalformedIri",
            FailureReason::BadEncoding => "BadEncoding",
            FailureReason::SyntaxError => "SyntaxError",
            FailureReason::Other => "Other",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A line that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureRecord {
    pub source_file: Arc<str>,
    pub line_number: u64,
    pub reason: FailureReason,
    /// The first [`SNIPPET_CHARS`] characters of the line.
    pub snippet: String,
}

impl FailureRecord {
    pub fn new(source_file: Arc<str>, line_number: u64, reason: FailureReason, line: &str) -> Self {
        Self {
            source_file,
            line_number,
            reason,
            snippet: line.chars().take(SNIPPET_CHARS).collect(),
        }
    }
}

/// What one physical line turned into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineOutcome {
    Quad(Quad),
    Failure(FailureRecord),
    /// Empty, whitespace-only or comment line.
    Blank,
}

pub(crate) fn is_blank(line: &str) -> bool {
    let trimmed = line.trim_start_matches([' ', '\t']);
    trimmed.is_empty() || trimmed.starts_with('#')
}

/// Parses one N-Quads (or N-Triples) statement line, without terminator.
pub fn parse_statement_line(line: &str, source_file: &Arc<str>, line_number: u64) -> LineOutcome {
    if is_blank(line) {
        return LineOutcome::Blank;
    }
    match Parser::new(line).statement() {
        Ok((subject, predicate, object, graph)) => LineOutcome::Quad(Quad {
            subject,
            predicate,
            object,
            graph,
            line_number,
            source_file: Arc::clone(source_file),
        }),
        Err(reason) => LineOutcome::Failure(FailureRecord::new(
            Arc::clone(source_file),
            line_number,
            reason,
            line,
        )),
    }
}

type Statement = (Term, String, Term, Option<Term>);

struct Parser<'a> {
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn new(line: &'a str) -> Self {
        Self { rest: line }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn eat(&mut self, prefix: &str) -> bool {
        match self.rest.strip_prefix(prefix) {
            Some(rest) => {
                self.rest = rest;
                true
            }
            None => false,
        }
    }

    fn statement(mut self) -> Result<Statement, FailureReason> {
        self.skip_ws();
        let subject = match self.peek() {
            Some('<') => Term::Iri(self.iri()?),
            Some('_') => Term::BlankNode(self.blank_node()?),
            _ => return Err(FailureReason::SyntaxError),
        };
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(FailureReason::SyntaxError);
        }
        let predicate = self.iri()?;
        self.skip_ws();
        let object = match self.peek() {
            Some('<') => Term::Iri(self.iri()?),
            Some('_') => Term::BlankNode(self.blank_node()?),
            Some('"') => Term::Literal(self.literal()?),
            _ => return Err(FailureReason::SyntaxError),
        };
        self.skip_ws();
        let graph = match self.peek() {
            Some('<') => Some(Term::Iri(self.iri()?)),
            Some('_') => Some(Term::BlankNode(self.blank_node()?)),
            _ => None,
        };
        self.skip_ws();
        if !self.eat(".") {
            return Err(FailureReason::SyntaxError);
        }
        self.skip_ws();
        if !(self.rest.is_empty() || self.rest.starts_with('#')) {
            return Err(FailureReason::SyntaxError);
        }
        Ok((subject, predicate, object, graph))
    }

    /// `\uXXXX` or `\UXXXXXXXX`, after the backslash has been consumed.
    fn uchar(&mut self, invalid: FailureReason) -> Result<char, FailureReason> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(invalid),
        };
        let hex = self.rest.get(..len).ok_or(invalid)?;
        if !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(invalid);
        }
        self.rest = &self.rest[len..];
        let code = u32::from_str_radix(hex, 16).map_err(|_| invalid)?;
        char::from_u32(code).ok_or(invalid)
    }

    fn iri(&mut self) -> Result<String, FailureReason> {
        let malformed = FailureReason::MalformedIri;
        debug_assert_eq!(self.peek(), Some('<'));
        self.bump();
        let mut iri = String::new();
        loop {
            let c = match self.bump() {
                None => return Err(malformed),
                Some('>') => break,
                Some('\\') => self.uchar(malformed)?,
                Some(c) => c,
            };
            if is_forbidden_in_iri(c) {
                return Err(malformed);
            }
            iri.push(c);
        }
        if !has_scheme(&iri) {
            return Err(malformed);
        }
        Ok(iri)
    }

    fn blank_node(&mut self) -> Result<String, FailureReason> {
        if !self.eat("_:") {
            return Err(FailureReason::SyntaxError);
        }
        let mut chars = self.rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_pn_chars_u(c) || c.is_ascii_digit() => {}
            _ => return Err(FailureReason::SyntaxError),
        }
        // A label may contain '.' but not end with it.
        let mut end = self.rest.chars().next().map_or(0, char::len_utf8);
        for (i, c) in chars {
            if is_pn_chars(c) {
                end = i + c.len_utf8();
            } else if c != '.' {
                break;
            }
        }
        let label = self.rest[..end].to_owned();
        self.rest = &self.rest[end..];
        Ok(label)
    }

    fn literal(&mut self) -> Result<Literal, FailureReason> {
        let syntax = FailureReason::SyntaxError;
        debug_assert_eq!(self.peek(), Some('"'));
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None | Some('\n') | Some('\r') => return Err(syntax),
                Some('"') => break,
                Some('\\') => {
                    let c = match self.peek() {
                        Some('u') | Some('U') => self.uchar(syntax)?,
                        Some(e) => {
                            self.bump();
                            match e {
                                't' => '\t',
                                'b' => '\u{8}',
                                'n' => '\n',
                                'r' => '\r',
                                'f' => '\u{c}',
                                '"' => '"',
                                '\'' => '\'',
                                '\\' => '\\',
                                _ => return Err(syntax),
                            }
                        }
                        None => return Err(syntax),
                    };
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
            }
        }
        if self.eat("^^") {
            if self.peek() != Some('<') {
                return Err(syntax);
            }
            let datatype_iri = self.iri()?;
            Ok(Literal {
                lexical,
                datatype_iri,
                language_tag: None,
            })
        } else if self.eat("@") {
            let tag = self.language_tag()?;
            Ok(Literal {
                lexical,
                datatype_iri: RDF_LANG_STRING.to_owned(),
                language_tag: Some(tag),
            })
        } else {
            Ok(Literal {
                lexical,
                datatype_iri: XSD_STRING.to_owned(),
                language_tag: None,
            })
        }
    }

    /// `[a-zA-Z]+ ('-' [a-zA-Z0-9]+)*`
    fn language_tag(&mut self) -> Result<String, FailureReason> {
        let syntax = FailureReason::SyntaxError;
        let primary = self
            .rest
            .bytes()
            .take_while(u8::is_ascii_alphabetic)
            .count();
        if primary == 0 {
            return Err(syntax);
        }
        let mut len = primary;
        let bytes = self.rest.as_bytes();
        while bytes.get(len) == Some(&b'-') {
            let sub = bytes[len + 1..]
                .iter()
                .take_while(|b| b.is_ascii_alphanumeric())
                .count();
            if sub == 0 {
                return Err(syntax);
            }
            len += 1 + sub;
        }
        let tag = self.rest[..len].to_owned();
        self.rest = &self.rest[len..];
        Ok(tag)
    }
}

fn is_forbidden_in_iri(c: char) -> bool {
    matches!(c, '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// `scheme ":"` with `scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )`.
fn has_scheme(iri: &str) -> bool {
    let Some((scheme, _)) = iri.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z'
        | 'a'..='z'
        | '\u{00C0}'..='\u{00D6}'
        | '\u{00D8}'..='\u{00F6}'
        | '\u{00F8}'..='\u{02FF}'
        | '\u{0370}'..='\u{037D}'
        | '\u{037F}'..='\u{1FFF}'
        | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}'
        | '\u{2C00}'..='\u{2FEF}'
        | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}'
        | '\u{FDF0}'..='\u{FFFD}'
        | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_' || c == ':'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{00B7}'
        || ('\u{0300}'..='\u{036F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
}
