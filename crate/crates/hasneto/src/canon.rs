//! Canonical text serialization: one statement per line, lines sorted, the
//! same store always producing the same bytes.
//!
//! The line grammar is N-Quads-shaped with a mandatory graph term:
//!
//! ```text
//! <subject> <predicate> <object-iri-or-literal> <graph> .
//! ```
//!
//! IRIs sit in angle brackets; literals are `"lexical"^^<datatypeIri>` with
//! `"`, `\`, newline, carriage return, and tab backslash-escaped. Lines are
//! LF-terminated and strictly lexicographically sorted. Import tolerates
//! unsorted input (set semantics) but nothing outside the grammar.

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::lexical;
use crate::model::Iri;
use crate::store::{Datatype, GraphStore, Literal, Term, Triple};

/// A grammar violation, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Render the whole store as its canonical document. Deterministic: equal
/// stores produce byte-equal text, and an empty store produces empty text.
pub fn export_canonical(store: &GraphStore) -> String {
    let mut lines: Vec<String> = store
        .quads()
        .map(|(graph, triple)| {
            let mut line = String::with_capacity(128);
            write_iri(&mut line, &triple.subject);
            line.push(' ');
            write_iri(&mut line, &triple.predicate);
            line.push(' ');
            write_term(&mut line, &triple.object);
            line.push(' ');
            write_iri(&mut line, &graph);
            line.push_str(" .\n");
            line
        })
        .collect();
    lines.sort_unstable();
    lines.concat()
}

fn write_iri(out: &mut String, iri: &Iri) {
    out.push('<');
    out.push_str(iri.as_str());
    out.push('>');
}

fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => write_iri(out, iri),
        Term::Literal(lit) => {
            out.push('"');
            out.push_str(&lexical::escape(&lit.lexical));
            out.push_str("\"^^");
            write_iri(out, lit.datatype.iri());
        }
    }
}

/// Parse a canonical document back into a store. Inverse of
/// [`export_canonical`]; duplicate and out-of-order lines are accepted,
/// grammar violations are not.
pub fn import_canonical(text: &str) -> Result<GraphStore, ParseError> {
    let mut store = GraphStore::new();
    for (index, line) in text.lines().enumerate() {
        let number = index + 1;
        if line.is_empty() {
            return Err(err(number, 1, "empty line"));
        }
        let (graph, triple) = parse_line(line, number)?;
        store.insert(&graph, triple);
    }
    Ok(store)
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

struct Cursor<'a> {
    line: &'a str,
    /// Byte offset; columns are reported as offset + 1.
    pos: usize,
    number: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        err(self.number, self.column(), message)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn skip_space(&mut self) -> Result<(), ParseError> {
        if !self.rest().starts_with(' ') {
            return Err(self.error("expected a single space"));
        }
        self.pos += 1;
        Ok(())
    }

    fn iri(&mut self) -> Result<Iri, ParseError> {
        let start_col = self.column();
        self.expect('<')?;
        let rest = self.rest();
        let Some(end) = rest.find('>') else {
            return Err(err(self.number, start_col, "unterminated IRI"));
        };
        let raw = &rest[..end];
        self.pos += end + 1;
        Iri::new(raw).map_err(|e| err(self.number, start_col, e.to_string()))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.rest().starts_with('<') {
            return Ok(Term::Iri(self.iri()?));
        }
        let start_col = self.column();
        self.expect('"')
            .map_err(|_| err(self.number, start_col, "expected an IRI or a literal"))?;
        // Find the closing quote, honoring escapes.
        let rest = self.rest();
        let mut end = None;
        let mut escaped = false;
        for (i, c) in rest.char_indices() {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                end = Some(i);
                break;
            }
        }
        let Some(end) = end else {
            return Err(err(self.number, start_col, "unterminated literal"));
        };
        let raw = &rest[..end];
        let lexical = lexical::unescape(raw).map_err(|offset| {
            err(self.number, start_col + 1 + offset, "invalid escape sequence")
        })?;
        self.pos += end + 1;
        self.expect('^')?;
        self.expect('^')?;
        let dt_col = self.column();
        let dt_iri = self.iri()?;
        let Some(datatype) = Datatype::from_iri(&dt_iri) else {
            return Err(err(self.number, dt_col, format!("unknown datatype <{dt_iri}>")));
        };
        Literal::new(lexical, datatype)
            .map(Term::Literal)
            .map_err(|e| err(self.number, start_col, e.to_string()))
    }
}

fn parse_line(line: &str, number: usize) -> Result<(Iri, Triple), ParseError> {
    let mut cur = Cursor { line, pos: 0, number };
    let subject = cur.iri()?;
    cur.skip_space()?;
    let predicate = cur.iri()?;
    cur.skip_space()?;
    let object = cur.term()?;
    cur.skip_space()?;
    let graph = cur.iri()?;
    cur.skip_space()?;
    cur.expect('.').map_err(|_| cur.error("expected terminal '.'"))?;
    if !cur.rest().is_empty() {
        return Err(cur.error("trailing content after '.'"));
    }
    Ok((graph, Triple::new(subject, predicate, object)))
}

/// Render any report as compact JSON with the struct's declared key order.
/// Rendering twice yields identical bytes.
pub fn render_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("report serialization")
}

/// Inverse of [`render_json`] for the matching report type.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, serde_json::Error> {
    serde_json::from_str(text)
}

/// SHA-256 of the canonical document, in lowercase hex. Equal stores have
/// equal fingerprints.
pub fn fingerprint(store: &GraphStore) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(export_canonical(store).as_bytes()))
}
