//! An indexed triple store with named graphs.
//!
//! Statements are `(subject, predicate, object)` triples grouped into named
//! graphs. Every node carries an IRI; blank nodes do not exist. Insertion is
//! set semantics, lookups go through per-position indexes, and the whole
//! store round-trips through the canonical text format (see [`crate::canon`]).
//!
//! Terms are interned once per store, so quads are four small integers and
//! the indexes stay cheap even at millions of statements. A `&GraphStore`
//! is an immutable snapshot; the usual Rust rules give the many-readers /
//! one-writer contract for free.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon;
use crate::lexical;
use crate::model::{Iri, ModelError, Timestamp};
use crate::vocab;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid {datatype} literal {lexical:?}")]
    InvalidLiteral { datatype: Datatype, lexical: String },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt store file {path}: {source}")]
    Corrupt {
        path: String,
        #[source]
        source: canon::ParseError,
    },
}

/// Datatype of a literal term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Datatype {
    String,
    Decimal,
    DateTime,
    Boolean,
}

impl Datatype {
    pub fn iri(&self) -> &'static Iri {
        match self {
            Datatype::String => &vocab::XSD_STRING,
            Datatype::Decimal => &vocab::XSD_DECIMAL,
            Datatype::DateTime => &vocab::XSD_DATETIME,
            Datatype::Boolean => &vocab::XSD_BOOLEAN,
        }
    }

    pub fn from_iri(iri: &Iri) -> Option<Datatype> {
        [Datatype::String, Datatype::Decimal, Datatype::DateTime, Datatype::Boolean]
            .into_iter()
            .find(|d| d.iri() == iri)
    }
}

impl fmt::Display for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Datatype::String => "string",
            Datatype::Decimal => "decimal",
            Datatype::DateTime => "dateTime",
            Datatype::Boolean => "boolean",
        })
    }
}

/// A typed literal. The lexical form is what the store compares and
/// serializes; constructors from typed values produce canonical lexicals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Datatype,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Datatype) -> Result<Self, StoreError> {
        let lexical = lexical.into();
        let ok = match datatype {
            Datatype::String => true,
            Datatype::Decimal => lexical::parse_decimal(&lexical).is_some(),
            Datatype::DateTime => Timestamp::parse(&lexical).is_ok(),
            Datatype::Boolean => lexical == "true" || lexical == "false",
        };
        if ok {
            Ok(Literal { lexical, datatype })
        } else {
            Err(StoreError::InvalidLiteral { datatype, lexical })
        }
    }
}

/// Object position of a statement: either an IRI or a typed literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn iri(iri: Iri) -> Term {
        Term::Iri(iri)
    }

    pub fn string(s: impl Into<String>) -> Term {
        Term::Literal(Literal { lexical: s.into(), datatype: Datatype::String })
    }

    /// Canonical decimal literal for a finite value.
    pub fn decimal(value: f64) -> Term {
        Term::Literal(Literal {
            lexical: lexical::format_decimal(value),
            datatype: Datatype::Decimal,
        })
    }

    pub fn datetime(t: Timestamp) -> Term {
        Term::Literal(Literal { lexical: t.render(), datatype: Datatype::DateTime })
    }

    pub fn boolean(b: bool) -> Term {
        Term::Literal(Literal {
            lexical: if b { "true" } else { "false" }.to_owned(),
            datatype: Datatype::Boolean,
        })
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Iri(_) => None,
            Term::Literal(lit) => Some(lit),
        }
    }
}

/// One statement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: Term) -> Triple {
        Triple { subject, predicate, object }
    }
}

type TermId = u32;
/// `(graph, subject, predicate, object)` as interned ids.
type Quad = (TermId, TermId, TermId, TermId);

/// The store: named graphs of triples plus subject/predicate/object indexes.
#[derive(Debug, Default, Clone)]
pub struct GraphStore {
    terms: IndexSet<Term>,
    graphs: BTreeMap<TermId, BTreeSet<(TermId, TermId, TermId)>>,
    by_subject: HashMap<TermId, BTreeSet<Quad>>,
    by_predicate: HashMap<TermId, BTreeSet<Quad>>,
    by_object: HashMap<TermId, BTreeSet<Quad>>,
}

impl GraphStore {
    pub fn new() -> GraphStore {
        GraphStore::default()
    }

    fn intern(&mut self, term: Term) -> TermId {
        self.terms.insert_full(term).0 as TermId
    }

    fn id_of(&self, term: &Term) -> Option<TermId> {
        self.terms.get_index_of(term).map(|i| i as TermId)
    }

    fn id_of_iri(&self, iri: &Iri) -> Option<TermId> {
        // Cheap probe without cloning: IndexSet only answers by value, so
        // build the key once.
        self.terms.get_index_of(&Term::Iri(iri.clone())).map(|i| i as TermId)
    }

    fn term(&self, id: TermId) -> &Term {
        self.terms.get_index(id as usize).expect("interned term")
    }

    fn iri_of(&self, id: TermId) -> &Iri {
        self.term(id).as_iri().expect("IRI term")
    }

    /// Insert a triple into a named graph. Returns `true` if the statement
    /// was new; re-inserting is a no-op.
    pub fn insert(&mut self, graph: &Iri, triple: Triple) -> bool {
        let g = self.intern(Term::Iri(graph.clone()));
        let s = self.intern(Term::Iri(triple.subject));
        let p = self.intern(Term::Iri(triple.predicate));
        let o = self.intern(triple.object);
        if !self.graphs.entry(g).or_default().insert((s, p, o)) {
            return false;
        }
        let quad = (g, s, p, o);
        self.by_subject.entry(s).or_default().insert(quad);
        self.by_predicate.entry(p).or_default().insert(quad);
        self.by_object.entry(o).or_default().insert(quad);
        true
    }

    /// Remove a triple from a named graph. Returns `true` if it was present.
    pub fn remove(&mut self, graph: &Iri, triple: &Triple) -> bool {
        let Some(g) = self.id_of_iri(graph) else { return false };
        let Some(s) = self.id_of_iri(&triple.subject) else { return false };
        let Some(p) = self.id_of_iri(&triple.predicate) else { return false };
        let Some(o) = self.id_of(&triple.object) else { return false };
        let Some(set) = self.graphs.get_mut(&g) else { return false };
        if !set.remove(&(s, p, o)) {
            return false;
        }
        if set.is_empty() {
            self.graphs.remove(&g);
        }
        let quad = (g, s, p, o);
        if let Some(set) = self.by_subject.get_mut(&s) {
            set.remove(&quad);
        }
        if let Some(set) = self.by_predicate.get_mut(&p) {
            set.remove(&quad);
        }
        if let Some(set) = self.by_object.get_mut(&o) {
            set.remove(&quad);
        }
        true
    }

    /// Number of statements across all graphs.
    pub fn len(&self) -> usize {
        self.graphs.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Non-empty graph names, sorted.
    pub fn graph_names(&self) -> Vec<Iri> {
        let mut names: Vec<Iri> =
            self.graphs.keys().map(|&g| self.iri_of(g).clone()).collect();
        names.sort();
        names
    }

    /// Iterate every statement with its graph, decoded.
    pub fn quads(&self) -> impl Iterator<Item = (Iri, Triple)> + '_ {
        self.graphs.iter().flat_map(move |(&g, triples)| {
            let graph = self.iri_of(g).clone();
            triples.iter().map(move |&(s, p, o)| {
                (
                    graph.clone(),
                    Triple {
                        subject: self.iri_of(s).clone(),
                        predicate: self.iri_of(p).clone(),
                        object: self.term(o).clone(),
                    },
                )
            })
        })
    }

    /// Match statements against a pattern: bound positions must be equal,
    /// unbound positions are wildcards, and an unbound graph unions all
    /// graphs (duplicates across graphs collapse).
    pub fn match_pattern(
        &self,
        graph: Option<&Iri>,
        subject: Option<&Iri>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> BTreeSet<Triple> {
        let mut out = BTreeSet::new();
        for (_, triple) in self.match_quads(graph, subject, predicate, object) {
            out.insert(triple);
        }
        out
    }

    /// Like [`match_pattern`](Self::match_pattern) but keeps the graph of
    /// each statement.
    pub fn match_quads(
        &self,
        graph: Option<&Iri>,
        subject: Option<&Iri>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> Vec<(Iri, Triple)> {
        // Resolve bound positions; a term the store has never seen matches
        // nothing at all.
        let mut bound_graph = None;
        if let Some(iri) = graph {
            match self.id_of_iri(iri) {
                Some(id) => bound_graph = Some(id),
                None => return Vec::new(),
            }
        }
        let mut bound = [None; 3];
        for (slot, term) in [
            (0, subject.map(|iri| Term::Iri(iri.clone()))),
            (1, predicate.map(|iri| Term::Iri(iri.clone()))),
            (2, object.cloned()),
        ] {
            if let Some(term) = term {
                match self.id_of(&term) {
                    Some(id) => bound[slot] = Some(id),
                    None => return Vec::new(),
                }
            }
        }
        let [s, p, o] = bound;

        let matches = |quad: &Quad| {
            bound_graph.is_none_or(|g| quad.0 == g)
                && s.is_none_or(|id| quad.1 == id)
                && p.is_none_or(|id| quad.2 == id)
                && o.is_none_or(|id| quad.3 == id)
        };

        let decode = |quad: &Quad| {
            (
                self.iri_of(quad.0).clone(),
                Triple {
                    subject: self.iri_of(quad.1).clone(),
                    predicate: self.iri_of(quad.2).clone(),
                    object: self.term(quad.3).clone(),
                },
            )
        };

        // Pick the smallest index among the bound positions; otherwise scan
        // the requested graph, or everything. A bound position whose index
        // entry is gone (all statements removed) matches nothing.
        let indexed: Vec<Option<&BTreeSet<Quad>>> = [
            s.map(|id| self.by_subject.get(&id)),
            p.map(|id| self.by_predicate.get(&id)),
            o.map(|id| self.by_object.get(&id)),
        ]
        .into_iter()
        .flatten()
        .collect();

        if !indexed.is_empty() {
            let Some(best) = indexed.into_iter().min_by_key(|set| set.map_or(0, BTreeSet::len))
            else {
                return Vec::new();
            };
            return match best {
                Some(set) => set.iter().filter(|q| matches(q)).map(|q| decode(q)).collect(),
                None => Vec::new(),
            };
        }

        let mut out = Vec::new();
        for (&g, triples) in &self.graphs {
            if bound_graph.is_some_and(|bg| bg != g) {
                continue;
            }
            for &(ts, tp, to) in triples {
                out.push(decode(&(g, ts, tp, to)));
            }
        }
        out
    }

    /// Every class assertion on a subject, in declaration order of the
    /// schema. Most subjects carry exactly one.
    pub fn types_of(&self, iri: &Iri) -> Vec<crate::model::ClassId> {
        let mut classes: Vec<_> = self
            .match_quads(None, Some(iri), Some(&vocab::RDF_TYPE), None)
            .into_iter()
            .filter_map(|(_, t)| t.object.as_iri().and_then(vocab::classify_iri))
            .collect();
        classes.sort();
        classes.dedup();
        classes
    }

    /// Subjects asserted to be instances of `class`, sorted.
    pub fn instances_of(&self, class: crate::model::ClassId) -> Vec<Iri> {
        let class_term = Term::Iri(vocab::schema_iri(class));
        let mut out: Vec<Iri> = self
            .match_quads(None, None, Some(&vocab::RDF_TYPE), Some(&class_term))
            .into_iter()
            .map(|(_, t)| t.subject)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All `(predicate, object)` pairs asserted about a subject, across all
    /// graphs, as a sorted multimap.
    pub fn subject_properties(&self, iri: &Iri) -> BTreeMap<Iri, Vec<Term>> {
        let mut props: BTreeMap<Iri, Vec<Term>> = BTreeMap::new();
        for (_, triple) in self.match_quads(None, Some(iri), None, None) {
            props.entry(triple.predicate).or_default().push(triple.object);
        }
        for objects in props.values_mut() {
            objects.sort();
            objects.dedup();
        }
        props
    }

    /// Persist as a canonical document, atomically (write-then-rename).
    pub fn save(&self, path: &Path) -> Result<(), StoreError> {
        let text = canon::export_canonical(self);
        let display = path.display().to_string();
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text.as_bytes()).map_err(|source| StoreError::Write {
            path: display.clone(),
            source,
        })?;
        std::fs::rename(&tmp, path).map_err(|source| StoreError::Write { path: display, source })
    }

    /// Load a canonical document. A corrupt file yields an error naming the
    /// offending line; no partial store is ever returned.
    pub fn load(path: &Path) -> Result<GraphStore, StoreError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|source| StoreError::Read { path: display.clone(), source })?;
        canon::import_canonical(&text).map_err(|source| StoreError::Corrupt { path: display, source })
    }
}

impl PartialEq for GraphStore {
    /// Stores are equal when they hold the same graphs with the same triple
    /// sets, independent of insertion history.
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() || self.graphs.len() != other.graphs.len() {
            return false;
        }
        let a: BTreeSet<(Iri, Triple)> = self.quads().collect();
        let b: BTreeSet<(Iri, Triple)> = other.quads().collect();
        a == b
    }
}

impl Eq for GraphStore {}
