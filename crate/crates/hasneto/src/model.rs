//! The fixed catalog schema: class identifiers, term IRIs, and the typed
//! records describing measurement infrastructure, collected data, and the
//! people and software behind both.
//!
//! The vocabulary integrates three source ontologies under one roof:
//! `vstoi:` for measuring devices, `oboe:` for observations and standards,
//! and `prov:` for activities and agents, with catalog-specific terms under
//! `hasneto:`. The hierarchy is deliberately small: the three technical
//! activities (deployment, data collection, intervention) specialize
//! `prov:Activity`, and nothing else is inferred.

use std::fmt;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Invalid field content in a typed record or identifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid IRI {0:?}: {1}")]
    InvalidIri(String, &'static str),
    #[error("invalid timestamp {0:?}: {1}")]
    InvalidTimestamp(String, String),
    #[error("{subject} {field}: {problem}")]
    Invariant {
        subject: String,
        field: &'static str,
        problem: String,
    },
}

fn invariant(subject: &Iri, field: &'static str, problem: impl Into<String>) -> ModelError {
    ModelError::Invariant {
        subject: subject.as_str().to_owned(),
        field,
        problem: problem.into(),
    }
}

// ---------------------------------------------------------------------------
// Identifiers and timestamps
// ---------------------------------------------------------------------------

/// An absolute IRI. Comparison is exact byte equality.
///
/// Accepted strings are nonempty, start with an RFC 3986 scheme followed by
/// `:`, and contain no whitespace, control characters, or the characters
/// `<>"{}|^`\`` that RFC 3987 excludes from IRIs (and that would break the
/// canonical line grammar).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, ModelError> {
        let value = value.into();
        let err = |why| Err(ModelError::InvalidIri(value.clone(), why));
        if value.is_empty() {
            return err("empty");
        }
        let scheme_len = match value.find(':') {
            Some(0) | None => return err("missing scheme"),
            Some(i) => i,
        };
        let mut chars = value[..scheme_len].chars();
        if !chars.next().is_some_and(|c| c.is_ascii_alphabetic()) {
            return err("scheme must start with a letter");
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
            return err("scheme may only contain letters, digits, '+', '-', '.'");
        }
        for c in value.chars() {
            if c.is_whitespace() || c.is_control() {
                return err("whitespace or control character");
            }
            if matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
                return err("character not allowed in IRIs");
            }
        }
        Ok(Iri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Iri {
    type Error = ModelError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> String {
        iri.0
    }
}

/// An instant in UTC, carried everywhere as RFC 3339.
///
/// Parsing accepts any RFC 3339 offset and normalizes to UTC; rendering is
/// canonical: `Z` suffix, whole seconds, fractional digits only when nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Timestamp(DateTime<Utc>);

impl Timestamp {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        DateTime::parse_from_rfc3339(text)
            .map(|t| Timestamp(t.with_timezone(&Utc)))
            .map_err(|e| ModelError::InvalidTimestamp(text.to_owned(), e.to_string()))
    }

    pub fn render(&self) -> String {
        self.0.to_rfc3339_opts(SecondsFormat::AutoSi, true)
    }

    pub fn from_datetime(t: DateTime<Utc>) -> Self {
        Timestamp(t)
    }

    pub fn datetime(&self) -> DateTime<Utc> {
        self.0
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl TryFrom<String> for Timestamp {
    type Error = ModelError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Timestamp::parse(&value)
    }
}

impl From<Timestamp> for String {
    fn from(t: Timestamp) -> String {
        t.render()
    }
}

// ---------------------------------------------------------------------------
// The class hierarchy
// ---------------------------------------------------------------------------

/// Every class the catalog knows about. The schema is fixed; there is no
/// runtime ontology loading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    Platform,
    Instrument,
    Detector,
    Deployment,
    EntityOfInterest,
    Characteristic,
    Measurement,
    Unit,
    DataCollection,
    Observation,
    Activity,
    Agent,
    ProvEntity,
    InterventionEvent,
}

impl ClassId {
    pub const ALL: [ClassId; 14] = [
        ClassId::Platform,
        ClassId::Instrument,
        ClassId::Detector,
        ClassId::Deployment,
        ClassId::EntityOfInterest,
        ClassId::Characteristic,
        ClassId::Measurement,
        ClassId::Unit,
        ClassId::DataCollection,
        ClassId::Observation,
        ClassId::Activity,
        ClassId::Agent,
        ClassId::ProvEntity,
        ClassId::InterventionEvent,
    ];
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// True iff `a` equals `b` or `a` is declared a subclass of `b`.
///
/// The closure is exactly: Deployment, DataCollection, and InterventionEvent
/// are activities. The three device classes are pairwise disjoint and no
/// other edges exist.
pub fn is_subclass_of(a: ClassId, b: ClassId) -> bool {
    use ClassId::*;
    a == b
        || (b == Activity && matches!(a, Deployment | DataCollection | InterventionEvent))
}

// ---------------------------------------------------------------------------
// Field enums
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mobility {
    Stationary,
    Mobile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AgentRole {
    Scientist,
    Technician,
    DataManager,
    Software,
}

impl AgentRole {
    pub const ALL: [AgentRole; 4] = [
        AgentRole::Scientist,
        AgentRole::Technician,
        AgentRole::DataManager,
        AgentRole::Software,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AgentRole::Scientist => "Scientist",
            AgentRole::Technician => "Technician",
            AgentRole::DataManager => "DataManager",
            AgentRole::Software => "Software",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentKind {
    Person,
    Software,
    Organization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterventionKind {
    Calibration,
    Maintenance,
    Configuration,
}

// ---------------------------------------------------------------------------
// Typed records
// ---------------------------------------------------------------------------
//
// Records are plain data. Invariants are enforced by `check()`, which the
// store boundary (decompose, materialize, instance insertion) always runs.
// Multi-valued fields are sets: duplicates are rejected and the store returns
// them in canonical sorted order.

/// A geographic point in decimal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub latitude: f64,
    pub longitude: f64,
}

/// A key/value pair used for deployment settings and intervention parameters.
pub type Setting = (String, String);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Platform {
    pub iri: Iri,
    pub label: String,
    pub mobility: Mobility,
    pub location: Option<Location>,
    pub host_label: Option<String>,
}

impl Platform {
    pub fn check(&self) -> Result<(), ModelError> {
        if let Some(loc) = &self.location {
            if !loc.latitude.is_finite() || !(-90.0..=90.0).contains(&loc.latitude) {
                return Err(invariant(&self.iri, "latitude", "must lie in [-90, 90]"));
            }
            if !loc.longitude.is_finite() || !(-180.0..=180.0).contains(&loc.longitude) {
                return Err(invariant(&self.iri, "longitude", "must lie in [-180, 180]"));
            }
        }
        Ok(())
    }
}

/// A detector's declared accuracy, expressed in some unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub value: f64,
    pub unit: Iri,
}

/// A detector's calibrated measurement range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorRange {
    pub min: f64,
    pub max: f64,
    pub unit: Iri,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Instrument {
    pub iri: Iri,
    pub label: String,
    pub model: Option<String>,
    pub serial: Option<String>,
    pub detectors: Vec<Iri>,
}

impl Instrument {
    pub fn check(&self) -> Result<(), ModelError> {
        check_distinct(&self.iri, "detectors", self.detectors.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Detector {
    pub iri: Iri,
    pub label: String,
    pub characteristic: Iri,
    pub accuracy: Option<Accuracy>,
    pub range: Option<DetectorRange>,
}

impl Detector {
    pub fn check(&self) -> Result<(), ModelError> {
        if let Some(acc) = &self.accuracy {
            if !acc.value.is_finite() {
                return Err(invariant(&self.iri, "accuracy", "value must be finite"));
            }
        }
        if let Some(range) = &self.range {
            if !range.min.is_finite() || !range.max.is_finite() {
                return Err(invariant(&self.iri, "range", "bounds must be finite"));
            }
            if range.min >= range.max {
                return Err(invariant(&self.iri, "range", "min must be less than max"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Deployment {
    pub iri: Iri,
    pub instrument: Iri,
    pub platform: Iri,
    pub start: Timestamp,
    pub end: Option<Timestamp>,
    pub deployed_by: Iri,
    pub settings: Vec<Setting>,
}

impl Deployment {
    pub fn check(&self) -> Result<(), ModelError> {
        if let Some(end) = self.end {
            if self.start >= end {
                return Err(invariant(&self.iri, "end", "start must precede end"));
            }
        }
        check_distinct(&self.iri, "settings", self.settings.iter())
    }

    /// True when `t` falls inside the deployment interval; an absent end
    /// accepts any instant at or after the start.
    pub fn covers(&self, t: Timestamp) -> bool {
        self.start <= t && self.end.is_none_or(|end| t <= end)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntityOfInterest {
    pub iri: Iri,
    pub label: String,
    pub context: Option<String>,
}

impl EntityOfInterest {
    pub fn check(&self) -> Result<(), ModelError> {
        if self.label.is_empty() {
            return Err(invariant(&self.iri, "label", "must be nonempty"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Characteristic {
    pub iri: Iri,
    pub label: String,
    pub quantity_kind: String,
}

impl Characteristic {
    pub fn check(&self) -> Result<(), ModelError> {
        check_quantity_kind(&self.iri, &self.quantity_kind)
    }
}

/// Affine map from a unit into its quantity kind's base: `x_base = scale·x + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: f64,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Unit {
    pub iri: Iri,
    pub label: String,
    pub quantity_kind: String,
    pub to_base: AffineMap,
}

impl Unit {
    pub fn check(&self) -> Result<(), ModelError> {
        check_quantity_kind(&self.iri, &self.quantity_kind)?;
        if !self.to_base.scale.is_finite() || self.to_base.scale == 0.0 {
            return Err(invariant(&self.iri, "toBase", "scale must be finite and nonzero"));
        }
        if !self.to_base.offset.is_finite() {
            return Err(invariant(&self.iri, "toBase", "offset must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Measurement {
    pub iri: Iri,
    pub value: f64,
    pub unit: Iri,
    pub characteristic: Iri,
    pub timestamp: Timestamp,
    pub precision: Option<f64>,
    pub observation: Iri,
    pub data_collection: Iri,
}

impl Measurement {
    pub fn check(&self) -> Result<(), ModelError> {
        if !self.value.is_finite() {
            return Err(invariant(&self.iri, "value", "must be finite"));
        }
        if let Some(p) = self.precision {
            if !p.is_finite() || p < 0.0 {
                return Err(invariant(&self.iri, "precision", "must be finite and >= 0"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Observation {
    pub iri: Iri,
    pub entity: Iri,
    pub measurements: Vec<Iri>,
}

impl Observation {
    pub fn check(&self) -> Result<(), ModelError> {
        check_distinct(&self.iri, "measurements", self.measurements.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AgentAssociation {
    pub agent: Iri,
    pub role: AgentRole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DataCollection {
    pub iri: Iri,
    pub deployment: Iri,
    pub start: Timestamp,
    pub end: Option<Timestamp>,
    pub associations: Vec<AgentAssociation>,
}

impl DataCollection {
    pub fn check(&self) -> Result<(), ModelError> {
        if let Some(end) = self.end {
            if self.start >= end {
                return Err(invariant(&self.iri, "end", "start must precede end"));
            }
        }
        check_distinct(&self.iri, "associations", self.associations.iter())
    }

    /// True when `t` lies strictly inside the collection interval (an absent
    /// end leaves the interval open on the right).
    pub fn strictly_contains(&self, t: Timestamp) -> bool {
        self.start < t && self.end.is_none_or(|end| t < end)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Agent {
    pub iri: Iri,
    pub name: String,
    pub kind: AgentKind,
}

impl Agent {
    pub fn check(&self) -> Result<(), ModelError> {
        if self.name.is_empty() {
            return Err(invariant(&self.iri, "name", "must be nonempty"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InterventionEvent {
    pub iri: Iri,
    pub kind: InterventionKind,
    pub target: Iri,
    pub at: Timestamp,
    pub agent: Iri,
    pub parameters: Vec<Setting>,
}

impl InterventionEvent {
    pub fn check(&self) -> Result<(), ModelError> {
        check_distinct(&self.iri, "parameters", self.parameters.iter())
    }
}

fn check_quantity_kind(iri: &Iri, kind: &str) -> Result<(), ModelError> {
    if kind.is_empty() {
        return Err(invariant(iri, "quantityKind", "must be nonempty"));
    }
    if kind.chars().any(|c| c.is_whitespace() || c.is_uppercase()) {
        return Err(invariant(iri, "quantityKind", "must be a lowercase token"));
    }
    Ok(())
}

fn check_distinct<T: Ord + Clone>(
    iri: &Iri,
    field: &'static str,
    items: impl Iterator<Item = T>,
) -> Result<(), ModelError> {
    let mut seen = std::collections::BTreeSet::new();
    for item in items {
        if !seen.insert(item) {
            return Err(invariant(iri, field, "duplicate entry"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_accepts_absolute_and_rejects_junk() {
        assert!(Iri::new("http://hadatac.org/kb/p1").is_ok());
        assert!(Iri::new("urn:uuid:1234").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("no-scheme-here").is_err());
        assert!(Iri::new(":leading-colon").is_err());
        assert!(Iri::new("http://x.org/a b").is_err());
        assert!(Iri::new("http://x.org/a\tb").is_err());
        assert!(Iri::new("http://x.org/a\u{7}b").is_err());
        assert!(Iri::new("http://x.org/a>b").is_err());
        assert!(Iri::new("1http://x.org").is_err());
    }

    #[test]
    fn subclass_closure_matches_the_fixed_hierarchy() {
        use ClassId::*;
        assert!(is_subclass_of(DataCollection, Activity));
        assert!(is_subclass_of(Deployment, Activity));
        assert!(is_subclass_of(InterventionEvent, Activity));
        assert!(is_subclass_of(Platform, Platform));
        assert!(!is_subclass_of(Detector, Instrument));
        assert!(!is_subclass_of(Activity, DataCollection));
        assert!(!is_subclass_of(Observation, Activity));
    }

    #[test]
    fn subclass_is_a_partial_order() {
        for a in ClassId::ALL {
            assert!(is_subclass_of(a, a));
            for b in ClassId::ALL {
                if is_subclass_of(a, b) && is_subclass_of(b, a) {
                    assert_eq!(a, b);
                }
                for c in ClassId::ALL {
                    if is_subclass_of(a, b) && is_subclass_of(b, c) {
                        assert!(is_subclass_of(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn timestamp_normalizes_to_utc() {
        let a = Timestamp::parse("2024-06-01T12:00:00+02:00").unwrap();
        let b = Timestamp::parse("2024-06-01T10:00:00Z").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.render(), "2024-06-01T10:00:00Z");
        let c = Timestamp::parse("2024-06-01T10:00:00.120Z").unwrap();
        assert_eq!(c.render(), "2024-06-01T10:00:00.120Z");
        assert!(Timestamp::parse("2024-06-01").is_err());
    }

    #[test]
    fn detector_range_must_be_ordered() {
        let det = Detector {
            iri: Iri::new("http://x.org/d").unwrap(),
            label: "d".into(),
            characteristic: Iri::new("http://x.org/c").unwrap(),
            accuracy: None,
            range: Some(DetectorRange {
                min: 20.0,
                max: 0.0,
                unit: Iri::new("http://x.org/u").unwrap(),
            }),
        };
        assert!(det.check().is_err());
    }

    #[test]
    fn platform_location_bounds() {
        let mut p = Platform {
            iri: Iri::new("http://x.org/p").unwrap(),
            label: "p".into(),
            mobility: Mobility::Stationary,
            location: Some(Location { latitude: 91.0, longitude: 0.0 }),
            host_label: None,
        };
        assert!(p.check().is_err());
        p.location = Some(Location { latitude: 45.0, longitude: -73.0 });
        assert!(p.check().is_ok());
    }

    #[test]
    fn duplicate_detectors_rejected() {
        let d = Iri::new("http://x.org/d").unwrap();
        let inst = Instrument {
            iri: Iri::new("http://x.org/i").unwrap(),
            label: "i".into(),
            model: None,
            serial: None,
            detectors: vec![d.clone(), d],
        };
        assert!(inst.check().is_err());
    }
}
