//! Bidirectional mapping between typed records and triples.
//!
//! [`decompose`] turns a record into a deterministic triple set with exactly
//! one class assertion; absent optional fields emit nothing. [`materialize`]
//! rebuilds the record from whatever graph holds the subject and is the
//! inverse of `decompose`. Key/value pairs (settings, parameters) are
//! carried as JSON-pair string literals, and collection/agent associations
//! as one role-specific predicate per pair, so multi-valued fields are sets:
//! the store returns them sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::*;
use crate::store::{Datatype, GraphStore, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaterializeError {
    #[error("untyped subject <{0}>")]
    UntypedSubject(Iri),
    #[error("<{iri}> is typed {class}, which has no record form")]
    NotInstantiable { iri: Iri, class: ClassId },
    #[error("<{subject}> {message}")]
    Field { subject: Iri, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Any typed record, tagged for JSON interchange.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Instance {
    Platform(Platform),
    Instrument(Instrument),
    Detector(Detector),
    Deployment(Deployment),
    EntityOfInterest(EntityOfInterest),
    Characteristic(Characteristic),
    Unit(Unit),
    Measurement(Measurement),
    Observation(Observation),
    DataCollection(DataCollection),
    Agent(Agent),
    InterventionEvent(InterventionEvent),
}

impl Instance {
    pub fn iri(&self) -> &Iri {
        match self {
            Instance::Platform(x) => &x.iri,
            Instance::Instrument(x) => &x.iri,
            Instance::Detector(x) => &x.iri,
            Instance::Deployment(x) => &x.iri,
            Instance::EntityOfInterest(x) => &x.iri,
            Instance::Characteristic(x) => &x.iri,
            Instance::Unit(x) => &x.iri,
            Instance::Measurement(x) => &x.iri,
            Instance::Observation(x) => &x.iri,
            Instance::DataCollection(x) => &x.iri,
            Instance::Agent(x) => &x.iri,
            Instance::InterventionEvent(x) => &x.iri,
        }
    }

    pub fn class_id(&self) -> ClassId {
        match self {
            Instance::Platform(_) => ClassId::Platform,
            Instance::Instrument(_) => ClassId::Instrument,
            Instance::Detector(_) => ClassId::Detector,
            Instance::Deployment(_) => ClassId::Deployment,
            Instance::EntityOfInterest(_) => ClassId::EntityOfInterest,
            Instance::Characteristic(_) => ClassId::Characteristic,
            Instance::Unit(_) => ClassId::Unit,
            Instance::Measurement(_) => ClassId::Measurement,
            Instance::Observation(_) => ClassId::Observation,
            Instance::DataCollection(_) => ClassId::DataCollection,
            Instance::Agent(_) => ClassId::Agent,
            Instance::InterventionEvent(_) => ClassId::InterventionEvent,
        }
    }

    pub fn check(&self) -> Result<(), ModelError> {
        match self {
            Instance::Platform(x) => x.check(),
            Instance::Instrument(x) => x.check(),
            Instance::Detector(x) => x.check(),
            Instance::Deployment(x) => x.check(),
            Instance::EntityOfInterest(x) => x.check(),
            Instance::Characteristic(x) => x.check(),
            Instance::Unit(x) => x.check(),
            Instance::Measurement(x) => x.check(),
            Instance::Observation(x) => x.check(),
            Instance::DataCollection(x) => x.check(),
            Instance::Agent(x) => x.check(),
            Instance::InterventionEvent(x) => x.check(),
        }
    }
}

fn pair_literal(pair: &Setting) -> Term {
    Term::string(serde_json::to_string(&[&pair.0, &pair.1]).expect("pair encoding"))
}

fn parse_pair(lexical: &str) -> Option<Setting> {
    let [k, v]: [String; 2] = serde_json::from_str(lexical).ok()?;
    Some((k, v))
}

/// Flatten a record into triples. The record's invariants are checked first;
/// the output always contains exactly one `rdf:type` statement.
pub fn decompose(instance: &Instance) -> Result<Vec<Triple>, ModelError> {
    instance.check()?;
    let subject = instance.iri().clone();
    let mut out = Vec::new();
    let mut emit = |p: &Iri, o: Term| {
        out.push(Triple::new(subject.clone(), p.clone(), o));
    };
    emit(&vocab::RDF_TYPE, Term::iri(vocab::schema_iri(instance.class_id())));
    match instance {
        Instance::Platform(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            emit(
                &vocab::P_MOBILITY,
                Term::string(match x.mobility {
                    Mobility::Stationary => "stationary",
                    Mobility::Mobile => "mobile",
                }),
            );
            if let Some(loc) = &x.location {
                emit(&vocab::P_LATITUDE, Term::decimal(loc.latitude));
                emit(&vocab::P_LONGITUDE, Term::decimal(loc.longitude));
            }
            if let Some(host) = &x.host_label {
                emit(&vocab::P_HOST_LABEL, Term::string(host));
            }
        }
        Instance::Instrument(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            if let Some(model) = &x.model {
                emit(&vocab::P_MODEL, Term::string(model));
            }
            if let Some(serial) = &x.serial {
                emit(&vocab::P_SERIAL_NUMBER, Term::string(serial));
            }
            for d in &x.detectors {
                emit(&vocab::P_HAS_DETECTOR, Term::iri(d.clone()));
            }
        }
        Instance::Detector(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            emit(&vocab::P_OF_CHARACTERISTIC, Term::iri(x.characteristic.clone()));
            if let Some(acc) = &x.accuracy {
                emit(&vocab::P_ACCURACY_VALUE, Term::decimal(acc.value));
                emit(&vocab::P_ACCURACY_UNIT, Term::iri(acc.unit.clone()));
            }
            if let Some(range) = &x.range {
                emit(&vocab::P_RANGE_MIN, Term::decimal(range.min));
                emit(&vocab::P_RANGE_MAX, Term::decimal(range.max));
                emit(&vocab::P_RANGE_UNIT, Term::iri(range.unit.clone()));
            }
        }
        Instance::Deployment(x) => {
            emit(&vocab::P_HAS_INSTRUMENT, Term::iri(x.instrument.clone()));
            emit(&vocab::P_ON_PLATFORM, Term::iri(x.platform.clone()));
            emit(&vocab::P_STARTED_AT_TIME, Term::datetime(x.start));
            if let Some(end) = x.end {
                emit(&vocab::P_ENDED_AT_TIME, Term::datetime(end));
            }
            emit(&vocab::P_DEPLOYED_BY, Term::iri(x.deployed_by.clone()));
            for pair in &x.settings {
                emit(&vocab::P_SETTING, pair_literal(pair));
            }
        }
        Instance::EntityOfInterest(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            if let Some(context) = &x.context {
                emit(&vocab::P_CONTEXT, Term::string(context));
            }
        }
        Instance::Characteristic(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            emit(&vocab::P_QUANTITY_KIND, Term::string(&x.quantity_kind));
        }
        Instance::Unit(x) => {
            emit(&vocab::RDFS_LABEL, Term::string(&x.label));
            emit(&vocab::P_QUANTITY_KIND, Term::string(&x.quantity_kind));
            emit(&vocab::P_SCALE_TO_BASE, Term::decimal(x.to_base.scale));
            emit(&vocab::P_OFFSET_TO_BASE, Term::decimal(x.to_base.offset));
        }
        Instance::Measurement(x) => {
            emit(&vocab::P_HAS_VALUE, Term::decimal(x.value));
            emit(&vocab::P_IN_UNIT, Term::iri(x.unit.clone()));
            emit(&vocab::P_OF_CHARACTERISTIC, Term::iri(x.characteristic.clone()));
            emit(&vocab::P_AT_TIME, Term::datetime(x.timestamp));
            if let Some(p) = x.precision {
                emit(&vocab::P_HAS_PRECISION, Term::decimal(p));
            }
            emit(&vocab::P_OF_OBSERVATION, Term::iri(x.observation.clone()));
            emit(&vocab::P_IN_DATA_COLLECTION, Term::iri(x.data_collection.clone()));
        }
        Instance::Observation(x) => {
            emit(&vocab::P_OF_ENTITY, Term::iri(x.entity.clone()));
            for m in &x.measurements {
                emit(&vocab::P_HAS_MEASUREMENT, Term::iri(m.clone()));
            }
        }
        Instance::DataCollection(x) => {
            emit(&vocab::P_USED_DEPLOYMENT, Term::iri(x.deployment.clone()));
            emit(&vocab::P_STARTED_AT_TIME, Term::datetime(x.start));
            if let Some(end) = x.end {
                emit(&vocab::P_ENDED_AT_TIME, Term::datetime(end));
            }
            for assoc in &x.associations {
                emit(vocab::role_predicate(assoc.role), Term::iri(assoc.agent.clone()));
            }
        }
        Instance::Agent(x) => {
            emit(&vocab::P_NAME, Term::string(&x.name));
            emit(
                &vocab::P_AGENT_KIND,
                Term::string(match x.kind {
                    AgentKind::Person => "person",
                    AgentKind::Software => "software",
                    AgentKind::Organization => "organization",
                }),
            );
        }
        Instance::InterventionEvent(x) => {
            emit(
                &vocab::P_INTERVENTION_KIND,
                Term::string(match x.kind {
                    InterventionKind::Calibration => "calibration",
                    InterventionKind::Maintenance => "maintenance",
                    InterventionKind::Configuration => "configuration",
                }),
            );
            emit(&vocab::P_TARGETS_DEVICE, Term::iri(x.target.clone()));
            emit(&vocab::P_AT_TIME, Term::datetime(x.at));
            emit(&vocab::P_WAS_ASSOCIATED_WITH, Term::iri(x.agent.clone()));
            for pair in &x.parameters {
                emit(&vocab::P_PARAMETER, pair_literal(pair));
            }
        }
    }
    Ok(out)
}

struct Props {
    subject: Iri,
    map: BTreeMap<Iri, Vec<Term>>,
}

impl Props {
    fn field_err(&self, message: impl Into<String>) -> MaterializeError {
        MaterializeError::Field { subject: self.subject.clone(), message: message.into() }
    }

    fn values(&self, p: &Iri) -> &[Term] {
        self.map.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    fn opt(&self, p: &Iri, what: &str) -> Result<Option<&Term>, MaterializeError> {
        match self.values(p) {
            [] => Ok(None),
            [one] => Ok(Some(one)),
            _ => Err(self.field_err(format!("{what}: multiple values for single-valued field"))),
        }
    }

    fn one(&self, p: &Iri, what: &str) -> Result<&Term, MaterializeError> {
        self.opt(p, what)?.ok_or_else(|| self.field_err(format!("{what}: missing")))
    }

    fn literal_of(&self, term: &Term, dt: Datatype, what: &str) -> Result<String, MaterializeError> {
        match term {
            Term::Literal(lit) if lit.datatype == dt => Ok(lit.lexical.clone()),
            _ => Err(self.field_err(format!("{what}: expected a {dt} literal"))),
        }
    }

    fn one_string(&self, p: &Iri, what: &str) -> Result<String, MaterializeError> {
        let term = self.one(p, what)?;
        self.literal_of(term, Datatype::String, what)
    }

    fn opt_string(&self, p: &Iri, what: &str) -> Result<Option<String>, MaterializeError> {
        self.opt(p, what)?
            .map(|t| self.literal_of(t, Datatype::String, what))
            .transpose()
    }

    fn decimal_of(&self, term: &Term, what: &str) -> Result<f64, MaterializeError> {
        let lexical = self.literal_of(term, Datatype::Decimal, what)?;
        crate::lexical::parse_decimal(&lexical)
            .ok_or_else(|| self.field_err(format!("{what}: not a finite decimal")))
    }

    fn one_decimal(&self, p: &Iri, what: &str) -> Result<f64, MaterializeError> {
        let term = self.one(p, what)?;
        self.decimal_of(term, what)
    }

    fn opt_decimal(&self, p: &Iri, what: &str) -> Result<Option<f64>, MaterializeError> {
        self.opt(p, what)?.map(|t| self.decimal_of(t, what)).transpose()
    }

    fn timestamp_of(&self, term: &Term, what: &str) -> Result<Timestamp, MaterializeError> {
        let lexical = self.literal_of(term, Datatype::DateTime, what)?;
        Timestamp::parse(&lexical)
            .map_err(|e| self.field_err(format!("{what}: {e}")))
    }

    fn one_timestamp(&self, p: &Iri, what: &str) -> Result<Timestamp, MaterializeError> {
        let term = self.one(p, what)?;
        self.timestamp_of(term, what)
    }

    fn opt_timestamp(&self, p: &Iri, what: &str) -> Result<Option<Timestamp>, MaterializeError> {
        self.opt(p, what)?.map(|t| self.timestamp_of(t, what)).transpose()
    }

    fn iri_of(&self, term: &Term, what: &str) -> Result<Iri, MaterializeError> {
        term.as_iri()
            .cloned()
            .ok_or_else(|| self.field_err(format!("{what}: expected an IRI")))
    }

    fn one_iri(&self, p: &Iri, what: &str) -> Result<Iri, MaterializeError> {
        let term = self.one(p, what)?;
        self.iri_of(term, what)
    }

    fn opt_iri(&self, p: &Iri, what: &str) -> Result<Option<Iri>, MaterializeError> {
        self.opt(p, what)?.map(|t| self.iri_of(t, what)).transpose()
    }

    fn many_iris(&self, p: &Iri, what: &str) -> Result<Vec<Iri>, MaterializeError> {
        self.values(p).iter().map(|t| self.iri_of(t, what)).collect()
    }

    fn pairs(&self, p: &Iri, what: &str) -> Result<Vec<Setting>, MaterializeError> {
        let mut pairs: Vec<Setting> = self
            .values(p)
            .iter()
            .map(|t| {
                let lexical = self.literal_of(t, Datatype::String, what)?;
                parse_pair(&lexical)
                    .ok_or_else(|| self.field_err(format!("{what}: expected a JSON pair")))
            })
            .collect::<Result<_, _>>()?;
        pairs.sort();
        Ok(pairs)
    }
}

/// Rebuild the typed record asserted at `iri`. Inverse of [`decompose`];
/// field values that violate the record's invariants are reported the same
/// way the validator would phrase them.
pub fn materialize(store: &GraphStore, iri: &Iri) -> Result<Instance, MaterializeError> {
    let types = store.types_of(iri);
    let class = match types.first() {
        None => return Err(MaterializeError::UntypedSubject(iri.clone())),
        Some(&c) => c,
    };
    let props = Props { subject: iri.clone(), map: store.subject_properties(iri) };
    let instance = build_instance(class, iri, &props)?;
    instance.check()?;
    Ok(instance)
}

fn build_instance(class: ClassId, iri: &Iri, p: &Props) -> Result<Instance, MaterializeError> {
    let iri = iri.clone();
    Ok(match class {
        ClassId::Platform => {
            let latitude = p.opt_decimal(&vocab::P_LATITUDE, "latitude")?;
            let longitude = p.opt_decimal(&vocab::P_LONGITUDE, "longitude")?;
            let location = match (latitude, longitude) {
                (Some(latitude), Some(longitude)) => Some(Location { latitude, longitude }),
                (None, None) => None,
                _ => return Err(p.field_err("location: latitude and longitude must come together")),
            };
            let mobility = match p.one_string(&vocab::P_MOBILITY, "mobility")?.as_str() {
                "stationary" => Mobility::Stationary,
                "mobile" => Mobility::Mobile,
                other => return Err(p.field_err(format!("mobility: unknown value {other:?}"))),
            };
            Instance::Platform(Platform {
                iri,
                label: p.one_string(&vocab::RDFS_LABEL, "label")?,
                mobility,
                location,
                host_label: p.opt_string(&vocab::P_HOST_LABEL, "hostLabel")?,
            })
        }
        ClassId::Instrument => Instance::Instrument(Instrument {
            iri,
            label: p.one_string(&vocab::RDFS_LABEL, "label")?,
            model: p.opt_string(&vocab::P_MODEL, "model")?,
            serial: p.opt_string(&vocab::P_SERIAL_NUMBER, "serial")?,
            detectors: p.many_iris(&vocab::P_HAS_DETECTOR, "detectors")?,
        }),
        ClassId::Detector => {
            let accuracy = match (
                p.opt_decimal(&vocab::P_ACCURACY_VALUE, "accuracy")?,
                p.opt_iri(&vocab::P_ACCURACY_UNIT, "accuracy unit")?,
            ) {
                (Some(value), Some(unit)) => Some(Accuracy { value, unit }),
                (None, None) => None,
                _ => return Err(p.field_err("accuracy: value and unit must come together")),
            };
            let range = match (
                p.opt_decimal(&vocab::P_RANGE_MIN, "range min")?,
                p.opt_decimal(&vocab::P_RANGE_MAX, "range max")?,
                p.opt_iri(&vocab::P_RANGE_UNIT, "range unit")?,
            ) {
                (Some(min), Some(max), Some(unit)) => Some(DetectorRange { min, max, unit }),
                (None, None, None) => None,
                _ => return Err(p.field_err("range: min, max, and unit must come together")),
            };
            Instance::Detector(Detector {
                iri,
                label: p.one_string(&vocab::RDFS_LABEL, "label")?,
                characteristic: p.one_iri(&vocab::P_OF_CHARACTERISTIC, "characteristic")?,
                accuracy,
                range,
            })
        }
        ClassId::Deployment => Instance::Deployment(Deployment {
            iri,
            instrument: p.one_iri(&vocab::P_HAS_INSTRUMENT, "instrument")?,
            platform: p.one_iri(&vocab::P_ON_PLATFORM, "platform")?,
            start: p.one_timestamp(&vocab::P_STARTED_AT_TIME, "start")?,
            end: p.opt_timestamp(&vocab::P_ENDED_AT_TIME, "end")?,
            deployed_by: p.one_iri(&vocab::P_DEPLOYED_BY, "deployedBy")?,
            settings: p.pairs(&vocab::P_SETTING, "settings")?,
        }),
        ClassId::EntityOfInterest => Instance::EntityOfInterest(EntityOfInterest {
            iri,
            label: p.one_string(&vocab::RDFS_LABEL, "label")?,
            context: p.opt_string(&vocab::P_CONTEXT, "context")?,
        }),
        ClassId::Characteristic => Instance::Characteristic(Characteristic {
            iri,
            label: p.one_string(&vocab::RDFS_LABEL, "label")?,
            quantity_kind: p.one_string(&vocab::P_QUANTITY_KIND, "quantityKind")?,
        }),
        ClassId::Unit => Instance::Unit(Unit {
            iri,
            label: p.one_string(&vocab::RDFS_LABEL, "label")?,
            quantity_kind: p.one_string(&vocab::P_QUANTITY_KIND, "quantityKind")?,
            to_base: AffineMap {
                scale: p.one_decimal(&vocab::P_SCALE_TO_BASE, "scaleToBase")?,
                offset: p.one_decimal(&vocab::P_OFFSET_TO_BASE, "offsetToBase")?,
            },
        }),
        ClassId::Measurement => Instance::Measurement(Measurement {
            iri,
            value: p.one_decimal(&vocab::P_HAS_VALUE, "value")?,
            unit: p.one_iri(&vocab::P_IN_UNIT, "unit")?,
            characteristic: p.one_iri(&vocab::P_OF_CHARACTERISTIC, "characteristic")?,
            timestamp: p.one_timestamp(&vocab::P_AT_TIME, "timestamp")?,
            precision: p.opt_decimal(&vocab::P_HAS_PRECISION, "precision")?,
            observation: p.one_iri(&vocab::P_OF_OBSERVATION, "observation")?,
            data_collection: p.one_iri(&vocab::P_IN_DATA_COLLECTION, "dataCollection")?,
        }),
        ClassId::Observation => Instance::Observation(Observation {
            iri,
            entity: p.one_iri(&vocab::P_OF_ENTITY, "entity")?,
            measurements: p.many_iris(&vocab::P_HAS_MEASUREMENT, "measurements")?,
        }),
        ClassId::DataCollection => {
            let mut associations = Vec::new();
            for role in AgentRole::ALL {
                for agent in p.many_iris(vocab::role_predicate(role), "associations")? {
                    associations.push(AgentAssociation { agent, role });
                }
            }
            associations.sort();
            Instance::DataCollection(DataCollection {
                iri,
                deployment: p.one_iri(&vocab::P_USED_DEPLOYMENT, "deployment")?,
                start: p.one_timestamp(&vocab::P_STARTED_AT_TIME, "start")?,
                end: p.opt_timestamp(&vocab::P_ENDED_AT_TIME, "end")?,
                associations,
            })
        }
        ClassId::Agent => {
            let kind = match p.one_string(&vocab::P_AGENT_KIND, "kind")?.as_str() {
                "person" => AgentKind::Person,
                "software" => AgentKind::Software,
                "organization" => AgentKind::Organization,
                other => return Err(p.field_err(format!("kind: unknown value {other:?}"))),
            };
            Instance::Agent(Agent { iri, name: p.one_string(&vocab::P_NAME, "name")?, kind })
        }
        ClassId::InterventionEvent => {
            let kind = match p.one_string(&vocab::P_INTERVENTION_KIND, "kind")?.as_str() {
                "calibration" => InterventionKind::Calibration,
                "maintenance" => InterventionKind::Maintenance,
                "configuration" => InterventionKind::Configuration,
                other => return Err(p.field_err(format!("kind: unknown value {other:?}"))),
            };
            Instance::InterventionEvent(InterventionEvent {
                iri,
                kind,
                target: p.one_iri(&vocab::P_TARGETS_DEVICE, "target")?,
                at: p.one_timestamp(&vocab::P_AT_TIME, "at")?,
                agent: p.one_iri(&vocab::P_WAS_ASSOCIATED_WITH, "agent")?,
                parameters: p.pairs(&vocab::P_PARAMETER, "parameters")?,
            })
        }
        ClassId::Activity | ClassId::ProvEntity => {
            return Err(MaterializeError::NotInstantiable { iri, class })
        }
    })
}

/// The named graph an instance belongs in: infrastructure for devices,
/// agents, schema-ish records, and interventions; the collection's own graph
/// for collected data. An observation is placed by looking at where its
/// measurements point.
pub fn target_graph(store: &GraphStore, instance: &Instance) -> Result<Iri, MaterializeError> {
    Ok(match instance {
        Instance::DataCollection(c) => c.iri.clone(),
        Instance::Measurement(m) => m.data_collection.clone(),
        Instance::Observation(o) => {
            let first = o.measurements.first().ok_or_else(|| MaterializeError::Field {
                subject: o.iri.clone(),
                message: "cannot determine graph: no measurements".into(),
            })?;
            let quads =
                store.match_quads(None, Some(first), Some(&vocab::P_IN_DATA_COLLECTION), None);
            match quads.first().and_then(|(_, t)| t.object.as_iri().cloned()) {
                Some(collection) => collection,
                None => {
                    return Err(MaterializeError::Field {
                        subject: o.iri.clone(),
                        message: format!("cannot determine graph: <{first}> has no collection"),
                    })
                }
            }
        }
        _ => vocab::INFRASTRUCTURE_GRAPH.clone(),
    })
}

/// Decompose and insert into the instance's natural graph; returns that
/// graph. Re-inserting an unchanged instance is a no-op.
pub fn insert_instance(store: &mut GraphStore, instance: &Instance) -> Result<Iri, MaterializeError> {
    let graph = target_graph(store, instance)?;
    for triple in decompose(instance)? {
        store.insert(&graph, triple);
    }
    Ok(graph)
}

/// All materializable instances in a store, bucketed by class, with the
/// subjects that failed to materialize kept alongside.
#[derive(Debug, Default, Clone)]
pub struct InstanceIndex {
    pub platforms: BTreeMap<Iri, Platform>,
    pub instruments: BTreeMap<Iri, Instrument>,
    pub detectors: BTreeMap<Iri, Detector>,
    pub deployments: BTreeMap<Iri, Deployment>,
    pub entities: BTreeMap<Iri, EntityOfInterest>,
    pub characteristics: BTreeMap<Iri, Characteristic>,
    pub units: BTreeMap<Iri, Unit>,
    pub measurements: BTreeMap<Iri, Measurement>,
    pub observations: BTreeMap<Iri, Observation>,
    pub collections: BTreeMap<Iri, DataCollection>,
    pub agents: BTreeMap<Iri, Agent>,
    pub interventions: BTreeMap<Iri, InterventionEvent>,
    /// Typed subjects whose record could not be rebuilt, with the reason.
    pub failures: Vec<(Iri, String)>,
}

impl InstanceIndex {
    pub fn build(store: &GraphStore) -> InstanceIndex {
        let mut index = InstanceIndex::default();
        for class in ClassId::ALL {
            if matches!(class, ClassId::Activity | ClassId::ProvEntity) {
                continue;
            }
            for iri in store.instances_of(class) {
                match materialize(store, &iri) {
                    Ok(instance) => index.put(instance),
                    Err(e) => index.failures.push((iri, e.to_string())),
                }
            }
        }
        index
    }

    fn put(&mut self, instance: Instance) {
        match instance {
            Instance::Platform(x) => drop(self.platforms.insert(x.iri.clone(), x)),
            Instance::Instrument(x) => drop(self.instruments.insert(x.iri.clone(), x)),
            Instance::Detector(x) => drop(self.detectors.insert(x.iri.clone(), x)),
            Instance::Deployment(x) => drop(self.deployments.insert(x.iri.clone(), x)),
            Instance::EntityOfInterest(x) => drop(self.entities.insert(x.iri.clone(), x)),
            Instance::Characteristic(x) => drop(self.characteristics.insert(x.iri.clone(), x)),
            Instance::Unit(x) => drop(self.units.insert(x.iri.clone(), x)),
            Instance::Measurement(x) => drop(self.measurements.insert(x.iri.clone(), x)),
            Instance::Observation(x) => drop(self.observations.insert(x.iri.clone(), x)),
            Instance::DataCollection(x) => drop(self.collections.insert(x.iri.clone(), x)),
            Instance::Agent(x) => drop(self.agents.insert(x.iri.clone(), x)),
            Instance::InterventionEvent(x) => drop(self.interventions.insert(x.iri.clone(), x)),
        }
    }
}
