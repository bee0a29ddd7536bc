//! Provenance traces: from a measurement back through its data collection,
//! deployment, instrument, detectors, and platform, to the agents involved
//! and any interventions that could have affected it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mapping::{materialize, Instance};
use crate::model::*;
use crate::store::GraphStore;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("<{0}> is not a measurement")]
    NotAMeasurement(Iri),
    #[error("broken chain at hop {hop}: <{iri}> ({reason})")]
    BrokenChain { hop: &'static str, iri: Iri, reason: String },
    #[error("unknown agent <{0}>")]
    UnknownAgent(Iri),
}

/// An agent together with how it took part: one of the four association
/// roles, or `Deployer` for the agent that performed the deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentInvolvement {
    pub agent: Agent,
    pub role: String,
}

/// The complete provenance of one measurement. Interventions are those
/// targeting the instrument or its detectors at or before the measurement's
/// timestamp (later ones cannot have affected it), sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProvenanceTrace {
    pub measurement: Measurement,
    pub data_collection: DataCollection,
    pub deployment: Deployment,
    pub instrument: Instrument,
    pub detectors: Vec<Detector>,
    pub platform: Platform,
    pub agents: Vec<AgentInvolvement>,
    pub interventions: Vec<InterventionEvent>,
    /// Set when several detectors share the measurement's characteristic and
    /// the attribution is therefore ambiguous.
    pub note: Option<String>,
}

fn hop<T>(
    store: &GraphStore,
    hop_name: &'static str,
    iri: &Iri,
    extract: impl Fn(Instance) -> Option<T>,
) -> Result<T, TraceError> {
    match materialize(store, iri) {
        Ok(instance) => extract(instance).ok_or_else(|| TraceError::BrokenChain {
            hop: hop_name,
            iri: iri.clone(),
            reason: "unexpected type".to_owned(),
        }),
        Err(e) => Err(TraceError::BrokenChain {
            hop: hop_name,
            iri: iri.clone(),
            reason: e.to_string(),
        }),
    }
}

/// Build the full trace for a measurement. Pure over the store snapshot:
/// every hop corresponds to statements actually present, nothing is
/// inferred. A dangling link fails with the first missing hop named.
pub fn trace(store: &GraphStore, measurement: &Iri) -> Result<ProvenanceTrace, TraceError> {
    let m = match materialize(store, measurement) {
        Ok(Instance::Measurement(m)) => m,
        _ => return Err(TraceError::NotAMeasurement(measurement.clone())),
    };
    let collection = hop(store, "data collection", &m.data_collection, |i| match i {
        Instance::DataCollection(c) => Some(c),
        _ => None,
    })?;
    let deployment = hop(store, "deployment", &collection.deployment, |i| match i {
        Instance::Deployment(d) => Some(d),
        _ => None,
    })?;
    let instrument = hop(store, "instrument", &deployment.instrument, |i| match i {
        Instance::Instrument(d) => Some(d),
        _ => None,
    })?;
    let platform = hop(store, "platform", &deployment.platform, |i| match i {
        Instance::Platform(p) => Some(p),
        _ => None,
    })?;
    let mut detectors = Vec::new();
    for det_iri in &instrument.detectors {
        detectors.push(hop(store, "detector", det_iri, |i| match i {
            Instance::Detector(d) => Some(d),
            _ => None,
        })?);
    }

    let mut agents = Vec::new();
    for assoc in &collection.associations {
        agents.push(AgentInvolvement {
            agent: hop(store, "agent", &assoc.agent, |i| match i {
                Instance::Agent(a) => Some(a),
                _ => None,
            })?,
            role: assoc.role.label().to_owned(),
        });
    }
    if !collection.associations.iter().any(|a| a.agent == deployment.deployed_by) {
        agents.push(AgentInvolvement {
            agent: hop(store, "agent", &deployment.deployed_by, |i| match i {
                Instance::Agent(a) => Some(a),
                _ => None,
            })?,
            role: "Deployer".to_owned(),
        });
    }
    agents.sort_by(|a, b| (&a.agent.iri, &a.role).cmp(&(&b.agent.iri, &b.role)));

    let mut interventions: Vec<InterventionEvent> = Vec::new();
    for iri in store.instances_of(ClassId::InterventionEvent) {
        let Ok(Instance::InterventionEvent(event)) = materialize(store, &iri) else {
            continue;
        };
        let on_device = event.target == instrument.iri
            || instrument.detectors.contains(&event.target);
        if on_device && event.at <= m.timestamp {
            interventions.push(event);
        }
    }
    interventions.sort_by(|a, b| (a.at, &a.iri).cmp(&(b.at, &b.iri)));

    let matching = detectors
        .iter()
        .filter(|d| d.characteristic == m.characteristic)
        .count();
    let note = (matching > 1).then(|| {
        format!("{matching} detectors share characteristic <{}>; attribution is ambiguous", m.characteristic)
    });

    Ok(ProvenanceTrace {
        measurement: m,
        data_collection: collection,
        deployment,
        instrument,
        detectors,
        platform,
        agents,
        interventions,
        note,
    })
}

/// One activity an agent took part in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AgentActivity {
    pub activity: Iri,
    pub class: ClassId,
    /// The agent's role where one applies; interventions carry none.
    pub role: Option<String>,
}

/// Every deployment, data collection, and intervention referencing the
/// agent. An agent associated with one collection under two roles yields
/// two entries.
pub fn activities_of(store: &GraphStore, agent: &Iri) -> Result<Vec<AgentActivity>, TraceError> {
    match materialize(store, agent) {
        Ok(Instance::Agent(_)) => {}
        _ => return Err(TraceError::UnknownAgent(agent.clone())),
    }
    let mut out = Vec::new();
    for iri in store.instances_of(ClassId::Deployment) {
        if let Ok(Instance::Deployment(d)) = materialize(store, &iri) {
            if &d.deployed_by == agent {
                out.push(AgentActivity {
                    activity: iri,
                    class: ClassId::Deployment,
                    role: Some("Deployer".to_owned()),
                });
            }
        }
    }
    for iri in store.instances_of(ClassId::DataCollection) {
        if let Ok(Instance::DataCollection(c)) = materialize(store, &iri) {
            for assoc in &c.associations {
                if &assoc.agent == agent {
                    out.push(AgentActivity {
                        activity: iri.clone(),
                        class: ClassId::DataCollection,
                        role: Some(assoc.role.label().to_owned()),
                    });
                }
            }
        }
    }
    for iri in store.instances_of(ClassId::InterventionEvent) {
        if let Ok(Instance::InterventionEvent(e)) = materialize(store, &iri) {
            if &e.agent == agent {
                out.push(AgentActivity {
                    activity: iri,
                    class: ClassId::InterventionEvent,
                    role: None,
                });
            }
        }
    }
    out.sort_by(|a, b| (&a.activity, &a.role).cmp(&(&b.activity, &b.role)));
    Ok(out)
}
