//! Term IRIs for the fixed schema: class terms per source vocabulary and the
//! one canonical predicate per typed field.
//!
//! Class terms come from the vocabulary that defines them (`vstoi:` devices,
//! `oboe:` observation concepts, `prov:` provenance, `hasneto:` the rest).
//! The source vocabularies name classes but not the object properties the
//! catalog needs, so every field predicate is defined here, in one table,
//! and nowhere else; that keeps the instance/triple mapping total and
//! invertible.

use std::sync::LazyLock;

use crate::model::{AgentRole, ClassId, Iri};

pub const NS_HASNETO: &str = "http://hadatac.org/ont/hasneto#";
pub const NS_VSTOI: &str = "http://hadatac.org/ont/vstoi#";
pub const NS_OBOE: &str = "http://ecoinformatics.org/oboe/oboe.1.0/oboe-core.owl#";
pub const NS_PROV: &str = "http://www.w3.org/ns/prov#";

macro_rules! iri_const {
    ($(#[$doc:meta])* $name:ident, $value:expr) => {
        $(#[$doc])*
        pub static $name: LazyLock<Iri> =
            LazyLock::new(|| Iri::new($value).expect("vocabulary IRI"));
    };
}

iri_const!(RDF_TYPE, "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
iri_const!(RDFS_LABEL, "http://www.w3.org/2000/01/rdf-schema#label");

iri_const!(XSD_STRING, "http://www.w3.org/2001/XMLSchema#string");
iri_const!(XSD_DECIMAL, "http://www.w3.org/2001/XMLSchema#decimal");
iri_const!(XSD_DATETIME, "http://www.w3.org/2001/XMLSchema#dateTime");
iri_const!(XSD_BOOLEAN, "http://www.w3.org/2001/XMLSchema#boolean");

iri_const!(
    /// The shared graph holding platforms, instruments, detectors,
    /// deployments, agents, units, characteristics, entities of interest,
    /// and interventions. Collected data lives in one graph per data
    /// collection, named by the collection's own IRI.
    INFRASTRUCTURE_GRAPH,
    "http://hadatac.org/kb/graph/infrastructure"
);

macro_rules! concat_ns {
    ($frag:expr) => {
        concat!("http://hadatac.org/ont/hasneto#", $frag)
    };
}

// Field predicates.
iri_const!(P_MOBILITY, concat_ns!("mobility"));
iri_const!(P_LATITUDE, concat_ns!("latitude"));
iri_const!(P_LONGITUDE, concat_ns!("longitude"));
iri_const!(P_HOST_LABEL, concat_ns!("hostLabel"));
iri_const!(P_MODEL, concat_ns!("model"));
iri_const!(P_SERIAL_NUMBER, concat_ns!("serialNumber"));
iri_const!(P_HAS_DETECTOR, concat_ns!("hasDetector"));
iri_const!(P_OF_CHARACTERISTIC, concat_ns!("ofCharacteristic"));
iri_const!(P_ACCURACY_VALUE, concat_ns!("accuracyValue"));
iri_const!(P_ACCURACY_UNIT, concat_ns!("accuracyUnit"));
iri_const!(P_RANGE_MIN, concat_ns!("rangeMin"));
iri_const!(P_RANGE_MAX, concat_ns!("rangeMax"));
iri_const!(P_RANGE_UNIT, concat_ns!("rangeUnit"));
iri_const!(P_HAS_INSTRUMENT, concat_ns!("hasInstrument"));
iri_const!(P_ON_PLATFORM, concat_ns!("onPlatform"));
iri_const!(P_DEPLOYED_BY, concat_ns!("deployedBy"));
iri_const!(P_SETTING, concat_ns!("setting"));
iri_const!(P_CONTEXT, concat_ns!("context"));
iri_const!(P_QUANTITY_KIND, concat_ns!("quantityKind"));
iri_const!(P_SCALE_TO_BASE, concat_ns!("scaleToBase"));
iri_const!(P_OFFSET_TO_BASE, concat_ns!("offsetToBase"));
iri_const!(P_HAS_VALUE, concat_ns!("hasValue"));
iri_const!(P_IN_UNIT, concat_ns!("inUnit"));
iri_const!(P_AT_TIME, concat_ns!("atTime"));
iri_const!(P_HAS_PRECISION, concat_ns!("hasPrecision"));
iri_const!(P_OF_OBSERVATION, concat_ns!("ofObservation"));
iri_const!(P_IN_DATA_COLLECTION, concat_ns!("inDataCollection"));
iri_const!(P_OF_ENTITY, concat_ns!("ofEntity"));
iri_const!(P_HAS_MEASUREMENT, concat_ns!("hasMeasurement"));
iri_const!(P_USED_DEPLOYMENT, concat_ns!("usedDeployment"));
iri_const!(P_HAS_SCIENTIST, concat_ns!("hasScientist"));
iri_const!(P_HAS_TECHNICIAN, concat_ns!("hasTechnician"));
iri_const!(P_HAS_DATA_MANAGER, concat_ns!("hasDataManager"));
iri_const!(P_HAS_SOFTWARE_AGENT, concat_ns!("hasSoftwareAgent"));
iri_const!(P_NAME, concat_ns!("name"));
iri_const!(P_AGENT_KIND, concat_ns!("agentKind"));
iri_const!(P_INTERVENTION_KIND, concat_ns!("interventionKind"));
iri_const!(P_TARGETS_DEVICE, concat_ns!("targetsDevice"));
iri_const!(P_PARAMETER, concat_ns!("parameter"));

iri_const!(P_STARTED_AT_TIME, "http://www.w3.org/ns/prov#startedAtTime");
iri_const!(P_ENDED_AT_TIME, "http://www.w3.org/ns/prov#endedAtTime");
iri_const!(P_WAS_ASSOCIATED_WITH, "http://www.w3.org/ns/prov#wasAssociatedWith");

/// Predicate linking a data collection to an agent under one of the four
/// fixed roles.
pub fn role_predicate(role: AgentRole) -> &'static Iri {
    match role {
        AgentRole::Scientist => &P_HAS_SCIENTIST,
        AgentRole::Technician => &P_HAS_TECHNICIAN,
        AgentRole::DataManager => &P_HAS_DATA_MANAGER,
        AgentRole::Software => &P_HAS_SOFTWARE_AGENT,
    }
}

pub fn role_for_predicate(p: &Iri) -> Option<AgentRole> {
    AgentRole::ALL.into_iter().find(|r| role_predicate(*r) == p)
}

/// The canonical term IRI of a class. Total and injective;
/// [`classify_iri`] is its inverse.
pub fn schema_iri(class: ClassId) -> Iri {
    let (ns, frag) = match class {
        ClassId::Platform => (NS_VSTOI, "Platform"),
        ClassId::Instrument => (NS_VSTOI, "Instrument"),
        ClassId::Detector => (NS_VSTOI, "Detector"),
        ClassId::Deployment => (NS_VSTOI, "Deployment"),
        ClassId::EntityOfInterest => (NS_OBOE, "Entity"),
        ClassId::Characteristic => (NS_OBOE, "Characteristic"),
        ClassId::Measurement => (NS_OBOE, "Measurement"),
        ClassId::Unit => (NS_OBOE, "Standard"),
        ClassId::Observation => (NS_OBOE, "Observation"),
        ClassId::DataCollection => (NS_HASNETO, "DataCollection"),
        ClassId::InterventionEvent => (NS_HASNETO, "InterventionEvent"),
        ClassId::Activity => (NS_PROV, "Activity"),
        ClassId::Agent => (NS_PROV, "Agent"),
        ClassId::ProvEntity => (NS_PROV, "Entity"),
    };
    Iri::new(format!("{ns}{frag}")).expect("schema IRI")
}

/// Inverse of [`schema_iri`] on its image; `None` for anything else.
pub fn classify_iri(iri: &Iri) -> Option<ClassId> {
    ClassId::ALL.into_iter().find(|c| schema_iri(*c) == *iri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn schema_iri_matches_the_pinned_terms() {
        assert_eq!(
            schema_iri(ClassId::Deployment).as_str(),
            "http://hadatac.org/ont/vstoi#Deployment"
        );
        assert_eq!(
            schema_iri(ClassId::DataCollection).as_str(),
            "http://hadatac.org/ont/hasneto#DataCollection"
        );
    }

    #[test]
    fn schema_iri_is_injective_and_classify_inverts_it() {
        let mut seen = BTreeSet::new();
        for class in ClassId::ALL {
            let iri = schema_iri(class);
            assert!(seen.insert(iri.clone()), "duplicate term IRI {iri}");
            assert_eq!(classify_iri(&iri), Some(class));
        }
        assert_eq!(seen.len(), 14);
    }

    #[test]
    fn classify_rejects_foreign_iris() {
        let other = Iri::new("http://example.org/x").unwrap();
        assert_eq!(classify_iri(&other), None);
    }

    #[test]
    fn oboe_and_prov_entity_terms_stay_distinct() {
        assert_ne!(
            schema_iri(ClassId::EntityOfInterest),
            schema_iri(ClassId::ProvEntity)
        );
    }
}
