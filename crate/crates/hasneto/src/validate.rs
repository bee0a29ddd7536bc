//! The rule catalog and the validator.
//!
//! Rules fall into four groups mirroring the four kinds of measurement
//! metadata the catalog carries: DC1 checks the declared infrastructure,
//! DC2 flags quality concerns around calibration and mid-collection
//! interventions, DC3 checks the scientific annotation of each measurement,
//! and DC4 checks provenance wiring. Structural and reference failures are
//! errors; quality concerns are warnings — out-of-range data is low quality,
//! not invalid.
//!
//! | rule  | severity | fires when |
//! |-------|----------|------------|
//! | DC1-1 | error    | a deployment's instrument or platform does not resolve, or a subject carries two of the disjoint device classes |
//! | DC1-2 | error    | a detector is listed by two instruments |
//! | DC1-3 | warning  | a stationary platform has no location |
//! | DC2-1 | warning  | a measurement falls outside a matching detector's calibrated range (unit-converted) |
//! | DC2-2 | warning  | an instrument is intervened on strictly inside an active collection using it, unrecorded |
//! | DC3-1 | error    | a measurement's characteristic, unit, observation, or the observation's entity does not resolve |
//! | DC3-2 | error    | a measurement's unit and characteristic disagree on quantity kind |
//! | DC4-1 | error    | a collection has no agent associations, a dangling deployment, or an interval not nested in the deployment's |
//! | DC4-2 | error    | a measurement's timestamp lies outside its deployment interval, or its collection does not resolve |
//! | DC4-3 | error    | one observation's measurements span two collections |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::mapping::InstanceIndex;
use crate::model::{ClassId, InterventionKind, Iri, Measurement};
use crate::store::GraphStore;
use crate::units;

/// Slack applied to range comparisons after unit conversion, relative to the
/// bound magnitudes: affine round-trips land within 1e-9, and a value that
/// converts exactly onto a bound must not fire.
pub const RANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub rule_id: String,
    pub subject: Iri,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub error_count: usize,
    pub warning_count: usize,
    pub store_fingerprint: String,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.error_count > 0
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Rules<'a> {
    idx: &'a InstanceIndex,
    violations: Vec<Violation>,
}

impl Rules<'_> {
    fn push(&mut self, rule_id: &str, subject: &Iri, severity: Severity, message: String) {
        self.violations.push(Violation {
            rule_id: rule_id.to_owned(),
            subject: subject.clone(),
            severity,
            message,
        });
    }

    fn error(&mut self, rule_id: &str, subject: &Iri, message: String) {
        self.push(rule_id, subject, Severity::Error, message);
    }

    fn warning(&mut self, rule_id: &str, subject: &Iri, message: String) {
        self.push(rule_id, subject, Severity::Warning, message);
    }
}

/// Evaluate every rule over a store snapshot. Problems are report content,
/// never failures; two runs over equal stores render byte-identical reports.
pub fn validate(store: &GraphStore) -> ValidationReport {
    let idx = InstanceIndex::build(store);
    validate_indexed(store, &idx)
}

pub fn validate_indexed(store: &GraphStore, idx: &InstanceIndex) -> ValidationReport {
    let mut rules = Rules { idx, violations: Vec::new() };

    dc1_1(store, &mut rules);
    dc1_2(&mut rules);
    dc1_3(&mut rules);
    dc2_1(&mut rules);
    dc2_2(&mut rules);
    dc3_1(&mut rules);
    dc3_2(&mut rules);
    dc4_1(&mut rules);
    dc4_2(&mut rules);
    dc4_3(&mut rules);

    let mut violations = rules.violations;
    violations.sort_by(|a, b| {
        (&a.rule_id, &a.subject, &a.message).cmp(&(&b.rule_id, &b.subject, &b.message))
    });
    let error_count = violations.iter().filter(|v| v.severity == Severity::Error).count();
    let warning_count = violations.len() - error_count;
    ValidationReport {
        violations,
        error_count,
        warning_count,
        store_fingerprint: canon::fingerprint(store),
    }
}

fn dc1_1(store: &GraphStore, rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, dep) in &idx.deployments {
        let mut missing = Vec::new();
        if !idx.instruments.contains_key(&dep.instrument) {
            missing.push(format!("instrument <{}>", dep.instrument));
        }
        if !idx.platforms.contains_key(&dep.platform) {
            missing.push(format!("platform <{}>", dep.platform));
        }
        if !missing.is_empty() {
            rules.error(
                "DC1-1",
                iri,
                format!("deployment references unresolved {}", missing.join(" and ")),
            );
        }
    }
    // The three device classes are pairwise disjoint.
    let mut device_classes: BTreeMap<Iri, Vec<ClassId>> = BTreeMap::new();
    for class in [ClassId::Platform, ClassId::Instrument, ClassId::Detector] {
        for iri in store.instances_of(class) {
            device_classes.entry(iri).or_default().push(class);
        }
    }
    for (iri, classes) in device_classes {
        if classes.len() > 1 {
            let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            rules.error(
                "DC1-1",
                &iri,
                format!("subject asserted under disjoint classes {}", names.join(", ")),
            );
        }
    }
}

fn dc1_2(rules: &mut Rules) {
    let idx = rules.idx;
    let mut holders: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    for (iri, instrument) in &idx.instruments {
        for det in &instrument.detectors {
            holders.entry(det.clone()).or_default().push(iri.clone());
        }
    }
    for (detector, instruments) in holders {
        if instruments.len() > 1 {
            let list: Vec<String> =
                instruments.iter().map(|i| format!("<{i}>")).collect();
            rules.error(
                "DC1-2",
                &detector,
                format!("detector attached to several instruments: {}", list.join(", ")),
            );
        }
    }
}

fn dc1_3(rules: &mut Rules) {
    let idx = rules.idx;
    for p in idx.platforms.values() {
        if p.mobility == crate::model::Mobility::Stationary && p.location.is_none() {
            rules.warning("DC1-3", &p.iri, "stationary platform without a location".to_owned());
        }
    }
}

/// Outcome of checking one measurement against the calibrated ranges of the
/// detectors behind it. `applied` is false when no detector with a declared
/// range matches the measurement's characteristic through its collection's
/// deployment (the check is then vacuous).
#[derive(Debug, Clone, Default)]
pub struct RangeOutcome {
    pub applied: bool,
    pub failures: Vec<String>,
}

impl RangeOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The conversion-aware calibrated-range check behind rule DC2-1, shared
/// with the compatibility engine.
pub fn range_outcome(idx: &InstanceIndex, m: &Measurement) -> RangeOutcome {
    let mut outcome = RangeOutcome::default();
    let Some(collection) = idx.collections.get(&m.data_collection) else { return outcome };
    let Some(deployment) = idx.deployments.get(&collection.deployment) else { return outcome };
    let Some(instrument) = idx.instruments.get(&deployment.instrument) else { return outcome };
    let Some(m_unit) = idx.units.get(&m.unit) else { return outcome };
    for det_iri in &instrument.detectors {
        let Some(detector) = idx.detectors.get(det_iri) else { continue };
        if detector.characteristic != m.characteristic {
            continue;
        }
        let Some(range) = &detector.range else { continue };
        let Some(range_unit) = idx.units.get(&range.unit) else { continue };
        let Ok(converted) = units::convert(m.value, m_unit, range_unit) else {
            // A kind mismatch between the measurement's unit and the range's
            // unit is DC3-2's business, not a calibration concern.
            continue;
        };
        outcome.applied = true;
        let tolerance =
            RANGE_TOLERANCE * range.min.abs().max(range.max.abs()).max(1.0);
        if converted < range.min - tolerance || converted > range.max + tolerance {
            outcome.failures.push(format!(
                "value {} {} is outside detector <{}> range [{}, {}] {}",
                crate::lexical::format_decimal(converted),
                range_unit.label,
                det_iri,
                crate::lexical::format_decimal(range.min),
                crate::lexical::format_decimal(range.max),
                range_unit.label,
            ));
        }
    }
    outcome
}

fn dc2_1(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, m) in &idx.measurements {
        for failure in range_outcome(idx, m).failures {
            rules.warning("DC2-1", iri, format!("low-quality: {failure}"));
        }
    }
}

fn dc2_2(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, event) in &idx.interventions {
        if !idx.instruments.contains_key(&event.target) {
            continue;
        }
        let kind = format!("{:?}", event.kind).to_lowercase();
        for (c_iri, collection) in &idx.collections {
            let Some(deployment) = idx.deployments.get(&collection.deployment) else {
                continue;
            };
            if deployment.instrument != event.target
                || !collection.strictly_contains(event.at)
            {
                continue;
            }
            // A configuration whose parameters are all part of the declared
            // deployment settings counts as recorded; anything else that
            // lands mid-collection is suspect.
            let recorded = event.kind == InterventionKind::Configuration
                && event.parameters.iter().all(|p| deployment.settings.contains(p));
            if !recorded {
                rules.warning(
                    "DC2-2",
                    iri,
                    format!(
                        "{kind} intervention during data collection <{c_iri}> is not recorded in the deployment settings"
                    ),
                );
            }
        }
    }
}

fn dc3_1(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, m) in &idx.measurements {
        let mut missing = Vec::new();
        if !idx.characteristics.contains_key(&m.characteristic) {
            missing.push(format!("characteristic <{}>", m.characteristic));
        }
        if !idx.units.contains_key(&m.unit) {
            missing.push(format!("unit <{}>", m.unit));
        }
        match idx.observations.get(&m.observation) {
            None => missing.push(format!("observation <{}>", m.observation)),
            Some(obs) => {
                if !idx.entities.contains_key(&obs.entity) {
                    missing.push(format!("entity <{}> of observation <{}>", obs.entity, obs.iri));
                }
            }
        }
        if !missing.is_empty() {
            rules.error("DC3-1", iri, format!("unresolved {}", missing.join(", ")));
        }
    }
}

fn dc3_2(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, m) in &idx.measurements {
        let (Some(unit), Some(characteristic)) =
            (idx.units.get(&m.unit), idx.characteristics.get(&m.characteristic))
        else {
            continue;
        };
        if unit.quantity_kind != characteristic.quantity_kind {
            rules.error(
                "DC3-2",
                iri,
                format!(
                    "unit <{}> measures {} but characteristic <{}> is {}",
                    unit.iri, unit.quantity_kind, characteristic.iri, characteristic.quantity_kind
                ),
            );
        }
    }
}

fn dc4_1(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, collection) in &idx.collections {
        let mut problems = Vec::new();
        if collection.associations.is_empty() {
            problems.push("no agent associations".to_owned());
        }
        match idx.deployments.get(&collection.deployment) {
            None => problems.push(format!("unresolved deployment <{}>", collection.deployment)),
            Some(deployment) => {
                let nested = deployment.start <= collection.start
                    && match deployment.end {
                        None => true,
                        Some(dep_end) => {
                            collection.end.is_some_and(|col_end| col_end <= dep_end)
                        }
                    };
                if !nested {
                    problems.push(
                        "collection interval is not nested in the deployment interval".to_owned(),
                    );
                }
            }
        }
        if !problems.is_empty() {
            rules.error("DC4-1", iri, problems.join("; "));
        }
    }
}

fn dc4_2(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, m) in &idx.measurements {
        match idx.collections.get(&m.data_collection) {
            None => rules.error(
                "DC4-2",
                iri,
                format!("unresolved data collection <{}>", m.data_collection),
            ),
            Some(collection) => {
                let Some(deployment) = idx.deployments.get(&collection.deployment) else {
                    continue; // DC4-1 reports the broken collection.
                };
                if !deployment.covers(m.timestamp) {
                    rules.error(
                        "DC4-2",
                        iri,
                        format!(
                            "timestamp {} is outside deployment <{}> interval",
                            m.timestamp, deployment.iri
                        ),
                    );
                }
            }
        }
    }
}

fn dc4_3(rules: &mut Rules) {
    let idx = rules.idx;
    for (iri, obs) in &idx.observations {
        let mut collections: Vec<&Iri> = obs
            .measurements
            .iter()
            .filter_map(|m| idx.measurements.get(m))
            .map(|m| &m.data_collection)
            .collect();
        collections.sort();
        collections.dedup();
        if collections.len() > 1 {
            let list: Vec<String> = collections.iter().map(|c| format!("<{c}>")).collect();
            rules.error(
                "DC4-3",
                iri,
                format!("measurements span several data collections: {}", list.join(", ")),
            );
        }
    }
}
