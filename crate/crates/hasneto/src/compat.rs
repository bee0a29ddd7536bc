//! The leveled semantic-compatibility verdict: can two measurements soundly
//! be analyzed together?
//!
//! Checks are cumulative. L0 asks whether the two measurements are about the
//! same quantity kind at all; L1 adds same entity and context; L2 adds unit
//! convertibility (recording the affine factor); L3 adds calibration (both
//! values inside any declared detector range) and complete provenance
//! traces. The verdict's level is the highest k whose checks all pass, or
//! `Incompatible` when even L0 fails. An informational instrument-identity
//! reason is appended but never gates the level.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexical::format_decimal;
use crate::mapping::InstanceIndex;
use crate::model::{Iri, Measurement};
use crate::provenance;
use crate::store::GraphStore;
use crate::units;
use crate::validate::range_outcome;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompatError {
    #[error("unknown measurement <{0}>")]
    UnknownMeasurement(Iri),
}

/// Compatibility levels, ordered. `Incompatible < L0 < L1 < L2 < L3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CompatLevel {
    Incompatible,
    L0,
    L1,
    L2,
    L3,
}

impl CompatLevel {
    pub const ALL: [CompatLevel; 5] = [
        CompatLevel::Incompatible,
        CompatLevel::L0,
        CompatLevel::L1,
        CompatLevel::L2,
        CompatLevel::L3,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatCheck {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityVerdict {
    pub level: CompatLevel,
    pub reasons: Vec<CompatCheck>,
}

/// Per-level pair counts over two measurement sets, plus the minimum —
/// the sets' joint compatibility. `min_level` is absent when either set is
/// empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatSummary {
    pub pairs: usize,
    pub counts: BTreeMap<CompatLevel, usize>,
    pub min_level: Option<CompatLevel>,
}

/// Compare two measurements. Symmetric in the level: swapping the arguments
/// can change detail wording but never the verdict.
pub fn compatibility(
    store: &GraphStore,
    a: &Iri,
    b: &Iri,
) -> Result<CompatibilityVerdict, CompatError> {
    let idx = InstanceIndex::build(store);
    compatibility_indexed(store, &idx, a, b)
}

pub fn compatibility_indexed(
    store: &GraphStore,
    idx: &InstanceIndex,
    a: &Iri,
    b: &Iri,
) -> Result<CompatibilityVerdict, CompatError> {
    let ma = idx
        .measurements
        .get(a)
        .ok_or_else(|| CompatError::UnknownMeasurement(a.clone()))?;
    let mb = idx
        .measurements
        .get(b)
        .ok_or_else(|| CompatError::UnknownMeasurement(b.clone()))?;

    let mut reasons = Vec::new();

    let l0 = check_quantity_kind(idx, ma, mb);
    let l1 = check_entity_context(idx, ma, mb);
    let l2 = check_unit_conversion(idx, ma, mb);
    let l3_range = check_calibration_range(idx, ma, mb);
    let l3_trace = check_trace_complete(store, ma, mb);

    let level = if !l0.passed {
        CompatLevel::Incompatible
    } else if !l1.passed {
        CompatLevel::L0
    } else if !l2.passed {
        CompatLevel::L1
    } else if !(l3_range.passed && l3_trace.passed) {
        CompatLevel::L2
    } else {
        CompatLevel::L3
    };

    reasons.push(l0);
    reasons.push(l1);
    reasons.push(l2);
    reasons.push(l3_range);
    reasons.push(l3_trace);
    reasons.push(instrument_identity(idx, ma, mb));

    Ok(CompatibilityVerdict { level, reasons })
}

fn check(name: &str, passed: bool, detail: String) -> CompatCheck {
    CompatCheck { check: name.to_owned(), passed, detail }
}

fn check_quantity_kind(idx: &InstanceIndex, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "quantity-kind";
    let ka = idx.characteristics.get(&a.characteristic);
    let kb = idx.characteristics.get(&b.characteristic);
    match (ka, kb) {
        (Some(ca), Some(cb)) if ca.quantity_kind == cb.quantity_kind => check(
            name,
            true,
            format!("both measure {}", ca.quantity_kind),
        ),
        (Some(ca), Some(cb)) => check(
            name,
            false,
            format!("{} vs {}", ca.quantity_kind, cb.quantity_kind),
        ),
        _ => check(name, false, "a characteristic does not resolve".to_owned()),
    }
}

fn check_entity_context(idx: &InstanceIndex, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "entity-context";
    let ea = idx.observations.get(&a.observation).and_then(|o| idx.entities.get(&o.entity));
    let eb = idx.observations.get(&b.observation).and_then(|o| idx.entities.get(&o.entity));
    match (ea, eb) {
        (Some(ea), Some(eb)) => {
            if ea.iri != eb.iri {
                check(name, false, format!("different entities <{}> vs <{}>", ea.iri, eb.iri))
            } else if ea.context != eb.context {
                check(
                    name,
                    false,
                    format!("same entity, contexts differ ({:?} vs {:?})", ea.context, eb.context),
                )
            } else {
                check(name, true, format!("same entity <{}> in equal context", ea.iri))
            }
        }
        _ => check(name, false, "an observed entity does not resolve".to_owned()),
    }
}

fn check_unit_conversion(idx: &InstanceIndex, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "unit-conversion";
    let (Some(ua), Some(ub)) = (idx.units.get(&a.unit), idx.units.get(&b.unit)) else {
        return check(name, false, "a unit does not resolve".to_owned());
    };
    match units::conversion_map(ua, ub) {
        Ok(map) => {
            let detail = if ua.iri == ub.iri {
                format!("identical unit {}", ua.label)
            } else {
                format!(
                    "{} converts into {} via x -> {}*x + {}",
                    ua.label,
                    ub.label,
                    format_decimal(map.scale),
                    format_decimal(map.offset),
                )
            };
            check(name, true, detail)
        }
        Err(e) => check(name, false, e.to_string()),
    }
}

fn check_calibration_range(idx: &InstanceIndex, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "calibration-range";
    let side = |m: &Measurement| {
        let outcome = range_outcome(idx, m);
        let text = if !outcome.passed() {
            outcome.failures.join("; ")
        } else if outcome.applied {
            "within declared detector range".to_owned()
        } else {
            "no applicable detector range (vacuous)".to_owned()
        };
        (outcome.passed(), text)
    };
    let (pa, ta) = side(a);
    let (pb, tb) = side(b);
    check(name, pa && pb, format!("a: {ta}; b: {tb}"))
}

fn check_trace_complete(store: &GraphStore, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "trace-complete";
    let side = |m: &Measurement| match provenance::trace(store, &m.iri) {
        Ok(_) => (true, "complete".to_owned()),
        Err(e) => (false, e.to_string()),
    };
    let (pa, ta) = side(a);
    let (pb, tb) = side(b);
    check(name, pa && pb, format!("a: {ta}; b: {tb}"))
}

fn instrument_identity(idx: &InstanceIndex, a: &Measurement, b: &Measurement) -> CompatCheck {
    let name = "instrument-identity";
    let instrument_of = |m: &Measurement| {
        idx.collections
            .get(&m.data_collection)
            .and_then(|c| idx.deployments.get(&c.deployment))
            .map(|d| d.instrument.clone())
    };
    let detail = match (instrument_of(a), instrument_of(b)) {
        (Some(ia), Some(ib)) if ia == ib => format!("same instrument <{ia}>"),
        (Some(ia), Some(ib)) => format!("different instruments <{ia}> vs <{ib}>"),
        _ => "instrument undetermined for at least one side".to_owned(),
    };
    // Informational only; never gates the level.
    check(name, true, detail)
}

/// Pairwise compatibility over the full `|A|×|B|` matrix.
pub fn compat_report(
    store: &GraphStore,
    set_a: &[Iri],
    set_b: &[Iri],
) -> Result<CompatSummary, CompatError> {
    let idx = InstanceIndex::build(store);
    for iri in set_a.iter().chain(set_b) {
        if !idx.measurements.contains_key(iri) {
            return Err(CompatError::UnknownMeasurement(iri.clone()));
        }
    }
    let mut counts: BTreeMap<CompatLevel, usize> =
        CompatLevel::ALL.into_iter().map(|l| (l, 0)).collect();
    let mut min_level = None;
    for a in set_a {
        for b in set_b {
            let verdict = compatibility_indexed(store, &idx, a, b)?;
            *counts.get_mut(&verdict.level).expect("seeded level") += 1;
            min_level = Some(match min_level {
                None => verdict.level,
                Some(current) => verdict.level.min(current),
            });
        }
    }
    Ok(CompatSummary { pairs: set_a.len() * set_b.len(), counts, min_level })
}
