//! Measurement retrieval with conjunctive filters and on-the-fly unit
//! conversion.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mapping::InstanceIndex;
use crate::model::{Iri, Measurement, Timestamp};
use crate::store::GraphStore;
use crate::units::{self, ConversionError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("unknown {what} <{iri}>")]
    UnknownIri { what: &'static str, iri: Iri },
    #[error("time range: from must not exceed to")]
    InvalidTimeRange,
    #[error(transparent)]
    Conversion(#[from] ConversionError),
}

/// A conjunctive filter; absent fields are wildcards. With `unit` set,
/// returned values are converted into that unit.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasurementFilter {
    pub entity: Option<Iri>,
    pub characteristic: Option<Iri>,
    pub data_collection: Option<Iri>,
    pub time_range: Option<(Timestamp, Timestamp)>,
    pub unit: Option<Iri>,
}

/// Measurements satisfying every bound filter field, sorted by timestamp
/// then IRI. Filter IRIs must resolve; conversion across quantity kinds is
/// an error rather than an empty result.
pub fn find_measurements(
    store: &GraphStore,
    filter: &MeasurementFilter,
) -> Result<Vec<Measurement>, QueryError> {
    let idx = InstanceIndex::build(store);
    find_measurements_indexed(&idx, filter)
}

pub fn find_measurements_indexed(
    idx: &InstanceIndex,
    filter: &MeasurementFilter,
) -> Result<Vec<Measurement>, QueryError> {
    if let Some(entity) = &filter.entity {
        if !idx.entities.contains_key(entity) {
            return Err(QueryError::UnknownIri { what: "entity", iri: entity.clone() });
        }
    }
    if let Some(characteristic) = &filter.characteristic {
        if !idx.characteristics.contains_key(characteristic) {
            return Err(QueryError::UnknownIri {
                what: "characteristic",
                iri: characteristic.clone(),
            });
        }
    }
    if let Some(collection) = &filter.data_collection {
        if !idx.collections.contains_key(collection) {
            return Err(QueryError::UnknownIri { what: "data collection", iri: collection.clone() });
        }
    }
    if let Some((from, to)) = &filter.time_range {
        if from > to {
            return Err(QueryError::InvalidTimeRange);
        }
    }
    let target_unit = match &filter.unit {
        None => None,
        Some(iri) => Some(
            idx.units
                .get(iri)
                .ok_or_else(|| QueryError::UnknownIri { what: "unit", iri: iri.clone() })?,
        ),
    };

    let mut out = Vec::new();
    for m in idx.measurements.values() {
        if let Some(characteristic) = &filter.characteristic {
            if &m.characteristic != characteristic {
                continue;
            }
        }
        if let Some(collection) = &filter.data_collection {
            if &m.data_collection != collection {
                continue;
            }
        }
        if let Some((from, to)) = &filter.time_range {
            if m.timestamp < *from || m.timestamp > *to {
                continue;
            }
        }
        if let Some(entity) = &filter.entity {
            // Reached through the measurement's observation; a dangling
            // observation simply does not match.
            let observed = idx
                .observations
                .get(&m.observation)
                .is_some_and(|obs| &obs.entity == entity);
            if !observed {
                continue;
            }
        }
        let mut m = m.clone();
        if let Some(to_unit) = target_unit {
            let from_unit = idx.units.get(&m.unit).ok_or_else(|| QueryError::UnknownIri {
                what: "measurement unit",
                iri: m.unit.clone(),
            })?;
            m.value = units::convert(m.value, from_unit, to_unit)?;
            m.unit = to_unit.iri.clone();
        }
        out.push(m);
    }
    out.sort_by(|a, b| (a.timestamp, &a.iri).cmp(&(b.timestamp, &b.iri)));
    Ok(out)
}
