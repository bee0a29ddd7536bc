//! CSV ingestion: a JSON metadata descriptor says which columns mean what,
//! and each data row becomes one observation plus one measurement per value
//! column, linked to a declared data collection.
//!
//! Measurement IRIs are minted deterministically as
//! `iriPrefix + rowNumber + "-" + columnName` (observations take the bare
//! row number), so re-ingesting the same file is a no-op by set semantics.
//! Rows are atomic: a row with any unparseable cell reports one error and
//! contributes nothing.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::mapping::decompose;
use crate::model::{ClassId, Iri, Measurement, Observation, Timestamp};
use crate::store::GraphStore;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("invalid descriptor: {}", .0.join("; "))]
    Descriptor(Vec<String>),
    #[error("descriptor references unresolved {}", .0.join(", "))]
    DanglingReferences(Vec<String>),
    #[error("CSV header problem: {0}")]
    Header(String),
}

/// Maps raw CSV columns onto schema terms. The JSON schema is strict:
/// unknown keys are rejected and every error is reported, not just the
/// first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MetadataDescriptor {
    pub data_collection: Iri,
    pub timestamp_column: TimestampColumn,
    pub entity: Iri,
    pub value_columns: Vec<ValueColumn>,
    pub iri_prefix: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimestampColumn {
    pub name: String,
    /// Only `"rfc3339"` is defined.
    pub format: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueColumn {
    pub column: String,
    pub characteristic: Iri,
    pub unit: Iri,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowError {
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IngestReport {
    pub rows_read: usize,
    pub measurements_created: usize,
    pub observations_created: usize,
    pub row_errors: Vec<RowError>,
}

/// Parse and fully validate a descriptor document, reporting every schema
/// problem at once.
pub fn parse_descriptor(text: &str) -> Result<MetadataDescriptor, IngestError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| IngestError::Descriptor(vec![format!("not valid JSON: {e}")]))?;
    let Value::Object(map) = &value else {
        return Err(IngestError::Descriptor(vec!["document must be a JSON object".into()]));
    };

    let mut errors = Vec::new();
    const KNOWN: [&str; 5] =
        ["dataCollection", "timestampColumn", "entity", "valueColumns", "iriPrefix"];
    for key in map.keys() {
        if !KNOWN.contains(&key.as_str()) {
            errors.push(format!("unknown key {key:?}"));
        }
    }
    for key in KNOWN {
        if !map.contains_key(key) {
            errors.push(format!("missing key {key:?}"));
        }
    }

    let take_iri = |errors: &mut Vec<String>, key: &str| -> Option<Iri> {
        match map.get(key) {
            Some(Value::String(s)) => match Iri::new(s.clone()) {
                Ok(iri) => Some(iri),
                Err(e) => {
                    errors.push(format!("{key}: {e}"));
                    None
                }
            },
            Some(_) => {
                errors.push(format!("{key} must be a string"));
                None
            }
            None => None,
        }
    };

    let data_collection = take_iri(&mut errors, "dataCollection");
    let entity = take_iri(&mut errors, "entity");

    let timestamp_column = match map.get("timestampColumn") {
        Some(v) => match serde_json::from_value::<TimestampColumn>(v.clone()) {
            Ok(tc) => {
                if tc.name.is_empty() {
                    errors.push("timestampColumn.name must be nonempty".into());
                }
                if tc.format != "rfc3339" {
                    errors.push(format!(
                        "timestampColumn.format must be \"rfc3339\", got {:?}",
                        tc.format
                    ));
                }
                Some(tc)
            }
            Err(e) => {
                errors.push(format!("timestampColumn: {e}"));
                None
            }
        },
        None => None,
    };

    let mut value_columns = Vec::new();
    match map.get("valueColumns") {
        Some(Value::Array(items)) => {
            if items.is_empty() {
                errors.push("valueColumns must be nonempty".into());
            }
            for (i, item) in items.iter().enumerate() {
                match serde_json::from_value::<ValueColumn>(item.clone()) {
                    Ok(vc) => {
                        if vc.column.is_empty() {
                            errors.push(format!("valueColumns[{i}].column must be nonempty"));
                        }
                        value_columns.push(vc);
                    }
                    Err(e) => errors.push(format!("valueColumns[{i}]: {e}")),
                }
            }
        }
        Some(_) => errors.push("valueColumns must be an array".into()),
        None => {}
    }

    let mut names = BTreeSet::new();
    for vc in &value_columns {
        if !names.insert(vc.column.clone()) {
            errors.push(format!("duplicate column name {:?}", vc.column));
        }
    }
    if let Some(tc) = &timestamp_column {
        if names.contains(&tc.name) {
            errors.push(format!(
                "timestamp column {:?} must not appear among valueColumns",
                tc.name
            ));
        }
    }

    let iri_prefix = match map.get("iriPrefix") {
        Some(Value::String(s)) => {
            // Every minted IRI must be valid: probe the observation form and
            // each column's measurement form.
            if let Err(e) = Iri::new(format!("{s}1")) {
                errors.push(format!("iriPrefix does not mint valid IRIs: {e}"));
            }
            for vc in &value_columns {
                if let Err(e) = Iri::new(format!("{s}1-{}", vc.column)) {
                    errors.push(format!("column {:?} does not mint valid IRIs: {e}", vc.column));
                }
            }
            Some(s.clone())
        }
        Some(_) => {
            errors.push("iriPrefix must be a string".into());
            None
        }
        None => None,
    };

    if !errors.is_empty() {
        return Err(IngestError::Descriptor(errors));
    }
    Ok(MetadataDescriptor {
        data_collection: data_collection.expect("validated"),
        timestamp_column: timestamp_column.expect("validated"),
        entity: entity.expect("validated"),
        value_columns,
        iri_prefix: iri_prefix.expect("validated"),
    })
}

fn has_type(store: &GraphStore, iri: &Iri, class: ClassId) -> bool {
    store.types_of(iri).contains(&class)
}

/// Ingest a CSV document under a descriptor. Dangling descriptor references
/// refuse the whole ingest before any mutation; per-row problems become
/// [`RowError`]s and skip only that row.
pub fn ingest_csv(
    store: &mut GraphStore,
    csv_text: &str,
    descriptor: &MetadataDescriptor,
) -> Result<IngestReport, IngestError> {
    // Preflight: every descriptor reference must already be in the store.
    let mut dangling = Vec::new();
    if !has_type(store, &descriptor.data_collection, ClassId::DataCollection) {
        dangling.push(format!("data collection <{}>", descriptor.data_collection));
    }
    if !has_type(store, &descriptor.entity, ClassId::EntityOfInterest) {
        dangling.push(format!("entity <{}>", descriptor.entity));
    }
    for vc in &descriptor.value_columns {
        if !has_type(store, &vc.characteristic, ClassId::Characteristic) {
            dangling.push(format!("characteristic <{}>", vc.characteristic));
        }
        if !has_type(store, &vc.unit, ClassId::Unit) {
            dangling.push(format!("unit <{}>", vc.unit));
        }
    }
    if !dangling.is_empty() {
        dangling.sort();
        dangling.dedup();
        return Err(IngestError::DanglingReferences(dangling));
    }

    // Hand-built descriptors may not have gone through parse_descriptor;
    // reject unmintable IRIs up front rather than mid-file.
    let mut probe_errors = Vec::new();
    if let Err(e) = Iri::new(format!("{}1", descriptor.iri_prefix)) {
        probe_errors.push(format!("iriPrefix does not mint valid IRIs: {e}"));
    }
    for vc in &descriptor.value_columns {
        if let Err(e) = Iri::new(format!("{}1-{}", descriptor.iri_prefix, vc.column)) {
            probe_errors.push(format!("column {:?} does not mint valid IRIs: {e}", vc.column));
        }
    }
    if !probe_errors.is_empty() {
        return Err(IngestError::Descriptor(probe_errors));
    }

    let mut reader = csv::ReaderBuilder::new().from_reader(csv_text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| IngestError::Header(e.to_string()))?
        .clone();
    let position_of = |name: &str| -> Result<usize, IngestError> {
        let hits: Vec<usize> = headers
            .iter()
            .enumerate()
            .filter(|(_, h)| *h == name)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [] => Err(IngestError::Header(format!("missing column {name:?}"))),
            [one] => Ok(*one),
            _ => Err(IngestError::Header(format!("column {name:?} appears more than once"))),
        }
    };
    let ts_pos = position_of(&descriptor.timestamp_column.name)?;
    let mut value_pos = Vec::new();
    for vc in &descriptor.value_columns {
        value_pos.push((vc, position_of(&vc.column)?));
    }

    let graph = descriptor.data_collection.clone();
    let mut report = IngestReport {
        rows_read: 0,
        measurements_created: 0,
        observations_created: 0,
        row_errors: Vec::new(),
    };

    for (index, record) in reader.records().enumerate() {
        let row = index + 1;
        report.rows_read += 1;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                report.row_errors.push(RowError { row, message: e.to_string() });
                continue;
            }
        };

        // Parse the whole row before touching the store: rows are atomic.
        let mut problems = Vec::new();
        let timestamp = match record.get(ts_pos) {
            Some(cell) => match Timestamp::parse(cell) {
                Ok(t) => Some(t),
                Err(_) => {
                    problems.push(format!(
                        "column {:?}: {cell:?} is not an RFC 3339 timestamp",
                        descriptor.timestamp_column.name
                    ));
                    None
                }
            },
            None => {
                problems.push(format!("column {:?}: missing", descriptor.timestamp_column.name));
                None
            }
        };
        let mut values = Vec::new();
        for (vc, pos) in &value_pos {
            match record.get(*pos).and_then(crate::lexical::parse_decimal) {
                Some(v) => values.push((*vc, v)),
                None => problems.push(format!(
                    "column {:?}: {:?} is not a finite decimal",
                    vc.column,
                    record.get(*pos).unwrap_or("")
                )),
            }
        }
        if !problems.is_empty() {
            report.row_errors.push(RowError { row, message: problems.join("; ") });
            continue;
        }
        let timestamp = timestamp.expect("no problems recorded");

        let observation_iri = mint(&descriptor.iri_prefix, row, None);
        let mut measurement_iris = Vec::new();
        let mut instances = Vec::new();
        for (vc, value) in values {
            let iri = mint(&descriptor.iri_prefix, row, Some(&vc.column));
            measurement_iris.push(iri.clone());
            instances.push(crate::mapping::Instance::Measurement(Measurement {
                iri,
                value,
                unit: vc.unit.clone(),
                characteristic: vc.characteristic.clone(),
                timestamp,
                precision: None,
                observation: observation_iri.clone(),
                data_collection: descriptor.data_collection.clone(),
            }));
        }
        instances.push(crate::mapping::Instance::Observation(Observation {
            iri: observation_iri,
            entity: descriptor.entity.clone(),
            measurements: measurement_iris,
        }));

        let mut triples = Vec::new();
        let mut row_ok = true;
        for instance in &instances {
            match decompose(instance) {
                Ok(mut ts) => triples.append(&mut ts),
                Err(e) => {
                    report.row_errors.push(RowError { row, message: e.to_string() });
                    row_ok = false;
                    break;
                }
            }
        }
        if !row_ok {
            continue;
        }
        for triple in triples {
            store.insert(&graph, triple);
        }
        report.observations_created += 1;
        report.measurements_created += descriptor.value_columns.len();
    }

    log::debug!(
        "ingested {} rows into <{}>: {} measurements, {} errors",
        report.rows_read,
        descriptor.data_collection,
        report.measurements_created,
        report.row_errors.len()
    );
    Ok(report)
}

fn mint(prefix: &str, row: usize, column: Option<&str>) -> Iri {
    let text = match column {
        Some(column) => format!("{prefix}{row}-{column}"),
        None => format!("{prefix}{row}"),
    };
    Iri::new(text).expect("descriptor prefix validated")
}
