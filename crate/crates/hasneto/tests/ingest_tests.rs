use hasneto::canon::export_canonical;
use hasneto::fixtures::scenario;
use hasneto::ingest::{ingest_csv, parse_descriptor, IngestError, MetadataDescriptor};
use hasneto::mapping::{materialize, Instance};
use hasneto::model::Iri;

fn descriptor_json(collection: &Iri, entity: &Iri, characteristic: &Iri, unit: &Iri) -> String {
    format!(
        r#"{{
  "dataCollection": "{collection}",
  "timestampColumn": {{"name": "ts", "format": "rfc3339"}},
  "entity": "{entity}",
  "valueColumns": [
    {{"column": "temp", "characteristic": "{characteristic}", "unit": "{unit}"}}
  ],
  "iriPrefix": "http://hadatac.org/kb/ingest/"
}}"#
    )
}

fn scenario_descriptor() -> (hasneto::fixtures::Scenario, MetadataDescriptor) {
    let s = scenario();
    let text = descriptor_json(&s.collection, &s.air, &s.temperature, &s.celsius);
    let descriptor = parse_descriptor(&text).unwrap();
    (s, descriptor)
}

#[test]
fn minimal_descriptor_parses_to_one_mapping() {
    let (_, descriptor) = scenario_descriptor();
    assert_eq!(descriptor.value_columns.len(), 1);
    assert_eq!(descriptor.value_columns[0].column, "temp");
    assert_eq!(descriptor.timestamp_column.name, "ts");
}

#[test]
fn duplicate_column_name_is_reported_by_name() {
    let s = scenario();
    let text = format!(
        r#"{{
  "dataCollection": "{}",
  "timestampColumn": {{"name": "ts", "format": "rfc3339"}},
  "entity": "{}",
  "valueColumns": [
    {{"column": "temp", "characteristic": "{}", "unit": "{}"}},
    {{"column": "temp", "characteristic": "{}", "unit": "{}"}}
  ],
  "iriPrefix": "http://hadatac.org/kb/ingest/"
}}"#,
        s.collection, s.air, s.temperature, s.celsius, s.co2_concentration, s.ppm
    );
    let IngestError::Descriptor(errors) = parse_descriptor(&text).unwrap_err() else {
        panic!("expected descriptor errors");
    };
    assert!(errors.iter().any(|e| e.contains("duplicate") && e.contains("temp")), "{errors:?}");
}

#[test]
fn unknown_top_level_key_is_rejected() {
    let s = scenario();
    let mut base: serde_json::Value = serde_json::from_str(&descriptor_json(
        &s.collection,
        &s.air,
        &s.temperature,
        &s.celsius,
    ))
    .unwrap();
    base["surprise"] = serde_json::json!(1);
    let IngestError::Descriptor(errors) = parse_descriptor(&base.to_string()).unwrap_err() else {
        panic!("expected descriptor errors");
    };
    assert!(errors.iter().any(|e| e.contains("unknown key") && e.contains("surprise")), "{errors:?}");
}

#[test]
fn all_schema_errors_are_reported_together() {
    let text = r#"{
  "surprise": 1,
  "timestampColumn": {"name": "", "format": "epoch"},
  "valueColumns": [],
  "iriPrefix": "not an iri prefix"
}"#;
    let IngestError::Descriptor(errors) = parse_descriptor(text).unwrap_err() else {
        panic!("expected descriptor errors");
    };
    // Unknown key, two missing keys, empty name, bad format, empty columns,
    // and a prefix that cannot mint IRIs: all at once.
    assert!(errors.len() >= 6, "{errors:?}");
    assert!(errors.iter().any(|e| e.contains("unknown key")));
    assert!(errors.iter().any(|e| e.contains("missing key \"dataCollection\"")));
    assert!(errors.iter().any(|e| e.contains("missing key \"entity\"")));
    assert!(errors.iter().any(|e| e.contains("rfc3339")));
    assert!(errors.iter().any(|e| e.contains("nonempty")));
    assert!(errors.iter().any(|e| e.contains("iriPrefix")));
}

#[test]
fn two_rows_one_column_make_two_observations_and_two_measurements() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let csv = "ts,temp\n2024-06-11T00:00:00Z,10.5\n2024-06-11T01:00:00Z,11.25\n";
    let report = ingest_csv(&mut store, csv, &descriptor).unwrap();
    assert_eq!(report.rows_read, 2);
    assert_eq!(report.observations_created, 2);
    assert_eq!(report.measurements_created, 2);
    assert!(report.row_errors.is_empty());

    // Deterministic IRIs: prefix + row + "-" + column.
    let m1 = Iri::new("http://hadatac.org/kb/ingest/1-temp").unwrap();
    let Instance::Measurement(m) = materialize(&store, &m1).unwrap() else {
        panic!("expected a measurement");
    };
    assert_eq!(m.value, 10.5);
    assert_eq!(m.data_collection, s.collection);
    let o1 = Iri::new("http://hadatac.org/kb/ingest/1").unwrap();
    let Instance::Observation(obs) = materialize(&store, &o1).unwrap() else {
        panic!("expected an observation");
    };
    assert_eq!(obs.entity, s.air);
    assert_eq!(obs.measurements, vec![m1]);
}

#[test]
fn header_only_csv_reads_zero_rows_without_errors() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let report = ingest_csv(&mut store, "ts,temp\n", &descriptor).unwrap();
    assert_eq!(report.rows_read, 0);
    assert_eq!(report.measurements_created, 0);
    assert_eq!(report.observations_created, 0);
    assert!(report.row_errors.is_empty());
    assert_eq!(store, s.store);
}

#[test]
fn unparseable_cell_fails_the_whole_row_and_only_that_row() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let before = store.len();
    let csv = "ts,temp\n2024-06-11T00:00:00Z,abc\n2024-06-11T01:00:00Z,12\n";
    let report = ingest_csv(&mut store, csv, &descriptor).unwrap();
    assert_eq!(report.rows_read, 2);
    assert_eq!(report.row_errors.len(), 1);
    assert_eq!(report.row_errors[0].row, 1);
    assert!(report.row_errors[0].message.contains("abc"));
    assert_eq!(report.measurements_created, 1);
    assert_eq!(report.observations_created, 1);
    // Row 1 contributed nothing at all.
    assert!(materialize(&store, &Iri::new("http://hadatac.org/kb/ingest/1-temp").unwrap()).is_err());
    assert!(materialize(&store, &Iri::new("http://hadatac.org/kb/ingest/2-temp").unwrap()).is_ok());
    assert!(store.len() > before);
}

#[test]
fn ragged_and_empty_cells_are_row_errors() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let csv = "ts,temp\n2024-06-11T00:00:00Z\n2024-06-11T01:00:00Z,\nnot-a-time,5\n2024-06-11T02:00:00Z,7\n";
    let report = ingest_csv(&mut store, csv, &descriptor).unwrap();
    assert_eq!(report.rows_read, 4);
    assert_eq!(report.row_errors.len(), 3);
    let rows: Vec<usize> = report.row_errors.iter().map(|e| e.row).collect();
    assert_eq!(rows, vec![1, 2, 3]);
    assert_eq!(report.measurements_created, 1);
}

#[test]
fn dangling_descriptor_references_refuse_ingest_before_mutation() {
    let (s, mut descriptor) = scenario_descriptor();
    descriptor.value_columns[0].unit = Iri::new("http://hadatac.org/kb/unit/Ghost").unwrap();
    let mut store = s.store.clone();
    let err = ingest_csv(&mut store, "ts,temp\n2024-06-11T00:00:00Z,5\n", &descriptor).unwrap_err();
    assert!(matches!(err, IngestError::DanglingReferences(_)), "{err}");
    assert_eq!(store, s.store);
}

#[test]
fn missing_header_column_refuses_ingest() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let err = ingest_csv(&mut store, "ts,other\n2024-06-11T00:00:00Z,5\n", &descriptor).unwrap_err();
    assert!(matches!(err, IngestError::Header(_)), "{err}");
    assert_eq!(store, s.store);
}

#[test]
fn reingest_is_idempotent_and_deterministic() {
    let (s, descriptor) = scenario_descriptor();
    let csv = "ts,temp\n2024-06-11T00:00:00Z,10.5\n2024-06-11T01:00:00Z,11.25\n2024-06-11T02:00:00Z,9\n";

    let mut once = s.store.clone();
    ingest_csv(&mut once, csv, &descriptor).unwrap();
    let mut twice = s.store.clone();
    ingest_csv(&mut twice, csv, &descriptor).unwrap();
    ingest_csv(&mut twice, csv, &descriptor).unwrap();
    assert_eq!(export_canonical(&once), export_canonical(&twice));

    // Two independent runs over equal inputs build identical stores.
    let mut again = s.store.clone();
    ingest_csv(&mut again, csv, &descriptor).unwrap();
    assert_eq!(export_canonical(&once), export_canonical(&again));
}

#[test]
fn quoted_fields_and_crlf_are_fine() {
    let (s, descriptor) = scenario_descriptor();
    let mut store = s.store.clone();
    let csv = "ts,temp\r\n\"2024-06-11T00:00:00Z\",\"19.5\"\r\n";
    let report = ingest_csv(&mut store, csv, &descriptor).unwrap();
    assert_eq!(report.measurements_created, 1);
    assert!(report.row_errors.is_empty());
    let _ = s;
}
