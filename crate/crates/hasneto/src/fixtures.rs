//! A ready-made example dataset: one weather station with a thermometer,
//! deployed once, feeding one data collection with a mix of air-temperature,
//! air-CO₂, and water-temperature measurements.
//!
//! The scenario validates cleanly and exercises every module, so the test
//! suites and the guide build on it instead of re-wiring boilerplate.

use crate::mapping::{insert_instance, Instance};
use crate::model::*;
use crate::store::GraphStore;
use crate::units::{builtin_units, CELSIUS_IRI};

pub fn kb(name: &str) -> Iri {
    Iri::new(format!("http://hadatac.org/kb/{name}")).expect("fixture IRI")
}

pub fn ts(text: &str) -> Timestamp {
    Timestamp::parse(text).expect("fixture timestamp")
}

/// Handles into the scenario store.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub store: GraphStore,
    pub platform: Iri,
    pub instrument: Iri,
    pub detector: Iri,
    pub deployment: Iri,
    pub collection: Iri,
    pub air: Iri,
    pub water: Iri,
    pub temperature: Iri,
    pub co2_concentration: Iri,
    pub celsius: Iri,
    pub ppm: Iri,
    pub scientist: Iri,
    pub technician: Iri,
    /// Air temperature, 12 °C.
    pub m_air_temp_1: Iri,
    /// Air temperature, 18 °C.
    pub m_air_temp_2: Iri,
    /// Air CO₂ concentration, 410 ppm.
    pub m_air_co2: Iri,
    /// Water temperature, 15 °C.
    pub m_water_temp: Iri,
}

pub fn scenario() -> Scenario {
    let mut store = GraphStore::new();
    let put = |store: &mut GraphStore, instance: Instance| {
        insert_instance(store, &instance).expect("fixture instance");
    };

    for unit in builtin_units() {
        put(&mut store, Instance::Unit(unit));
    }
    let celsius = Iri::new(CELSIUS_IRI).unwrap();
    let ppm = kb("unit/PartsPerMillion");
    put(
        &mut store,
        Instance::Unit(Unit {
            iri: ppm.clone(),
            label: "parts per million".into(),
            quantity_kind: "concentration".into(),
            to_base: AffineMap { scale: 1.0, offset: 0.0 },
        }),
    );

    let temperature = kb("characteristic/AirTemperature");
    put(
        &mut store,
        Instance::Characteristic(Characteristic {
            iri: temperature.clone(),
            label: "temperature".into(),
            quantity_kind: "temperature".into(),
        }),
    );
    let co2_concentration = kb("characteristic/Co2Concentration");
    put(
        &mut store,
        Instance::Characteristic(Characteristic {
            iri: co2_concentration.clone(),
            label: "CO2 concentration".into(),
            quantity_kind: "concentration".into(),
        }),
    );

    let air = kb("entity/Air");
    put(
        &mut store,
        Instance::EntityOfInterest(EntityOfInterest {
            iri: air.clone(),
            label: "air".into(),
            context: Some("outside".into()),
        }),
    );
    let water = kb("entity/LakeWater");
    put(
        &mut store,
        Instance::EntityOfInterest(EntityOfInterest {
            iri: water.clone(),
            label: "lake water".into(),
            context: None,
        }),
    );

    let scientist = kb("agent/Alice");
    put(
        &mut store,
        Instance::Agent(Agent {
            iri: scientist.clone(),
            name: "Alice".into(),
            kind: AgentKind::Person,
        }),
    );
    let technician = kb("agent/Bob");
    put(
        &mut store,
        Instance::Agent(Agent {
            iri: technician.clone(),
            name: "Bob".into(),
            kind: AgentKind::Person,
        }),
    );

    let platform = kb("platform/WeatherStation");
    put(
        &mut store,
        Instance::Platform(Platform {
            iri: platform.clone(),
            label: "weather station tower".into(),
            mobility: Mobility::Stationary,
            location: Some(Location { latitude: 43.57, longitude: -73.65 }),
            host_label: None,
        }),
    );

    let detector = kb("detector/ThermometerProbe");
    put(
        &mut store,
        Instance::Detector(Detector {
            iri: detector.clone(),
            label: "thermometer probe".into(),
            characteristic: temperature.clone(),
            accuracy: Some(Accuracy { value: 0.5, unit: celsius.clone() }),
            range: Some(DetectorRange { min: 0.0, max: 20.0, unit: celsius.clone() }),
        }),
    );
    let instrument = kb("instrument/Thermometer");
    put(
        &mut store,
        Instance::Instrument(Instrument {
            iri: instrument.clone(),
            label: "station thermometer".into(),
            model: Some("TH-100".into()),
            serial: Some("TH100-0042".into()),
            detectors: vec![detector.clone()],
        }),
    );

    let deployment = kb("deployment/Station1Thermometer");
    put(
        &mut store,
        Instance::Deployment(Deployment {
            iri: deployment.clone(),
            instrument: instrument.clone(),
            platform: platform.clone(),
            start: ts("2024-05-01T00:00:00Z"),
            end: Some(ts("2024-09-01T00:00:00Z")),
            deployed_by: technician.clone(),
            settings: vec![("samplingInterval".into(), "60s".into())],
        }),
    );

    let collection = kb("collection/Summer2024");
    put(
        &mut store,
        Instance::DataCollection(DataCollection {
            iri: collection.clone(),
            deployment: deployment.clone(),
            start: ts("2024-06-01T00:00:00Z"),
            end: Some(ts("2024-07-01T00:00:00Z")),
            associations: vec![
                AgentAssociation { agent: scientist.clone(), role: AgentRole::Scientist },
                AgentAssociation { agent: technician.clone(), role: AgentRole::Technician },
            ],
        }),
    );

    let obs1 = kb("observation/row1");
    let obs2 = kb("observation/row2");
    let obs3 = kb("observation/row3");
    let m_air_temp_1 = kb("measurement/row1-temp");
    let m_air_co2 = kb("measurement/row1-co2");
    let m_air_temp_2 = kb("measurement/row2-temp");
    let m_water_temp = kb("measurement/row3-watertemp");

    let measurement = |iri: &Iri, value: f64, unit: &Iri, characteristic: &Iri, at: &str, obs: &Iri| {
        Instance::Measurement(Measurement {
            iri: iri.clone(),
            value,
            unit: unit.clone(),
            characteristic: characteristic.clone(),
            timestamp: ts(at),
            precision: None,
            observation: obs.clone(),
            data_collection: collection.clone(),
        })
    };
    put(&mut store, measurement(&m_air_temp_1, 12.0, &celsius, &temperature, "2024-06-10T09:00:00Z", &obs1));
    put(&mut store, measurement(&m_air_co2, 410.0, &ppm, &co2_concentration, "2024-06-10T09:00:00Z", &obs1));
    put(&mut store, measurement(&m_air_temp_2, 18.0, &celsius, &temperature, "2024-06-10T10:00:00Z", &obs2));
    put(&mut store, measurement(&m_water_temp, 15.0, &celsius, &temperature, "2024-06-10T10:00:00Z", &obs3));

    put(
        &mut store,
        Instance::Observation(Observation {
            iri: obs1,
            entity: air.clone(),
            measurements: vec![m_air_temp_1.clone(), m_air_co2.clone()],
        }),
    );
    put(
        &mut store,
        Instance::Observation(Observation {
            iri: obs2,
            entity: air.clone(),
            measurements: vec![m_air_temp_2.clone()],
        }),
    );
    put(
        &mut store,
        Instance::Observation(Observation {
            iri: obs3,
            entity: water.clone(),
            measurements: vec![m_water_temp.clone()],
        }),
    );

    Scenario {
        store,
        platform,
        instrument,
        detector,
        deployment,
        collection,
        air,
        water,
        temperature,
        co2_concentration,
        celsius,
        ppm,
        scientist,
        technician,
        m_air_temp_1,
        m_air_temp_2,
        m_air_co2,
        m_water_temp,
    }
}
