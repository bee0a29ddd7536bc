//! Proptest strategies shared by the integration suites.
//!
//! Multi-valued record fields are generated in canonical order (sorted,
//! duplicate-free) since that is the form the store hands back.

use proptest::prelude::*;

use hasneto::model::*;
use hasneto::store::{Datatype, Literal, Term, Triple};

pub fn arb_iri() -> impl Strategy<Value = Iri> {
    ("[a-z][a-z0-9]{0,8}", "[a-zA-Z0-9._~-]{0,6}")
        .prop_map(|(name, extra)| Iri::new(format!("http://t.example/{name}{extra}")).unwrap())
}

pub fn arb_text() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            prop::char::range('a', 'z'),
            prop::char::range('A', 'Z'),
            prop::char::range('0', '9'),
            Just(' '),
            Just('"'),
            Just('\\'),
            Just('\n'),
            Just('\r'),
            Just('\t'),
            Just('é'),
            Just('∆'),
        ],
        0..12,
    )
    .prop_map(String::from_iter)
}

pub fn arb_nonempty_text() -> impl Strategy<Value = String> {
    arb_text().prop_map(|s| if s.is_empty() { "x".to_owned() } else { s })
}

pub fn arb_decimal() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1.0e9..1.0e9f64,
        (-5000i32..5000).prop_map(|i| i as f64),
        (-500i32..500).prop_map(|i| i as f64 / 8.0),
    ]
}

pub fn arb_timestamp() -> impl Strategy<Value = Timestamp> {
    (0i64..4_102_444_800, prop_oneof![Just(0u32), (0u32..1_000).prop_map(|m| m * 1_000_000)])
        .prop_map(|(secs, nanos)| {
            Timestamp::from_datetime(chrono::DateTime::from_timestamp(secs, nanos).unwrap())
        })
}

pub fn arb_interval() -> impl Strategy<Value = (Timestamp, Option<Timestamp>)> {
    (arb_timestamp(), prop::option::of(1i64..10_000_000))
        .prop_map(|(start, gap)| {
            let end = gap.map(|g| {
                Timestamp::from_datetime(start.datetime() + chrono::Duration::seconds(g))
            });
            (start, end)
        })
}

pub fn arb_literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        arb_text().prop_map(|s| Literal::new(s, Datatype::String).unwrap()),
        arb_decimal().prop_map(|v| match Term::decimal(v) {
            Term::Literal(l) => l,
            Term::Iri(_) => unreachable!(),
        }),
        arb_timestamp().prop_map(|t| match Term::datetime(t) {
            Term::Literal(l) => l,
            Term::Iri(_) => unreachable!(),
        }),
        any::<bool>().prop_map(|b| match Term::boolean(b) {
            Term::Literal(l) => l,
            Term::Iri(_) => unreachable!(),
        }),
    ]
}

pub fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![arb_iri().prop_map(Term::Iri), arb_literal().prop_map(Term::Literal)]
}

pub fn arb_triple() -> impl Strategy<Value = Triple> {
    (arb_iri(), arb_iri(), arb_term())
        .prop_map(|(s, p, o)| Triple::new(s, p, o))
}

pub fn arb_settings() -> impl Strategy<Value = Vec<Setting>> {
    prop::collection::btree_set(("[a-z]{1,6}", "[a-zA-Z0-9 =/\"\\\\]{0,8}"), 0..4)
        .prop_map(|set| set.into_iter().collect())
}

fn sorted_iris(range: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Iri>> {
    prop::collection::btree_set(arb_iri(), range).prop_map(|set| set.into_iter().collect())
}

pub fn arb_platform() -> impl Strategy<Value = Platform> {
    (
        arb_iri(),
        arb_text(),
        prop_oneof![Just(Mobility::Stationary), Just(Mobility::Mobile)],
        prop::option::of((-90.0..90.0f64, -180.0..180.0f64)),
        prop::option::of(arb_text()),
    )
        .prop_map(|(iri, label, mobility, loc, host_label)| Platform {
            iri,
            label,
            mobility,
            location: loc.map(|(latitude, longitude)| Location { latitude, longitude }),
            host_label,
        })
}

pub fn arb_instrument() -> impl Strategy<Value = Instrument> {
    (arb_iri(), arb_text(), prop::option::of(arb_text()), prop::option::of(arb_text()), sorted_iris(0..4))
        .prop_map(|(iri, label, model, serial, detectors)| Instrument {
            iri,
            label,
            model,
            serial,
            detectors,
        })
}

pub fn arb_detector() -> impl Strategy<Value = Detector> {
    (
        arb_iri(),
        arb_text(),
        arb_iri(),
        prop::option::of((arb_decimal(), arb_iri())),
        prop::option::of((arb_decimal(), 0.001..1.0e6f64, arb_iri())),
    )
        .prop_map(|(iri, label, characteristic, accuracy, range)| Detector {
            iri,
            label,
            characteristic,
            accuracy: accuracy.map(|(value, unit)| Accuracy { value, unit }),
            range: range.map(|(min, width, unit)| DetectorRange { min, max: min + width, unit }),
        })
}

pub fn arb_deployment() -> impl Strategy<Value = Deployment> {
    (arb_iri(), arb_iri(), arb_iri(), arb_interval(), arb_iri(), arb_settings())
        .prop_map(|(iri, instrument, platform, (start, end), deployed_by, settings)| Deployment {
            iri,
            instrument,
            platform,
            start,
            end,
            deployed_by,
            settings,
        })
}

pub fn arb_entity() -> impl Strategy<Value = EntityOfInterest> {
    (arb_iri(), arb_nonempty_text(), prop::option::of(arb_text()))
        .prop_map(|(iri, label, context)| EntityOfInterest { iri, label, context })
}

pub fn arb_characteristic() -> impl Strategy<Value = Characteristic> {
    (arb_iri(), arb_text(), "[a-z]{1,10}")
        .prop_map(|(iri, label, quantity_kind)| Characteristic { iri, label, quantity_kind })
}

pub fn arb_unit() -> impl Strategy<Value = Unit> {
    (arb_iri(), arb_text(), "[a-z]{1,10}", prop_oneof![0.001..1000.0f64, -1000.0..-0.001f64], -1000.0..1000.0f64)
        .prop_map(|(iri, label, quantity_kind, scale, offset)| Unit {
            iri,
            label,
            quantity_kind,
            to_base: AffineMap { scale, offset },
        })
}

pub fn arb_measurement() -> impl Strategy<Value = Measurement> {
    (
        arb_iri(),
        arb_decimal(),
        arb_iri(),
        arb_iri(),
        arb_timestamp(),
        prop::option::of(0.0..100.0f64),
        arb_iri(),
        arb_iri(),
    )
        .prop_map(
            |(iri, value, unit, characteristic, timestamp, precision, observation, dc)| {
                Measurement {
                    iri,
                    value,
                    unit,
                    characteristic,
                    timestamp,
                    precision,
                    observation,
                    data_collection: dc,
                }
            },
        )
}

pub fn arb_observation() -> impl Strategy<Value = Observation> {
    (arb_iri(), arb_iri(), sorted_iris(1..4))
        .prop_map(|(iri, entity, measurements)| Observation { iri, entity, measurements })
}

pub fn arb_associations() -> impl Strategy<Value = Vec<AgentAssociation>> {
    prop::collection::btree_set(
        (
            arb_iri(),
            prop_oneof![
                Just(AgentRole::Scientist),
                Just(AgentRole::Technician),
                Just(AgentRole::DataManager),
                Just(AgentRole::Software),
            ],
        )
            .prop_map(|(agent, role)| AgentAssociation { agent, role }),
        0..4,
    )
    .prop_map(|set| set.into_iter().collect())
}

pub fn arb_collection() -> impl Strategy<Value = DataCollection> {
    (arb_iri(), arb_iri(), arb_interval(), arb_associations())
        .prop_map(|(iri, deployment, (start, end), associations)| DataCollection {
            iri,
            deployment,
            start,
            end,
            associations,
        })
}

pub fn arb_agent() -> impl Strategy<Value = Agent> {
    (
        arb_iri(),
        arb_nonempty_text(),
        prop_oneof![Just(AgentKind::Person), Just(AgentKind::Software), Just(AgentKind::Organization)],
    )
        .prop_map(|(iri, name, kind)| Agent { iri, name, kind })
}

pub fn arb_intervention() -> impl Strategy<Value = InterventionEvent> {
    (
        arb_iri(),
        prop_oneof![
            Just(InterventionKind::Calibration),
            Just(InterventionKind::Maintenance),
            Just(InterventionKind::Configuration),
        ],
        arb_iri(),
        arb_timestamp(),
        arb_iri(),
        arb_settings(),
    )
        .prop_map(|(iri, kind, target, at, agent, parameters)| InterventionEvent {
            iri,
            kind,
            target,
            at,
            agent,
            parameters,
        })
}

pub fn arb_instance() -> impl Strategy<Value = hasneto::mapping::Instance> {
    use hasneto::mapping::Instance;
    prop_oneof![
        arb_platform().prop_map(Instance::Platform),
        arb_instrument().prop_map(Instance::Instrument),
        arb_detector().prop_map(Instance::Detector),
        arb_deployment().prop_map(Instance::Deployment),
        arb_entity().prop_map(Instance::EntityOfInterest),
        arb_characteristic().prop_map(Instance::Characteristic),
        arb_unit().prop_map(Instance::Unit),
        arb_measurement().prop_map(Instance::Measurement),
        arb_observation().prop_map(Instance::Observation),
        arb_collection().prop_map(Instance::DataCollection),
        arb_agent().prop_map(Instance::Agent),
        arb_intervention().prop_map(Instance::InterventionEvent),
    ]
}
