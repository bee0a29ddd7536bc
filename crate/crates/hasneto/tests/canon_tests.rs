mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::*;
use hasneto::canon::{export_canonical, import_canonical, parse_json, render_json};
use hasneto::lexical;
use hasneto::model::Iri;
use hasneto::store::GraphStore;

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

#[test]
fn empty_store_exports_empty_text() {
    assert_eq!(export_canonical(&GraphStore::new()), "");
    assert_eq!(import_canonical("").unwrap(), GraphStore::new());
}

#[test]
fn single_statement_matches_the_grammar() {
    let mut store = GraphStore::new();
    store.insert(
        &iri("http://x/g"),
        hasneto::store::Triple::new(
            iri("http://x/s"),
            iri("http://x/p"),
            hasneto::store::Term::string("va\"l\nue"),
        ),
    );
    let text = export_canonical(&store);
    assert_eq!(
        text,
        "<http://x/s> <http://x/p> \"va\\\"l\\nue\"^^<http://www.w3.org/2001/XMLSchema#string> <http://x/g> .\n"
    );
    assert_eq!(import_canonical(&text).unwrap(), store);
}

proptest! {
    /// Export is the identity seed for import, for arbitrary stores.
    #[test]
    fn import_inverts_export(
        triples in prop::collection::vec((arb_triple(), 0u8..3), 0..60),
    ) {
        let graphs = [iri("http://x/g0"), iri("http://x/g1"), iri("http://x/g2")];
        let mut store = GraphStore::new();
        for (triple, which) in triples {
            store.insert(&graphs[which as usize], triple);
        }
        let text = export_canonical(&store);
        let back = import_canonical(&text).unwrap();
        prop_assert_eq!(back, store);
    }

    /// Escaping is involutive over arbitrary lexicals, control characters
    /// and all.
    #[test]
    fn escaping_is_involutive(chars in prop::collection::vec(any::<char>(), 0..40)) {
        let s: String = chars.into_iter().collect();
        prop_assert_eq!(lexical::unescape(&lexical::escape(&s)).unwrap(), s);
    }
}

#[test]
fn export_of_a_large_random_store_is_deterministic_and_sorted() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let store = random_store(&mut rng, 500);
    let a = export_canonical(&store);
    let b = export_canonical(&store.clone());
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), store.len());
    let mut sorted = lines.clone();
    sorted.sort_unstable();
    assert_eq!(lines, sorted);
    assert!(lines.iter().all(|l| l.ends_with(" .")));
}

fn random_store(rng: &mut rand_chacha::ChaCha8Rng, statements: usize) -> GraphStore {
    use rand::Rng;
    let mut store = GraphStore::new();
    for _ in 0..statements {
        let g = iri(&format!("http://r.example/g{}", rng.random_range(0..3)));
        let s = iri(&format!("http://r.example/s{}", rng.random_range(0..50)));
        let p = iri(&format!("http://r.example/p{}", rng.random_range(0..10)));
        let o = match rng.random_range(0..3) {
            0 => hasneto::store::Term::iri(iri(&format!("http://r.example/o{}", rng.random_range(0..50)))),
            1 => hasneto::store::Term::decimal(rng.random_range(-1.0e6..1.0e6)),
            _ => hasneto::store::Term::string(format!("text {}", rng.random_range(0..1000))),
        };
        store.insert(&g, hasneto::store::Triple::new(s, p, o));
    }
    store
}

#[test]
fn shuffled_document_imports_to_the_same_store() {
    let s = hasneto::fixtures::scenario();
    let text = export_canonical(&s.store);
    let mut lines: Vec<&str> = text.lines().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    lines.shuffle(&mut rng);
    // Duplicate a few lines too: set semantics must absorb them.
    let dupes: Vec<&str> = lines.iter().take(5).copied().collect();
    lines.extend(dupes);
    let shuffled = lines.join("\n") + "\n";
    assert_eq!(import_canonical(&shuffled).unwrap(), s.store);
}

#[test]
fn missing_terminal_dot_is_located() {
    let line = "<http://x/s> <http://x/p> <http://x/o> <http://x/g>\n";
    let err = import_canonical(line).unwrap_err();
    assert_eq!(err.line, 1);
    assert!(err.message.contains("space") || err.message.contains("'.'"), "{err}");

    let two = "<http://x/s> <http://x/p> <http://x/o> <http://x/g> .\n<http://x/s> <http://x/p> <http://x/o> <http://x/g>\n";
    let err = import_canonical(two).unwrap_err();
    assert_eq!(err.line, 2);
}

#[test]
fn grammar_violations_are_rejected_with_positions() {
    for (text, expect_col) in [
        ("no brackets at all\n", 1),
        ("<http://x/s> junk\n", 14),
        ("<http://x/s> <http://x/p> \"unterminated\n", 27),
        ("<http://x/s> <http://x/p> \"x\"^^<http://x/unknown> <http://x/g> .\n", 32),
        ("<http://x/s> <http://x/p> \"1.5.2\"^^<http://www.w3.org/2001/XMLSchema#decimal> <http://x/g> .\n", 27),
        ("<http://x/s> <http://x/p> <http://x/o> <http://x/g> . trailing\n", 54),
    ] {
        let err = import_canonical(text).unwrap_err();
        assert_eq!(err.line, 1, "text: {text:?} err: {err}");
        assert_eq!(err.column, expect_col, "text: {text:?} err: {err}");
    }
}

#[test]
fn equal_stores_yield_byte_equal_documents() {
    // Same statements, different insertion order and history.
    let s = hasneto::fixtures::scenario();
    let text = export_canonical(&s.store);
    let mut lines: Vec<&str> = text.lines().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    lines.shuffle(&mut rng);
    let mut rebuilt = import_canonical(&(lines.join("\n") + "\n")).unwrap();
    // Touch the store with an insert/remove cycle; the document must not move.
    let graph = iri("http://x/tmp");
    let extra = hasneto::store::Triple::new(iri("http://x/a"), iri("http://x/b"), hasneto::store::Term::boolean(true));
    rebuilt.insert(&graph, extra.clone());
    rebuilt.remove(&graph, &extra);
    assert_eq!(export_canonical(&rebuilt), text);
}

#[test]
fn report_json_renders_deterministically_and_round_trips() {
    let s = hasneto::fixtures::scenario();
    let report = hasneto::validate::validate(&s.store);
    let a = render_json(&report);
    let b = render_json(&report);
    assert_eq!(a, b);
    let parsed: hasneto::validate::ValidationReport = parse_json(&a).unwrap();
    assert_eq!(render_json(&parsed), a);
    assert!(a.starts_with("{\"violations\":[]"), "{a}");
}

proptest! {
    /// render ∘ parse ∘ render = render over generated ingest reports.
    #[test]
    fn render_parse_render_is_idempotent(
        rows in 0usize..500,
        created in 0usize..1000,
        errors in prop::collection::vec((1usize..500, "[ -~]{0,20}"), 0..5),
    ) {
        let report = hasneto::ingest::IngestReport {
            rows_read: rows,
            measurements_created: created,
            observations_created: rows,
            row_errors: errors
                .into_iter()
                .map(|(row, message)| hasneto::ingest::RowError { row, message })
                .collect(),
        };
        let rendered = render_json(&report);
        let parsed: hasneto::ingest::IngestReport = parse_json(&rendered).unwrap();
        prop_assert_eq!(render_json(&parsed), rendered);
    }
}

#[test]
fn store_equality_is_lexical_over_triple_sets() {
    let mut a = GraphStore::new();
    let mut b = GraphStore::new();
    let g = iri("http://x/g");
    let t1 = hasneto::store::Triple::new(iri("http://x/s"), iri("http://x/p"), hasneto::store::Term::decimal(1.5));
    let t2 = hasneto::store::Triple::new(iri("http://x/s2"), iri("http://x/p"), hasneto::store::Term::boolean(false));
    a.insert(&g, t1.clone());
    a.insert(&g, t2.clone());
    b.insert(&g, t2);
    b.insert(&g, t1);
    assert_eq!(a, b);
    assert_eq!(export_canonical(&a), export_canonical(&b));

    let all: BTreeSet<_> = a.match_pattern(None, None, None, None);
    assert_eq!(all.len(), 2);
}
