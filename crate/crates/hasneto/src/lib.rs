//! A metadata-aware catalog for empirical sensor data.
//!
//! Measurements are only as useful as the metadata around them: which
//! detector sensed them, on which instrument, deployed where and by whom,
//! calibrated when, in which unit, about what entity. This crate stores all
//! of that as typed records over an indexed triple store with named graphs,
//! and answers the questions that metadata exists for:
//!
//! - [`ingest`]: map CSV columns onto schema terms and load measurements
//!   row-atomically with deterministic IRIs.
//! - [`validate`]: evaluate the ten-rule catalog (DC1-1 … DC4-3) covering
//!   infrastructure integrity, calibration quality, scientific annotation,
//!   and provenance wiring.
//! - [`provenance`]: trace any measurement back through its collection,
//!   deployment, devices, platform, agents, and interventions.
//! - [`query`] and [`compat`]: retrieve measurements with unit conversion
//!   and decide, on a five-step ladder (`Incompatible`, `L0`–`L3`), whether
//!   two measurements can soundly be analyzed together.
//! - [`canon`]: a sorted statement-per-line text format that round-trips
//!   bit-exactly, so equal stores are byte-equal files.
//!
//! The narrative guide under `book/` walks through each concept; its code
//! blocks compile and run as doctests.
//!
//! ```
//! use hasneto::fixtures::scenario;
//! use hasneto::validate::validate;
//!
//! let s = scenario();
//! let report = validate(&s.store);
//! assert!(report.is_clean());
//! ```

pub mod canon;
pub mod compat;
pub mod fixtures;
pub mod ingest;
pub mod lexical;
pub mod mapping;
pub mod model;
pub mod provenance;
pub mod query;
pub mod store;
pub mod units;
pub mod validate;
pub mod vocab;

pub use model::{ClassId, Iri, Timestamp};
pub use store::{GraphStore, Term, Triple};
