//! Finite poset analysis: ideals and filters, primality, pseudocomplements,
//! separation, model-level theorem checks, a small text format for posets,
//! DOT output and a seeded random generator.

pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod ideal;
pub mod poset;
pub mod pseudo;
pub mod randgen;
pub mod report;
pub mod theorems;

pub use dsl::{parse, serialize, serialize_poset, to_dot, DotOptions, ParseError, PosetDoc, PosetEntry};
pub use error::{Error, Result};
pub use ideal::IdealFilterCatalog;
pub use poset::{Element, Poset, Subset};
pub use pseudo::{StarFailure, StarTable};
pub use randgen::GenConfig;
pub use report::AnalysisReport;
pub use theorems::{CheckConfig, Counterexample, Status, TheoremId, TheoremReport};
