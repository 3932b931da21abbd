//! Catalog of worked examples, JSON encodings, staged reports and the
//! genericity sampler behind the `f218` command-line tool.

pub mod catalog;
pub mod json;
pub mod report;
pub mod sample;

pub use catalog::{catalog_get, CatalogEntry, NAMES};
pub use report::{run_catalog, run_report, Report, Stage};
pub use sample::{sample_from_triples, sample_generic, SampleStats};
