//! Batch driver over a corpus of finite rings, map families, skew PBW
//! extensions and synthetic spectra: classification, theorem audit,
//! extension probes and topology checks, with deterministic text and JSON
//! reports.

pub mod corpus;
pub mod report;
pub mod runner;

pub use corpus::{load_default, parse_corpus, resolve, Corpus};
pub use report::RunReport;
pub use runner::{run, CommandKind, RunConfig};
