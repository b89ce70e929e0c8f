//! Spec files, the preset catalog, record output and the command line.

pub mod catalog;
pub mod cli;
pub mod records;
pub mod spec;

pub use catalog::{preset, Preset, PRESETS};
pub use records::{parse_records, Format, Record};
pub use spec::{parse_spec, ParseError, SpaceSpec, SpecKind};
