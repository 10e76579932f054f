//! Text formats, the example registry and whole-pipeline reports.

mod parse;
mod registry;
mod report;

pub use parse::{parse_rational, parse_text, Input, ParseError};
pub use registry::{lookup, parse_input, registry_keys, RegistryEntry, REGISTRY};
pub use report::*;
