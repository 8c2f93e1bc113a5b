//! Datum files and presentation output.

mod emit;
mod parse;

pub use emit::{emit_presentation, presentation_from_json, Format, JsonError};
pub use parse::{parse_datum, parse_datum_file, serialize_datum, DatumFile, Location, ParseError};
