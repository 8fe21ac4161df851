//! File formats and the command-line front end for `ltv-core`.

pub mod cli;
pub mod parser;
pub mod report;

pub use cli::run;
pub use parser::{parse_mapping, parse_ratmap, parse_source, print_polynomial, InputMap, MapSource, ParseError};
pub use report::{emit_report, validate_report_json};
