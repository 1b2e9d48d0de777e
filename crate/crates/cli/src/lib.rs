//! Equation parsing, polygon rendering, report generation and the bundled
//! corpus for the `odepoly` command.

pub mod analyze;
pub mod corpus;
pub mod error;
pub mod parse;
pub mod render;
pub mod report;

pub use analyze::{analyze, AnalyzeOptions, Check};
pub use error::{CliError, ParseError, ParseErrorKind};
pub use parse::{parse_equation, parse_rational, print_equation};
pub use render::{render_polygon, PolygonFormat};
