//! Command-line front end: the presentation language, the bundled corpus and
//! the checking pipeline.

pub mod dsl;
pub mod corpus;
pub mod error;
pub mod pipeline;
pub mod report;
