//! Presentations shipped with the tool.

use std::path::Path;

use crate::dsl::{parse_presentation, PresentationDoc};
use crate::error::CliError;

pub const CORPUS: [(&str, &str); 9] = [
    ("poly2", include_str!("../corpus/poly2.spbw")),
    ("poly3", include_str!("../corpus/poly3.spbw")),
    ("weyl", include_str!("../corpus/weyl.spbw")),
    ("un2", include_str!("../corpus/un2.spbw")),
    ("qplane", include_str!("../corpus/qplane.spbw")),
    ("jordan", include_str!("../corpus/jordan.spbw")),
    ("qaffine3", include_str!("../corpus/qaffine3.spbw")),
    ("aq", include_str!("../corpus/aq.spbw")),
    ("broken", include_str!("../corpus/broken.spbw")),
];

pub fn corpus_source(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".spbw").unwrap_or(name);
    CORPUS.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

/// All built-in documents.
pub fn corpus() -> Vec<PresentationDoc> {
    CORPUS
        .iter()
        .map(|(name, src)| parse_presentation(src).unwrap_or_else(|e| panic!("corpus file {name}: {e}")))
        .collect()
}

pub fn parse_named(label: &str, text: &str) -> Result<PresentationDoc, CliError> {
    parse_presentation(text).map_err(|diag| CliError::Parse { path: label.to_string(), diag })
}

/// Read a file, falling back to a corpus entry of that name.
pub fn load(arg: &str) -> Result<PresentationDoc, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        return parse_named(arg, &text);
    }
    match corpus_source(arg) {
        Some(src) => parse_named(arg, src),
        None => Err(CliError::Io {
            path: path.into(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or corpus entry"),
        }),
    }
}
