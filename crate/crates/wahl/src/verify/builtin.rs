//! The eight worked constructions, embedded from `fixtures/`.

use super::Fixture;
use crate::error::{Error, Result};

const SOURCES: [(&str, &str); 8] = [
    ("example-7.1", include_str!("../../fixtures/example-7.1.json")),
    ("example-7.2", include_str!("../../fixtures/example-7.2.json")),
    ("example-7.3", include_str!("../../fixtures/example-7.3.json")),
    ("example-7.4", include_str!("../../fixtures/example-7.4.json")),
    ("example-7.5", include_str!("../../fixtures/example-7.5.json")),
    ("example-7.6", include_str!("../../fixtures/example-7.6.json")),
    ("example-7.7", include_str!("../../fixtures/example-7.7.json")),
    ("example-7.8", include_str!("../../fixtures/example-7.8.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Result<Fixture> {
    let (_, text) = SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Input(format!("no builtin fixture {name}; known: {}", builtin_names().join(", "))))?;
    Fixture::from_json(text)
}

pub fn builtins() -> Vec<Fixture> {
    SOURCES.iter().map(|(n, _)| builtin(n).expect("embedded fixtures parse")).collect()
}

/// Raw JSON text of a builtin fixture.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
