//! The built-in corpus of reduced plane curve germs.

use std::path::Path;

use crate::error::{Error, Result};
use crate::{parse, Poly, Variables};

/// Corpus text compiled into the library.
pub const EMBEDDED: &str = include_str!("../corpus/germs.txt");

/// Germs of a corpus file: one polynomial in `x, y` per line, `#` comments.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, Poly)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse(line, &Variables::Plane)
            .map_err(|e| Error::invalid(format!("corpus line {}: {e}", lineno + 1)))?;
        out.push((line.to_string(), f));
    }
    if out.is_empty() {
        return Err(Error::invalid("empty corpus"));
    }
    Ok(out)
}

pub fn embedded() -> Vec<(String, Poly)> {
    parse_corpus(EMBEDDED).expect("embedded corpus parses")
}

pub fn load(path: &Path) -> Result<Vec<(String, Poly)>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}
