//! Bundled test corpus: a few small knots, each with one alternate diagram,
//! and their Alexander polynomials as produced by the Fox-calculus route.

use serde::{Deserialize, Serialize};

use crate::alexander::fox_alexander;
use crate::diagram::parse_pd;
use crate::error::{Error, Result};
use crate::presentation::wirtinger_presentation;

const CORPUS_JSON: &str = include_str!("../corpus/knots.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    /// Knot type; alternate diagrams share it with their primary entry.
    pub knot: String,
    pub pd: String,
    /// Alexander coefficients `c_0..c_n`.
    pub expected: Vec<i64>,
}

impl CorpusEntry {
    /// Whether this is the primary diagram of its knot.
    pub fn is_primary(&self) -> bool {
        self.name == self.knot
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CorpusFile {
    entries: Vec<CorpusEntry>,
}

/// Every bundled entry in file order.
pub fn corpus() -> Vec<CorpusEntry> {
    let file: CorpusFile = serde_json::from_str(CORPUS_JSON).expect("bundled corpus is valid JSON");
    file.entries
}

pub fn primary_entries() -> Vec<CorpusEntry> {
    corpus().into_iter().filter(CorpusEntry::is_primary).collect()
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Recomputes every `expected` field with the Fox oracle.
pub fn regenerate(entries: &[CorpusEntry]) -> Result<Vec<CorpusEntry>> {
    entries
        .iter()
        .map(|e| {
            let d = parse_pd(&e.pd)?;
            let poly = fox_alexander(&wirtinger_presentation(&d))?;
            let expected = poly
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter(format!("{}: coefficients exceed 64 bits", e.name)))?;
            Ok(CorpusEntry { expected, ..e.clone() })
        })
        .collect()
}

/// The corpus file contents for `entries`.
pub fn to_json(entries: &[CorpusEntry]) -> String {
    let file = CorpusFile { entries: entries.to_vec() };
    let mut s = serde_json::to_string_pretty(&file).expect("corpus serializes");
    s.push('\n');
    s
}

/// The file as bundled, byte for byte.
pub fn bundled_json() -> &'static str {
    CORPUS_JSON
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_parse_and_regenerate() {
        let c = corpus();
        for e in &c {
            parse_pd(&e.pd).unwrap();
        }
        assert_eq!(regenerate(&c).unwrap(), c);
        assert_eq!(to_json(&c), bundled_json());
    }

    #[test]
    fn every_knot_has_an_alternate() {
        let c = corpus();
        for p in primary_entries() {
            assert!(c.iter().any(|e| e.knot == p.knot && !e.is_primary()), "{}", p.name);
        }
        assert!(find("trefoil").is_some());
    }
}
