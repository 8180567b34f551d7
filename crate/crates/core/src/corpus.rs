//! The bundled corpus of small knots and links with their expected invariants.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::ManifoldName;
use crate::linkdiag::{parse_link, LinkDiagram, LinkError, ParityVector};

const EMBEDDED: &str = include_str!("../data/links.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("malformed corpus: {0}")]
    Json(String),
    #[error("corpus entry `{name}`: {source}")]
    Link { name: String, source: LinkError },
    #[error("corpus entry `{0}` has no diagram")]
    MissingDiagram(String),
    #[error("duplicate corpus entry `{0}`")]
    DuplicateName(String),
    #[error("no corpus entry `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, CorpusError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub components: usize,
    pub linking_matrix: Vec<Vec<i64>>,
    pub parity: ParityVector,
    pub alexander: String,
    pub classification: ManifoldName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    pub expected: Expected,
}

impl CorpusEntry {
    fn parse(&self, text: &str) -> Result<LinkDiagram> {
        parse_link(text).map_err(|source| CorpusError::Link { name: self.name.clone(), source })
    }

    /// Every diagram listed for the entry, braid first.
    pub fn diagrams(&self) -> Result<Vec<LinkDiagram>> {
        self.braid.iter().chain(&self.pd).map(|t| self.parse(t)).collect()
    }

    /// The braid closure when present, otherwise the PD code.
    pub fn diagram(&self) -> Result<LinkDiagram> {
        let text = self
            .braid
            .as_ref()
            .or(self.pd.as_ref())
            .ok_or_else(|| CorpusError::MissingDiagram(self.name.clone()))?;
        self.parse(text)
    }

    /// Texts of the listed diagrams, braid first.
    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.braid.iter().chain(&self.pd).map(|s| s.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub version: u32,
    pub links: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn from_json(text: &str) -> Result<Self> {
        let corpus: Corpus = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        for entry in &corpus.links {
            for name in std::iter::once(&entry.name).chain(&entry.aliases) {
                if !seen.insert(name.as_str()) {
                    return Err(CorpusError::DuplicateName(name.clone()));
                }
            }
            if entry.braid.is_none() && entry.pd.is_none() {
                return Err(CorpusError::MissingDiagram(entry.name.clone()));
            }
            entry.diagrams()?;
        }
        Ok(corpus)
    }

    pub fn embedded() -> &'static Corpus {
        static CORPUS: OnceLock<Corpus> = OnceLock::new();
        CORPUS.get_or_init(|| Corpus::from_json(EMBEDDED).expect("embedded corpus is valid"))
    }

    pub fn get(&self, name: &str) -> Result<&CorpusEntry> {
        self.links
            .iter()
            .find(|e| e.name == name || e.aliases.iter().any(|a| a == name))
            .ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.links.iter().map(|e| e.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_loads() {
        let c = Corpus::embedded();
        assert!(c.links.len() >= 15);
        assert_eq!(c.get("hopf").unwrap().diagrams().unwrap().len(), 2);
        assert!(matches!(c.get("nope"), Err(CorpusError::UnknownName(_))));
        assert_eq!(c.get("fig8").unwrap().name, "figure-eight");
        assert_eq!(c.get("hopf+").unwrap().name, "hopf");
    }

    #[test]
    fn rejects_bad_corpora() {
        assert!(matches!(Corpus::from_json("{"), Err(CorpusError::Json(_))));
        let entry = r##"{"name":"a","braid":"BR[1: ]","expected":{"components":1,"linking_matrix":[[0]],"parity":[0],"alexander":"1","classification":"#^1 S2xS2"}}"##;
        let dup = format!(r#"{{"version":1,"links":[{entry},{entry}]}}"#);
        assert_eq!(Corpus::from_json(&dup).unwrap_err(), CorpusError::DuplicateName("a".into()));
        let bad = entry.replace("BR[1: ]", "BR[1: 3]");
        assert!(matches!(
            Corpus::from_json(&format!(r#"{{"version":1,"links":[{bad}]}}"#)),
            Err(CorpusError::Link { .. })
        ));
    }
}
