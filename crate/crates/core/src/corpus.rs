//! Named matroid collections used by the cross-check suite.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::json::MatroidSpec;
use crate::matroid::Matroid;

const DEFAULT_CORPUS: &str = include_str!("../corpus/default.json");

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(skip)]
    pub matroid: Matroid,
}

/// Builds and validates every entry, naming unnamed ones by position.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let specs: Vec<MatroidSpec> = serde_json::from_str(text).map_err(|e| Error::params(format!("corpus JSON: {e}")))?;
    specs
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            let name = spec.name.clone().unwrap_or_else(|| format!("#{i}"));
            let matroid = spec.build().map_err(|e| match e {
                Error::InvalidMatroid { reason, witness } => Error::InvalidMatroid { reason: format!("corpus entry {name}: {reason}"), witness },
                other => other,
            })?;
            matroid.validate()?;
            Ok(CorpusEntry { name, matroid })
        })
        .collect()
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::params(format!("cannot read {}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// Uniform matroids on up to six elements, `K_4`, the 4-cycle and three hand-picked non-uniform matroids.
pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_corpus(DEFAULT_CORPUS).expect("shipped corpus is valid")
}

pub fn filter_by_size(corpus: Vec<CorpusEntry>, max_elements: usize) -> Vec<CorpusEntry> {
    corpus.into_iter().filter(|e| e.matroid.num_elements() <= max_elements).collect()
}
