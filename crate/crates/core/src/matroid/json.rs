//! The matroid file format consumed by the CLI and the corpus loader.
//!
//! ```json
//! {"elements": 3, "kind": "uniform", "rank": 2}
//! {"bases": [[0, 1], [0, 2]], "elements": 3, "kind": "bases"}
//! {"edges": [[0, 1], [1, 2]], "elements": 2, "kind": "graphic", "vertices": 3}
//! {"elements": 2, "kind": "rank_table", "ranks": [0, 1, 1, 1]}
//! ```
//!
//! Fields are declared in alphabetical order so serialization is canonical.

use serde::{Deserialize, Serialize};

use super::{elements, Matroid, Subset};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidKind {
    Uniform,
    Bases,
    Graphic,
    RankTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    pub elements: usize,
    pub kind: MatroidKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
}

fn missing(field: &str, kind: &str) -> Error {
    Error::params(format!("kind \"{kind}\" requires the field \"{field}\""))
}

impl MatroidSpec {
    pub fn parse(text: &str) -> Result<MatroidSpec> {
        serde_json::from_str(text).map_err(|e| Error::params(format!("matroid JSON: {e}")))
    }

    pub fn build(&self) -> Result<Matroid> {
        match self.kind {
            MatroidKind::Uniform => {
                let rank = self.rank.ok_or_else(|| missing("rank", "uniform"))?;
                Matroid::uniform(rank, self.elements)
            }
            MatroidKind::Bases => {
                let bases = self.bases.as_ref().ok_or_else(|| missing("bases", "bases"))?;
                let mut masks = Vec::with_capacity(bases.len());
                for b in bases {
                    let mut mask: Subset = 0;
                    for &e in b {
                        if e >= self.elements {
                            return Err(Error::params(format!("basis element {e} outside 0..{}", self.elements)));
                        }
                        mask |= 1 << e;
                    }
                    masks.push(mask);
                }
                let m = Matroid::from_bases(self.elements, &masks)?;
                self.check_rank(&m)?;
                Ok(m)
            }
            MatroidKind::Graphic => {
                let vertices = self.vertices.ok_or_else(|| missing("vertices", "graphic"))?;
                let edges = self.edges.as_ref().ok_or_else(|| missing("edges", "graphic"))?;
                if edges.len() != self.elements {
                    return Err(Error::params(format!("{} edges but \"elements\" is {}", edges.len(), self.elements)));
                }
                let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                let m = Matroid::graphic(vertices, &pairs)?;
                self.check_rank(&m)?;
                Ok(m)
            }
            MatroidKind::RankTable => {
                let ranks = self.ranks.as_ref().ok_or_else(|| missing("ranks", "rank_table"))?;
                let m = Matroid::from_rank_table(self.elements, ranks.clone())?;
                self.check_rank(&m)?;
                Ok(m)
            }
        }
    }

    fn check_rank(&self, m: &Matroid) -> Result<()> {
        match self.rank {
            Some(r) if r != m.rank() => Err(Error::matroid(format!("declared rank {r} but the matroid has rank {}", m.rank()), None)),
            _ => Ok(()),
        }
    }

    /// Canonical `bases` description of an arbitrary matroid.
    pub fn from_matroid(m: &Matroid) -> MatroidSpec {
        let bases = m.bases().into_iter().map(|b| elements(b).collect()).collect();
        MatroidSpec {
            bases: Some(bases),
            edges: None,
            elements: m.num_elements(),
            kind: MatroidKind::Bases,
            name: None,
            rank: Some(m.rank()),
            ranks: None,
            vertices: None,
        }
    }

    /// Sorted-key JSON with every subset listed in ascending order.
    pub fn to_canonical_json(&self) -> String {
        let mut spec = self.clone();
        if let Some(bases) = spec.bases.as_mut() {
            for b in bases.iter_mut() {
                b.sort_unstable();
            }
            bases.sort();
        }
        serde_json::to_string(&spec).expect("matroid spec serializes")
    }
}
