//! JSON lattice files.
//!
//! A file is either an explicit lattice
//!
//! ```json
//! {"elements": ["0", "a", "a'", "1"],
//!  "leq": [["0", "a"], ["0", "a'"], ["a", "1"], ["a'", "1"]],
//!  "ortho": {"0": "1", "a": "a'", "a'": "a", "1": "0"}}
//! ```
//!
//! where `leq` lists generating pairs `x <= y` (closed reflexively and
//! transitively on load) and `ortho` maps every element, or a generator:
//! `{"generator": "boolean", "n": 3}`, `{"generator": "mo", "n": 2}`,
//! `{"generator": "o6"}`, `{"generator": "pasted", "blocks": [2, 3]}` or
//! `{"generator": "closure", "seed": {"dim": 2, "rays": [...], "closure_depth": 1}}`.
//!
//! Writing always produces the explicit form with covering pairs, in element
//! order, which loads back to an identical lattice.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{generators, FiniteOml, LatticeError};
use crate::exactlin::{subspace_lattice_closure, ExactError, RaySeedFile};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitLattice {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
    pub ortho: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    Boolean { n: usize },
    Mo { n: usize },
    O6,
    Pasted { blocks: Vec<usize> },
    Closure { seed: RaySeedFile },
}

impl Generator {
    /// Parses `boolean:3`, `mo:2`, `o6` or `pasted:2,3`.
    pub fn from_spec(spec: &str) -> Result<Generator, FormatError> {
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let int = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| FormatError::Parse(format!("bad generator argument in `{spec}`")))
        };
        match kind {
            "boolean" => Ok(Generator::Boolean { n: int(arg)? }),
            "mo" => Ok(Generator::Mo { n: int(arg)? }),
            "o6" if arg.is_empty() => Ok(Generator::O6),
            "pasted" => Ok(Generator::Pasted {
                blocks: arg.split(',').map(int).collect::<Result<_, _>>()?,
            }),
            _ => Err(FormatError::Parse(format!("unknown generator `{spec}`"))),
        }
    }

    pub fn build(&self, closure_cap: usize) -> Result<FiniteOml, FormatError> {
        Ok(match self {
            Generator::Boolean { n } => generators::boolean(*n)?,
            Generator::Mo { n } => generators::mo(*n)?,
            Generator::O6 => generators::o6(),
            Generator::Pasted { blocks } => generators::pasted(blocks)?,
            Generator::Closure { seed } => {
                subspace_lattice_closure(&seed.to_seed()?, closure_cap)?.into_lattice()
            }
        })
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum LatticeFile {
    Explicit(ExplicitLattice),
    Generated(Generator),
}

impl LatticeFile {
    pub fn from_json(text: &str) -> Result<LatticeFile, FormatError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
        let generated = value.get("generator").is_some();
        let shape = |e: serde_json::Error| FormatError::Parse(e.to_string());
        if generated {
            serde_json::from_value(value).map(LatticeFile::Generated).map_err(shape)
        } else {
            serde_json::from_value(value).map(LatticeFile::Explicit).map_err(shape)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice files serialize")
    }

    pub fn build(&self, closure_cap: usize) -> Result<FiniteOml, FormatError> {
        match self {
            LatticeFile::Generated(g) => g.build(closure_cap),
            LatticeFile::Explicit(e) => {
                let pairs: Vec<(String, String)> =
                    e.leq.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
                let ortho: Vec<(String, String)> =
                    e.ortho.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
                Ok(FiniteOml::from_named(e.elements.clone(), &pairs, &ortho)?)
            }
        }
    }

    pub fn from_lattice(l: &FiniteOml) -> LatticeFile {
        let name = |e| l.name(e).to_string();
        LatticeFile::Explicit(ExplicitLattice {
            elements: l.names().to_vec(),
            leq: l.covers().into_iter().map(|(a, b)| [name(a), name(b)]).collect(),
            ortho: l.elements().map(|a| (name(a), name(l.ortho(a)))).collect(),
        })
    }
}
