//! JSON category files.
//!
//! ```json
//! { "name": "fibonacci",
//!   "simples": [{"name": "1", "dual": "1", "dim": "1"}, {"name": "tau", "dual": "tau"}],
//!   "mult": [["tau", "tau", "1", 1], ["tau", "tau", "tau", 1]],
//!   "generators": [{"color": "a", "components": {"tau": 2}}] }
//! ```
//!
//! Simples may be referred to by name or by index. Unit-law entries may be
//! omitted from `mult`; they are added automatically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{FusionRing, GeneratorObject};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimpleRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleSpec {
    pub name: String,
    pub dual: SimpleRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub color: String,
    pub components: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategorySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub simples: Vec<SimpleSpec>,
    pub mult: Vec<(SimpleRef, SimpleRef, SimpleRef, u32)>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

/// A fusion ring together with its chosen generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Category {
    pub name: String,
    pub ring: FusionRing,
    pub generators: Vec<GeneratorObject>,
}

fn resolve(names: &[String], r: &SimpleRef) -> Result<usize> {
    match r {
        SimpleRef::Index(i) if *i < names.len() => Ok(*i),
        SimpleRef::Index(i) => Err(Error::Parse(format!("simple index {i} out of range"))),
        SimpleRef::Name(n) => names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| Error::UnknownSimple(n.clone())),
    }
}

impl CategorySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("category spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn build(&self) -> Result<Category> {
        let names: Vec<String> = self.simples.iter().map(|s| s.name.clone()).collect();
        let duals = self
            .simples
            .iter()
            .map(|s| resolve(&names, &s.dual))
            .collect::<Result<Vec<_>>>()?;
        let mut entries = Vec::with_capacity(self.mult.len() + 2 * names.len());
        for (x, y, z, n) in &self.mult {
            entries.push((resolve(&names, x)?, resolve(&names, y)?, resolve(&names, z)?, *n));
        }
        let explicit: std::collections::BTreeSet<(usize, usize, usize)> =
            entries.iter().map(|&(x, y, z, _)| (x, y, z)).collect();
        for y in 0..names.len() {
            for key in [(0, y, y), (y, 0, y)] {
                if !explicit.contains(&key) {
                    entries.push((key.0, key.1, key.2, 1));
                }
            }
        }
        let dims = self.simples.iter().map(|s| s.dim.clone()).collect();
        let ring = FusionRing::new(names.clone(), duals, &entries, dims)?;
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let mut m = vec![0u32; names.len()];
                for (name, &k) in &g.components {
                    m[resolve(&names, &SimpleRef::Name(name.clone()))?] += k;
                }
                GeneratorObject::new(&ring, &g.color, m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Category {
            name: self.name.clone().unwrap_or_else(|| "category".to_string()),
            ring,
            generators,
        })
    }
}

impl Category {
    pub fn from_json(text: &str) -> Result<Self> {
        CategorySpec::from_json(text)?.build()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Spec listing every nonzero multiplicity explicitly by name.
    pub fn to_spec(&self) -> CategorySpec {
        let ring = &self.ring;
        let name = |i: usize| SimpleRef::Name(ring.simple(i).name.clone());
        CategorySpec {
            name: Some(self.name.clone()),
            simples: ring
                .simples()
                .iter()
                .map(|s| SimpleSpec {
                    name: s.name.clone(),
                    dual: name(s.dual),
                    dim: ring.supplied_dims()[s.id].clone(),
                })
                .collect(),
            mult: ring
                .entries()
                .into_iter()
                .map(|(x, y, z, n)| (name(x), name(y), name(z), n))
                .collect(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorSpec {
                    color: g.color.clone(),
                    components: g
                        .multiplicities
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m > 0)
                        .map(|(z, &m)| (ring.simple(z).name.clone(), m))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn generator(&self, color: &str) -> Result<&GeneratorObject> {
        self.generators
            .iter()
            .find(|g| g.color == color)
            .ok_or_else(|| Error::Invalid(format!("no generator of color {color:?}")))
    }

    /// The simple `X` when a generator is exactly `X ⊕ X̄`.
    pub fn generator_half(&self, g: &GeneratorObject) -> Option<usize> {
        (0..self.ring.rank()).find(|&x| {
            let mut m = vec![0u32; self.ring.rank()];
            m[x] += 1;
            m[self.ring.dual(x)] += 1;
            m == g.multiplicities
        })
    }
}
