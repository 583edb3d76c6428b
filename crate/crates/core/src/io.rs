//! JSON input format for a complex together with a vector field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::flow::System;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default)]
    pub vectors: Vec<(Vec<String>, Vec<String>)>,
    #[serde(default)]
    pub critical: Vec<Vec<String>>,
    /// Named simplex sets, usable wherever a set argument is expected.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub system: System,
    pub sets: BTreeMap<String, SimplexSet>,
}

impl Loaded {
    /// Resolves a set argument: a name from the file's `sets`, or simplex syntax.
    pub fn resolve_set(&self, arg: &str) -> Result<SimplexSet> {
        match self.sets.get(arg.trim()) {
            Some(s) => Ok(s.clone()),
            None => self.system.complex.parse_set(arg),
        }
    }
}

fn lookup(k: &SimplicialComplex, names: &[String]) -> Result<SimplexId> {
    let mut ids = Vec::with_capacity(names.len());
    for n in names {
        ids.push(
            k.vertex_id(n.trim())
                .ok_or_else(|| Error::UnknownVertex(n.clone()))?,
        );
    }
    k.id_of(&ids)
        .ok_or_else(|| Error::NotASimplex(names.join(",")))
}

pub fn parse_system(json: &str) -> Result<Loaded> {
    let file: SystemFile = serde_json::from_str(json)?;
    build(&file)
}

pub fn build(file: &SystemFile) -> Result<Loaded> {
    let k = SimplicialComplex::from_maximal(&file.vertices, &file.maximal_simplices)?;
    let mut vectors = Vec::with_capacity(file.vectors.len());
    for (t, h) in &file.vectors {
        vectors.push((lookup(&k, t)?, lookup(&k, h)?));
    }
    let mut critical = SimplexSet::new();
    for c in &file.critical {
        critical.insert(lookup(&k, c)?);
    }
    let v = VectorField::new(&k, &vectors, &critical)?;
    let mut sets = BTreeMap::new();
    for (name, members) in &file.sets {
        let set = members
            .iter()
            .map(|m| lookup(&k, m))
            .collect::<Result<SimplexSet>>()?;
        sets.insert(name.clone(), set);
    }
    Ok(Loaded {
        system: System::new(k, v),
        sets,
    })
}

/// Serializes a set as a list of vertex-name lists.
pub fn set_to_json(k: &SimplicialComplex, a: &SimplexSet) -> Vec<Vec<String>> {
    a.iter()
        .map(|&s| {
            k.vertices(s)
                .iter()
                .map(|&v| k.vertex_name(v).to_string())
                .collect()
        })
        .collect()
}
