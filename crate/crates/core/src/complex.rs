//! Finite abstract simplicial complexes and their Alexandroff topology.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type SimplexId = usize;

/// A set of simplices of one complex, stored by id.
pub type SimplexSet = BTreeSet<SimplexId>;

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    vertex_names: Vec<String>,
    vertex_lookup: HashMap<String, VertexId>,
    simplices: Vec<Vec<VertexId>>,
    lookup: HashMap<Vec<VertexId>, SimplexId>,
    facets: Vec<Vec<SimplexId>>,
    cofacets: Vec<Vec<SimplexId>>,
    dim: usize,
    short_names: bool,
}

impl SimplicialComplex {
    /// Builds the downward closure of `maximal` over the declared vertex list.
    ///
    /// Simplices are numbered in (dimension, lexicographic) order, where the
    /// lexicographic order uses the declaration order of vertices.
    pub fn from_maximal<S: AsRef<str>>(vertices: &[S], maximal: &[Vec<S>]) -> Result<Self> {
        let mut vertex_names = Vec::with_capacity(vertices.len());
        let mut vertex_lookup = HashMap::new();
        for v in vertices {
            let name = v.as_ref().trim().to_string();
            if name.is_empty() {
                return Err(Error::Syntax {
                    input: v.as_ref().to_string(),
                    reason: "empty vertex name".into(),
                });
            }
            if vertex_lookup
                .insert(name.clone(), vertex_names.len())
                .is_some()
            {
                return Err(Error::DuplicateVertexName(name));
            }
            vertex_names.push(name);
        }

        let mut all: BTreeSet<(usize, Vec<VertexId>)> = BTreeSet::new();
        for simplex in maximal {
            if simplex.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut ids = Vec::with_capacity(simplex.len());
            for v in simplex {
                let id = *vertex_lookup
                    .get(v.as_ref().trim())
                    .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))?;
                if ids.contains(&id) {
                    return Err(Error::DuplicateVertexInSimplex {
                        vertex: v.as_ref().to_string(),
                        simplex: simplex.iter().map(|s| s.as_ref().to_string()).collect(),
                    });
                }
                ids.push(id);
            }
            ids.sort_unstable();
            let n = ids.len();
            if n >= usize::BITS as usize {
                return Err(Error::Syntax {
                    input: format!("{:?}", ids),
                    reason: "simplex too large".into(),
                });
            }
            for mask in 1u64..(1u64 << n) {
                let face: Vec<VertexId> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| ids[i])
                    .collect();
                all.insert((face.len(), face));
            }
        }

        let simplices: Vec<Vec<VertexId>> = all.into_iter().map(|(_, s)| s).collect();
        let lookup: HashMap<Vec<VertexId>, SimplexId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                let fid = lookup[&f];
                facets[id].push(fid);
                cofacets[fid].push(id);
            }
            facets[id].sort_unstable();
        }
        for c in &mut cofacets {
            c.sort_unstable();
        }

        let dim = simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let short_names = vertex_names.iter().all(|n| n.chars().count() == 1);
        Ok(Self {
            vertex_names,
            vertex_lookup,
            simplices,
            lookup,
            facets,
            cofacets,
            dim,
            short_names,
        })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    /// Sorted vertex list of a simplex.
    pub fn vertices(&self, s: SimplexId) -> &[VertexId] {
        &self.simplices[s]
    }

    pub fn simplex_dim(&self, s: SimplexId) -> usize {
        self.simplices[s].len() - 1
    }

    pub fn ids(&self) -> std::ops::Range<SimplexId> {
        0..self.simplices.len()
    }

    pub fn all(&self) -> SimplexSet {
        self.ids().collect()
    }

    /// Looks up a simplex by its vertices, in any order.
    pub fn id_of(&self, vertices: &[VertexId]) -> Option<SimplexId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.lookup.get(&v).copied()
    }

    pub fn vertex_simplex(&self, v: VertexId) -> SimplexId {
        self.lookup[&vec![v]]
    }

    pub fn facets(&self, s: SimplexId) -> &[SimplexId] {
        &self.facets[s]
    }

    pub fn cofacets(&self, s: SimplexId) -> &[SimplexId] {
        &self.cofacets[s]
    }

    pub fn is_face(&self, a: SimplexId, b: SimplexId) -> bool {
        let (va, vb) = (&self.simplices[a], &self.simplices[b]);
        va.len() <= vb.len() && va.iter().all(|v| vb.binary_search(v).is_ok())
    }

    /// Faces of `s` of exactly the given codimension; codimension 0 gives `{s}`.
    pub fn faces(&self, s: SimplexId, codim: usize) -> SimplexSet {
        let mut layer: SimplexSet = std::iter::once(s).collect();
        for _ in 0..codim {
            layer = layer
                .iter()
                .flat_map(|&t| self.facets[t].iter().copied())
                .collect();
        }
        layer
    }

    /// Cofaces of `s` of exactly the given codimension.
    pub fn cofaces(&self, s: SimplexId, codim: usize) -> SimplexSet {
        let mut layer: SimplexSet = std::iter::once(s).collect();
        for _ in 0..codim {
            layer = layer
                .iter()
                .flat_map(|&t| self.cofacets[t].iter().copied())
                .collect();
        }
        layer
    }

    /// All faces of `s`, including `s` itself.
    pub fn closure_of(&self, s: SimplexId) -> SimplexSet {
        let mut out = SimplexSet::new();
        let mut stack = vec![s];
        while let Some(t) = stack.pop() {
            if out.insert(t) {
                stack.extend_from_slice(&self.facets[t]);
            }
        }
        out
    }

    /// All cofaces of `s`, including `s` itself.
    pub fn star_of(&self, s: SimplexId) -> SimplexSet {
        let mut out = SimplexSet::new();
        let mut stack = vec![s];
        while let Some(t) = stack.pop() {
            if out.insert(t) {
                stack.extend_from_slice(&self.cofacets[t]);
            }
        }
        out
    }

    pub fn closure(&self, a: &SimplexSet) -> SimplexSet {
        let mut out = SimplexSet::new();
        let mut stack: Vec<SimplexId> = a.iter().copied().collect();
        while let Some(t) = stack.pop() {
            if out.insert(t) {
                stack.extend_from_slice(&self.facets[t]);
            }
        }
        out
    }

    pub fn is_closed(&self, a: &SimplexSet) -> bool {
        a.iter()
            .all(|&s| self.facets[s].iter().all(|f| a.contains(f)))
    }

    pub fn is_open(&self, a: &SimplexSet) -> bool {
        a.iter()
            .all(|&s| self.cofacets[s].iter().all(|f| a.contains(f)))
    }

    /// `cl A \ A`.
    pub fn exit_set(&self, a: &SimplexSet) -> SimplexSet {
        self.closure(a).difference(a).copied().collect()
    }

    /// Returns a member of `a` together with one of its facets outside `a`, if any.
    pub fn closedness_witness(&self, a: &SimplexSet) -> Option<(SimplexId, SimplexId)> {
        a.iter().find_map(|&s| {
            self.facets[s]
                .iter()
                .find(|f| !a.contains(f))
                .map(|&f| (s, f))
        })
    }

    pub fn name(&self, s: SimplexId) -> String {
        let sep = if self.short_names { "" } else { "," };
        self.simplices[s]
            .iter()
            .map(|&v| self.vertex_names[v].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn set_name(&self, a: &SimplexSet) -> String {
        self.list_name(a.iter().copied())
    }

    pub fn list_name(&self, items: impl IntoIterator<Item = SimplexId>) -> String {
        let sep = if self.short_names { "," } else { ";" };
        let body = items
            .into_iter()
            .map(|s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep);
        format!("{{{body}}}")
    }

    pub fn names_of(&self, a: &SimplexSet) -> Vec<String> {
        a.iter().map(|&s| self.name(s)).collect()
    }

    /// Parses one simplex: comma-joined vertex names, a single vertex name, or
    /// concatenated vertex names when that reading is unique.
    pub fn parse_simplex(&self, token: &str) -> Result<SimplexId> {
        let token = token.trim();
        if token.is_empty() {
            return Err(Error::Syntax {
                input: token.into(),
                reason: "empty simplex".into(),
            });
        }
        let names: Vec<&str> = if let Some(&v) = self.vertex_lookup.get(token) {
            return Ok(self.vertex_simplex(v));
        } else if token.contains(',') {
            token.split(',').map(str::trim).collect()
        } else {
            self.split_concatenated(token)?
        };
        let mut ids = Vec::with_capacity(names.len());
        for n in names {
            let v = self
                .vertex_id(n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))?;
            if ids.contains(&v) {
                return Err(Error::DuplicateVertexInSimplex {
                    vertex: n.to_string(),
                    simplex: vec![token.to_string()],
                });
            }
            ids.push(v);
        }
        self.id_of(&ids)
            .ok_or_else(|| Error::NotASimplex(token.to_string()))
    }

    fn split_concatenated<'a>(&self, token: &'a str) -> Result<Vec<&'a str>> {
        fn go<'a>(
            k: &SimplicialComplex,
            rest: &'a str,
            acc: &mut Vec<&'a str>,
            found: &mut Vec<Vec<&'a str>>,
        ) {
            if found.len() > 1 {
                return;
            }
            if rest.is_empty() {
                found.push(acc.clone());
                return;
            }
            for (i, _) in rest.char_indices().skip(1).chain([(rest.len(), ' ')]) {
                let head = &rest[..i];
                if k.vertex_lookup.contains_key(head) {
                    acc.push(head);
                    go(k, &rest[i..], acc, found);
                    acc.pop();
                }
            }
        }
        let mut found = Vec::new();
        go(self, token, &mut Vec::new(), &mut found);
        match found.len() {
            0 => Err(Error::UnknownVertex(token.to_string())),
            1 => Ok(found.pop().unwrap()),
            _ => Err(Error::Syntax {
                input: token.into(),
                reason: "ambiguous vertex names; separate them with commas".into(),
            }),
        }
    }

    /// Parses an ordered list of simplices separated by `;`.
    ///
    /// A lone comma-separated token that is not itself a simplex is read as a
    /// comma-separated list, so both `B,F;F` and `DE,D` work.
    pub fn parse_list(&self, input: &str) -> Result<Vec<SimplexId>> {
        let body = input.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Vec::new());
        }
        if !body.contains(';') && body.contains(',') {
            if let Ok(s) = self.parse_simplex(body) {
                return Ok(vec![s]);
            }
            return body.split(',').map(|t| self.parse_simplex(t)).collect();
        }
        body.split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_simplex(t))
            .collect()
    }

    pub fn parse_set(&self, input: &str) -> Result<SimplexSet> {
        Ok(self.parse_list(input)?.into_iter().collect())
    }
}
