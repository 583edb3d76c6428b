use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Q;
use crate::complex::{SimplexId, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = |reason: &str| Error::Syntax {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad("expected a rational p/q"))?;
    let d: i64 = d.parse().map_err(|_| bad("expected a rational p/q"))?;
    if d == 0 {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A point of the geometric realization, in barycentric coordinates over all
/// vertices of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub coords: Vec<Q>,
}

impl Point {
    pub fn vertex(k: &SimplicialComplex, v: VertexId) -> Self {
        let mut coords = vec![Q::zero(); k.num_vertices()];
        coords[v] = Q::one();
        Self { coords }
    }

    pub fn barycenter(k: &SimplicialComplex, s: SimplexId) -> Self {
        let verts = k.vertices(s);
        let w = Q::new(1, verts.len() as i64);
        let mut coords = vec![Q::zero(); k.num_vertices()];
        for &v in verts {
            coords[v] = w;
        }
        Self { coords }
    }

    /// Builds a point from named coordinates; missing vertices are zero.
    pub fn from_named(k: &SimplicialComplex, named: &[(&str, Q)]) -> Result<Self> {
        let mut coords = vec![Q::zero(); k.num_vertices()];
        for (name, q) in named {
            let v = k
                .vertex_id(name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            coords[v] = *q;
        }
        let p = Self { coords };
        p.validate(k)?;
        Ok(p)
    }

    pub fn t(&self, v: VertexId) -> Q {
        self.coords[v]
    }

    pub fn carrier_vertices(&self) -> Vec<VertexId> {
        (0..self.coords.len())
            .filter(|&v| self.coords[v] > Q::zero())
            .collect()
    }

    /// The simplex whose open cell contains the point.
    pub fn carrier(&self, k: &SimplicialComplex) -> SimplexId {
        k.id_of(&self.carrier_vertices())
            .expect("validated points are supported on a simplex")
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        if self.coords.len() != k.num_vertices() {
            return Err(Error::InvalidPoint("wrong number of coordinates".into()));
        }
        if let Some(v) = self.coords.iter().position(|t| *t < Q::zero()) {
            return Err(Error::InvalidPoint(format!(
                "negative coordinate at {}",
                k.vertex_name(v)
            )));
        }
        let sum: Q = self.coords.iter().sum();
        if sum != Q::one() {
            return Err(Error::InvalidPoint(format!(
                "coordinates sum to {}",
                fmt_q(&sum)
            )));
        }
        if k.id_of(&self.carrier_vertices()).is_none() {
            return Err(Error::InvalidPoint(
                "support is not a simplex of the complex".into(),
            ));
        }
        Ok(())
    }

    pub fn display(&self, k: &SimplicialComplex) -> String {
        let parts: Vec<String> = self
            .carrier_vertices()
            .into_iter()
            .map(|v| format!("{}={}", k.vertex_name(v), fmt_q(&self.coords[v])))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn to_json(&self, k: &SimplicialComplex) -> PointJson {
        PointJson {
            coords: self
                .carrier_vertices()
                .into_iter()
                .map(|v| (k.vertex_name(v).to_string(), fmt_q(&self.coords[v])))
                .collect(),
        }
    }

    pub fn from_json(k: &SimplicialComplex, j: &PointJson) -> Result<Self> {
        let mut coords = vec![Q::zero(); k.num_vertices()];
        for (name, q) in &j.coords {
            let v = k
                .vertex_id(name)
                .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
            coords[v] = parse_q(q)?;
        }
        let p = Self { coords };
        p.validate(k)?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: BTreeMap<String, String>,
}
