//! Combinatorial vector fields: a partition of the simplices into critical
//! singletons and facet/cofacet pairs.

use std::fmt;

use serde::Serialize;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// The tail of a vector must be a facet of its head.
    FacetPair,
    /// Every simplex lies in the domain or the image.
    Coverage,
    /// Domain and image meet exactly in the critical cells; no simplex is used twice.
    Disjointness,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::FacetPair => "(i)",
            Clause::Coverage => "(ii)",
            Clause::Disjointness => "(iii)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldViolation {
    pub clause: Clause,
    pub simplex: String,
    pub detail: String,
}

impl fmt::Display for FieldViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "clause {}: {} {}",
            self.clause.label(),
            self.simplex,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Critical,
    /// In the domain of V but not fixed; paired with the given head.
    Tail(SimplexId),
    /// In the image of V but not fixed; paired with the given tail.
    Head(SimplexId),
}

#[derive(Debug, Clone)]
pub struct VectorField {
    roles: Vec<Role>,
}

impl VectorField {
    /// Validates a list of (tail, head) pairs plus an explicit critical set.
    /// All violations are collected before failing.
    pub fn new(
        k: &SimplicialComplex,
        vectors: &[(SimplexId, SimplexId)],
        critical: &SimplexSet,
    ) -> Result<Self> {
        let mut roles: Vec<Option<Role>> = vec![None; k.len()];
        let mut violations = Vec::new();
        let claim = |s: SimplexId,
                     role: Role,
                     roles: &mut Vec<Option<Role>>,
                     v: &mut Vec<FieldViolation>| {
            if roles[s].is_some() {
                v.push(FieldViolation {
                    clause: Clause::Disjointness,
                    simplex: k.name(s),
                    detail: "is covered more than once".into(),
                });
            } else {
                roles[s] = Some(role);
            }
        };
        for &(t, h) in vectors {
            if !k.facets(h).contains(&t) {
                violations.push(FieldViolation {
                    clause: Clause::FacetPair,
                    simplex: k.name(t),
                    detail: format!("is not a facet of {}", k.name(h)),
                });
                continue;
            }
            claim(t, Role::Tail(h), &mut roles, &mut violations);
            claim(h, Role::Head(t), &mut roles, &mut violations);
        }
        for &c in critical {
            claim(c, Role::Critical, &mut roles, &mut violations);
        }
        for (s, r) in roles.iter().enumerate() {
            if r.is_none() {
                violations.push(FieldViolation {
                    clause: Clause::Coverage,
                    simplex: k.name(s),
                    detail: "is neither critical nor part of a vector".into(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidField(violations));
        }
        Ok(Self {
            roles: roles.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn role(&self, s: SimplexId) -> Role {
        self.roles[s]
    }

    pub fn is_critical(&self, s: SimplexId) -> bool {
        self.roles[s] == Role::Critical
    }

    /// Tail of a non-trivial vector (in dom V, not fixed).
    pub fn is_tail(&self, s: SimplexId) -> bool {
        matches!(self.roles[s], Role::Tail(_))
    }

    pub fn is_head(&self, s: SimplexId) -> bool {
        matches!(self.roles[s], Role::Head(_))
    }

    /// `V(s)` when `s` is in the domain (critical cells map to themselves).
    pub fn apply(&self, s: SimplexId) -> Option<SimplexId> {
        match self.roles[s] {
            Role::Critical => Some(s),
            Role::Tail(h) => Some(h),
            Role::Head(_) => None,
        }
    }

    pub fn plus(&self, s: SimplexId) -> SimplexId {
        match self.roles[s] {
            Role::Tail(h) => h,
            _ => s,
        }
    }

    pub fn minus(&self, s: SimplexId) -> SimplexId {
        match self.roles[s] {
            Role::Head(t) => t,
            _ => s,
        }
    }

    pub fn critical(&self) -> SimplexSet {
        (0..self.len()).filter(|&s| self.is_critical(s)).collect()
    }

    /// The non-trivial vectors as (tail, head), sorted by tail.
    pub fn vectors(&self) -> Vec<(SimplexId, SimplexId)> {
        (0..self.len())
            .filter_map(|s| match self.roles[s] {
                Role::Tail(h) => Some((s, h)),
                _ => None,
            })
            .collect()
    }
}
