//! The multivalued flow induced by a vector field, its digraph, invariant
//! parts, isolated invariant sets, index pairs and solutions.

pub mod graph;
pub mod solution;

use std::fmt;

use serde::Serialize;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{Role, VectorField};

pub use graph::{Digraph, Sccs};
pub use solution::{BiSequence, SolutionSeq};

/// A complex, a validated vector field on it, and the digraph of its flow.
#[derive(Debug, Clone)]
pub struct System {
    pub complex: SimplicialComplex,
    pub field: VectorField,
    pub graph: Digraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsolationViolation {
    /// A member of the set that does not lie on a full solution inside it.
    NotInvariant { simplex: String },
    /// `simplex` lies in the exit set but its face `face` does not.
    ExitNotClosed { simplex: String, face: String },
    /// A walk `before -> tangency -> after` that leaves the set for one step.
    InternalTangency {
        before: String,
        tangency: String,
        after: String,
    },
}

impl fmt::Display for IsolationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotInvariant { simplex } => {
                write!(
                    f,
                    "not invariant: {simplex} does not lie on a full solution inside the set"
                )
            }
            Self::ExitNotClosed { simplex, face } => {
                write!(
                    f,
                    "exit set not closed: {simplex} is in it but its face {face} is not"
                )
            }
            Self::InternalTangency {
                before,
                tangency,
                after,
            } => write!(
                f,
                "internal tangency at {tangency}: {before} -> {tangency} -> {after}"
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsolationReport {
    pub isolated: bool,
    pub invariant: bool,
    pub exit_closed: bool,
    pub no_tangency: bool,
    pub violation: Option<IsolationViolation>,
    /// A pair `(s-, s+)` with exactly one of the two in the set.
    pub plus_minus_witness: Option<(String, String)>,
}

impl IsolationReport {
    pub fn summary(&self) -> String {
        let mut s = match &self.violation {
            None => "isolated invariant set".to_string(),
            Some(v) => v.to_string(),
        };
        if let Some((m, p)) = &self.plus_minus_witness {
            s.push_str(&format!("; vector {m} -> {p} is split by the set"));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndexPairCondition {
    /// `P1 ∩ Π(P2) ⊆ P2`
    PositivelyInvariantExit,
    /// `Π(P1 \ P2) ⊆ P1`
    NoEscapeOutsideExit,
    /// `S = Inv(P1 \ P2)`
    IsolatesSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexPairReport {
    pub valid: bool,
    pub violated: Option<IndexPairCondition>,
    pub witness: Option<String>,
}

impl System {
    pub fn new(complex: SimplicialComplex, field: VectorField) -> Self {
        let succ = complex
            .ids()
            .map(|s| flow_map(&complex, &field, s).into_iter().collect())
            .collect();
        let graph = Digraph::from_successors(succ);
        Self {
            complex,
            field,
            graph,
        }
    }

    pub fn flow(&self, s: SimplexId) -> SimplexSet {
        self.graph.successors(s).iter().copied().collect()
    }

    fn mask(&self, a: &SimplexSet) -> Vec<bool> {
        let mut m = vec![false; self.complex.len()];
        for &s in a {
            m[s] = true;
        }
        m
    }

    pub fn invariant_part(&self, a: &SimplexSet) -> SimplexSet {
        let m = self.mask(a);
        self.graph
            .invariant_part(&m)
            .into_iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
            .collect()
    }

    /// Pair `(s-, s+)` with exactly one member in `s`.
    pub fn plus_minus_witness(&self, s: &SimplexSet) -> Option<(SimplexId, SimplexId)> {
        self.complex.ids().find_map(|t| {
            let (m, p) = (self.field.minus(t), self.field.plus(t));
            (s.contains(&m) != s.contains(&p)).then_some((m, p))
        })
    }

    pub fn isolation_report(&self, s: &SimplexSet) -> Result<IsolationReport> {
        let k = &self.complex;
        let inv = self.invariant_part(s);
        let not_inv = s.difference(&inv).next().copied();
        let exit = k.exit_set(s);
        let exit_witness = k.closedness_witness(&exit);
        let tangency = exit.iter().find_map(|&t| {
            let before = self.graph.predecessors(t).iter().find(|p| s.contains(p))?;
            let after = self.graph.successors(t).iter().find(|q| s.contains(q))?;
            Some((*before, t, *after))
        });
        let pm = self.plus_minus_witness(s);

        if not_inv.is_none() && exit_witness.is_none() && tangency.is_none() != pm.is_none() {
            return Err(Error::Internal(format!(
                "tangency test and vector-splitting test disagree on {}",
                k.set_name(s)
            )));
        }

        let violation = if let Some(t) = not_inv {
            Some(IsolationViolation::NotInvariant { simplex: k.name(t) })
        } else if let Some((a, f)) = exit_witness {
            Some(IsolationViolation::ExitNotClosed {
                simplex: k.name(a),
                face: k.name(f),
            })
        } else {
            tangency.map(|(b, t, a)| IsolationViolation::InternalTangency {
                before: k.name(b),
                tangency: k.name(t),
                after: k.name(a),
            })
        };
        Ok(IsolationReport {
            isolated: violation.is_none(),
            invariant: not_inv.is_none(),
            exit_closed: exit_witness.is_none(),
            no_tangency: tangency.is_none(),
            violation,
            plus_minus_witness: pm.map(|(m, p)| (k.name(m), k.name(p))),
        })
    }

    pub fn is_isolated_invariant(&self, s: &SimplexSet) -> Result<bool> {
        Ok(self.isolation_report(s)?.isolated)
    }

    fn require_isolated(&self, s: &SimplexSet) -> Result<()> {
        let r = self.isolation_report(s)?;
        if r.isolated {
            Ok(())
        } else {
            Err(Error::NotIsolated(r.summary()))
        }
    }

    /// `(cl S, Exit S)` for an isolated invariant set.
    pub fn canonical_index_pair(&self, s: &SimplexSet) -> Result<(SimplexSet, SimplexSet)> {
        self.require_isolated(s)?;
        Ok((self.complex.closure(s), self.complex.exit_set(s)))
    }

    pub fn index_pair_check(
        &self,
        p1: &SimplexSet,
        p2: &SimplexSet,
        s: &SimplexSet,
    ) -> Result<IndexPairReport> {
        let k = &self.complex;
        for (what, p) in [("first set", p1), ("second set", p2)] {
            if let Some((a, f)) = k.closedness_witness(p) {
                return Err(Error::NotClosed {
                    what,
                    witness: k.name(a),
                    face: k.name(f),
                });
            }
        }
        if let Some(&x) = p2.difference(p1).next() {
            return Err(Error::NotNested(k.name(x)));
        }
        let fail = |c, w: String| IndexPairReport {
            valid: false,
            violated: Some(c),
            witness: Some(w),
        };
        for &a in p2 {
            for &b in self.graph.successors(a) {
                if p1.contains(&b) && !p2.contains(&b) {
                    return Ok(fail(
                        IndexPairCondition::PositivelyInvariantExit,
                        format!("{} -> {}", k.name(a), k.name(b)),
                    ));
                }
            }
        }
        let diff: SimplexSet = p1.difference(p2).copied().collect();
        for &a in &diff {
            for &b in self.graph.successors(a) {
                if !p1.contains(&b) {
                    return Ok(fail(
                        IndexPairCondition::NoEscapeOutsideExit,
                        format!("{} -> {}", k.name(a), k.name(b)),
                    ));
                }
            }
        }
        let inv = self.invariant_part(&diff);
        if &inv != s {
            let w = inv
                .symmetric_difference(s)
                .next()
                .map(|&x| k.name(x))
                .unwrap_or_default();
            return Ok(fail(IndexPairCondition::IsolatesSet, w));
        }
        Ok(IndexPairReport {
            valid: true,
            violated: None,
            witness: None,
        })
    }

    pub fn is_solution(&self, rho: &SolutionSeq) -> bool {
        self.first_invalid_step(rho).is_none()
    }

    /// Position in [`BiSequence::window`] of the first pair that is not an arc.
    pub fn first_invalid_step(&self, rho: &SolutionSeq) -> Option<usize> {
        let w = rho.window();
        w.windows(2).position(|p| !self.graph.has_arc(*p[0], *p[1]))
    }

    /// Drops each vector head that directly follows its own tail.
    pub fn reduce_solution(&self, rho: &SolutionSeq) -> SolutionSeq {
        rho.flat_map_with_pred(|prev, &cur| match prev {
            Some(&p) if self.field.is_tail(p) && self.field.plus(p) == cur => vec![],
            _ => vec![cur],
        })
        .normalized()
    }

    /// Inserts the missing head after every vector tail. A tail at the very end
    /// of a finite sequence also gets its head appended.
    pub fn arrowhead_extension(&self, rho: &SolutionSeq) -> SolutionSeq {
        rho.flat_map_with_succ(|&cur, next| {
            if self.field.is_tail(cur) {
                let head = self.field.plus(cur);
                if next != Some(&head) {
                    return vec![cur, head];
                }
            }
            vec![cur]
        })
        .normalized()
    }
}

/// The three-case successor set of a simplex.
pub fn flow_map(k: &SimplicialComplex, v: &VectorField, s: SimplexId) -> SimplexSet {
    match v.role(s) {
        Role::Critical => k.closure_of(s),
        Role::Tail(h) => std::iter::once(h).collect(),
        Role::Head(t) => {
            let mut c = k.closure_of(s);
            c.remove(&s);
            c.remove(&t);
            c
        }
    }
}

/// Sets of entries seen infinitely often in the past and in the future.
pub fn alpha_omega_limits(rho: &SolutionSeq) -> Result<(SimplexSet, SimplexSet)> {
    if rho.left.is_empty() {
        return Err(Error::NotPeriodic("left"));
    }
    if rho.right.is_empty() {
        return Err(Error::NotPeriodic("right"));
    }
    Ok((
        rho.left.iter().copied().collect(),
        rho.right.iter().copied().collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sys() -> System {
        fixtures::k1_loaded().system
    }

    fn set(s: &System, x: &str) -> SimplexSet {
        s.complex.parse_set(x).unwrap()
    }

    #[test]
    fn flow_examples() {
        let s = sys();
        let k = &s.complex;
        let f = |x: &str| k.set_name(&s.flow(k.parse_simplex(x).unwrap()));
        assert_eq!(f("BF"), "{B,F,BF}");
        assert_eq!(f("AD"), "{D}");
        assert_eq!(f("F"), "{F}");
        assert_eq!(f("DE"), "{D,E,DE}");
    }

    #[test]
    fn invariant_parts() {
        let s = sys();
        let cyc = set(&s, "A;AC;AD;C;CD;D");
        assert_eq!(s.invariant_part(&cyc), cyc);
        assert!(s.invariant_part(&set(&s, "A;AD")).is_empty());
        assert_eq!(s.invariant_part(&s.complex.all()), s.complex.all());
    }

    #[test]
    fn isolation_examples() {
        let s = sys();
        assert!(s.is_isolated_invariant(&set(&s, "BF")).unwrap());
        let r = s.isolation_report(&set(&s, "DE;D")).unwrap();
        assert!(!r.isolated);
        assert_eq!(
            r.violation,
            Some(IsolationViolation::NotInvariant {
                simplex: "D".into()
            })
        );
        assert_eq!(r.plus_minus_witness, Some(("D".into(), "CD".into())));
    }

    #[test]
    fn index_pairs() {
        let s = sys();
        let bf = set(&s, "BF");
        let (p1, p2) = s.canonical_index_pair(&bf).unwrap();
        assert_eq!(s.complex.set_name(&p1), "{B,F,BF}");
        assert_eq!(s.complex.set_name(&p2), "{B,F}");
        assert!(s.index_pair_check(&p1, &p2, &bf).unwrap().valid);
        let r = s.index_pair_check(&p1, &SimplexSet::new(), &bf).unwrap();
        assert_eq!(r.violated, Some(IndexPairCondition::NoEscapeOutsideExit));
        let all = s.complex.all();
        assert!(
            s.index_pair_check(&all, &SimplexSet::new(), &s.invariant_part(&all))
                .unwrap()
                .valid
        );
        let cyc = set(&s, "A;AC;AD;C;CD;D");
        let (c1, c2) = s.canonical_index_pair(&cyc).unwrap();
        assert_eq!(c1, cyc);
        assert!(c2.is_empty());
        let f = set(&s, "F");
        assert_eq!(
            s.canonical_index_pair(&f).unwrap(),
            (f.clone(), SimplexSet::new())
        );
        assert!(matches!(
            s.canonical_index_pair(&set(&s, "DE;D")),
            Err(Error::NotIsolated(_))
        ));
    }

    #[test]
    fn solutions_reduce_and_extend() {
        let s = sys();
        let k = &s.complex;
        let parse = |x: &str| SolutionSeq::parse(k, x).unwrap();
        assert!(s.is_solution(&parse("(A;AD;D;CD;C;AC)*")));
        assert!(s.is_solution(&parse("(BF)*;B;BE;E;EF;(F)*")));
        assert!(!s.is_solution(&parse("A;D")));

        let full = parse("A;AD;D;CD;C;AC");
        let red = s.reduce_solution(&full);
        assert_eq!(red.display(k), "A;D;C");
        assert_eq!(s.arrowhead_extension(&red), full);
        let fff = parse("F;F;F");
        assert_eq!(s.reduce_solution(&fff), fff);

        let cyc = parse("(A;AD;D;CD;C;AC)*");
        let red = s.reduce_solution(&cyc);
        assert_eq!(red.display(k), "(A;D;C)*");
        assert_eq!(s.arrowhead_extension(&red), cyc);
    }

    #[test]
    fn limits() {
        let s = sys();
        let k = &s.complex;
        let rho = SolutionSeq::parse(k, "(BF)*;B;BE;E;EF;(F)*").unwrap();
        let (a, o) = alpha_omega_limits(&rho).unwrap();
        assert_eq!(k.set_name(&a), "{BF}");
        assert_eq!(k.set_name(&o), "{F}");
        let de = SolutionSeq::parse(k, "(DE)*").unwrap();
        let (a, o) = alpha_omega_limits(&de).unwrap();
        assert_eq!(a, o);
        assert!(alpha_omega_limits(&SolutionSeq::parse(k, "A;AD").unwrap()).is_err());
    }
}
