//! Morse decompositions of the flow and Conley-Morse graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplexSet;
use crate::error::{Error, Result};
use crate::flow::System;
use crate::homology::{conley_index, poincare_polynomial, Coefficients};

/// Pairs `(hi, lo)` of set indices: connections run from `hi` to `lo`.
pub type Order = BTreeSet<(usize, usize)>;

/// Strongly connected components of the flow digraph that carry an arc,
/// sorted by their member lists.
pub fn minimal_morse_sets(sys: &System) -> Result<Vec<SimplexSet>> {
    let sccs = sys.graph.sccs(None);
    let mut sets: Vec<Vec<usize>> = sccs
        .members
        .iter()
        .zip(&sccs.nontrivial)
        .filter(|(_, &nt)| nt)
        .map(|(m, _)| m.clone())
        .collect();
    sets.sort();
    let sets: Vec<SimplexSet> = sets.into_iter().map(|m| m.into_iter().collect()).collect();
    for s in &sets {
        let r = sys.isolation_report(s)?;
        if !r.isolated {
            return Err(Error::Internal(format!(
                "strongly connected component {} is not isolated: {}",
                sys.complex.set_name(s),
                r.summary()
            )));
        }
    }
    Ok(sets)
}

/// Direct reachability between distinct sets: `(q, p)` when a walk starting
/// in set `q` reaches set `p`.
pub fn connections(sys: &System, sets: &[SimplexSet]) -> Order {
    let mut out = Order::new();
    for (q, mq) in sets.iter().enumerate() {
        let start: Vec<usize> = mq.iter().copied().collect();
        let reach = sys.graph.forward_closure(&start, None);
        for (p, mp) in sets.iter().enumerate() {
            if p != q && mp.iter().any(|&s| reach[s]) {
                out.insert((q, p));
            }
        }
    }
    out
}

pub fn transitive_closure(n: usize, rel: &Order) -> Order {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in rel {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[i][j])
        .collect()
}

pub fn transitive_reduction(order: &Order) -> Order {
    order
        .iter()
        .copied()
        .filter(|&(a, c)| {
            !order
                .iter()
                .any(|&(x, b)| x == a && b != c && order.contains(&(b, c)))
        })
        .collect()
}

/// The order generated by connections between the sets; fails when two sets
/// are connected both ways.
pub fn morse_order(sys: &System, sets: &[SimplexSet]) -> Result<Order> {
    let closure = transitive_closure(sets.len(), &connections(sys, sets));
    if let Some(&(a, _)) = closure.iter().find(|&&(a, b)| a == b) {
        return Err(Error::NotAPartialOrder(format!(
            "set {} is connected to itself through other sets",
            sys.complex.set_name(&sets[a])
        )));
    }
    Ok(closure)
}

#[derive(Debug, Clone, Serialize)]
pub struct MorseReport {
    pub valid: bool,
    pub problems: Vec<String>,
}

/// Checks a family of sets and an order against the flow: disjoint isolated
/// invariant sets, every recurrent component inside one set, no walk that
/// leaves a set and returns, and every connection going down the order.
pub fn validate_morse_decomposition(
    sys: &System,
    family: &[SimplexSet],
    order: &Order,
) -> Result<MorseReport> {
    let k = &sys.complex;
    let mut problems = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if let Some(&s) = family[i].intersection(&family[j]).next() {
                problems.push(format!(
                    "(a) sets {} and {} share {}",
                    k.set_name(&family[i]),
                    k.set_name(&family[j]),
                    k.name(s)
                ));
            }
        }
    }
    for m in family {
        let r = sys.isolation_report(m)?;
        if !r.isolated {
            problems.push(format!(
                "(a) {} is not isolated invariant: {}",
                k.set_name(m),
                r.summary()
            ));
        }
    }

    let sccs = sys.graph.sccs(None);
    for (members, &nt) in sccs.members.iter().zip(&sccs.nontrivial) {
        if nt && !family.iter().any(|m| members.iter().all(|s| m.contains(s))) {
            let set: SimplexSet = members.iter().copied().collect();
            problems.push(format!(
                "(b) recurrent component {} is not contained in a single set",
                k.set_name(&set)
            ));
        }
    }

    for m in family {
        let start: Vec<usize> = m.iter().copied().collect();
        let fwd = sys.graph.forward_closure(&start, None);
        let bwd = sys.graph.backward_closure(&start, None);
        if let Some(s) = k.ids().find(|&s| fwd[s] && bwd[s] && !m.contains(&s)) {
            problems.push(format!(
                "(c) a walk leaves {} through {} and returns",
                k.set_name(m),
                k.name(s)
            ));
        }
    }

    let n = family.len();
    if let Some(&(a, b)) = order.iter().find(|&&(a, b)| a >= n || b >= n) {
        problems.push(format!("order mentions unknown index in ({a}, {b})"));
    } else {
        let closure = transitive_closure(n, order);
        if let Some(&(a, _)) = closure.iter().find(|&&(a, b)| a == b) {
            problems.push(format!("order has a cycle through set {a}"));
        }
        for (q, p) in connections(sys, family) {
            if !closure.contains(&(q, p)) {
                problems.push(format!(
                    "(c) connection from {} to {} is not below in the order",
                    k.set_name(&family[q]),
                    k.set_name(&family[p])
                ));
            }
        }
    }
    Ok(MorseReport {
        valid: problems.is_empty(),
        problems,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseNode {
    pub id: usize,
    pub simplices: Vec<String>,
    pub betti: Vec<usize>,
    pub poincare: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConleyMorseGraph {
    pub nodes: Vec<MorseNode>,
    /// Hasse diagram, `[hi, lo]`.
    pub edges: Vec<(usize, usize)>,
    /// Full order, `[hi, lo]`.
    pub order_closure: Vec<(usize, usize)>,
}

impl ConleyMorseGraph {
    /// Builds the graph for `family`, or for the minimal Morse sets.
    pub fn build(sys: &System, family: Option<&[SimplexSet]>, field: Coefficients) -> Result<Self> {
        let minimal;
        let sets = match family {
            Some(f) => f,
            None => {
                minimal = minimal_morse_sets(sys)?;
                &minimal[..]
            }
        };
        let order = morse_order(sys, sets)?;
        if family.is_some() {
            let report = validate_morse_decomposition(sys, sets, &order)?;
            if !report.valid {
                return Err(Error::NotAPartialOrder(report.problems.join("; ")));
            }
        }
        Self::assemble(sys, sets, order, field)
    }

    /// Graph over user-chosen isolated invariant sets, without requiring them
    /// to cover the recurrent part of the flow.
    pub fn for_sets(sys: &System, sets: &[SimplexSet], field: Coefficients) -> Result<Self> {
        for s in sets {
            let r = sys.isolation_report(s)?;
            if !r.isolated {
                return Err(Error::NotIsolated(format!(
                    "{}: {}",
                    sys.complex.set_name(s),
                    r.summary()
                )));
            }
        }
        let order = morse_order(sys, sets)?;
        Self::assemble(sys, sets, order, field)
    }

    fn assemble(
        sys: &System,
        sets: &[SimplexSet],
        order: Order,
        field: Coefficients,
    ) -> Result<Self> {
        let bettis: Vec<Vec<usize>> = sets
            .par_iter()
            .map(|s| conley_index(sys, s, field))
            .collect::<Result<_>>()?;
        let nodes = sets
            .iter()
            .zip(bettis)
            .enumerate()
            .map(|(id, (s, betti))| MorseNode {
                id,
                simplices: sys.complex.names_of(s),
                poincare: poincare_polynomial(&betti),
                betti,
            })
            .collect();
        Ok(Self {
            nodes,
            edges: transitive_reduction(&order).into_iter().collect(),
            order_closure: order.into_iter().collect(),
        })
    }

    pub fn node_name(&self, id: usize) -> String {
        format!("{{{}}}", self.nodes[id].simplices.join(","))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph conley_morse {\n  node [shape=box];\n");
        for n in &self.nodes {
            out.push_str(&format!(
                "  m{} [label=\"{}\\nP(t)={}\"];\n",
                n.id,
                self.node_name(n.id),
                n.poincare
            ));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  m{a} -> m{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn k1_graph() {
        let sys = fixtures::k1_loaded().system;
        let g = ConleyMorseGraph::build(&sys, None, Coefficients::Gf2).unwrap();
        let names: Vec<String> = (0..g.nodes.len()).map(|i| g.node_name(i)).collect();
        assert_eq!(names, ["{A,C,D,AC,AD,CD}", "{F}", "{BF}", "{DE}"]);
        let polys: Vec<&str> = g.nodes.iter().map(|n| n.poincare.as_str()).collect();
        assert_eq!(polys, ["1+t", "1", "t", "t"]);
        assert_eq!(g.edges, vec![(2, 1), (3, 0), (3, 1)]);
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(ConleyMorseGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn single_point() {
        let sys = fixtures::point().system;
        let g = ConleyMorseGraph::build(&sys, None, Coefficients::Gf2).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.nodes[0].poincare, "1");
        assert!(g.edges.is_empty());
        assert_eq!(g.to_dot().matches("[label=").count(), 1);
    }

    #[test]
    fn user_sets() {
        let sys = fixtures::k1_loaded().system;
        let k = &sys.complex;
        let g =
            ConleyMorseGraph::for_sets(&sys, &[k.parse_set("B,F;F").unwrap()], Coefficients::Gf2)
                .unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.nodes[0].betti, vec![0, 0]);
        assert!(matches!(
            ConleyMorseGraph::for_sets(&sys, &[k.parse_set("DE;D").unwrap()], Coefficients::Gf2),
            Err(Error::NotIsolated(_))
        ));
    }

    #[test]
    fn validation_catches_missing_and_overlapping_sets() {
        let sys = fixtures::k1_loaded().system;
        let sets = minimal_morse_sets(&sys).unwrap();
        let order = morse_order(&sys, &sets).unwrap();
        assert!(
            validate_morse_decomposition(&sys, &sets, &order)
                .unwrap()
                .valid
        );

        let without_f: Vec<SimplexSet> = sets
            .iter()
            .filter(|s| s.len() != 1 || sys.complex.name(*s.iter().next().unwrap()) != "F")
            .cloned()
            .collect();
        let order2 = morse_order(&sys, &without_f).unwrap();
        assert!(
            !validate_morse_decomposition(&sys, &without_f, &order2)
                .unwrap()
                .valid
        );

        let mut overlapping = sets.clone();
        overlapping.push(sets[1].clone());
        let r = validate_morse_decomposition(&sys, &overlapping, &Order::new()).unwrap();
        assert!(r.problems.iter().any(|p| p.starts_with("(a)")));
    }
}
