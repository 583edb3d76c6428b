//! Small directed-graph toolkit: Tarjan SCCs, condensation and reachability.

use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn from_successors(succ: Vec<Vec<usize>>) -> Self {
        let mut pred = vec![Vec::new(); succ.len()];
        for (u, out) in succ.iter().enumerate() {
            for &v in out {
                pred[v].push(u);
            }
        }
        Self { succ, pred }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn predecessors(&self, u: usize) -> &[usize] {
        &self.pred[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(&v)
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Strongly connected components of the subgraph induced by `mask`
    /// (all nodes when `mask` is `None`).
    pub fn sccs(&self, mask: Option<&[bool]>) -> Sccs {
        let n = self.len();
        let inside = |u: usize| mask.map_or(true, |m| m[u]);
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp_of = vec![UNSEEN; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0;

        for root in 0..n {
            if !inside(root) || index[root] != UNSEEN {
                continue;
            }
            // Explicit call stack of (node, next successor position).
            let mut calls: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(top) = calls.last_mut() {
                let u = top.0;
                if top.1 < self.succ[u].len() {
                    let v = self.succ[u][top.1];
                    top.1 += 1;
                    if !inside(v) {
                        continue;
                    }
                    if index[v] == UNSEEN {
                        index[v] = counter;
                        low[v] = counter;
                        counter += 1;
                        stack.push(v);
                        on_stack[v] = true;
                        calls.push((v, 0));
                    } else if on_stack[v] {
                        low[u] = low[u].min(index[v]);
                    }
                } else {
                    calls.pop();
                    if let Some(&(parent, _)) = calls.last() {
                        low[parent] = low[parent].min(low[u]);
                    }
                    if low[u] == index[u] {
                        let id = members.len();
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp_of[w] = id;
                            comp.push(w);
                            if w == u {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        members.push(comp);
                    }
                }
            }
        }

        let nontrivial = members
            .iter()
            .map(|c| c.len() > 1 || self.succ[c[0]].contains(&c[0]))
            .collect();
        let mut dag = vec![BTreeSet::new(); members.len()];
        for u in 0..n {
            if comp_of[u] == UNSEEN {
                continue;
            }
            for &v in &self.succ[u] {
                if comp_of[v] != UNSEEN && comp_of[u] != comp_of[v] {
                    dag[comp_of[u]].insert(comp_of[v]);
                }
            }
        }
        Sccs {
            comp_of: comp_of
                .into_iter()
                .map(|c| (c != UNSEEN).then_some(c))
                .collect(),
            members,
            nontrivial,
            dag,
        }
    }

    /// Nodes reachable from `sources` by walks of length >= 0 inside `mask`.
    pub fn forward_closure(&self, sources: &[usize], mask: Option<&[bool]>) -> Vec<bool> {
        self.closure(sources, mask, &self.succ)
    }

    /// Nodes that reach some node of `targets` inside `mask`.
    pub fn backward_closure(&self, targets: &[usize], mask: Option<&[bool]>) -> Vec<bool> {
        self.closure(targets, mask, &self.pred)
    }

    fn closure(&self, start: &[usize], mask: Option<&[bool]>, adj: &[Vec<usize>]) -> Vec<bool> {
        let inside = |u: usize| mask.map_or(true, |m| m[u]);
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = start.iter().copied().filter(|&u| inside(u)).collect();
        for &u in &stack {
            seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if inside(v) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Nodes of the induced subgraph on `mask` that lie on a bi-infinite walk
    /// inside `mask`: those reached from a cycle and reaching a cycle.
    pub fn invariant_part(&self, mask: &[bool]) -> Vec<bool> {
        let sccs = self.sccs(Some(mask));
        let on_cycle: Vec<usize> = sccs
            .members
            .iter()
            .zip(&sccs.nontrivial)
            .filter(|(_, &nt)| nt)
            .flat_map(|(m, _)| m.iter().copied())
            .collect();
        let fwd = self.forward_closure(&on_cycle, Some(mask));
        let bwd = self.backward_closure(&on_cycle, Some(mask));
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Sccs {
    /// Component index per node; `None` for nodes outside the mask.
    pub comp_of: Vec<Option<usize>>,
    /// Sorted members per component, components in reverse topological order.
    pub members: Vec<Vec<usize>>,
    /// Whether the component carries at least one arc (self-loops count).
    pub nontrivial: Vec<bool>,
    /// Arcs of the condensation.
    pub dag: Vec<BTreeSet<usize>>,
}

impl Sccs {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `reach[a][b]`: component `b` is reachable from `a` by a walk of length >= 0.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        // Components come out of Tarjan sinks-first, so successors are done earlier.
        for c in 0..n {
            reach[c][c] = true;
            for &d in &self.dag[c] {
                debug_assert!(d < c);
                let row = reach[d].clone();
                for (r, x) in reach[c].iter_mut().zip(row) {
                    *r |= x;
                }
            }
        }
        reach
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycles_and_a_bridge() {
        // 0 <-> 1 -> 2 -> 3 -> 2, 4 isolated, 5 -> 5
        let g =
            Digraph::from_successors(vec![vec![1], vec![0, 2], vec![3], vec![2], vec![], vec![5]]);
        let s = g.sccs(None);
        assert_eq!(s.len(), 4);
        let c01 = s.comp_of[0].unwrap();
        let c23 = s.comp_of[2].unwrap();
        assert_eq!(s.comp_of[1], Some(c01));
        assert_eq!(s.comp_of[3], Some(c23));
        assert!(s.nontrivial[c01] && s.nontrivial[c23]);
        assert!(!s.nontrivial[s.comp_of[4].unwrap()]);
        assert!(s.nontrivial[s.comp_of[5].unwrap()]);
        let r = s.reachability();
        assert!(r[c01][c23]);
        assert!(!r[c23][c01]);
    }

    #[test]
    fn invariant_part_drops_transients() {
        // 0 -> 1 -> 1, 2 -> 0, 1 -> 3
        let g = Digraph::from_successors(vec![vec![1], vec![1, 3], vec![0], vec![]]);
        let inv = g.invariant_part(&[true; 4]);
        assert_eq!(inv, vec![false, true, false, false]);
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        let succ = (0..n)
            .map(|i| if i + 1 < n { vec![i + 1] } else { vec![0] })
            .collect();
        let g = Digraph::from_successors(succ);
        assert_eq!(g.sccs(None).len(), 1);
    }
}
