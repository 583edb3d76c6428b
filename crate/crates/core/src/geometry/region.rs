//! Finite unions of linear constraint blocks on closed simplices.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::grid::lattice_points;
use super::point::{fmt_q, Point};
use super::Q;
use crate::complex::{SimplicialComplex, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Ge(Q),
    Le(Q),
    Eq(Q),
}

impl Bound {
    pub fn holds(self, t: Q) -> bool {
        match self {
            Bound::Ge(c) => t >= c,
            Bound::Le(c) => t <= c,
            Bound::Eq(c) => t == c,
        }
    }
}

/// Points of the closed simplex on `carrier` meeting every constraint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub carrier: Vec<VertexId>,
    pub constraints: Vec<(VertexId, Bound)>,
}

/// `conv({apex} ∪ |base|)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hull {
    pub apex: Point,
    pub base: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: Q,
    lo_closed: bool,
    hi: Q,
    hi_closed: bool,
}

impl Interval {
    fn unit() -> Self {
        Self {
            lo: Q::zero(),
            lo_closed: true,
            hi: Q::one(),
            hi_closed: true,
        }
    }

    fn raise(&mut self, c: Q, closed: bool) {
        if c > self.lo || (c == self.lo && !closed) {
            self.lo = c;
            self.lo_closed = closed;
        }
    }

    fn lower(&mut self, c: Q, closed: bool) {
        if c < self.hi || (c == self.hi && !closed) {
            self.hi = c;
            self.hi_closed = closed;
        }
    }

    fn apply(&mut self, b: Bound) {
        match b {
            Bound::Ge(c) => self.raise(c, true),
            Bound::Le(c) => self.lower(c, true),
            Bound::Eq(c) => {
                self.raise(c, true);
                self.lower(c, true);
            }
        }
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }
}

/// Whether a product of intervals meets the hyperplane `sum = 1`.
fn meets_unit_sum(iv: &[Interval]) -> bool {
    if iv.iter().any(Interval::is_empty) {
        return false;
    }
    let lo: Q = iv.iter().map(|i| i.lo).sum();
    let hi: Q = iv.iter().map(|i| i.hi).sum();
    let lo_closed = iv.iter().all(|i| i.lo_closed);
    let hi_closed = iv.iter().all(|i| i.hi_closed);
    let one = Q::one();
    let above_lo = lo < one || (lo == one && lo_closed);
    let below_hi = hi > one || (hi == one && hi_closed);
    above_lo && below_hi
}

impl Block {
    pub fn new(carrier: &[VertexId], constraints: Vec<(VertexId, Bound)>) -> Self {
        let mut carrier = carrier.to_vec();
        carrier.sort_unstable();
        let mut constraints = constraints;
        constraints.sort();
        constraints.dedup();
        Self {
            carrier,
            constraints,
        }
    }

    pub fn contains(&self, y: &Point) -> bool {
        (0..y.coords.len()).all(|v| self.carrier.binary_search(&v).is_ok() || y.coords[v].is_zero())
            && self.constraints.iter().all(|&(v, b)| b.holds(y.coords[v]))
    }

    fn intervals(&self) -> Vec<(VertexId, Interval)> {
        self.carrier
            .iter()
            .map(|&v| {
                let mut iv = Interval::unit();
                for &(w, b) in &self.constraints {
                    if w == v {
                        iv.apply(b);
                    }
                }
                (v, iv)
            })
            .collect()
    }

    /// Exact emptiness test.
    pub fn is_empty(&self) -> bool {
        // A constraint on a vertex outside the carrier pins that coordinate to 0.
        let outside_ok = self
            .constraints
            .iter()
            .filter(|(v, _)| self.carrier.binary_search(v).is_err())
            .all(|&(_, b)| b.holds(Q::zero()));
        if !outside_ok {
            return true;
        }
        let iv: Vec<Interval> = self.intervals().into_iter().map(|(_, i)| i).collect();
        !meets_unit_sum(&iv)
    }

    /// Exact test whether the block meets the open `lambda`-cell of `cell`.
    pub fn meets_open_cell(&self, cell: &[VertexId], lambda: Q) -> bool {
        self.meets_cell(cell, lambda, false)
    }

    /// Exact test whether the block meets the open or closed `lambda`-cell.
    pub fn meets_cell(&self, cell: &[VertexId], lambda: Q, closed: bool) -> bool {
        if self.is_empty() || cell.iter().any(|v| self.carrier.binary_search(v).is_err()) {
            return false;
        }
        let iv: Vec<Interval> = self
            .intervals()
            .into_iter()
            .map(|(v, mut i)| {
                if cell.contains(&v) {
                    i.raise(lambda, closed);
                } else {
                    i.lower(lambda, closed);
                }
                i
            })
            .collect();
        meets_unit_sum(&iv)
    }

    pub fn describe(&self, k: &SimplicialComplex) -> String {
        let carrier: Vec<&str> = self.carrier.iter().map(|&v| k.vertex_name(v)).collect();
        let cons: Vec<String> = self
            .constraints
            .iter()
            .map(|&(v, b)| {
                let (op, c) = match b {
                    Bound::Ge(c) => (">=", c),
                    Bound::Le(c) => ("<=", c),
                    Bound::Eq(c) => ("=", c),
                };
                format!("t_{} {} {}", k.vertex_name(v), op, fmt_q(&c))
            })
            .collect();
        if cons.is_empty() {
            format!("|{}|", carrier.join(","))
        } else {
            format!("|{}| with {}", carrier.join(","), cons.join(", "))
        }
    }
}

impl Hull {
    /// Ratio test: `y = a*apex + (1-a)*z` with `a` in `[0,1]` and `z` in `|base|`.
    pub fn contains(&self, y: &Point) -> bool {
        let in_base = |v: VertexId| self.base.binary_search(&v).is_ok();
        let n = y.coords.len();
        let mut alpha: Option<Q> = None;
        for v in (0..n).filter(|&v| !in_base(v)) {
            let (ty, tx) = (y.coords[v], self.apex.coords[v]);
            if tx.is_zero() {
                if !ty.is_zero() {
                    return false;
                }
                continue;
            }
            let a = ty / tx;
            match alpha {
                None => alpha = Some(a),
                Some(b) if b != a => return false,
                _ => {}
            }
        }
        let a = alpha.unwrap_or_else(Q::zero);
        if a < Q::zero() || a > Q::one() {
            return false;
        }
        (0..n)
            .filter(|&v| in_base(v))
            .all(|v| y.coords[v] >= a * self.apex.coords[v])
    }

    fn span(&self) -> Vec<VertexId> {
        let mut s: BTreeSet<VertexId> = self.base.iter().copied().collect();
        s.extend(self.apex.carrier_vertices());
        s.into_iter().collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Region {
    pub blocks: Vec<Block>,
    pub hulls: Vec<Hull>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionJson {
    pub blocks: Vec<String>,
    pub hulls: Vec<String>,
}

impl Region {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: Vec<Block>) -> Self {
        Self {
            blocks,
            hulls: Vec::new(),
        }
        .normalized()
    }

    /// Sorted, deduplicated, with provably empty blocks removed.
    pub fn normalized(mut self) -> Self {
        self.blocks.retain(|b| !b.is_empty());
        self.blocks.sort();
        self.blocks.dedup();
        self.hulls.sort();
        self.hulls.dedup();
        self
    }

    pub fn union(mut self, other: Region) -> Self {
        self.blocks.extend(other.blocks);
        self.hulls.extend(other.hulls);
        self.normalized()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty() && self.hulls.is_empty()
    }

    pub fn contains(&self, y: &Point) -> bool {
        self.blocks.iter().any(|b| b.contains(y)) || self.hulls.iter().any(|h| h.contains(y))
    }

    pub fn meets_open_cell(&self, cell: &[VertexId], lambda: Q) -> bool {
        self.blocks
            .iter()
            .any(|b| b.meets_cell(cell, lambda, false))
    }

    /// Exact test against a closed `lambda`-cell; blocks only.
    pub fn meets_closed_cell(&self, cell: &[VertexId], lambda: Q) -> bool {
        self.blocks.iter().any(|b| b.meets_cell(cell, lambda, true))
    }

    /// Points of the region whose coordinates are multiples of `1/n`, sorted.
    pub fn grid_points(&self, num_vertices: usize, n: i64) -> Vec<Point> {
        let mut out = BTreeSet::new();
        for b in &self.blocks {
            out.extend(lattice_points(num_vertices, &b.carrier, n).filter(|p| b.contains(p)));
        }
        for h in &self.hulls {
            out.extend(lattice_points(num_vertices, &h.span(), n).filter(|p| h.contains(p)));
        }
        out.into_iter().collect()
    }

    pub fn to_json(&self, k: &SimplicialComplex) -> RegionJson {
        RegionJson {
            blocks: self.blocks.iter().map(|b| b.describe(k)).collect(),
            hulls: self
                .hulls
                .iter()
                .map(|h| {
                    let base: Vec<&str> = h.base.iter().map(|&v| k.vertex_name(v)).collect();
                    format!("conv({} , |{}|)", h.apex.display(k), base.join(","))
                })
                .collect(),
        }
    }
}
