//! Level signatures, characteristic simplices and level cells.

use std::cmp::Ordering;

use super::point::Point;
use super::Q;
use crate::complex::{SimplexId, SimplexSet, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// `sgn(t_v(x) - lambda)` per vertex.
pub fn signature(x: &Point, lambda: Q) -> Vec<i8> {
    x.coords
        .iter()
        .map(|t| match t.cmp(&lambda) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        })
        .collect()
}

/// Vertices with `t_v > lambda`.
pub fn min_vertices(x: &Point, lambda: Q) -> Vec<VertexId> {
    (0..x.coords.len())
        .filter(|&v| x.coords[v] > lambda)
        .collect()
}

/// Vertices with `t_v >= lambda`.
pub fn max_vertices(x: &Point, lambda: Q) -> Vec<VertexId> {
    (0..x.coords.len())
        .filter(|&v| x.coords[v] >= lambda)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    /// All simplices between the minimal and maximal characteristic simplex.
    pub simplices: SimplexSet,
    pub min: SimplexId,
    pub max: SimplexId,
}

/// Characteristic simplices at level `lambda > 0`.
pub fn characteristic(k: &SimplicialComplex, x: &Point, lambda: Q) -> Result<Characteristic> {
    let lo = min_vertices(x, lambda);
    let hi = max_vertices(x, lambda);
    let internal = |what: &str| {
        Error::Internal(format!(
            "{what} characteristic simplex of {} at level {} is not a simplex",
            x.display(k),
            super::point::fmt_q(&lambda)
        ))
    };
    let min = k.id_of(&lo).ok_or_else(|| internal("minimal"))?;
    let max = k.id_of(&hi).ok_or_else(|| internal("maximal"))?;
    let extra: Vec<VertexId> = hi.iter().copied().filter(|v| !lo.contains(v)).collect();
    let mut simplices = SimplexSet::new();
    for mask in 0u64..(1u64 << extra.len()) {
        let mut s = lo.clone();
        s.extend(
            (0..extra.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| extra[i]),
        );
        simplices.insert(k.id_of(&s).ok_or_else(|| internal("intermediate"))?);
    }
    Ok(Characteristic {
        simplices,
        min,
        max,
    })
}

/// Membership in the open cell (`t > lambda` on `s`, `t < lambda` off it) or
/// its closure (non-strict inequalities).
pub fn in_cell(k: &SimplicialComplex, x: &Point, s: SimplexId, lambda: Q, closed: bool) -> bool {
    let verts = k.vertices(s);
    (0..x.coords.len()).all(|v| {
        let t = x.coords[v];
        match (verts.binary_search(&v).is_ok(), closed) {
            (true, false) => t > lambda,
            (true, true) => t >= lambda,
            (false, false) => t < lambda,
            (false, true) => t <= lambda,
        }
    })
}

/// The simplex whose open `lambda`-cell contains `x`, if any.
pub fn open_cell_of(k: &SimplicialComplex, x: &Point, lambda: Q) -> Option<SimplexId> {
    if x.coords.iter().any(|t| *t == lambda) {
        return None;
    }
    k.id_of(&min_vertices(x, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn signature_examples() {
        let (k, _) = fixtures::k1();
        let a = k.vertex_id("A").unwrap();
        let b = k.vertex_id("B").unwrap();
        let d = k.vertex_id("D").unwrap();
        let mid = Point::barycenter(&k, k.parse_simplex("AD").unwrap());
        let sig = signature(&mid, Q::new(1, 3));
        for v in 0..6 {
            assert_eq!(sig[v], if v == a || v == d { 1 } else { -1 });
        }
        let pa = Point::vertex(&k, a);
        let sig = signature(&pa, Q::new(1, 3));
        assert_eq!(sig.iter().filter(|&&s| s == 1).count(), 1);
        let x = Point::from_named(&k, &[("B", Q::new(1, 3)), ("F", Q::new(2, 3))]).unwrap();
        assert_eq!(signature(&x, Q::new(1, 3))[b], 0);
    }

    #[test]
    fn characteristic_examples() {
        let (k, _) = fixtures::k1();
        let id = |s: &str| k.parse_simplex(s).unwrap();
        let mid = Point::barycenter(&k, id("AD"));
        let c = characteristic(&k, &mid, Q::new(1, 3)).unwrap();
        assert_eq!((c.min, c.max), (id("AD"), id("AD")));
        assert_eq!(k.set_name(&c.simplices), "{AD}");

        let pa = Point::barycenter(&k, id("A"));
        let c = characteristic(&k, &pa, Q::new(1, 3)).unwrap();
        assert_eq!(k.set_name(&c.simplices), "{A}");

        let x = Point::from_named(&k, &[("A", Q::new(5, 6)), ("D", Q::new(1, 6))]).unwrap();
        let c = characteristic(&k, &x, Q::new(1, 6)).unwrap();
        assert_eq!((c.min, c.max), (id("A"), id("AD")));
        assert_eq!(k.set_name(&c.simplices), "{A,AD}");
    }

    #[test]
    fn cell_examples() {
        let (k, _) = fixtures::k1();
        let id = |s: &str| k.parse_simplex(s).unwrap();
        let l = Q::new(1, 6);
        let mid = Point::barycenter(&k, id("AD"));
        assert!(in_cell(&k, &mid, id("AD"), l, true));
        let pa = Point::barycenter(&k, id("A"));
        assert!(!in_cell(&k, &pa, id("AD"), l, false));
        let x = Point::from_named(&k, &[("A", Q::new(5, 6)), ("D", Q::new(1, 6))]).unwrap();
        assert!(in_cell(&k, &x, id("AD"), l, true));
        assert!(in_cell(&k, &x, id("A"), l, true));
        assert!(!in_cell(&k, &x, id("A"), l, false));
        assert_eq!(open_cell_of(&k, &x, l), None);
        assert_eq!(open_cell_of(&k, &mid, l), Some(id("AD")));
    }
}
