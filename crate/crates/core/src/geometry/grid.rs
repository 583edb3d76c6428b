//! Lattice points with a fixed denominator on a closed simplex.

use num_traits::Zero;

use super::point::Point;
use super::Q;
use crate::complex::VertexId;

/// All points of `|verts|` whose coordinates are multiples of `1/n`, in
/// lexicographic order of the numerator vectors (largest first on the first
/// vertex).
pub fn lattice_points(num_vertices: usize, verts: &[VertexId], n: i64) -> LatticeIter {
    LatticeIter {
        num_vertices,
        verts: verts.to_vec(),
        n,
        current: None,
        done: verts.is_empty() || n <= 0,
    }
}

pub struct LatticeIter {
    num_vertices: usize,
    verts: Vec<VertexId>,
    n: i64,
    current: Option<Vec<i64>>,
    done: bool,
}

impl LatticeIter {
    fn to_point(&self, parts: &[i64]) -> Point {
        let mut coords = vec![Q::zero(); self.num_vertices];
        for (&v, &p) in self.verts.iter().zip(parts) {
            coords[v] = Q::new(p, self.n);
        }
        Point { coords }
    }
}

impl Iterator for LatticeIter {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        let m = self.verts.len();
        match &mut self.current {
            None => {
                let mut c = vec![0; m];
                c[0] = self.n;
                self.current = Some(c);
            }
            Some(c) => {
                // Predecessor in lexicographic order among compositions of n.
                let last = m - 1;
                let Some(i) = (0..last).rev().find(|&i| c[i] > 0) else {
                    self.done = true;
                    return None;
                };
                c[i] -= 1;
                let tail: i64 = c[i + 1..].iter().sum::<i64>() + 1;
                for x in &mut c[i + 1..] {
                    *x = 0;
                }
                c[i + 1] = tail;
            }
        }
        let c = self.current.clone().unwrap();
        Some(self.to_point(&c))
    }
}
