//! Relative simplicial homology of pairs of subcomplexes over GF(2) or Q.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::flow::System;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Gf2,
    Rational,
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gf2" | "z2" | "binary" => Ok(Self::Gf2),
            "q" | "rational" | "rationals" => Ok(Self::Rational),
            _ => Err(Error::Syntax {
                input: s.into(),
                reason: "expected gf2 or rational".into(),
            }),
        }
    }
}

/// Chain complex of the pair `(A, B)`: basis `A \ B` per dimension, with
/// boundary faces in `B` dropped.
#[derive(Debug, Clone)]
pub struct ChainComplexPair {
    pub basis: Vec<Vec<SimplexId>>,
    /// `boundary[k]` maps k-chains to (k-1)-chains; rows index `basis[k-1]`.
    /// `boundary[0]` is empty.
    pub boundary: Vec<Vec<Vec<i64>>>,
}

impl ChainComplexPair {
    pub fn new(k: &SimplicialComplex, a: &SimplexSet, b: &SimplexSet) -> Result<Self> {
        for (what, s) in [("first set", a), ("second set", b)] {
            if let Some((x, f)) = k.closedness_witness(s) {
                return Err(Error::NotClosed {
                    what,
                    witness: k.name(x),
                    face: k.name(f),
                });
            }
        }
        if let Some(&x) = b.difference(a).next() {
            return Err(Error::NotNested(k.name(x)));
        }
        let top = k.dim();
        let mut basis = vec![Vec::new(); top + 1];
        for &s in a.difference(b) {
            basis[k.simplex_dim(s)].push(s);
        }
        let mut boundary = vec![Vec::new()];
        for d in 1..=top {
            let rows = &basis[d - 1];
            let mut m = vec![vec![0i64; basis[d].len()]; rows.len()];
            for (col, &s) in basis[d].iter().enumerate() {
                let verts = k.vertices(s);
                for i in 0..verts.len() {
                    let mut face = verts.to_vec();
                    face.remove(i);
                    let f = k.id_of(&face).expect("faces of simplices are simplices");
                    if let Ok(row) = rows.binary_search(&f) {
                        m[row][col] = if i % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            boundary.push(m);
        }
        Ok(Self { basis, boundary })
    }

    /// Checks that every composite of consecutive boundary maps vanishes.
    pub fn boundary_squared_is_zero(&self) -> bool {
        (2..self.boundary.len()).all(|d| {
            let outer = &self.boundary[d - 1];
            let inner = &self.boundary[d];
            let cols = self.basis[d].len();
            outer.iter().all(|row| {
                (0..cols).all(|c| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &x)| x * inner[j][c])
                        .sum::<i64>()
                        == 0
                })
            })
        })
    }

    pub fn rank(&self, d: usize, field: Coefficients) -> usize {
        if d == 0 || d >= self.boundary.len() {
            return 0;
        }
        match field {
            Coefficients::Gf2 => rank_gf2(&self.boundary[d]),
            Coefficients::Rational => rank_rational(&self.boundary[d]),
        }
    }

    pub fn betti(&self, field: Coefficients) -> Vec<usize> {
        let n = self.basis.len();
        (0..n)
            .map(|d| self.basis[d].len() - self.rank(d, field) - self.rank(d + 1, field))
            .collect()
    }

    /// Alternating count of basis cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(d, b)| {
                if d % 2 == 0 {
                    b.len() as i64
                } else {
                    -(b.len() as i64)
                }
            })
            .sum()
    }
}

fn rank_gf2(m: &[Vec<i64>]) -> usize {
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let words = cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (j, &x) in r.iter().enumerate() {
                if x.rem_euclid(2) == 1 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free (Bareiss) elimination.
fn rank_rational(m: &[Vec<i64>]) -> usize {
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        rank += 1;
    }
    rank
}

pub fn relative_betti(
    k: &SimplicialComplex,
    a: &SimplexSet,
    b: &SimplexSet,
    field: Coefficients,
) -> Result<Vec<usize>> {
    Ok(ChainComplexPair::new(k, a, b)?.betti(field))
}

/// Betti vector of `(cl S, Exit S)` for an isolated invariant set `S`.
pub fn conley_index(sys: &System, s: &SimplexSet, field: Coefficients) -> Result<Vec<usize>> {
    let (p1, p2) = sys.canonical_index_pair(s)?;
    relative_betti(&sys.complex, &p1, &p2, field)
}

/// Formats a Betti vector as a polynomial in `t`, e.g. `1+t` or `t+2t^3`.
pub fn poincare_polynomial(b: &[usize]) -> String {
    let terms: Vec<String> = b
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
