//! Deterministic exact-rational sample points.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::geometry::{Params, Point, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
    /// Sample coordinates have denominator `denominator_base * L`.
    pub denominator_base: i64,
    /// Grids standing in for images `F(x)` have denominator `grid_multiplier * L`.
    pub grid_multiplier: i64,
    /// Bias half of the samples towards `cl target`.
    pub target: Option<SimplexSet>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            count: 1000,
            seed: 1,
            denominator_base: 4,
            grid_multiplier: 2,
            target: None,
        }
    }
}

/// The `i`-th sample depends only on `(seed, i)`: stream `i` of a ChaCha8
/// generator keyed by the seed.
pub fn sample_point(
    k: &SimplicialComplex,
    params: &Params,
    config: &SampleConfig,
    i: usize,
) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(i as u64);
    let pool = pool_for(k, config.target.as_ref(), i);
    let s = pool[rng.gen_range(0..pool.len())];
    random_point_in(
        k,
        s,
        config.denominator_base.max(1) * params.lattice_unit(),
        &mut rng,
    )
}

pub fn sample_points(k: &SimplicialComplex, params: &Params, config: &SampleConfig) -> Vec<Point> {
    (0..config.count)
        .map(|i| sample_point(k, params, config, i))
        .collect()
}

/// Candidate carriers for sample `i`: with a target, samples `0, 1 mod 4` sit
/// on `cl S`, samples `2 mod 4` on simplices touching `cl S`, the rest anywhere.
fn pool_for(k: &SimplicialComplex, target: Option<&SimplexSet>, i: usize) -> Vec<SimplexId> {
    let all: Vec<SimplexId> = k.ids().collect();
    let Some(t) = target.filter(|t| !t.is_empty()) else {
        return all;
    };
    let cl = k.closure(t);
    match i % 4 {
        0 | 1 => cl.into_iter().collect(),
        2 => {
            let near: BTreeSet<SimplexId> = cl.iter().flat_map(|&s| k.star_of(s)).collect();
            near.into_iter().collect()
        }
        _ => all,
    }
}

/// A point in the open simplex `|s|` with coordinates in `(1/n) Z`.
fn random_point_in(k: &SimplicialComplex, s: SimplexId, n: i64, rng: &mut ChaCha8Rng) -> Point {
    let verts = k.vertices(s);
    let m = verts.len();
    let n = n.max(m as i64);
    let mut cuts: Vec<i64> = index::sample(rng, (n - 1) as usize, m - 1)
        .into_iter()
        .map(|c| c as i64 + 1)
        .collect();
    cuts.sort_unstable();
    let mut coords = vec![Q::from_integer(0); k.num_vertices()];
    let mut prev = 0;
    for (j, &v) in verts.iter().enumerate() {
        let next = if j + 1 < m { cuts[j] } else { n };
        coords[v] = Q::new(next - prev, n);
        prev = next;
    }
    Point { coords }
}

/// Vertices, edge midpoints, barycenters, and level points `t = lambda`,
/// `t = 1 - lambda` on the edges of `cl S` (all edges without `S`) for every
/// level constant.
pub fn corner_battery(
    k: &SimplicialComplex,
    s: Option<&SimplexSet>,
    params: &Params,
) -> Vec<Point> {
    let mut out = BTreeSet::new();
    for id in k.ids() {
        out.insert(Point::barycenter(k, id));
    }
    let edges: Vec<SimplexId> = match s {
        Some(s) => k
            .closure(s)
            .into_iter()
            .filter(|&e| k.simplex_dim(e) == 1)
            .collect(),
        None => k.ids().filter(|&e| k.simplex_dim(e) == 1).collect(),
    };
    let one = Q::from_integer(1);
    for e in edges {
        let (a, b) = (k.vertices(e)[0], k.vertices(e)[1]);
        for lambda in params.levels() {
            for (u, w) in [(a, b), (b, a)] {
                let mut coords = vec![Q::from_integer(0); k.num_vertices()];
                coords[u] = lambda;
                coords[w] = one - lambda;
                out.insert(Point { coords });
            }
        }
    }
    out.into_iter().collect()
}
