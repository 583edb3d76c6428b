//! The retraction maps `phi_lambda`, `phi^lambda_sigma` and `psi`.

use num_traits::{One, Zero};

use super::cells::characteristic;
use super::neighborhood::in_q;
use super::params::Params;
use super::point::Point;
use super::Q;
use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};

/// `(t - lambda) / (1 - lambda)` above `lambda`, zero below.
pub fn phi_scalar(t: Q, lambda: Q) -> Q {
    if t >= lambda {
        (t - lambda) / (Q::one() - lambda)
    } else {
        Q::zero()
    }
}

/// The normalized global formula: coordinates `phi_lambda(t_v)` rescaled to sum 1.
pub fn phi_global(x: &Point, lambda: Q) -> Point {
    let raw: Vec<Q> = x.coords.iter().map(|&t| phi_scalar(t, lambda)).collect();
    let total: Q = raw.iter().sum();
    Point {
        coords: raw.into_iter().map(|t| t / total).collect(),
    }
}

/// Closed form on `cl<sigma>_lambda`:
/// `(t_v - lambda) / (1 - lambda n_sigma - r_sigma)` on `sigma`, zero elsewhere.
pub fn phi_closed_form(k: &SimplicialComplex, x: &Point, s: SimplexId, lambda: Q) -> Point {
    let verts = k.vertices(s);
    let n = Q::from_integer(verts.len() as i64);
    let r: Q = (0..x.coords.len())
        .filter(|v| verts.binary_search(v).is_err())
        .map(|v| x.coords[v])
        .sum();
    let denom = Q::one() - lambda * n - r;
    let mut coords = vec![Q::zero(); x.coords.len()];
    for &v in verts {
        coords[v] = (x.coords[v] - lambda) / denom;
    }
    Point { coords }
}

/// `phi^lambda(x)`, checked against the closed form for every admissible cell.
pub fn phi_map(k: &SimplicialComplex, x: &Point, lambda: Q) -> Result<Point> {
    let global = phi_global(x, lambda);
    let ch = characteristic(k, x, lambda)?;
    for &s in &ch.simplices {
        let local = phi_closed_form(k, x, s, lambda);
        if local != global {
            return Err(Error::Internal(format!(
                "phi at {} disagrees on cell {}: {} vs {}",
                x.display(k),
                k.name(s),
                local.display(k),
                global.display(k)
            )));
        }
    }
    Ok(global)
}

/// `phi` at level `delta`, restricted to `Q_1`.
pub fn psi(k: &SimplicialComplex, x: &Point, s: &SimplexSet, params: &Params) -> Result<Point> {
    if !in_q(k, x, s, 1, params)? {
        return Err(Error::InvalidPoint(format!(
            "{} is outside Q1",
            x.display(k)
        )));
    }
    phi_map(k, x, params.delta)
}

/// The point of `|sigma| ∩ cl<sigma>_lambda` that `phi^lambda_sigma` sends to `y`.
pub fn preimage(k: &SimplicialComplex, y: &Point, s: SimplexId, lambda: Q) -> Point {
    let verts = k.vertices(s);
    let scale = Q::one() - lambda * Q::from_integer(verts.len() as i64);
    let mut coords = vec![Q::zero(); y.coords.len()];
    for &v in verts {
        coords[v] = y.coords[v] * scale + lambda;
    }
    Point { coords }
}
