//! The neighborhoods `N_beta(A)` and the pairs `P`, `Q` built from them.

use super::cells::characteristic;
use super::params::Params;
use super::point::Point;
use super::Q;
use crate::complex::{SimplexSet, SimplicialComplex};
use crate::error::Result;

/// Whether `x` lies in the union of the closed `beta`-cells of `a`.
pub fn in_n(k: &SimplicialComplex, x: &Point, a: &SimplexSet, beta: Q) -> Result<bool> {
    if a.is_empty() {
        return Ok(false);
    }
    let ch = characteristic(k, x, beta)?;
    Ok(ch.simplices.iter().any(|s| a.contains(s)))
}

/// Boundary of `N_delta(S)`: `X^delta(x)` meets both `S` and its complement.
pub fn in_bd_n_delta(
    k: &SimplicialComplex,
    x: &Point,
    s: &SimplexSet,
    params: &Params,
) -> Result<bool> {
    in_bd_n(k, x, s, params.delta)
}

pub fn in_int_n_delta(
    k: &SimplicialComplex,
    x: &Point,
    s: &SimplexSet,
    params: &Params,
) -> Result<bool> {
    in_int_n(k, x, s, params.delta)
}

/// Boundary of `N_beta(S)` for an isolated invariant `S`.
pub fn in_bd_n(k: &SimplicialComplex, x: &Point, s: &SimplexSet, beta: Q) -> Result<bool> {
    let ch = characteristic(k, x, beta)?;
    Ok(ch.simplices.iter().any(|t| s.contains(t)) && ch.simplices.iter().any(|t| !s.contains(t)))
}

/// Interior of `N_beta(S)`: `X^beta(x)` is non-empty and inside `S`.
pub fn in_int_n(k: &SimplicialComplex, x: &Point, s: &SimplexSet, beta: Q) -> Result<bool> {
    let ch = characteristic(k, x, beta)?;
    Ok(!ch.simplices.is_empty() && ch.simplices.iter().all(|t| s.contains(t)))
}

/// `P_1 = N_delta ∩ N_delta'` and `P_2 = N_delta' ∩ bd N_delta`, over `S`.
pub fn in_p(
    k: &SimplicialComplex,
    x: &Point,
    s: &SimplexSet,
    i: u8,
    params: &Params,
) -> Result<bool> {
    if !in_n(k, x, s, params.delta_prime)? {
        return Ok(false);
    }
    match i {
        1 => in_n(k, x, s, params.delta),
        2 => in_bd_n_delta(k, x, s, params),
        _ => panic!("pair index must be 1 or 2"),
    }
}

/// `Q_1 = N_delta(cl S) ∩ N_delta'(cl S)` and
/// `Q_2 = N_delta(Exit S) ∩ N_delta'(cl S)`.
pub fn in_q(
    k: &SimplicialComplex,
    x: &Point,
    s: &SimplexSet,
    i: u8,
    params: &Params,
) -> Result<bool> {
    let cl = k.closure(s);
    if !in_n(k, x, &cl, params.delta_prime)? {
        return Ok(false);
    }
    match i {
        1 => in_n(k, x, &cl, params.delta),
        2 => in_n(k, x, &k.exit_set(s), params.delta),
        _ => panic!("pair index must be 1 or 2"),
    }
}
