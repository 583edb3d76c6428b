//! The regions `A`, `B`, `C` and the multivalued maps `F`, `F~`, `D`, `G`.

use serde::Serialize;

use super::cells::{characteristic, Characteristic};
use super::params::Params;
use super::point::Point;
use super::region::{Block, Bound, Hull, Region};
use super::Q;
use crate::complex::{SimplexId, SimplexSet};
use crate::error::Result;
use crate::flow::System;

/// The three regions attached to a simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abc {
    pub a: Region,
    pub b: Region,
    pub c: Region,
}

pub fn region_a(sys: &System, s: SimplexId, gamma: Q) -> Region {
    let k = &sys.complex;
    let (plus, minus) = (sys.field.plus(s), sys.field.minus(s));
    if plus == minus {
        return Region::from_blocks(vec![Block::new(k.vertices(s), vec![])]);
    }
    let ge = k
        .vertices(minus)
        .iter()
        .map(|&v| (v, Bound::Ge(gamma)))
        .collect();
    Region::from_blocks(vec![
        Block::new(k.vertices(plus), ge),
        Block::new(k.vertices(minus), vec![]),
    ])
}

pub fn region_b(sys: &System, s: SimplexId, gamma: Q) -> Region {
    let k = &sys.complex;
    let (plus, minus) = (sys.field.plus(s), sys.field.minus(s));
    Region::from_blocks(
        k.vertices(minus)
            .iter()
            .map(|&v| Block::new(k.vertices(plus), vec![(v, Bound::Le(gamma))]))
            .collect(),
    )
}

/// `A ∩ B`, expanded: on `|s+|` all of `s-` at least `gamma` with one of them
/// equal to it, or on `|s-|` one of them at most `gamma`.
pub fn region_c(sys: &System, s: SimplexId, gamma: Q) -> Region {
    let k = &sys.complex;
    let (plus, minus) = (sys.field.plus(s), sys.field.minus(s));
    let mv = k.vertices(minus);
    let mut blocks = Vec::new();
    if plus == minus {
        // A is the whole simplex, so C = B.
        return region_b(sys, s, gamma);
    }
    for &v in mv {
        let cons = mv
            .iter()
            .map(|&w| {
                (
                    w,
                    if w == v {
                        Bound::Eq(gamma)
                    } else {
                        Bound::Ge(gamma)
                    },
                )
            })
            .collect();
        blocks.push(Block::new(k.vertices(plus), cons));
        blocks.push(Block::new(mv, vec![(v, Bound::Le(gamma))]));
    }
    Region::from_blocks(blocks)
}

pub fn region_abc(sys: &System, s: SimplexId, params: &Params) -> Abc {
    Abc {
        a: region_a(sys, s, params.gamma),
        b: region_b(sys, s, params.gamma),
        c: region_c(sys, s, params.gamma),
    }
}

/// Which branch of the case table defines `F_s(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FCase {
    Empty,
    A,
    B,
    C,
    Whole,
}

pub fn f_case(sys: &System, s: SimplexId, ch: &Characteristic) -> FCase {
    if !ch.simplices.contains(&s) {
        return FCase::Empty;
    }
    let (mp, mm) = (sys.field.plus(ch.max), sys.field.minus(ch.max));
    match (s == mp, s == mm) {
        (false, false) => FCase::A,
        (true, false) => FCase::B,
        (false, true) => FCase::C,
        (true, true) => FCase::Whole,
    }
}

fn f_sigma_for(sys: &System, s: SimplexId, case: FCase, gamma: Q) -> Region {
    match case {
        FCase::Empty => Region::empty(),
        FCase::A => region_a(sys, s, gamma),
        FCase::B => region_b(sys, s, gamma),
        FCase::C => region_c(sys, s, gamma),
        FCase::Whole => Region::from_blocks(vec![Block::new(sys.complex.vertices(s), vec![])]),
    }
}

/// `F_s(x)` with the case used to build it.
pub fn f_sigma(sys: &System, s: SimplexId, x: &Point, params: &Params) -> Result<(FCase, Region)> {
    let ch = characteristic(&sys.complex, x, params.eps)?;
    let case = f_case(sys, s, &ch);
    Ok((case, f_sigma_for(sys, s, case, params.gamma)))
}

pub fn region_f(sys: &System, x: &Point, params: &Params) -> Result<Region> {
    let ch = characteristic(&sys.complex, x, params.eps)?;
    Ok(ch.simplices.iter().fold(Region::empty(), |acc, &s| {
        acc.union(f_sigma_for(sys, s, f_case(sys, s, &ch), params.gamma))
    }))
}

/// Members of `X^eps(x)` other than the maximal one that are lower ends of
/// their pair and whose upper end is not a face of the maximal simplex.
pub fn t_set(sys: &System, ch: &Characteristic) -> SimplexSet {
    let k = &sys.complex;
    ch.simplices
        .iter()
        .copied()
        .filter(|&t| {
            t != ch.max && sys.field.minus(t) == t && !k.is_face(sys.field.plus(t), ch.max)
        })
        .collect()
}

pub fn region_f_alt(sys: &System, x: &Point, params: &Params) -> Result<Region> {
    let ch = characteristic(&sys.complex, x, params.eps)?;
    let mut r = f_sigma_for(sys, ch.max, f_case(sys, ch.max, &ch), params.gamma);
    for t in t_set(sys, &ch) {
        r = r.union(f_sigma_for(sys, t, f_case(sys, t, &ch), params.gamma));
    }
    Ok(r)
}

/// `F~_s(x) = F_s(x) ∪ A_s`, via its case table.
pub fn ftilde_sigma(sys: &System, s: SimplexId, ch: &Characteristic, gamma: Q) -> Region {
    match f_case(sys, s, ch) {
        FCase::C => region_a(sys, s, gamma),
        FCase::B => Region::from_blocks(vec![Block::new(
            sys.complex.vertices(sys.field.plus(s)),
            vec![],
        )]),
        case => f_sigma_for(sys, s, case, gamma),
    }
}

pub fn region_ftilde(sys: &System, x: &Point, params: &Params) -> Result<Region> {
    let ch = characteristic(&sys.complex, x, params.eps)?;
    Ok(ch.simplices.iter().fold(Region::empty(), |acc, &s| {
        acc.union(ftilde_sigma(sys, s, &ch, params.gamma))
    }))
}

/// `conv({x} ∪ |sigma^eps_max(x)|)`.
pub fn region_d(sys: &System, x: &Point, params: &Params) -> Result<Region> {
    let ch = characteristic(&sys.complex, x, params.eps)?;
    Ok(Region {
        blocks: Vec::new(),
        hulls: vec![Hull {
            apex: x.clone(),
            base: sys.complex.vertices(ch.max).to_vec(),
        }],
    })
}

pub fn region_g(sys: &System, x: &Point, params: &Params) -> Result<Region> {
    Ok(region_d(sys, x, params)?.union(region_ftilde(sys, x, params)?))
}
