//! Lifting simplex solutions to orbits of `F` and projecting orbits back.

use serde::{Deserialize, Serialize};

use super::cells::{characteristic, in_cell};
use super::maps::region_f;
use super::params::Params;
use super::point::{Point, PointJson};
use crate::complex::SimplexId;
use crate::error::{Error, Result};
use crate::flow::{BiSequence, SolutionSeq, System};

/// A lifted orbit together with the reduced solution it follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub reduced: SolutionSeq,
    pub points: BiSequence<Point>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<String>,
    pub points: BiSequence<PointJson>,
}

impl Lift {
    pub fn to_file(&self, sys: &System) -> OrbitFile {
        OrbitFile {
            reduced: Some(self.reduced.display(&sys.complex)),
            points: self.points.map(|p| p.to_json(&sys.complex)),
        }
    }
}

pub fn points_from_file(sys: &System, f: &OrbitFile) -> Result<BiSequence<Point>> {
    f.points.try_map(|p| Point::from_json(&sys.complex, p))
}

/// The reduced form of `rho`, accepting either a solution or a sequence whose
/// arrowhead extension is one.
pub fn reduced_form(sys: &System, rho: &SolutionSeq) -> Result<SolutionSeq> {
    let full = if sys.is_solution(rho) {
        rho.clone()
    } else {
        sys.arrowhead_extension(rho)
    };
    if let Some(i) = sys.first_invalid_step(&full) {
        return Err(Error::NotASolution(format!(
            "{} breaks at position {i}",
            full.display(&sys.complex)
        )));
    }
    Ok(sys.reduce_solution(&full))
}

/// Picks `phi(k)` in `F(<prev>_eps) ∩ <cur>_eps`, or in `<cur>_eps` when there
/// is no predecessor. `F` is constant on open eps-cells, so the choice depends
/// only on the pair of cells and periodic blocks lift to periodic blocks.
fn lift_step(
    sys: &System,
    prev: Option<SimplexId>,
    cur: SimplexId,
    params: &Params,
    cap: i64,
    step: usize,
) -> Result<Point> {
    let k = &sys.complex;
    let Some(prev) = prev else {
        return Ok(Point::barycenter(k, cur));
    };
    let region = region_f(sys, &Point::barycenter(k, prev), params)?;
    let verts = k.vertices(cur);
    if !region.meets_open_cell(verts, params.eps) {
        return Err(Error::EmptyLiftRegion {
            step,
            dump: format!(
                "F on the open cell of {} is {:?}, which misses the open cell of {}",
                k.name(prev),
                region.to_json(k).blocks,
                k.name(cur)
            ),
        });
    }
    let unit = params.lattice_unit();
    let mut q = 1;
    while q <= cap.max(1) {
        let hit = region
            .grid_points(k.num_vertices(), q * unit)
            .into_iter()
            .find(|y| in_cell(k, y, cur, params.eps, false));
        if let Some(y) = hit {
            return Ok(y);
        }
        q *= 2;
    }
    Err(Error::WitnessNotFound {
        step,
        denominator: cap.max(1) * unit,
    })
}

/// Lifts a simplex solution to an orbit of `F` visiting the open eps-cells of
/// its reduced form. Grid denominators run through `q * L` for
/// `q = 1, 2, 4, ..., cap`, `L` the lattice unit of `params`.
pub fn lift(sys: &System, rho: &SolutionSeq, params: &Params, cap: i64) -> Result<Lift> {
    params.validate(sys.complex.dim())?;
    let reduced = reduced_form(sys, rho)?;
    let mut step = 0;
    let mut err = None;
    let points = reduced.flat_map_with_pred(|prev, &cur| {
        step += 1;
        if err.is_some() {
            return vec![];
        }
        match lift_step(sys, prev.copied(), cur, params, cap, step - 1) {
            Ok(p) => vec![p],
            Err(e) => {
                err = Some(e);
                vec![]
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let points = points.normalized();
    check_orbit(sys, &points, params)?;
    Ok(Lift { reduced, points })
}

/// Checks `phi(k+1) ∈ F(phi(k))` on every consecutive pair.
pub fn check_orbit(sys: &System, points: &BiSequence<Point>, params: &Params) -> Result<()> {
    let k = &sys.complex;
    for p in points.window() {
        p.validate(k)?;
    }
    let w = points.window();
    for (i, pair) in w.windows(2).enumerate() {
        let f = region_f(sys, pair[0], params)?;
        if !f.contains(pair[1]) {
            return Err(Error::NotAnOrbit {
                step: i,
                detail: format!("{} is not in F({})", pair[1].display(k), pair[0].display(k)),
            });
        }
    }
    Ok(())
}

/// Inserted face between `prev_max` and the point `x`, if one is needed.
fn insertion(
    sys: &System,
    prev_max: SimplexId,
    x: &Point,
    cur_max: SimplexId,
) -> Result<Option<SimplexId>> {
    let k = &sys.complex;
    let v = &sys.field;
    let c = x.carrier(k);
    if k.is_face(c, v.plus(prev_max)) {
        return Ok(None);
    }
    let admissible: Vec<SimplexId> = k
        .closure_of(prev_max)
        .into_iter()
        .filter(|&t| c != t && k.is_face(c, v.plus(t)))
        .collect();
    let locally_valid = |t: SimplexId| {
        let seg = BiSequence::finite(vec![prev_max, t, cur_max]);
        sys.is_solution(&sys.arrowhead_extension(&seg))
    };
    match admissible.iter().copied().find(|&t| locally_valid(t)) {
        Some(t) => Ok(Some(t)),
        None => admissible.first().copied().map(Some).ok_or_else(|| {
            Error::Internal(format!(
                "no face of {} admits {} after it",
                k.name(prev_max),
                x.display(k)
            ))
        }),
    }
}

/// Projects an orbit of `F` to a solution of the combinatorial flow: maximal
/// eps-characteristic simplices, face insertion, then arrowhead extension.
pub fn project(sys: &System, points: &BiSequence<Point>, params: &Params) -> Result<SolutionSeq> {
    params.validate(sys.complex.dim())?;
    check_orbit(sys, points, params)?;
    let k = &sys.complex;
    let tagged =
        points.try_map(|p| characteristic(k, p, params.eps).map(|c| (p.clone(), c.max)))?;
    let mut err = None;
    let inserted = tagged.flat_map_with_pred(|prev, (x, cur)| {
        let Some((_, pmax)) = prev else {
            return vec![*cur];
        };
        match insertion(sys, *pmax, x, *cur) {
            Ok(Some(t)) => vec![t, *cur],
            Ok(None) => vec![*cur],
            Err(e) => {
                err.get_or_insert(e);
                vec![*cur]
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let rho = sys.arrowhead_extension(&inserted.normalized());
    if let Some(i) = sys.first_invalid_step(&rho) {
        return Err(Error::Internal(format!(
            "projected sequence {} is not a solution at position {i}",
            rho.display(k)
        )));
    }
    Ok(rho)
}
