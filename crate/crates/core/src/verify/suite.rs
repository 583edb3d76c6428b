//! Pointwise properties of the geometric realization, checked on samples.

use rayon::prelude::*;

use super::report::{Counterexample, PropertyReport, PropertyResult};
use super::sample::{corner_battery, sample_point, SampleConfig};
use crate::complex::{SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::flow::System;
use crate::geometry::cells::{
    characteristic, in_cell, max_vertices, min_vertices, open_cell_of, Characteristic,
};
use crate::geometry::grid::lattice_points;
use crate::geometry::maps::{
    f_sigma, ftilde_sigma, region_a, region_abc, region_d, region_f, region_f_alt, region_ftilde,
    region_g,
};
use crate::geometry::neighborhood::{in_int_n, in_n, in_p, in_q};
use crate::geometry::phi::{phi_closed_form, phi_map, preimage, psi};
use crate::geometry::{Params, Point, Region, Q};

pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    pub needs_set: bool,
    check: fn(&Env, &Ctx) -> Result<Outcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Skipped,
    Passed,
    Failed(String),
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Passed
    } else {
        Outcome::Failed(detail())
    }
}

/// Data shared by all points of a run.
pub struct Env<'a> {
    pub sys: &'a System,
    pub set: Option<&'a SimplexSet>,
    pub closure: SimplexSet,
    pub exit: SimplexSet,
    pub params: Params,
    /// Denominator of the grids that stand in for images `F(x)`.
    pub grid: i64,
}

/// Per-point data reused across properties.
pub struct Ctx {
    pub x: Point,
    pub eps: Characteristic,
    pub f: Region,
    pub f_grid: Vec<Point>,
}

impl Env<'_> {
    fn k(&self) -> &SimplicialComplex {
        &self.sys.complex
    }

    fn s(&self) -> &SimplexSet {
        self.set.expect("set-dependent property run without a set")
    }

    fn show(&self, x: &Point) -> String {
        x.display(self.k())
    }

    fn in_support(&self, y: &Point) -> bool {
        self.s().contains(&y.carrier(self.k()))
    }

    fn grid_of(&self, r: &Region) -> Vec<Point> {
        r.grid_points(self.k().num_vertices(), self.grid)
    }
}

pub const PROPERTIES: &[Property] = &[
    Property {
        name: "level_inclusion",
        statement: "sigma^lambda_max(x) is a face of sigma^mu_min(x) whenever 0 <= mu < lambda",
        needs_set: false,
        check: level_inclusion,
    },
    Property {
        name: "characteristic_equivalence",
        statement: "sigma in X^lambda(x) iff sigma_min <= sigma <= sigma_max iff x in cl<sigma>_lambda",
        needs_set: false,
        check: characteristic_equivalence,
    },
    Property {
        name: "open_cells_disjoint",
        statement: "x lies in at most one open lambda-cell",
        needs_set: false,
        check: open_cells_disjoint,
    },
    Property {
        name: "f_nonempty",
        statement: "F(x) is non-empty",
        needs_set: false,
        check: f_nonempty,
    },
    Property {
        name: "f_equals_f_alt",
        statement: "F(x) = F_sigma(x) u U_{tau in T^eps(x)} F_tau(x), sigma = sigma^eps_max(x)",
        needs_set: false,
        check: f_equals_f_alt,
    },
    Property {
        name: "f_constant_on_cells",
        statement: "F has the same region on all of an open eps-cell",
        needs_set: false,
        check: f_constant_on_cells,
    },
    Property {
        name: "abc_nonempty",
        statement: "A_sigma, B_sigma, C_sigma are non-empty for non-critical sigma in X^eps(x)",
        needs_set: false,
        check: abc_nonempty,
    },
    Property {
        name: "f_sigma_in_plus",
        statement: "F_sigma(x) lies in |sigma+|",
        needs_set: false,
        check: f_sigma_in_plus,
    },
    Property {
        name: "sigma_in_ftilde_sigma",
        statement: "|sigma| lies in F~_sigma(x) for sigma in X^eps(x)",
        needs_set: false,
        check: sigma_in_ftilde_sigma,
    },
    Property {
        name: "sigma_minus_in_ftilde_sigma",
        statement: "|sigma^-| lies in F~_sigma(x) for sigma in X^eps(x), and all of |sigma| unless sigma \
                    is the head of a vector and differs from sigma^eps_max(x)^+",
        needs_set: false,
        check: sigma_minus_in_ftilde_sigma,
    },
    Property {
        name: "ftilde_formula",
        statement: "F~(x) = A_sigma u F(x), sigma = sigma^eps_max(x)",
        needs_set: false,
        check: ftilde_formula,
    },
    Property {
        name: "selector",
        statement: "x in G(x) and F(x) lies in G(x)",
        needs_set: false,
        check: selector,
    },
    Property {
        name: "phi_closed_form",
        statement: "the global phi^lambda formula equals the per-cell closed form on every admissible cell",
        needs_set: false,
        check: phi_closed_form_prop,
    },
    Property {
        name: "phi_onto_cell",
        statement: "phi^lambda_sigma maps the explicit preimage of y in |sigma| back to y",
        needs_set: false,
        check: phi_onto_cell,
    },
    Property {
        name: "pair_inclusions",
        statement: "P2 <= P1 <= N_delta and Q2 <= Q1",
        needs_set: true,
        check: pair_inclusions,
    },
    Property {
        name: "p_difference_interior",
        statement: "P1 \\ P2 = N_delta' n int N_delta",
        needs_set: true,
        check: p_difference_interior,
    },
    Property {
        name: "q_difference_equals_p_difference",
        statement: "Q1 \\ Q2 = P1 \\ P2",
        needs_set: true,
        check: q_difference,
    },
    Property {
        name: "f_of_n_in_support",
        statement: "F(N_delta) n N_delta lies in <S>",
        needs_set: true,
        check: f_of_n_in_support,
    },
    Property {
        name: "weak_index_pair_a",
        statement: "F(P_i) n N_delta <= P_i for i = 1, 2",
        needs_set: true,
        check: weak_index_pair_a,
    },
    Property {
        name: "ftilde_d_positive_invariance",
        statement: "F~(P_i) n N_delta <= P_i and D(P_i) n N_delta <= P_i for i = 1, 2",
        needs_set: true,
        check: ftilde_d_positive_invariance,
    },
    Property {
        name: "escape_off_interior",
        statement: "x in P2, or x in N_delta n <S> outside int N_delta', forces sigma^eps_max(x) not in S; \
                    then F(x) n N_delta is empty (exact)",
        needs_set: true,
        check: escape_off_interior,
    },
    Property {
        name: "psi_images",
        statement: "psi(Q1) = |cl S| and psi(Q2) = |Exit S|, checked both ways",
        needs_set: true,
        check: psi_images,
    },
    Property {
        name: "eps_neighborhood_support",
        statement: "x in N_eps n <S> implies x in N_delta and sigma^eps_max(x) in S",
        needs_set: true,
        check: eps_neighborhood_support,
    },
];

fn names(k: &SimplicialComplex, vs: &[usize]) -> String {
    vs.iter()
        .map(|&v| k.vertex_name(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn level_inclusion(env: &Env, c: &Ctx) -> Result<Outcome> {
    let p = &env.params;
    let levels = [Q::from_integer(0), p.delta_prime, p.delta, p.gamma, p.eps];
    for j in 1..levels.len() {
        let hi = max_vertices(&c.x, levels[j]);
        for &mu in &levels[..j] {
            let lo = min_vertices(&c.x, mu);
            if !hi.iter().all(|v| lo.contains(v)) {
                return Ok(Outcome::Failed(format!(
                    "max vertices {{{}}} at level {} not inside min vertices {{{}}} at level {}",
                    names(env.k(), &hi),
                    levels[j],
                    names(env.k(), &lo),
                    mu
                )));
            }
        }
    }
    Ok(Outcome::Passed)
}

fn characteristic_equivalence(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    for lambda in env.params.levels() {
        let ch = characteristic(k, &c.x, lambda)?;
        for s in k.ids() {
            let a = ch.simplices.contains(&s);
            let b = k.is_face(ch.min, s) && k.is_face(s, ch.max);
            let d = in_cell(k, &c.x, s, lambda, true);
            if a != b || b != d {
                return Ok(Outcome::Failed(format!(
                    "{} at level {lambda}: in X = {a}, between min and max = {b}, in closed cell = {d}",
                    k.name(s)
                )));
            }
        }
    }
    Ok(Outcome::Passed)
}

fn open_cells_disjoint(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    for lambda in env.params.levels() {
        let hits: Vec<_> = k
            .ids()
            .filter(|&s| in_cell(k, &c.x, s, lambda, false))
            .collect();
        let expect = open_cell_of(k, &c.x, lambda);
        if hits.len() > 1 || hits.first().copied() != expect {
            return Ok(Outcome::Failed(format!(
                "open cells at level {lambda}: {}",
                k.list_name(hits)
            )));
        }
    }
    Ok(Outcome::Passed)
}

fn f_nonempty(_env: &Env, c: &Ctx) -> Result<Outcome> {
    Ok(verdict(!c.f.is_empty(), || {
        "F(x) has no non-empty block".into()
    }))
}

/// Grid points of `a` outside `b` and vice versa.
fn same_on_grid(env: &Env, a: &Region, b: &Region, what: &str) -> Outcome {
    for y in env.grid_of(a) {
        if !b.contains(&y) {
            return Outcome::Failed(format!(
                "{} is in the left side of {what} only",
                env.show(&y)
            ));
        }
    }
    for y in env.grid_of(b) {
        if !a.contains(&y) {
            return Outcome::Failed(format!(
                "{} is in the right side of {what} only",
                env.show(&y)
            ));
        }
    }
    Outcome::Passed
}

fn f_equals_f_alt(env: &Env, c: &Ctx) -> Result<Outcome> {
    let alt = region_f_alt(env.sys, &c.x, &env.params)?;
    Ok(same_on_grid(env, &c.f, &alt, "F = F_alt"))
}

fn f_constant_on_cells(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    let Some(s) = open_cell_of(k, &c.x, env.params.eps) else {
        return Ok(Outcome::Skipped);
    };
    let other = region_f(env.sys, &Point::barycenter(k, s), &env.params)?;
    Ok(verdict(other == c.f, || {
        format!("F differs from F at the barycenter of {}", k.name(s))
    }))
}

fn abc_nonempty(env: &Env, c: &Ctx) -> Result<Outcome> {
    for &s in &c.eps.simplices {
        if env.sys.field.is_critical(s) {
            continue;
        }
        let abc = region_abc(env.sys, s, &env.params);
        for (name, r) in [("A", &abc.a), ("B", &abc.b), ("C", &abc.c)] {
            if r.is_empty() {
                return Ok(Outcome::Failed(format!(
                    "{name} of {} is empty",
                    env.k().name(s)
                )));
            }
        }
    }
    Ok(Outcome::Passed)
}

fn f_sigma_in_plus(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    for &s in &c.eps.simplices {
        let plus = k.vertices(env.sys.field.plus(s));
        let (_, r) = f_sigma(env.sys, s, &c.x, &env.params)?;
        if let Some(b) = r
            .blocks
            .iter()
            .find(|b| !b.carrier.iter().all(|v| plus.contains(v)))
        {
            return Ok(Outcome::Failed(format!(
                "F_{} has block {}",
                k.name(s),
                b.describe(k)
            )));
        }
    }
    Ok(Outcome::Passed)
}

fn sigma_in_ftilde_sigma(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    for &s in &c.eps.simplices {
        let ft = ftilde_sigma(env.sys, s, &c.eps, env.params.gamma);
        if let Some(y) =
            lattice_points(k.num_vertices(), k.vertices(s), env.grid).find(|y| !ft.contains(y))
        {
            return Ok(Outcome::Failed(format!(
                "{} in |{}| is not in F~_{}",
                env.show(&y),
                k.name(s),
                k.name(s)
            )));
        }
    }
    Ok(Outcome::Passed)
}

fn sigma_minus_in_ftilde_sigma(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, v) = (env.k(), &env.sys.field);
    let top_plus = v.plus(c.eps.max);
    for &s in &c.eps.simplices {
        let ft = ftilde_sigma(env.sys, s, &c.eps, env.params.gamma);
        let exempt = v.is_head(s) && s != top_plus;
        let carrier = if exempt { v.minus(s) } else { s };
        if let Some(y) = lattice_points(k.num_vertices(), k.vertices(carrier), env.grid)
            .find(|y| !ft.contains(y))
        {
            return Ok(Outcome::Failed(format!(
                "{} in |{}| is not in F~_{}",
                env.show(&y),
                k.name(carrier),
                k.name(s)
            )));
        }
    }
    Ok(Outcome::Passed)
}

fn ftilde_formula(env: &Env, c: &Ctx) -> Result<Outcome> {
    let ft = region_ftilde(env.sys, &c.x, &env.params)?;
    let rhs = region_a(env.sys, c.eps.max, env.params.gamma).union(c.f.clone());
    Ok(same_on_grid(env, &ft, &rhs, "F~ = A u F"))
}

fn selector(env: &Env, c: &Ctx) -> Result<Outcome> {
    let g = region_g(env.sys, &c.x, &env.params)?;
    if !g.contains(&c.x) {
        return Ok(Outcome::Failed("x is not in G(x)".into()));
    }
    Ok(match c.f_grid.iter().find(|y| !g.contains(y)) {
        Some(y) => Outcome::Failed(format!("{} is in F(x) but not in G(x)", env.show(y))),
        None => Outcome::Passed,
    })
}

fn phi_closed_form_prop(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    for lambda in env.params.levels() {
        let global = match phi_map(k, &c.x, lambda) {
            Ok(p) => p,
            Err(e) => return Ok(Outcome::Failed(e.to_string())),
        };
        let ch = characteristic(k, &c.x, lambda)?;
        for &s in &ch.simplices {
            let local = phi_closed_form(k, &c.x, s, lambda);
            if local != global
                || !global
                    .carrier_vertices()
                    .iter()
                    .all(|v| k.vertices(s).contains(v))
            {
                return Ok(Outcome::Failed(format!(
                    "level {lambda}, cell {}: closed form {} vs {}",
                    k.name(s),
                    env.show(&local),
                    env.show(&global)
                )));
            }
        }
    }
    Ok(Outcome::Passed)
}

fn phi_onto_cell(env: &Env, c: &Ctx) -> Result<Outcome> {
    let k = env.k();
    let s = c.x.carrier(k);
    for lambda in env.params.levels() {
        let z = preimage(k, &c.x, s, lambda);
        let ok = z.validate(k).is_ok()
            && z.carrier(k) == s
            && in_cell(k, &z, s, lambda, true)
            && phi_map(k, &z, lambda).ok().as_ref() == Some(&c.x);
        if !ok {
            return Ok(Outcome::Failed(format!(
                "level {lambda}: preimage {} does not map back",
                env.show(&z)
            )));
        }
    }
    Ok(Outcome::Passed)
}

struct Pq {
    p1: bool,
    p2: bool,
    q1: bool,
    q2: bool,
    n_delta: bool,
}

fn pq(env: &Env, x: &Point) -> Result<Pq> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    Ok(Pq {
        p1: in_p(k, x, s, 1, p)?,
        p2: in_p(k, x, s, 2, p)?,
        q1: in_q(k, x, s, 1, p)?,
        q2: in_q(k, x, s, 2, p)?,
        n_delta: in_n(k, x, s, p.delta)?,
    })
}

fn pair_inclusions(env: &Env, c: &Ctx) -> Result<Outcome> {
    let m = pq(env, &c.x)?;
    Ok(verdict(
        (!m.p2 || m.p1) && (!m.p1 || m.n_delta) && (!m.q2 || m.q1),
        || {
            format!(
                "P1={} P2={} N_delta={} Q1={} Q2={}",
                m.p1, m.p2, m.n_delta, m.q1, m.q2
            )
        },
    ))
}

fn p_difference_interior(env: &Env, c: &Ctx) -> Result<Outcome> {
    let m = pq(env, &c.x)?;
    let (k, s, p) = (env.k(), env.s(), &env.params);
    let rhs = in_n(k, &c.x, s, p.delta_prime)? && in_int_n(k, &c.x, s, p.delta)?;
    let lhs = m.p1 && !m.p2;
    Ok(verdict(lhs == rhs, || {
        format!("in P1 \\ P2 = {lhs}, in N_delta' n int N_delta = {rhs}")
    }))
}

fn q_difference(env: &Env, c: &Ctx) -> Result<Outcome> {
    let m = pq(env, &c.x)?;
    let (q, p) = (m.q1 && !m.q2, m.p1 && !m.p2);
    Ok(verdict(q == p, || {
        format!("in Q1 \\ Q2 = {q}, in P1 \\ P2 = {p}")
    }))
}

fn f_of_n_in_support(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    if !in_n(k, &c.x, s, p.delta)? {
        return Ok(Outcome::Skipped);
    }
    for y in &c.f_grid {
        if in_n(k, y, s, p.delta)? && !env.in_support(y) {
            return Ok(Outcome::Failed(format!(
                "{} is in F(x) n N_delta but its carrier {} is not in S",
                env.show(y),
                k.name(y.carrier(k))
            )));
        }
    }
    Ok(Outcome::Passed)
}

/// `image(P_i) n N_delta <= P_i` over grid points of `image`.
fn positively_invariant(env: &Env, x: &Point, image: &[Point], what: &str) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    let mut tested = false;
    for i in [1u8, 2] {
        if !in_p(k, x, s, i, p)? {
            continue;
        }
        tested = true;
        for y in image {
            if in_n(k, y, s, p.delta)? && !in_p(k, y, s, i, p)? {
                return Ok(Outcome::Failed(format!(
                    "x in P{i}, {} in {what}(x) n N_delta but not in P{i}",
                    env.show(y)
                )));
            }
        }
    }
    Ok(if tested {
        Outcome::Passed
    } else {
        Outcome::Skipped
    })
}

fn weak_index_pair_a(env: &Env, c: &Ctx) -> Result<Outcome> {
    positively_invariant(env, &c.x, &c.f_grid, "F")
}

fn ftilde_d_positive_invariance(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    if !in_p(k, &c.x, s, 1, p)? {
        return Ok(Outcome::Skipped);
    }
    let ft = env.grid_of(&region_ftilde(env.sys, &c.x, p)?);
    match positively_invariant(env, &c.x, &ft, "F~")? {
        Outcome::Passed | Outcome::Skipped => {}
        fail => return Ok(fail),
    }
    let d = env.grid_of(&region_d(env.sys, &c.x, p)?);
    positively_invariant(env, &c.x, &d, "D")
}

fn escape_off_interior(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    let x = &c.x;
    let in_nd = in_n(k, x, s, p.delta)?;
    let forced =
        in_p(k, x, s, 2, p)? || (in_nd && env.in_support(x) && !in_int_n(k, x, s, p.delta_prime)?);
    if forced && s.contains(&c.eps.max) {
        return Ok(Outcome::Failed(format!(
            "sigma^eps_max(x) = {} is in S",
            k.name(c.eps.max)
        )));
    }
    if !in_nd || s.contains(&c.eps.max) {
        return Ok(if forced {
            Outcome::Passed
        } else {
            Outcome::Skipped
        });
    }
    let hit = s
        .iter()
        .find(|&&t| c.f.meets_closed_cell(k.vertices(t), p.delta));
    Ok(match hit {
        Some(&t) => Outcome::Failed(format!(
            "sigma^eps_max(x) = {} is not in S, yet F(x) meets the closed delta-cell of {}",
            k.name(c.eps.max),
            k.name(t)
        )),
        None => Outcome::Passed,
    })
}

fn psi_images(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    let x = &c.x;
    if in_q(k, x, s, 1, p)? {
        let y = psi(k, x, s, p)?;
        let cy = y.carrier(k);
        if !env.closure.contains(&cy) {
            return Ok(Outcome::Failed(format!(
                "psi(x) = {} is outside |cl S|",
                env.show(&y)
            )));
        }
        let in_q2 = in_q(k, x, s, 2, p)?;
        if in_q2 != env.exit.contains(&cy) {
            return Ok(Outcome::Failed(format!(
                "x in Q2 = {in_q2} but psi(x) = {} in |Exit S| = {}",
                env.show(&y),
                !in_q2
            )));
        }
    }
    let cx = x.carrier(k);
    if env.closure.contains(&cx) {
        let z = preimage(k, x, cx, p.delta);
        let back = if in_q(k, &z, s, 1, p)? {
            Some(psi(k, &z, s, p)?)
        } else {
            None
        };
        if back.as_ref() != Some(x) {
            return Ok(Outcome::Failed(format!(
                "preimage {} of x under psi is not in Q1 or does not map back",
                env.show(&z)
            )));
        }
        if env.exit.contains(&cx) && !in_q(k, &z, s, 2, p)? {
            return Ok(Outcome::Failed(format!(
                "preimage {} of x in |Exit S| is not in Q2",
                env.show(&z)
            )));
        }
    }
    Ok(Outcome::Passed)
}

fn eps_neighborhood_support(env: &Env, c: &Ctx) -> Result<Outcome> {
    let (k, s, p) = (env.k(), env.s(), &env.params);
    if !(in_n(k, &c.x, s, p.eps)? && env.in_support(&c.x)) {
        return Ok(Outcome::Skipped);
    }
    let nd = in_n(k, &c.x, s, p.delta)?;
    let max_in = s.contains(&c.eps.max);
    Ok(verdict(nd && max_in, || {
        format!(
            "in N_delta = {nd}, sigma^eps_max(x) = {} in S = {max_in}",
            k.name(c.eps.max)
        )
    }))
}

fn context(env: &Env, x: Point) -> Result<Ctx> {
    let eps = characteristic(env.k(), &x, env.params.eps)?;
    let f = region_f(env.sys, &x, &env.params)?;
    let f_grid = env.grid_of(&f);
    Ok(Ctx { x, eps, f, f_grid })
}

fn check_point(env: &Env, x: Point) -> Vec<Outcome> {
    let ctx = match context(env, x) {
        Ok(c) => c,
        Err(e) => {
            return PROPERTIES
                .iter()
                .map(|_| Outcome::Failed(e.to_string()))
                .collect()
        }
    };
    PROPERTIES
        .iter()
        .map(|prop| {
            if prop.needs_set && env.set.is_none() {
                return Outcome::Skipped;
            }
            (prop.check)(env, &ctx).unwrap_or_else(|e| Outcome::Failed(e.to_string()))
        })
        .collect()
}

/// Runs every property on `config.count` samples plus the corner battery.
/// Failures are report content; errors are reserved for invalid input.
pub fn run_property_suite(
    sys: &System,
    set: Option<&SimplexSet>,
    params: &Params,
    config: &SampleConfig,
) -> Result<PropertyReport> {
    let k = &sys.complex;
    params.validate(k.dim())?;
    if let Some(s) = set {
        let report = sys.isolation_report(s)?;
        if !report.isolated {
            return Err(Error::NotIsolated(report.summary()));
        }
    }
    let config = SampleConfig {
        target: config.target.clone().or_else(|| set.cloned()),
        ..config.clone()
    };
    let env = Env {
        sys,
        set,
        closure: set.map(|s| k.closure(s)).unwrap_or_default(),
        exit: set.map(|s| k.exit_set(s)).unwrap_or_default(),
        params: *params,
        grid: config.grid_multiplier.max(1) * params.lattice_unit(),
    };
    let corners = corner_battery(k, set, params);
    let total = config.count + corners.len();
    let point = |i: usize| -> Point {
        if i < config.count {
            sample_point(k, params, &config, i)
        } else {
            corners[i - config.count].clone()
        }
    };
    let outcomes: Vec<Vec<Outcome>> = (0..total)
        .into_par_iter()
        .map(|i| check_point(&env, point(i)))
        .collect();

    let properties = PROPERTIES
        .iter()
        .enumerate()
        .map(|(j, prop)| {
            let mut r = PropertyResult {
                name: prop.name.to_string(),
                statement: prop.statement.to_string(),
                applicable: !(prop.needs_set && set.is_none()),
                tested: 0,
                failures: 0,
                passed: true,
                counterexample: None,
            };
            for (i, row) in outcomes.iter().enumerate() {
                match &row[j] {
                    Outcome::Skipped => {}
                    Outcome::Passed => r.tested += 1,
                    Outcome::Failed(detail) => {
                        r.tested += 1;
                        r.failures += 1;
                        r.passed = false;
                        if r.counterexample.is_none() {
                            let x = point(i);
                            r.counterexample = Some(Counterexample {
                                origin: if i < config.count {
                                    format!("sample {i}")
                                } else {
                                    format!("corner {}", i - config.count)
                                },
                                point: x.to_json(k),
                                display: x.display(k),
                                detail: detail.clone(),
                            });
                        }
                    }
                }
            }
            r
        })
        .collect();
    Ok(PropertyReport {
        set: set.map(|s| k.set_name(s)),
        params: params.to_json(),
        seed: config.seed,
        samples: config.count,
        corners: corners.len(),
        grid_denominator: env.grid,
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_run_on_bf_passes() {
        let sys = fixtures::k1_loaded().system;
        let s = sys.complex.parse_set("BF").unwrap();
        let cfg = SampleConfig {
            count: 60,
            ..SampleConfig::default()
        };
        let r = run_property_suite(&sys, Some(&s), &Params::default_for(1), &cfg).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(r.properties.iter().all(|p| p.tested > 0), "{}", r.to_text());
    }

    #[test]
    fn rejects_bad_input() {
        let sys = fixtures::k1_loaded().system;
        let k = &sys.complex;
        let mut p = Params::default_for(1);
        p.gamma = Q::new(1, 2);
        let cfg = SampleConfig::default();
        assert!(matches!(
            run_property_suite(&sys, None, &p, &cfg),
            Err(Error::InvalidParams(_))
        ));
        let s = k.parse_set("DE,D").unwrap();
        assert!(matches!(
            run_property_suite(&sys, Some(&s), &Params::default_for(1), &cfg),
            Err(Error::NotIsolated(_))
        ));
    }

    #[test]
    fn corner_only_run() {
        let sys = fixtures::k1_loaded().system;
        let cfg = SampleConfig {
            count: 0,
            ..SampleConfig::default()
        };
        let r = run_property_suite(&sys, None, &Params::default_for(1), &cfg).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(r.corners > 0);
    }
}
