//! The property suite on the triangulated hexagon, where heads of vectors can
//! sit strictly below the maximal eps-characteristic simplex.

use std::collections::VecDeque;

use cmk_core::geometry::maps::{f_case, ftilde_sigma};
use cmk_core::geometry::{characteristic, lift, project, FCase, Params, Point, Q};
use cmk_core::verify::{run_property_suite, SampleConfig};
use cmk_core::{fixtures, BiSequence, SimplexId, System};

/// `|sigma| ⊆ F~_sigma(x)` fails for a head `sigma` below `sigma^eps_max(x)`:
/// there `F~_sigma(x) = A_sigma` omits the part of `|sigma|` where the tail
/// coordinate drops below gamma.
#[test]
fn head_below_top_cell_escapes_ftilde() {
    let hex = fixtures::hexagon();
    let sys = &hex.system;
    let k = &sys.complex;
    let p = Params::default_for(2);
    let x = Point::from_named(
        k,
        &[
            ("G", Q::new(31, 64)),
            ("I", Q::new(1, 4)),
            ("J", Q::new(17, 64)),
        ],
    )
    .unwrap();
    let ch = characteristic(k, &x, p.eps).unwrap();
    let gj = k.parse_simplex("GJ").unwrap();
    assert_eq!(k.name(ch.max), "GIJ");
    assert!(ch.simplices.contains(&gj));
    assert!(sys.field.is_head(gj));
    assert_ne!(sys.field.plus(ch.max), gj);
    assert_eq!(f_case(sys, gj, &ch), FCase::A);

    let ft = ftilde_sigma(sys, gj, &ch, p.gamma);
    let low = Point::from_named(k, &[("G", Q::new(5, 32)), ("J", Q::new(27, 32))]).unwrap();
    let high = Point::from_named(k, &[("G", Q::new(7, 32)), ("J", Q::new(25, 32))]).unwrap();
    assert!(!ft.contains(&low));
    assert!(ft.contains(&high));
    assert!(ft.contains(&Point::vertex(k, k.vertex_id("G").unwrap())));
}

#[test]
fn suite_on_hexagon_set() {
    let hex = fixtures::hexagon();
    let s = hex.resolve_set("S").unwrap();
    let p = Params::default_for(2);
    let report = run_property_suite(&hex.system, Some(&s), &p, &SampleConfig::default()).unwrap();
    for r in &report.properties {
        if r.name == "sigma_in_ftilde_sigma" {
            assert!(!r.passed, "the counterexample family should be hit");
        } else {
            assert!(r.passed, "{}", report.to_text());
            assert!(r.tested > 0, "{}", r.name);
        }
    }
}

#[test]
fn suite_on_closure_fixture() {
    let sub = fixtures::hexagon_cls();
    let p = Params::default_for(2);
    let config = SampleConfig {
        count: 400,
        seed: 11,
        ..SampleConfig::default()
    };
    let report = run_property_suite(&sub.system, None, &p, &config).unwrap();
    for r in report
        .properties
        .iter()
        .filter(|r| r.name != "sigma_in_ftilde_sigma")
    {
        assert!(r.passed, "{}", report.to_text());
    }
}

fn simple_cycles(sys: &System) -> Vec<Vec<SimplexId>> {
    fn extend(sys: &System, path: &mut Vec<SimplexId>, out: &mut Vec<Vec<SimplexId>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for &next in sys.graph.successors(last) {
            if next == start {
                out.push(path.clone());
            } else if next > start && !path.contains(&next) {
                path.push(next);
                extend(sys, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in sys.complex.ids() {
        extend(sys, &mut vec![s], &mut out);
    }
    out
}

/// Shortest walk from `from` to a member of `to`, excluding the endpoint.
fn path_into(
    sys: &System,
    from: SimplexId,
    to: &[SimplexId],
) -> Option<(Vec<SimplexId>, SimplexId)> {
    let mut prev = vec![None; sys.complex.len()];
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; sys.complex.len()];
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        for &w in sys.graph.successors(u) {
            if to.contains(&w) {
                let mut path = vec![u];
                while let Some(p) = prev[*path.last().unwrap()] {
                    path.push(p);
                }
                path.reverse();
                return Some((path, w));
            }
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    None
}

#[test]
fn orbits_round_trip_in_dimension_two() {
    let hex = fixtures::hexagon();
    let sys = &hex.system;
    let p = Params::default_for(2);
    let cycles = simple_cycles(sys);
    assert!(!cycles.is_empty());
    let mut checked = 0;
    for c in &cycles {
        let mut sequences = vec![BiSequence::new(c.clone(), Vec::new(), c.clone())];
        for s in sys.complex.ids().filter(|s| !c.contains(s)) {
            if let Some((path, entry)) = path_into(sys, s, c) {
                let at = c.iter().position(|&x| x == entry).unwrap();
                let mut tail = c.clone();
                tail.rotate_left(at);
                sequences.push(BiSequence::new(Vec::new(), path, tail));
            }
        }
        for rho in sequences {
            let shown = rho.display(&sys.complex);
            let lifted = lift(sys, &rho, &p, 64).unwrap_or_else(|e| panic!("lift {shown}: {e}"));
            let back =
                project(sys, &lifted.points, &p).unwrap_or_else(|e| panic!("project {shown}: {e}"));
            assert!(sys.is_solution(&back), "{shown}");
            assert_eq!(
                sys.reduce_solution(&back),
                lifted.reduced,
                "{shown} came back as {}",
                back.display(&sys.complex)
            );
            checked += 1;
        }
    }
    assert!(checked > cycles.len());
}
