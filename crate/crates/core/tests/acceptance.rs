//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact. Runtime limits: 1 s for criteria 1 and 2,
//! 30 s for criterion 5.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmk_core::flow::flow_map;
use cmk_core::geometry::{lift, project, Params};
use cmk_core::homology::{conley_index, poincare_polynomial, ChainComplexPair};
use cmk_core::morse::{minimal_morse_sets, ConleyMorseGraph};
use cmk_core::verify::{run_property_suite, SampleConfig};
use cmk_core::{fixtures, BiSequence, Coefficients, SimplexId, SimplexSet, System};

const FAST: Duration = Duration::from_secs(1);
const SUITE: Duration = Duration::from_secs(30);

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration) -> Result<String, String> {
    let s = format!("{:.3} s, limit {} s", t.as_secs_f64(), limit.as_secs());
    ensure(t < limit, || format!("too slow: {s}"))?;
    Ok(s)
}

fn names(sys: &System, a: &SimplexSet) -> BTreeSet<String> {
    a.iter().map(|&s| sys.complex.name(s)).collect()
}

fn set(sys: &System, items: &[&str]) -> SimplexSet {
    items
        .iter()
        .map(|s| sys.complex.parse_simplex(s).unwrap())
        .collect()
}

/// Reachability by repeated squaring of the one-step relation.
fn reach_oracle(sys: &System) -> Vec<Vec<bool>> {
    let n = sys.complex.len();
    let mut r = vec![vec![false; n]; n];
    for (s, row) in r.iter_mut().enumerate() {
        for t in sys.flow(s) {
            row[t] = true;
        }
    }
    loop {
        let mut next = r.clone();
        for i in 0..n {
            for j in 0..n {
                if r[i][j] {
                    for k in 0..n {
                        next[i][k] |= r[j][k];
                    }
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let sys = fixtures::k1_loaded().system;
    let g = ConleyMorseGraph::build(&sys, None, Coefficients::Gf2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let r = reach_oracle(&sys);
    let n = sys.complex.len();
    let mut oracle_sets: Vec<SimplexSet> = Vec::new();
    for s in 0..n {
        if r[s][s] && !oracle_sets.iter().any(|m| m.contains(&s)) {
            oracle_sets.push((0..n).filter(|&t| r[s][t] && r[t][s]).collect());
        }
    }
    let oracle_conn: BTreeSet<(usize, usize)> = (0..oracle_sets.len())
        .flat_map(|a| (0..oracle_sets.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            a != b
                && oracle_sets[a]
                    .iter()
                    .any(|&x| oracle_sets[b].iter().any(|&y| r[x][y]))
        })
        .collect();
    let oracle_hasse: BTreeSet<(String, String)> = oracle_conn
        .iter()
        .filter(|&&(a, c)| {
            !(0..oracle_sets.len())
                .any(|b| oracle_conn.contains(&(a, b)) && oracle_conn.contains(&(b, c)))
        })
        .map(|&(a, b)| {
            (
                sys.complex.set_name(&oracle_sets[a]),
                sys.complex.set_name(&oracle_sets[b]),
            )
        })
        .collect();

    let expected_sets: BTreeMap<String, &str> = [
        (vec!["BF"], "t"),
        (vec!["F"], "1"),
        (vec!["DE"], "t"),
        (vec!["A", "AD", "C", "AC", "CD", "D"], "1+t"),
    ]
    .into_iter()
    .map(|(s, p)| (sys.complex.set_name(&set(&sys, &s)), p))
    .collect();
    let got: BTreeMap<String, &str> = g
        .nodes
        .iter()
        .map(|n| (g.node_name(n.id), n.poincare.as_str()))
        .collect();
    ensure(got == expected_sets, || format!("Morse sets {got:?}"))?;
    let oracle_names: BTreeSet<String> = oracle_sets
        .iter()
        .map(|m| sys.complex.set_name(m))
        .collect();
    ensure(oracle_names == got.keys().cloned().collect(), || {
        format!("oracle sets {oracle_names:?}")
    })?;

    let cycle = sys
        .complex
        .set_name(&set(&sys, &["A", "AD", "C", "AC", "CD", "D"]));
    let expected_edges: BTreeSet<(String, String)> =
        [("{BF}", "{F}"), ("{DE}", "{F}"), ("{DE}", cycle.as_str())]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    ensure(oracle_hasse == expected_edges, || {
        format!("oracle edges {oracle_hasse:?}")
    })?;
    let edges: BTreeSet<(String, String)> = g
        .edges
        .iter()
        .map(|&(a, b)| (g.node_name(a), g.node_name(b)))
        .collect();
    ensure(edges == expected_edges, || format!("Hasse edges {edges:?}"))?;
    Ok(format!(
        "4 Morse sets, polynomials t,1,t,1+t, 3 Hasse edges ({})",
        within(elapsed, FAST)?
    ))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let loaded = fixtures::hexagon();
    let sys = &loaded.system;
    let s = loaded.resolve_set("S").map_err(|e| e.to_string())?;
    let betti = conley_index(sys, &s, Coefficients::Rational).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(s.len() == 17, || format!("S has {} simplices", s.len()))?;
    let exit = names(sys, &sys.complex.exit_set(&s));
    let want: BTreeSet<String> = ["A", "AD", "AE", "D", "DH", "E", "H"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(exit == want, || format!("exit set {exit:?}"))?;
    ensure(betti == [0, 1, 0], || format!("Betti {betti:?}"))?;
    let p = poincare_polynomial(&betti);
    ensure(p == "t", || format!("P(t)={p}"))?;
    Ok(format!(
        "Betti (0,1,0), P(t)=t, 7-simplex exit set ({})",
        within(elapsed, FAST)?
    ))
}

fn criterion_3() -> Check {
    let sys = fixtures::k1_loaded().system;
    let listing: [(&str, &[&str]); 13] = [
        ("A", &["AD"]),
        ("AD", &["D"]),
        ("B", &["BE"]),
        ("BE", &["E"]),
        ("BF", &["B", "BF", "F"]),
        ("C", &["AC"]),
        ("AC", &["A"]),
        ("CD", &["C"]),
        ("D", &["CD"]),
        ("DE", &["D", "DE", "E"]),
        ("E", &["EF"]),
        ("EF", &["F"]),
        ("F", &["F"]),
    ];
    let mut seen = BTreeSet::new();
    for (s, image) in listing {
        let id = sys.complex.parse_simplex(s).map_err(|e| e.to_string())?;
        seen.insert(id);
        let got = names(&sys, &flow_map(&sys.complex, &sys.field, id));
        let want: BTreeSet<String> = image.iter().map(|x| x.to_string()).collect();
        ensure(got == want, || {
            format!("Pi({s}) = {got:?}, listed {want:?}")
        })?;
    }
    ensure(seen.len() == sys.complex.len(), || {
        "listing does not cover K1".into()
    })?;
    Ok("all 13 entries agree".into())
}

/// Whether `s` starts a walk of `steps` arcs inside `a`, forward or backward.
fn walks(sys: &System, a: &[bool], steps: usize, backward: bool) -> Vec<bool> {
    let n = a.len();
    let mut ok = a.to_vec();
    for _ in 0..steps {
        ok = (0..n)
            .map(|s| {
                a[s] && if backward {
                    sys.graph.predecessors(s).iter().any(|&p| ok[p])
                } else {
                    sys.graph.successors(s).iter().any(|&q| ok[q])
                }
            })
            .collect();
    }
    ok
}

fn criterion_4() -> Check {
    let sys = fixtures::k1_loaded().system;
    let n = sys.complex.len();
    let mut checked = 0;
    for bits in 0u32..(1 << n) {
        if bits.count_ones() > 8 {
            continue;
        }
        let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        let set: SimplexSet = (0..n).filter(|&i| a[i]).collect();
        let steps = set.len() + 1;
        let (f, b) = (walks(&sys, &a, steps, false), walks(&sys, &a, steps, true));
        let oracle: SimplexSet = (0..n).filter(|&i| f[i] && b[i]).collect();
        let got = sys.invariant_part(&set);
        ensure(got == oracle, || {
            format!(
                "Inv({}) = {}, oracle {}",
                sys.complex.set_name(&set),
                sys.complex.set_name(&got),
                sys.complex.set_name(&oracle)
            )
        })?;
        checked += 1;
    }
    ensure(checked == 7099, || format!("checked {checked} subsets"))?;
    Ok(format!("{checked} subsets agree with the walk oracle"))
}

fn criterion_5() -> Check {
    let loaded = fixtures::k1_loaded();
    let sys = &loaded.system;
    let params = Params::default_for(sys.complex.dim());
    let config = SampleConfig {
        count: 1000,
        seed: 1,
        ..SampleConfig::default()
    };
    let start = Instant::now();
    let mut exercised: BTreeMap<String, usize> = BTreeMap::new();
    let mut vacuous = Vec::new();
    for arg in ["BF", "DE", "cycle"] {
        let s = loaded.resolve_set(arg).map_err(|e| e.to_string())?;
        let report =
            run_property_suite(sys, Some(&s), &params, &config).map_err(|e| e.to_string())?;
        if let Some(p) = report.properties.iter().find(|p| !p.passed) {
            return Err(format!(
                "set {arg}: property {} failed\n{}",
                p.name,
                report.to_text()
            ));
        }
        for p in &report.properties {
            *exercised.entry(p.name.clone()).or_default() += p.tested;
            if p.tested == 0 {
                vacuous.push(format!("{}@{arg}", p.name));
            }
        }
    }
    let elapsed = start.elapsed();
    if let Some((name, _)) = exercised.iter().find(|(_, &n)| n == 0) {
        return Err(format!("property {name} was never exercised"));
    }
    Ok(format!(
        "{} properties pass on BF, DE and the cycle, each exercised; vacuous on {} ({})",
        exercised.len(),
        if vacuous.is_empty() {
            "none".to_string()
        } else {
            vacuous.join(" ")
        },
        within(elapsed, SUITE)?
    ))
}

/// Simple cycles of the flow digraph, each listed once from its least node.
fn simple_cycles(sys: &System) -> Vec<Vec<SimplexId>> {
    fn extend(sys: &System, path: &mut Vec<SimplexId>, out: &mut Vec<Vec<SimplexId>>) {
        let start = path[0];
        let last = *path.last().unwrap();
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

fn criterion_6() -> Check {
    let sys = fixtures::k1_loaded().system;
    let params = Params::default_for(1);
    let cycles = simple_cycles(&sys);
    ensure(cycles.len() == 4, || {
        format!("found {} simple cycles", cycles.len())
    })?;
    for c in &cycles {
        let rho = BiSequence::new(c.clone(), Vec::new(), c.clone());
        let shown = rho.display(&sys.complex);
        let lifted = lift(&sys, &rho, &params, 64).map_err(|e| format!("lift {shown}: {e}"))?;
        let back =
            project(&sys, &lifted.points, &params).map_err(|e| format!("project {shown}: {e}"))?;
        let want = sys.arrowhead_extension(&rho).normalized();
        ensure(back.normalized() == want, || {
            format!("{shown} projects to {}", back.display(&sys.complex))
        })?;
    }
    Ok(format!(
        "{} simple cycles lift and project back",
        cycles.len()
    ))
}

fn criterion_7() -> Check {
    let mut pairs = 0;
    for (name, loaded) in fixtures::all() {
        let sys = &loaded.system;
        let k = &sys.complex;
        let mut candidates = vec![(k.all(), SimplexSet::new())];
        let mut sets = minimal_morse_sets(sys).map_err(|e| e.to_string())?;
        sets.extend(loaded.sets.values().cloned());
        for s in &sets {
            candidates.push((k.closure(s), k.exit_set(s)));
        }
        for (a, b) in candidates {
            let c = ChainComplexPair::new(k, &a, &b).map_err(|e| format!("{name}: {e}"))?;
            ensure(c.boundary_squared_is_zero(), || {
                format!("{name}: boundary squared is not zero")
            })?;
            let gf2 = c.betti(Coefficients::Gf2);
            let q = c.betti(Coefficients::Rational);
            ensure(gf2 == q, || {
                format!("{name}: Betti over GF(2) {gf2:?}, over Q {q:?}")
            })?;
            let alt: i64 = q
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            ensure(alt == c.euler_characteristic(), || {
                format!(
                    "{name}: alternating Betti sum {alt}, cell count {}",
                    c.euler_characteristic()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs over all fixtures"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("Conley-Morse graph of K1", criterion_1),
        ("hexagon Conley index", criterion_2),
        ("flow map listing", criterion_3),
        ("invariant part vs walk oracle", criterion_4),
        ("geometry property suite", criterion_5),
        ("orbit round trip", criterion_6),
        ("homology self-checks", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
