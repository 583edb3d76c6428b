//! Bundled example systems.

use crate::complex::SimplicialComplex;
use crate::field::VectorField;
use crate::io::{parse_system, Loaded};

pub const K1_JSON: &str = include_str!("../fixtures/k1.json");
pub const HEXAGON_JSON: &str = include_str!("../fixtures/hexagon.json");
pub const HEXAGON_CLS_JSON: &str = include_str!("../fixtures/hexagon_cls.json");
pub const POINT_JSON: &str = include_str!("../fixtures/point.json");

fn load(json: &str) -> Loaded {
    parse_system(json).expect("bundled fixture is valid")
}

/// The six-vertex graph with one periodic cycle and three critical cells.
pub fn k1_loaded() -> Loaded {
    load(K1_JSON)
}

pub fn k1() -> (SimplicialComplex, VectorField) {
    let l = k1_loaded();
    (l.system.complex, l.system.field)
}

/// Triangulated hexagon with eight minimal Morse sets; named set `S`.
pub fn hexagon() -> Loaded {
    load(HEXAGON_JSON)
}

/// The closure of the hexagon's set `S` as a standalone complex.
pub fn hexagon_cls() -> Loaded {
    load(HEXAGON_CLS_JSON)
}

/// A single critical vertex.
pub fn point() -> Loaded {
    load(POINT_JSON)
}

pub fn all() -> Vec<(&'static str, Loaded)> {
    vec![
        ("k1", k1_loaded()),
        ("hexagon", hexagon()),
        ("hexagon_cls", hexagon_cls()),
        ("point", point()),
    ]
}
