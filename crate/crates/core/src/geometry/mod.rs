//! Exact-rational geometric realization of a combinatorial vector field.

pub mod cells;
pub mod grid;
pub mod maps;
pub mod neighborhood;
pub mod orbit;
pub mod params;
pub mod phi;
pub mod point;
pub mod region;

pub type Q = num_rational::Ratio<i64>;

pub use cells::{characteristic, in_cell, signature, Characteristic};
pub use maps::{region_abc, region_d, region_f, region_f_alt, region_ftilde, region_g, FCase};
pub use neighborhood::{in_bd_n_delta, in_int_n_delta, in_n, in_p, in_q};
pub use orbit::{lift, project, Lift, OrbitFile};
pub use params::Params;
pub use phi::{phi_map, phi_scalar, psi};
pub use point::{fmt_q, parse_q, Point, PointJson};
pub use region::{Block, Bound, Hull, Region};
