//! Fixtures shared by the criterion benches.

use tcbound_core::catalog::{builtin_map, builtin_space};
use tcbound_core::linalg::FieldSpec;
use tcbound_core::{MapEntry, SimplicialComplex, SpaceEntry};

/// Spaces benched per operation, smallest first.
pub const SPACES: &[&str] = &["circle", "rp2", "torus", "klein_bottle", "sphere3", "genus2_surface"];

pub const MAPS: &[&str] = &[
    "circle_double_cover",
    "s2_to_rp2",
    "torus_projection",
    "wedge_tree_cover",
];

pub fn default_fields() -> Vec<FieldSpec> {
    vec![FieldSpec::Rationals, FieldSpec::Prime(2)]
}

pub fn space(name: &str) -> SpaceEntry {
    builtin_space(name).expect("bench fixture space")
}

pub fn complex(name: &str) -> SimplicialComplex {
    space(name).complex
}

pub fn map(name: &str) -> MapEntry {
    builtin_map(name).expect("bench fixture map")
}
