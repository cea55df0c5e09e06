//! Certified interval bounds for the topological complexity of simplicial
//! maps, and for the Lusternik-Schnirelmann category and topological
//! complexity of finite simplicial complexes, computed from exact cohomology.

pub mod assertions;
pub mod bounds;
pub mod catalog;
pub mod cohomology;
pub mod linalg;
pub mod oracle;
pub mod simplicial;

pub use assertions::{Assertion, AssertionError, MapAssertions, SpaceAssertions};
pub use bounds::{
    analyze_map, analyze_space, cat_bounds, cup_length, nil_index, nil_ker_one_f, product_map_bounds, sec_bounds,
    tc_map_bounds, tc_space_bounds, zcl, Bound, BoundError, BoundInterval, Constraint, Invariant, KnownValue,
    MapAnalysis, MapContext, NilIndex, Quantity, RuleApplication, RuleId, SpaceAnalysis,
};
pub use catalog::{builtin_map, builtin_space, CatalogError, MapEntry, SpaceEntry};
pub use cohomology::{
    coboundary_matrices, cohomology_basis, cohomology_dims, cohomology_ring, cup_ring, induced_ring_hom,
    integral_connectivity, one_cross_f_hom, tensor_ring, Connectivity, GradedRing, GradedVectorSpace, HomologyReport,
    RingHom,
};
pub use linalg::{FieldSpec, LinalgError};
pub use oracle::{brute_nil_check, kunneth_check, ring_axioms_check, OracleError};
pub use simplicial::{product_complex, ComplexError, ComplexFile, MapFile, SimplicialComplex, SimplicialMap};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Assertion(#[from] AssertionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
