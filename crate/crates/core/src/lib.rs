//! Exact computation and comparison of K-theoretic invariants of extensions.

pub mod dimgroup;
pub mod error;
pub mod ext;
pub mod graph;
pub mod group;
pub mod matrix;
pub mod sixterm;
pub mod snf;
pub mod verdict;

pub use dimgroup::{dg_equal, dg_positive, DGElement, Sign, StationaryDimensionGroup};
pub use error::{Error, Result};
pub use ext::{
    aut_orbit_decide, ext1, ext_pullback, ext_pushforward, extension_class, Decision, ExtElement,
    ExtGroup,
};
pub use graph::{
    classify_simple, compare_graphs, graph_ktheory, hereditary_saturated_sets, one_ideal_invariant,
    triangular_hexagon, DirectedGraph, GraphKTheory, IdealDatum, SimpleClass,
};
pub use group::{group_from_matrix, is_exact_pair, FgAbelianGroup, GroupHom, Presentation};
pub use matrix::IntMatrix;
pub use sixterm::{
    aut_plus_generators, decide_iso_one_ideal, decide_iso_one_ideal_bounded, validate_sixterm,
    verify_witness, ConeDescriptor, Cones, SixTermInvariant, SixTermMorphism, Violation,
};
pub use snf::{snf, SmithDecomposition};
pub use verdict::IsoVerdict;
