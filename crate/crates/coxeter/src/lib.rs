//! Analysis of edge-labeled Coxeter graphs.
//!
//! The crate classifies the connected components of a graph against the
//! spherical and affine diagram catalogs and decides, exactly, the group
//! properties that follow: finiteness with exact orders, virtual
//! abelianness and translation rank, the abelianization exponent, just
//! infiniteness, virtual indicability, and direct decomposability. On top of
//! the classification it computes profinite fingerprints with pairwise
//! comparison verdicts, constructs mechanically verified quotient maps, and
//! cross-checks every closed-form answer against independent brute-force
//! oracles (coset enumeration and Smith normal form).

#![allow(clippy::manual_is_multiple_of)]

pub mod classify;
pub mod cli;
pub mod gram;
pub mod graph;
pub mod invariants;
mod iso;
pub mod oracles;
pub mod profinite;
pub mod quotients;

pub use classify::{
    catalog, classify_component, classify_graph, AffineType, CatalogError, ClassifyError,
    ComponentClass, SphericalType,
};
pub use gram::{gram_class, gram_matrix, GramClass};
pub use graph::{
    ComponentDecomposition, CoxeterGraph, EdgeLabel, GraphError, PairLabel, ParseError, VertexId,
};
pub use invariants::{
    abelianization_rank, analyze, direct_decomposition, finite_order, is_finite, is_just_infinite,
    is_virtually_abelian, is_virtually_indicable, is_virtually_z, semidirect_data,
    DirectDecomposition, DirectFactor, GroupOrder, GroupReport, SemidirectData,
};
pub use iso::graphs_isomorphic;
pub use oracles::{snf_abelianization, todd_coxeter, AbelianInvariants, CosetTable, Enumeration};
pub use profinite::{
    compare_profinite, fingerprint, rigidity_scope, CompareVerdict, DistinguishingInvariant,
    FingerprintStructure, ProfiniteFingerprint, RigidityScope,
};
pub use quotients::{
    find_infinite_proper_quotient, parabolic_retraction, prime_collapse, resolve_infinite_edge,
    triangle_projection, verify_quotient_map, GeneratorImage, GeneratorMap, QuotientConstruction,
    QuotientError, QuotientWitness,
};
