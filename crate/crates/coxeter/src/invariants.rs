//! Group-theoretic predicates decided from the diagram classification, with
//! exact arithmetic: finiteness and exact orders, virtual abelianness and
//! translation rank, abelianization, just infiniteness, virtual
//! indicability, and direct decomposability of the component groups.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::classify::{
    classify_component, classify_graph, AffineType, ClassifyError, ComponentClass, SphericalType,
};
use crate::graph::CoxeterGraph;

/// Exact group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("component class is not spherical: {0}")]
    NotSpherical(ComponentClass),
    #[error("group is not virtually abelian")]
    NotVirtuallyAbelian,
}

fn factorial(n: u32) -> BigUint {
    let mut out = BigUint::from(1u32);
    for k in 2..=n {
        out *= k;
    }
    out
}

fn pow2(e: u32) -> BigUint {
    BigUint::from(1u32) << e
}

/// Exact order of the finite Coxeter group of a spherical catalog type.
pub fn finite_order(class: &ComponentClass) -> Result<BigUint, InvariantError> {
    let t = match class {
        ComponentClass::Spherical(t) => t,
        other => return Err(InvariantError::NotSpherical(*other)),
    };
    Ok(match *t {
        SphericalType::A(n) => factorial(n + 1),
        SphericalType::B(n) => pow2(n) * factorial(n),
        SphericalType::D(n) => pow2(n - 1) * factorial(n),
        SphericalType::E6 => BigUint::from(51_840u32),
        SphericalType::E7 => BigUint::from(2_903_040u32),
        SphericalType::E8 => BigUint::from(696_729_600u32),
        SphericalType::F4 => BigUint::from(1_152u32),
        SphericalType::G2 => BigUint::from(12u32),
        SphericalType::H3 => BigUint::from(120u32),
        SphericalType::H4 => BigUint::from(14_400u32),
        SphericalType::I2(m) => BigUint::from(2 * m),
    })
}

/// The spherical type of the point group in the semidirect decomposition of
/// an irreducible affine Coxeter group.
pub fn affine_finite_part(t: &AffineType) -> SphericalType {
    match *t {
        AffineType::A1 => SphericalType::A(1),
        AffineType::A(n) => SphericalType::A(n),
        AffineType::B(n) => SphericalType::B(n),
        AffineType::C(n) => SphericalType::B(n),
        AffineType::D(n) => SphericalType::D(n),
        AffineType::E6 => SphericalType::E6,
        AffineType::E7 => SphericalType::E7,
        AffineType::E8 => SphericalType::E8,
        AffineType::F4 => SphericalType::F4,
        AffineType::G2 => SphericalType::G2,
    }
}

/// Exact order: the componentwise product when every component is spherical,
/// `Infinite` otherwise. The empty graph has order 1.
pub fn is_finite(g: &CoxeterGraph) -> GroupOrder {
    let mut order = BigUint::from(1u32);
    for class in classify_graph(g) {
        match finite_order(&class) {
            Ok(n) => order *= n,
            Err(_) => return GroupOrder::Infinite,
        }
    }
    GroupOrder::Finite(order)
}

/// Whether every component is spherical or affine, together with the
/// translation rank (sum of `|V| - 1` over affine components; 0 when finite
/// or when the predicate is false).
pub fn is_virtually_abelian(g: &CoxeterGraph) -> (bool, usize) {
    let mut rank = 0usize;
    for class in classify_graph(g) {
        match class {
            ComponentClass::Spherical(_) => {}
            ComponentClass::Affine(t) => rank += t.rank(),
            ComponentClass::Other => return (false, 0),
        }
    }
    (true, rank)
}

/// `k` with `W^ab = (Z/2Z)^k`: the number of connected components of the odd
/// subgraph, isolated vertices included.
pub fn abelianization_rank(g: &CoxeterGraph) -> usize {
    g.odd_subgraph().components().len()
}

/// True exactly when the graph is connected and of affine catalog type.
pub fn is_just_infinite(g: &CoxeterGraph) -> bool {
    let classes = classify_graph(g);
    classes.len() == 1 && classes[0].is_affine()
}

/// True exactly when the group is infinite.
pub fn is_virtually_indicable(g: &CoxeterGraph) -> bool {
    matches!(is_finite(g), GroupOrder::Infinite)
}

/// True when the group is virtually abelian of translation rank exactly 1,
/// equivalently when exactly one component is affine and it is the
/// two-vertex infinity edge, all others spherical.
pub fn is_virtually_z(g: &CoxeterGraph) -> bool {
    let (va, rank) = is_virtually_abelian(g);
    va && rank == 1
}

/// Semidirect decomposition data of a virtually abelian Coxeter group:
/// `Z^rank` extended by a finite Coxeter group assembled componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectData {
    pub rank: usize,
    pub finite_part_order: BigUint,
    pub finite_part_types: Vec<ComponentClass>,
}

/// Assembles rank and finite part for a virtually abelian graph: spherical
/// components contribute themselves, affine components contribute their
/// point group.
pub fn semidirect_data(g: &CoxeterGraph) -> Result<SemidirectData, InvariantError> {
    let mut rank = 0usize;
    let mut order = BigUint::from(1u32);
    let mut types = Vec::new();
    for class in classify_graph(g) {
        let part = match class {
            ComponentClass::Spherical(t) => ComponentClass::Spherical(t),
            ComponentClass::Affine(t) => {
                rank += t.rank();
                ComponentClass::Spherical(affine_finite_part(&t))
            }
            ComponentClass::Other => return Err(InvariantError::NotVirtuallyAbelian),
        };
        order *= finite_order(&part).expect("spherical by construction");
        types.push(part);
    }
    Ok(SemidirectData {
        rank,
        finite_part_order: order,
        finite_part_types: types,
    })
}

/// One factor in a direct-product decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectFactor {
    /// The central Z/2Z generated by the longest element.
    CentralZ2,
    /// A Coxeter group of the given catalog type.
    Coxeter(ComponentClass),
}

impl fmt::Display for DirectFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectFactor::CentralZ2 => f.write_str("Z/2Z"),
            DirectFactor::Coxeter(c) => write!(f, "{c}"),
        }
    }
}

/// Direct decomposability of the group of one connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectDecomposition {
    Indecomposable,
    /// Splits as a direct product of Coxeter groups.
    CoxeterFactors(Vec<DirectFactor>),
    /// Splits as a direct product, but not into Coxeter groups.
    DecomposableNonCoxeter,
}

/// Decides direct decomposability of an irreducible Coxeter group: only
/// B(2k+1) and I2(4k+2) (k >= 1, with I2(6) = G2) split into Coxeter
/// factors, E7 and H3 split but not into Coxeter groups, and every other
/// connected graph gives a directly indecomposable group. D3 and I2(3) in
/// the factor lists are normalized to A3 and A2.
pub fn direct_decomposition(g: &CoxeterGraph) -> Result<DirectDecomposition, ClassifyError> {
    use DirectFactor::{CentralZ2, Coxeter};

    let class = classify_component(g)?;
    Ok(match class {
        ComponentClass::Spherical(SphericalType::B(n)) if n >= 3 && n % 2 == 1 => {
            let d_factor = if n == 3 {
                SphericalType::A(3)
            } else {
                SphericalType::D(n)
            };
            DirectDecomposition::CoxeterFactors(vec![
                CentralZ2,
                Coxeter(ComponentClass::Spherical(d_factor)),
            ])
        }
        ComponentClass::Spherical(SphericalType::G2) => DirectDecomposition::CoxeterFactors(vec![
            CentralZ2,
            Coxeter(ComponentClass::Spherical(SphericalType::A(2))),
        ]),
        ComponentClass::Spherical(SphericalType::I2(m)) if m % 4 == 2 => {
            // m >= 10 here: the classifier reports the 6-labeled edge as G2.
            DirectDecomposition::CoxeterFactors(vec![
                CentralZ2,
                Coxeter(ComponentClass::Spherical(SphericalType::I2(m / 2))),
            ])
        }
        ComponentClass::Spherical(SphericalType::E7)
        | ComponentClass::Spherical(SphericalType::H3) => {
            DirectDecomposition::DecomposableNonCoxeter
        }
        _ => DirectDecomposition::Indecomposable,
    })
}

/// Everything this crate decides about one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupReport {
    pub classification: Vec<ComponentClass>,
    pub order: GroupOrder,
    pub virtually_abelian: bool,
    pub rank: usize,
    pub abelianization_rank: usize,
    pub just_infinite: bool,
    pub virtually_indicable: bool,
    pub virtually_z: bool,
    pub direct_decomposition: Vec<DirectDecomposition>,
}

/// Runs every predicate and aggregates the report.
pub fn analyze(g: &CoxeterGraph) -> GroupReport {
    let classification = classify_graph(g);
    let (virtually_abelian, rank) = is_virtually_abelian(g);
    let direct_decomposition = g
        .components()
        .parts
        .iter()
        .map(|part| direct_decomposition(part).expect("components are connected and nonempty"))
        .collect();
    GroupReport {
        classification,
        order: is_finite(g),
        virtually_abelian,
        rank,
        abelianization_rank: abelianization_rank(g),
        just_infinite: is_just_infinite(g),
        virtually_indicable: is_virtually_indicable(g),
        virtually_z: is_virtually_z(g),
        direct_decomposition,
    }
}

impl DirectDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DirectDecomposition::Indecomposable => serde_json::json!({
                "kind": "indecomposable",
            }),
            DirectDecomposition::CoxeterFactors(factors) => serde_json::json!({
                "kind": "coxeter_factors",
                "factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            }),
            DirectDecomposition::DecomposableNonCoxeter => serde_json::json!({
                "kind": "decomposable_non_coxeter",
            }),
        }
    }
}

impl GroupReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "classification": self.classification.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "order": self.order.to_string(),
            "virtually_abelian": self.virtually_abelian,
            "rank": self.rank,
            "abelianization_rank": self.abelianization_rank,
            "just_infinite": self.just_infinite,
            "virtually_indicable": self.virtually_indicable,
            "virtually_Z": self.virtually_z,
            "direct_decomposition": self.direct_decomposition.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })
    }
}
