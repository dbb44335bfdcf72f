//! Recognition of connected Coxeter graphs against the spherical and affine
//! catalogs, and construction of the catalog graphs themselves.
//!
//! The recognizer is deliberately brute force: for an n-vertex connected
//! graph it builds every catalog graph on n vertices (a handful) and tests
//! labeled isomorphism. Catalog members of equal vertex count are pairwise
//! non-isomorphic, so the first match is the unique answer.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{CoxeterGraph, EdgeLabel};
use crate::iso::graphs_isomorphic;

/// Spherical (finite-group) catalog types. `I2(6)` is identified with `G2`
/// and always reported as `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SphericalType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

/// Affine catalog types; `A1` is the two-vertex infinity edge, and the rank
/// parameter counts one less than the vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineType {
    A1,
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Classification of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentClass {
    Spherical(SphericalType),
    Affine(AffineType),
    Other,
}

impl SphericalType {
    /// Parameter ranges exactly as in the spherical catalog.
    pub fn is_valid(&self) -> bool {
        match *self {
            SphericalType::A(n) => n >= 1,
            SphericalType::B(n) => n >= 2,
            SphericalType::D(n) => n >= 4,
            SphericalType::I2(m) => m == 5 || m >= 7,
            _ => true,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            SphericalType::A(n) | SphericalType::B(n) | SphericalType::D(n) => n as usize,
            SphericalType::E6 => 6,
            SphericalType::E7 => 7,
            SphericalType::E8 => 8,
            SphericalType::F4 => 4,
            SphericalType::G2 => 2,
            SphericalType::H3 => 3,
            SphericalType::H4 => 4,
            SphericalType::I2(_) => 2,
        }
    }
}

impl AffineType {
    pub fn is_valid(&self) -> bool {
        match *self {
            AffineType::A(n) => n >= 2,
            AffineType::B(n) => n >= 3,
            AffineType::C(n) => n >= 2,
            AffineType::D(n) => n >= 4,
            _ => true,
        }
    }

    /// The rank parameter n of the type; the graph has n + 1 vertices and
    /// the group has translation rank n.
    pub fn rank(&self) -> usize {
        match *self {
            AffineType::A1 => 1,
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n as usize,
            AffineType::E6 => 6,
            AffineType::E7 => 7,
            AffineType::E8 => 8,
            AffineType::F4 => 4,
            AffineType::G2 => 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rank() + 1
    }
}

impl ComponentClass {
    pub fn is_spherical(&self) -> bool {
        matches!(self, ComponentClass::Spherical(_))
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, ComponentClass::Affine(_))
    }
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentClass::Spherical(t) => match t {
                SphericalType::A(n) => write!(f, "A:{n}"),
                SphericalType::B(n) => write!(f, "B:{n}"),
                SphericalType::D(n) => write!(f, "D:{n}"),
                SphericalType::E6 => f.write_str("E6"),
                SphericalType::E7 => f.write_str("E7"),
                SphericalType::E8 => f.write_str("E8"),
                SphericalType::F4 => f.write_str("F4"),
                SphericalType::G2 => f.write_str("G2"),
                SphericalType::H3 => f.write_str("H3"),
                SphericalType::H4 => f.write_str("H4"),
                SphericalType::I2(m) => write!(f, "I2:{m}"),
            },
            ComponentClass::Affine(t) => match t {
                AffineType::A1 => f.write_str("tA1"),
                AffineType::A(n) => write!(f, "tA:{n}"),
                AffineType::B(n) => write!(f, "tB:{n}"),
                AffineType::C(n) => write!(f, "tC:{n}"),
                AffineType::D(n) => write!(f, "tD:{n}"),
                AffineType::E6 => f.write_str("tE6"),
                AffineType::E7 => f.write_str("tE7"),
                AffineType::E8 => f.write_str("tE8"),
                AffineType::F4 => f.write_str("tF4"),
                AffineType::G2 => f.write_str("tG2"),
            },
            ComponentClass::Other => f.write_str("Other"),
        }
    }
}

/// Failed to parse or validate a `TYPE[:RANK]` string.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("bad catalog type `{0}`")]
pub struct TypeParseError(pub String);

impl FromStr for ComponentClass {
    type Err = TypeParseError;

    /// Parses the exact CLI/report strings: `A:4`, `I2:7`, `tB:3`, `E6`,
    /// `tA1`, `Other`, ... validating the catalog parameter ranges.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TypeParseError(s.to_string());
        let (name, param) = match s.split_once(':') {
            Some((name, p)) => {
                let n: u32 = p.parse().map_err(|_| bad())?;
                (name, Some(n))
            }
            None => (s, None),
        };
        let class = match (name, param) {
            ("A", Some(n)) => ComponentClass::Spherical(SphericalType::A(n)),
            ("B", Some(n)) => ComponentClass::Spherical(SphericalType::B(n)),
            ("D", Some(n)) => ComponentClass::Spherical(SphericalType::D(n)),
            ("E6", None) => ComponentClass::Spherical(SphericalType::E6),
            ("E7", None) => ComponentClass::Spherical(SphericalType::E7),
            ("E8", None) => ComponentClass::Spherical(SphericalType::E8),
            ("F4", None) => ComponentClass::Spherical(SphericalType::F4),
            ("G2", None) => ComponentClass::Spherical(SphericalType::G2),
            ("H3", None) => ComponentClass::Spherical(SphericalType::H3),
            ("H4", None) => ComponentClass::Spherical(SphericalType::H4),
            ("I2", Some(m)) => ComponentClass::Spherical(SphericalType::I2(m)),
            ("tA1", None) => ComponentClass::Affine(AffineType::A1),
            ("tA", Some(n)) => ComponentClass::Affine(AffineType::A(n)),
            ("tB", Some(n)) => ComponentClass::Affine(AffineType::B(n)),
            ("tC", Some(n)) => ComponentClass::Affine(AffineType::C(n)),
            ("tD", Some(n)) => ComponentClass::Affine(AffineType::D(n)),
            ("tE6", None) => ComponentClass::Affine(AffineType::E6),
            ("tE7", None) => ComponentClass::Affine(AffineType::E7),
            ("tE8", None) => ComponentClass::Affine(AffineType::E8),
            ("tF4", None) => ComponentClass::Affine(AffineType::F4),
            ("tG2", None) => ComponentClass::Affine(AffineType::G2),
            ("Other", None) => ComponentClass::Other,
            _ => return Err(bad()),
        };
        let ok = match &class {
            ComponentClass::Spherical(t) => t.is_valid(),
            ComponentClass::Affine(t) => t.is_valid(),
            ComponentClass::Other => true,
        };
        if !ok {
            return Err(bad());
        }
        Ok(class)
    }
}

/// The requested catalog type has a parameter outside its legal range (or is
/// `Other`, which has no graph).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("bad catalog parameter: {0}")]
pub struct CatalogError(pub String);

/// Classification preconditions on the input graph.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is empty")]
    EmptyGraph,
}

struct Builder {
    g: CoxeterGraph,
}

impl Builder {
    fn with_vertices(n: usize) -> Builder {
        let mut g = CoxeterGraph::new();
        for i in 0..n {
            g.add_vertex(&format!("v{i}")).expect("fresh vertex");
        }
        Builder { g }
    }

    fn edge(mut self, i: usize, j: usize, m: u32) -> Builder {
        self.g
            .add_edge(&format!("v{i}"), &format!("v{j}"), EdgeLabel::Finite(m))
            .expect("valid catalog edge");
        self
    }

    fn inf_edge(mut self, i: usize, j: usize) -> Builder {
        self.g
            .add_edge(&format!("v{i}"), &format!("v{j}"), EdgeLabel::Infinity)
            .expect("valid catalog edge");
        self
    }

    /// Path edges i..i+len-1 with label 3.
    fn path(mut self, from: usize, to: usize) -> Builder {
        for i in from..to {
            self = self.edge(i, i + 1, 3);
        }
        self
    }
}

/// Builds the standard graph of a catalog type, vertices named `v0..v{k-1}`
/// along the drawing convention: paths run end to end starting at the
/// decorated end (the 4-label end for B, tB, tC), D-type forks hang off the
/// last path vertex, and tA is a cycle.
pub fn catalog(class: &ComponentClass) -> Result<CoxeterGraph, CatalogError> {
    let bad = || CatalogError(class.to_string());
    let builder = match *class {
        ComponentClass::Spherical(t) => {
            if !t.is_valid() {
                return Err(bad());
            }
            match t {
                SphericalType::A(n) => Builder::with_vertices(n as usize).path(0, n as usize - 1),
                SphericalType::B(n) => {
                    let n = n as usize;
                    Builder::with_vertices(n).edge(0, 1, 4).path(1, n - 1)
                }
                SphericalType::D(n) => {
                    let n = n as usize;
                    Builder::with_vertices(n)
                        .path(0, n - 3)
                        .edge(n - 3, n - 2, 3)
                        .edge(n - 3, n - 1, 3)
                }
                SphericalType::E6 => Builder::with_vertices(6).path(0, 4).edge(2, 5, 3),
                SphericalType::E7 => Builder::with_vertices(7).path(0, 5).edge(2, 6, 3),
                SphericalType::E8 => Builder::with_vertices(8).path(0, 6).edge(2, 7, 3),
                SphericalType::F4 => Builder::with_vertices(4)
                    .edge(0, 1, 3)
                    .edge(1, 2, 4)
                    .edge(2, 3, 3),
                SphericalType::G2 => Builder::with_vertices(2).edge(0, 1, 6),
                SphericalType::H3 => Builder::with_vertices(3).edge(0, 1, 3).edge(1, 2, 5),
                SphericalType::H4 => Builder::with_vertices(4).path(0, 2).edge(2, 3, 5),
                SphericalType::I2(m) => Builder::with_vertices(2).edge(0, 1, m),
            }
        }
        ComponentClass::Affine(t) => {
            if !t.is_valid() {
                return Err(bad());
            }
            match t {
                AffineType::A1 => Builder::with_vertices(2).inf_edge(0, 1),
                AffineType::A(n) => {
                    let k = n as usize + 1;
                    Builder::with_vertices(k).path(0, k - 1).edge(k - 1, 0, 3)
                }
                AffineType::B(n) => {
                    let n = n as usize;
                    Builder::with_vertices(n + 1)
                        .edge(0, 1, 4)
                        .path(1, n - 2)
                        .edge(n - 2, n - 1, 3)
                        .edge(n - 2, n, 3)
                }
                AffineType::C(n) => {
                    let n = n as usize;
                    Builder::with_vertices(n + 1)
                        .edge(0, 1, 4)
                        .path(1, n - 1)
                        .edge(n - 1, n, 4)
                }
                AffineType::D(n) => {
                    let n = n as usize;
                    Builder::with_vertices(n + 1)
                        .edge(0, 2, 3)
                        .edge(1, 2, 3)
                        .path(2, n - 2)
                        .edge(n - 2, n - 1, 3)
                        .edge(n - 2, n, 3)
                }
                AffineType::E6 => Builder::with_vertices(7)
                    .path(0, 4)
                    .edge(2, 5, 3)
                    .edge(5, 6, 3),
                AffineType::E7 => Builder::with_vertices(8).path(0, 6).edge(3, 7, 3),
                AffineType::E8 => Builder::with_vertices(9).path(0, 7).edge(2, 8, 3),
                AffineType::F4 => Builder::with_vertices(5)
                    .path(0, 2)
                    .edge(2, 3, 4)
                    .edge(3, 4, 3),
                AffineType::G2 => Builder::with_vertices(3).edge(0, 1, 3).edge(1, 2, 6),
            }
        }
        ComponentClass::Other => return Err(bad()),
    };
    Ok(builder.g)
}

/// Every catalog class on exactly `n` vertices (`n >= 3`; one- and
/// two-vertex graphs are handled directly by label inspection).
fn candidates(n: usize) -> Vec<ComponentClass> {
    use AffineType as Af;
    use ComponentClass::{Affine, Spherical};
    use SphericalType as Sp;

    let n32 = n as u32;
    let mut out = vec![Spherical(Sp::A(n32)), Spherical(Sp::B(n32))];
    if n >= 4 {
        out.push(Spherical(Sp::D(n32)));
    }
    match n {
        3 => out.push(Spherical(Sp::H3)),
        4 => {
            out.push(Spherical(Sp::F4));
            out.push(Spherical(Sp::H4));
        }
        6 => out.push(Spherical(Sp::E6)),
        7 => out.push(Spherical(Sp::E7)),
        8 => out.push(Spherical(Sp::E8)),
        _ => {}
    }
    let rank = n32 - 1;
    out.push(Affine(Af::A(rank)));
    out.push(Affine(Af::C(rank)));
    if rank >= 3 {
        out.push(Affine(Af::B(rank)));
    }
    if rank >= 4 {
        out.push(Affine(Af::D(rank)));
    }
    match n {
        3 => out.push(Affine(Af::G2)),
        5 => out.push(Affine(Af::F4)),
        7 => out.push(Affine(Af::E6)),
        8 => out.push(Affine(Af::E7)),
        9 => out.push(Affine(Af::E8)),
        _ => {}
    }
    out
}

/// Classifies a connected, nonempty graph as the unique catalog type it is
/// labeled-isomorphic to, or `Other`.
pub fn classify_component(g: &CoxeterGraph) -> Result<ComponentClass, ClassifyError> {
    use ComponentClass::{Affine, Other, Spherical};

    let n = g.vertex_count();
    if n == 0 {
        return Err(ClassifyError::EmptyGraph);
    }
    if g.components().len() != 1 {
        return Err(ClassifyError::NotConnected);
    }
    if n == 1 {
        return Ok(Spherical(SphericalType::A(1)));
    }
    if n == 2 {
        // Connected on two vertices means exactly one edge; its label decides.
        let label = g
            .edge_label(&g.vertices()[0], &g.vertices()[1])
            .expect("connected two-vertex graph has an edge");
        return Ok(match label {
            EdgeLabel::Finite(3) => Spherical(SphericalType::A(2)),
            EdgeLabel::Finite(4) => Spherical(SphericalType::B(2)),
            EdgeLabel::Finite(6) => Spherical(SphericalType::G2),
            EdgeLabel::Finite(m) => Spherical(SphericalType::I2(m)),
            EdgeLabel::Infinity => Affine(AffineType::A1),
        });
    }
    for class in candidates(n) {
        let reference = catalog(&class).expect("candidates are in range");
        if graphs_isomorphic(g, &reference).is_some() {
            return Ok(class);
        }
    }
    Ok(Other)
}

/// Componentwise classification, in component order.
pub fn classify_graph(g: &CoxeterGraph) -> Vec<ComponentClass> {
    g.components()
        .parts
        .iter()
        .map(|part| classify_component(part).expect("components are connected and nonempty"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(s: &str) -> CoxeterGraph {
        catalog(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn catalog_shapes_match_the_drawings() {
        assert_eq!(
            cat("tG2").to_text(),
            "vertex v0\nvertex v1\nvertex v2\nedge v0 v1 3\nedge v1 v2 6\n"
        );
        assert_eq!(
            cat("tC:2").to_text(),
            "vertex v0\nvertex v1\nvertex v2\nedge v0 v1 4\nedge v1 v2 4\n"
        );
        assert_eq!(
            cat("I2:7").to_text(),
            "vertex v0\nvertex v1\nedge v0 v1 7\n"
        );
        assert_eq!(
            cat("tA1").to_text(),
            "vertex v0\nvertex v1\nedge v0 v1 inf\n"
        );
        // tB3 is a claw with one 4-edge; tD4 is the all-3 star on 5 vertices.
        let tb3 = cat("tB:3");
        assert_eq!(tb3.vertex_count(), 4);
        assert_eq!(tb3.edge_count(), 3);
        let td4 = cat("tD:4");
        assert_eq!(td4.vertex_count(), 5);
        assert_eq!(td4.neighbors(&td4.vertices()[2]).len(), 4);
    }

    #[test]
    fn catalog_rejects_out_of_range_parameters() {
        for s in [
            "A:0", "B:1", "D:3", "I2:4", "I2:6", "tA:1", "tB:2", "tC:1", "tD:3",
        ] {
            assert!(
                s.parse::<ComponentClass>().is_err(),
                "{s} should fail validation"
            );
        }
        assert!(catalog(&ComponentClass::Other).is_err());
        assert!(catalog(&ComponentClass::Spherical(SphericalType::A(0))).is_err());
    }

    #[test]
    fn type_strings_roundtrip() {
        for s in [
            "A:4", "B:2", "D:5", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2:7", "tA1", "tA:2",
            "tB:3", "tC:9", "tD:4", "tE6", "tE7", "tE8", "tF4", "tG2", "Other",
        ] {
            let c: ComponentClass = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("tA1:1".parse::<ComponentClass>().is_err());
        assert!("E6:6".parse::<ComponentClass>().is_err());
        assert!("Z:3".parse::<ComponentClass>().is_err());
        assert!("A".parse::<ComponentClass>().is_err());
    }

    #[test]
    fn classify_worked_examples() {
        let a4 = CoxeterGraph::parse(
            "vertex a\nvertex b\nvertex c\nvertex d\nedge a b 3\nedge b c 3\nedge c d 3",
        )
        .unwrap();
        assert_eq!(
            classify_component(&a4).unwrap(),
            ComponentClass::Spherical(SphericalType::A(4))
        );

        let cycle =
            CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\nedge a c 3")
                .unwrap();
        assert_eq!(
            classify_component(&cycle).unwrap(),
            ComponentClass::Affine(AffineType::A(2))
        );

        let h3 = CoxeterGraph::parse("vertex v1\nvertex v2\nvertex v3\nedge v1 v2 3\nedge v2 v3 5")
            .unwrap();
        assert_eq!(
            classify_component(&h3).unwrap(),
            ComponentClass::Spherical(SphericalType::H3)
        );

        let all_fives_triangle =
            CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 5\nedge b c 5\nedge a c 5")
                .unwrap();
        assert_eq!(
            classify_component(&all_fives_triangle).unwrap(),
            ComponentClass::Other
        );
    }

    #[test]
    fn classify_errors() {
        assert_eq!(
            classify_component(&CoxeterGraph::new()),
            Err(ClassifyError::EmptyGraph)
        );
        let two = CoxeterGraph::parse("vertex a\nvertex b").unwrap();
        assert_eq!(classify_component(&two), Err(ClassifyError::NotConnected));
    }

    #[test]
    fn classify_graph_is_componentwise() {
        let g = cat("tA1")
            .disjoint_union(&cat("A:2").with_prefix("b").unwrap())
            .unwrap();
        assert_eq!(
            classify_graph(&g),
            vec![
                ComponentClass::Affine(AffineType::A1),
                ComponentClass::Spherical(SphericalType::A(2)),
            ]
        );
        assert!(classify_graph(&CoxeterGraph::new()).is_empty());
        assert_eq!(
            classify_graph(&cat("tF4")),
            vec![ComponentClass::Affine(AffineType::F4)]
        );
    }

    #[test]
    fn two_vertex_labels_decide_directly() {
        for (s, expect) in [
            ("A:2", ComponentClass::Spherical(SphericalType::A(2))),
            ("B:2", ComponentClass::Spherical(SphericalType::B(2))),
            ("I2:5", ComponentClass::Spherical(SphericalType::I2(5))),
            ("G2", ComponentClass::Spherical(SphericalType::G2)),
            ("I2:50", ComponentClass::Spherical(SphericalType::I2(50))),
            ("tA1", ComponentClass::Affine(AffineType::A1)),
        ] {
            assert_eq!(classify_component(&cat(s)).unwrap(), expect, "{s}");
        }
        // A 6-labeled edge comes back as G2, never as I2(6).
        let g2 = CoxeterGraph::parse("vertex x\nvertex y\nedge x y 6").unwrap();
        assert_eq!(
            classify_component(&g2).unwrap(),
            ComponentClass::Spherical(SphericalType::G2)
        );
    }

    #[test]
    fn equal_size_catalog_members_are_pairwise_non_isomorphic() {
        // Uniqueness of recognition rests on this.
        for n in 3..=10 {
            let classes = candidates(n);
            let graphs: Vec<CoxeterGraph> = classes.iter().map(|c| catalog(c).unwrap()).collect();
            for i in 0..graphs.len() {
                for j in (i + 1)..graphs.len() {
                    assert!(
                        graphs_isomorphic(&graphs[i], &graphs[j]).is_none(),
                        "{} and {} coincide on {n} vertices",
                        classes[i],
                        classes[j]
                    );
                }
            }
        }
    }

    #[test]
    fn every_catalog_graph_classifies_as_itself() {
        let mut names: Vec<String> = Vec::new();
        for n in 1..=9 {
            names.push(format!("A:{n}"));
        }
        for n in 2..=9 {
            names.push(format!("B:{n}"));
        }
        for n in 4..=9 {
            names.push(format!("D:{n}"));
        }
        for s in ["E6", "E7", "E8", "F4", "G2", "H3", "H4"] {
            names.push(s.to_string());
        }
        names.push("tA1".into());
        for n in 2..=9 {
            names.push(format!("tA:{n}"));
        }
        for n in 3..=9 {
            names.push(format!("tB:{n}"));
        }
        for n in 2..=9 {
            names.push(format!("tC:{n}"));
        }
        for n in 4..=9 {
            names.push(format!("tD:{n}"));
        }
        for s in ["tE6", "tE7", "tE8", "tF4", "tG2"] {
            names.push(s.to_string());
        }
        for m in [5u32, 7, 11, 23, 50] {
            names.push(format!("I2:{m}"));
        }
        for name in names {
            let class: ComponentClass = name.parse().unwrap();
            let g = catalog(&class).unwrap();
            assert_eq!(classify_component(&g).unwrap(), class, "{name}");
        }
    }
}
