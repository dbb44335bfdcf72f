//! Coxeter graph data model: vertices, labeled edges, the text format, and
//! the derived subgraphs (connected components, odd subgraph, prime-complement
//! components) that the rest of the crate consumes.
//!
//! A Coxeter graph is a finite graph whose edges carry labels in
//! `{3, 4, ...} ∪ {∞}`. A vertex pair with no edge implicitly carries the
//! label 2, so the graph presents the group generated by one involution per
//! vertex with `(uv)^m = 1` for every pair whose label `m` is finite.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// A vertex name: a nonempty token over `[A-Za-z0-9_]`, case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    /// Validates the token charset and wraps it.
    pub fn new(token: &str) -> Result<Self, GraphError> {
        if token.is_empty()
            || !token
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            return Err(GraphError::BadToken(token.to_string()));
        }
        Ok(VertexId(token.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Label carried by an explicit edge: a finite integer `m >= 3` or infinity.
/// Label 2 is represented by the absence of the edge and never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Finite(u32),
    Infinity,
}

impl EdgeLabel {
    pub fn finite(m: u32) -> Result<Self, GraphError> {
        if m < 3 {
            return Err(GraphError::BadLabel(m.to_string()));
        }
        Ok(EdgeLabel::Finite(m))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Finite(m) => write!(f, "{m}"),
            EdgeLabel::Infinity => f.write_str("inf"),
        }
    }
}

/// The full Coxeter-matrix entry for an arbitrary vertex pair: the edge label
/// when an edge exists, and 2 otherwise. Unlike [`EdgeLabel`], `Finite(2)` is
/// a legal value here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairLabel {
    Finite(u32),
    Infinity,
}

impl PairLabel {
    pub const TWO: PairLabel = PairLabel::Finite(2);

    pub fn is_even_or_infinite(self) -> bool {
        match self {
            PairLabel::Finite(m) => m % 2 == 0,
            PairLabel::Infinity => true,
        }
    }
}

impl From<EdgeLabel> for PairLabel {
    fn from(l: EdgeLabel) -> Self {
        match l {
            EdgeLabel::Finite(m) => PairLabel::Finite(m),
            EdgeLabel::Infinity => PairLabel::Infinity,
        }
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairLabel::Finite(m) => write!(f, "{m}"),
            PairLabel::Infinity => f.write_str("inf"),
        }
    }
}

/// Errors from programmatic graph construction and the derived-subgraph
/// operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("self loop at `{0}`")]
    SelfLoop(String),
    #[error("bad edge label `{0}` (must be an integer >= 3 or `inf`)")]
    BadLabel(String),
    #[error("bad vertex token `{0}` (must be nonempty over [A-Za-z0-9_])")]
    BadToken(String),
    #[error("`{0}` is not an odd prime")]
    NotOddPrime(u32),
}

/// A parse failure, carrying the 1-based line number it occurred on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError(String),
    UnknownVertex(String),
    DuplicateVertex(String),
    DuplicateEdge(String, String),
    SelfLoop(String),
    BadLabel(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::SyntaxError(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            ParseErrorKind::DuplicateEdge(u, v) => write!(f, "duplicate edge {{{u}, {v}}}"),
            ParseErrorKind::SelfLoop(v) => write!(f, "self loop at `{v}`"),
            ParseErrorKind::BadLabel(l) => {
                write!(f, "bad label `{l}` (must be an integer >= 3 or `inf`)")
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// An edge-labeled Coxeter graph.
///
/// Vertex declaration order is kept and serves as the canonical iteration
/// order for every deterministic algorithm in this crate. Edges are stored
/// under lexicographically normalized endpoint pairs.
#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    vertices: Vec<VertexId>,
    positions: HashMap<VertexId, usize>,
    edges: BTreeMap<(VertexId, VertexId), EdgeLabel>,
}

impl PartialEq for CoxeterGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for CoxeterGraph {}

impl Default for CoxeterGraph {
    fn default() -> Self {
        Self::new()
    }
}

fn edge_key(u: &VertexId, v: &VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

impl CoxeterGraph {
    /// The empty graph (presents the trivial group).
    pub fn new() -> Self {
        CoxeterGraph {
            vertices: Vec::new(),
            positions: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in declaration order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.positions.contains_key(v)
    }

    /// Declaration position of `v`.
    pub fn position(&self, v: &VertexId) -> Option<usize> {
        self.positions.get(v).copied()
    }

    pub fn add_vertex(&mut self, token: &str) -> Result<VertexId, GraphError> {
        let id = VertexId::new(token)?;
        if self.positions.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(token.to_string()));
        }
        self.positions.insert(id.clone(), self.vertices.len());
        self.vertices.push(id.clone());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: &str, v: &str, label: EdgeLabel) -> Result<(), GraphError> {
        let u = VertexId::new(u)?;
        let v = VertexId::new(v)?;
        if !self.positions.contains_key(&u) {
            return Err(GraphError::UnknownVertex(u.0));
        }
        if !self.positions.contains_key(&v) {
            return Err(GraphError::UnknownVertex(v.0));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u.0));
        }
        let key = edge_key(&u, &v);
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(key.0 .0, key.1 .0));
        }
        self.edges.insert(key, label);
        Ok(())
    }

    /// The explicit edge label of `{u, v}`, if an edge exists.
    pub fn edge_label(&self, u: &VertexId, v: &VertexId) -> Option<EdgeLabel> {
        self.edges.get(&edge_key(u, v)).copied()
    }

    /// The Coxeter-matrix entry for a pair of distinct vertices: the edge
    /// label if present, otherwise the implicit 2.
    pub fn pair_label(&self, u: &VertexId, v: &VertexId) -> PairLabel {
        debug_assert!(u != v, "pair_label needs distinct vertices");
        match self.edge_label(u, v) {
            Some(l) => l.into(),
            None => PairLabel::TWO,
        }
    }

    /// Edges in lexicographic endpoint order.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexId, &VertexId, EdgeLabel)> {
        self.edges.iter().map(|((u, v), l)| (u, v, *l))
    }

    /// Explicit neighbors of `v`, in declaration order.
    pub fn neighbors(&self, v: &VertexId) -> Vec<&VertexId> {
        let mut out: Vec<&VertexId> = Vec::new();
        for (a, b, _) in self.edges() {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_by_key(|w| self.positions[*w]);
        out
    }

    /// Parses the text format described in [`CoxeterGraph::to_text`].
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut g = CoxeterGraph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |kind| ParseError {
                line: line_no,
                kind,
            };
            match fields[0] {
                "vertex" if fields.len() == 2 => {
                    g.add_vertex(fields[1]).map_err(|e| match e {
                        GraphError::DuplicateVertex(v) => err(ParseErrorKind::DuplicateVertex(v)),
                        GraphError::BadToken(t) => err(ParseErrorKind::SyntaxError(format!(
                            "bad vertex token `{t}`"
                        ))),
                        other => err(ParseErrorKind::SyntaxError(other.to_string())),
                    })?;
                }
                "edge" if fields.len() == 4 => {
                    let label = if fields[3] == "inf" {
                        EdgeLabel::Infinity
                    } else {
                        match fields[3].parse::<u32>() {
                            Ok(m) if m >= 3 => EdgeLabel::Finite(m),
                            _ => return Err(err(ParseErrorKind::BadLabel(fields[3].to_string()))),
                        }
                    };
                    g.add_edge(fields[1], fields[2], label)
                        .map_err(|e| match e {
                            GraphError::UnknownVertex(v) => err(ParseErrorKind::UnknownVertex(v)),
                            GraphError::SelfLoop(v) => err(ParseErrorKind::SelfLoop(v)),
                            GraphError::DuplicateEdge(u, v) => {
                                err(ParseErrorKind::DuplicateEdge(u, v))
                            }
                            GraphError::BadToken(t) => err(ParseErrorKind::SyntaxError(format!(
                                "bad vertex token `{t}`"
                            ))),
                            other => err(ParseErrorKind::SyntaxError(other.to_string())),
                        })?;
                }
                other => {
                    return Err(err(ParseErrorKind::SyntaxError(format!(
                        "expected `vertex <token>` or `edge <tok> <tok> <label>`, got `{other} ...`"
                    ))));
                }
            }
        }
        Ok(g)
    }

    /// Serializes to the text format: one `vertex <token>` line per vertex in
    /// declaration order, then one `edge <a> <b> <label>` line per edge in
    /// lexicographic endpoint order, each line LF-terminated. The empty graph
    /// serializes to the empty string.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(v.as_str());
            out.push('\n');
        }
        for ((u, v), l) in &self.edges {
            out.push_str(&format!("edge {u} {v} {l}\n"));
        }
        out
    }

    /// Connected components under explicit-edge adjacency (implicit label-2
    /// pairs are not adjacent), ordered by smallest vertex position.
    pub fn components(&self) -> ComponentDecomposition {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut member = vec![false; n];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            member[start] = true;
            while let Some(i) = queue.pop_front() {
                for w in self.neighbors(&self.vertices[i]) {
                    let j = self.positions[w];
                    if !seen[j] {
                        seen[j] = true;
                        member[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            let keep: Vec<VertexId> = (0..n)
                .filter(|&i| member[i])
                .map(|i| self.vertices[i].clone())
                .collect();
            parts.push(self.induced(&keep).expect("component vertices exist"));
        }
        ComponentDecomposition { parts }
    }

    /// Same vertex set, keeping exactly the edges with a finite odd label.
    pub fn odd_subgraph(&self) -> CoxeterGraph {
        let mut g = CoxeterGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.as_str()).expect("vertices are unique");
        }
        for ((u, v), l) in &self.edges {
            if let EdgeLabel::Finite(m) = l {
                if m % 2 == 1 {
                    g.add_edge(u.as_str(), v.as_str(), *l).expect("valid edge");
                }
            }
        }
        g
    }

    /// Number of connected components of the graph where two vertices are
    /// adjacent exactly when their pair label is finite and different from
    /// `p` (implicit 2-pairs are adjacent; `p`-labeled and infinity-labeled
    /// pairs are not).
    pub fn p_complement_components(&self, p: u32) -> Result<usize, GraphError> {
        if !is_odd_prime(p) {
            return Err(GraphError::NotOddPrime(p));
        }
        Ok(self.p_complement_partition(p).len())
    }

    /// The partition behind [`CoxeterGraph::p_complement_components`], each
    /// part as vertex positions, parts ordered by smallest vertex position.
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn p_complement_partition(&self, p: u32) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let adjacent =
            |i: usize, j: usize| match self.pair_label(&self.vertices[i], &self.vertices[j]) {
                PairLabel::Finite(m) => m != p,
                PairLabel::Infinity => false,
            };
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut part = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                part.push(i);
                for j in 0..n {
                    if i != j && !seen[j] && adjacent(i, j) {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// The full subgraph on the vertex set `keep`, preserving declaration
    /// order and all labels between kept vertices.
    pub fn induced(&self, keep: &[VertexId]) -> Result<CoxeterGraph, GraphError> {
        let mut set: HashSet<&VertexId> = HashSet::new();
        for v in keep {
            if !self.positions.contains_key(v) {
                return Err(GraphError::UnknownVertex(v.0.clone()));
            }
            set.insert(v);
        }
        let mut g = CoxeterGraph::new();
        for v in &self.vertices {
            if set.contains(v) {
                g.add_vertex(v.as_str()).expect("vertices are unique");
            }
        }
        for ((u, v), l) in &self.edges {
            if set.contains(u) && set.contains(v) {
                g.add_edge(u.as_str(), v.as_str(), *l).expect("valid edge");
            }
        }
        Ok(g)
    }

    /// The multiset of pair labels between `inside` and its complement,
    /// implicit 2s included, sorted ascending.
    pub fn boundary_labels(&self, inside: &[VertexId]) -> Result<Vec<PairLabel>, GraphError> {
        let mut set: HashSet<&VertexId> = HashSet::new();
        for v in inside {
            if !self.positions.contains_key(v) {
                return Err(GraphError::UnknownVertex(v.0.clone()));
            }
            set.insert(v);
        }
        let mut labels = Vec::new();
        for x in &self.vertices {
            if !set.contains(x) {
                continue;
            }
            for y in &self.vertices {
                if !set.contains(y) {
                    labels.push(self.pair_label(x, y));
                }
            }
        }
        labels.sort_unstable();
        Ok(labels)
    }

    /// Disjoint union; the vertex token sets must not overlap.
    pub fn disjoint_union(&self, other: &CoxeterGraph) -> Result<CoxeterGraph, GraphError> {
        let mut g = self.clone();
        for v in &other.vertices {
            if g.positions.contains_key(v) {
                return Err(GraphError::DuplicateVertex(v.0.clone()));
            }
            g.positions.insert(v.clone(), g.vertices.len());
            g.vertices.push(v.clone());
        }
        for ((u, v), l) in &other.edges {
            g.edges.insert((u.clone(), v.clone()), *l);
        }
        Ok(g)
    }

    /// A copy with every vertex token prefixed; useful before a union of
    /// graphs that share token names.
    pub fn with_prefix(&self, prefix: &str) -> Result<CoxeterGraph, GraphError> {
        VertexId::new(&format!("{prefix}_"))?; // validate charset
        let mut g = CoxeterGraph::new();
        for v in &self.vertices {
            g.add_vertex(&format!("{prefix}{v}"))?;
        }
        for ((u, v), l) in &self.edges {
            g.add_edge(&format!("{prefix}{u}"), &format!("{prefix}{v}"), *l)?;
        }
        Ok(g)
    }
}

/// Vertex-induced connected components, jointly partitioning the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub parts: Vec<CoxeterGraph>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

pub(crate) fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
