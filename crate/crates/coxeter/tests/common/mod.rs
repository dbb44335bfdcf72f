//! Shared helpers for the integration suites: a tiny deterministic RNG,
//! seeded random-graph generators, and the catalog type lists.

#![allow(dead_code)]

use coxeter::{catalog, ComponentClass, CoxeterGraph, EdgeLabel};

/// SplitMix64; deterministic across platforms so corpus-based tests are
/// byte-stable.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> TestRng {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn percent(&mut self, p: usize) -> bool {
        self.below(100) < p
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

pub fn cat(s: &str) -> CoxeterGraph {
    catalog(&s.parse::<ComponentClass>().unwrap()).unwrap()
}

pub fn class_of(s: &str) -> ComponentClass {
    s.parse().unwrap()
}

pub fn union(a: &CoxeterGraph, b: &CoxeterGraph) -> CoxeterGraph {
    a.disjoint_union(&b.with_prefix("u").unwrap()).unwrap()
}

pub fn all_fives_triangle() -> CoxeterGraph {
    CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 5\nedge b c 5\nedge a c 5").unwrap()
}

/// Complete graph on four vertices, every label 5.
pub fn k4_all_fives() -> CoxeterGraph {
    CoxeterGraph::parse(
        "vertex a\nvertex b\nvertex c\nvertex d\n\
         edge a b 5\nedge a c 5\nedge a d 5\nedge b c 5\nedge b d 5\nedge c d 5",
    )
    .unwrap()
}

/// Spherical catalog names with rank at most 9, I2 excluded.
pub fn spherical_names() -> Vec<String> {
    let mut names = Vec::new();
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
    names
}

/// I2(m) names for 5 <= m <= max, skipping the G2 alias m = 6.
pub fn i2_names(max: u32) -> Vec<String> {
    (5..=max)
        .filter(|&m| m != 6)
        .map(|m| format!("I2:{m}"))
        .collect()
}

/// Affine catalog names with rank at most 9.
pub fn affine_names() -> Vec<String> {
    let mut names = vec!["tA1".to_string()];
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
    names
}

pub fn labels_3_to_9_and_inf() -> Vec<EdgeLabel> {
    let mut labels: Vec<EdgeLabel> = (3..=9).map(EdgeLabel::Finite).collect();
    labels.push(EdgeLabel::Infinity);
    labels
}

pub fn labels_3_to_7_and_inf() -> Vec<EdgeLabel> {
    let mut labels: Vec<EdgeLabel> = (3..=7).map(EdgeLabel::Finite).collect();
    labels.push(EdgeLabel::Infinity);
    labels
}

/// Random graph with `min_v..=max_v` vertices and the given label pool;
/// each pair gets an explicit edge with probability `edge_percent`.
pub fn random_graph(
    rng: &mut TestRng,
    min_v: usize,
    max_v: usize,
    labels: &[EdgeLabel],
    edge_percent: usize,
) -> CoxeterGraph {
    let n = min_v + rng.below(max_v - min_v + 1);
    let mut g = CoxeterGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("n{i}")).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.percent(edge_percent) {
                let l = *rng.pick(labels);
                g.add_edge(&format!("n{i}"), &format!("n{j}"), l).unwrap();
            }
        }
    }
    g
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(
    rng: &mut TestRng,
    min_v: usize,
    max_v: usize,
    labels: &[EdgeLabel],
    extra_percent: usize,
) -> CoxeterGraph {
    let n = min_v + rng.below(max_v - min_v + 1);
    let mut g = CoxeterGraph::new();
    for i in 0..n {
        g.add_vertex(&format!("n{i}")).unwrap();
    }
    for i in 1..n {
        let parent = rng.below(i);
        let l = *rng.pick(labels);
        g.add_edge(&format!("n{parent}"), &format!("n{i}"), l)
            .unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.edge_label(&g.vertices()[i].clone(), &g.vertices()[j].clone())
                .is_none()
                && rng.percent(extra_percent)
            {
                let l = *rng.pick(labels);
                g.add_edge(&format!("n{i}"), &format!("n{j}"), l).unwrap();
            }
        }
    }
    g
}

/// An isomorphic copy: vertices renamed and re-declared in random order.
pub fn permuted_copy(rng: &mut TestRng, g: &CoxeterGraph) -> CoxeterGraph {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        perm.swap(i, j);
    }
    let mut name_of = vec![String::new(); n];
    let mut h = CoxeterGraph::new();
    for (k, &orig) in perm.iter().enumerate() {
        let name = format!("w{k}");
        name_of[orig] = name.clone();
        h.add_vertex(&name).unwrap();
    }
    for (u, v, l) in g.edges() {
        let ui = g.position(u).unwrap();
        let vi = g.position(v).unwrap();
        h.add_edge(&name_of[ui], &name_of[vi], l).unwrap();
    }
    h
}
