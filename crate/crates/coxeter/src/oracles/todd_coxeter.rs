//! HLT-style Todd-Coxeter coset enumeration over the trivial subgroup of the
//! Coxeter presentation `< V | v^2, (uv)^m >` (implicit label-2 pairs
//! included, infinity pairs contributing no relator).
//!
//! Cosets are processed in creation order; each relator is scanned from each
//! live coset, filling the first gap with a fresh coset; coincidences are
//! resolved immediately through a union-find. Closing the table yields the
//! group order. The strategy is deterministic: identical inputs produce
//! identical tables.

use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::graph::{CoxeterGraph, PairLabel, VertexId};

const UNDEF: u32 = u32::MAX;

/// Outcome of an enumeration attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    /// The table closed; `order` is the number of live cosets, which equals
    /// the group order for finite groups.
    Enumerated { order: BigUint },
    /// The definition count exceeded the coset limit. This signals "possibly
    /// infinite", never a wrong order.
    LimitExceeded,
}

/// Enumerates cosets of the trivial subgroup; the default entry point.
pub fn todd_coxeter(g: &CoxeterGraph, max_cosets: usize) -> Enumeration {
    match CosetTable::enumerate(g, max_cosets) {
        Ok(table) => Enumeration::Enumerated {
            order: BigUint::from(table.live_count()),
        },
        Err(LimitExceeded) => Enumeration::LimitExceeded,
    }
}

/// The coset limit was exceeded before the table closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitExceeded;

/// A closed coset table: one column per generator, one row per coset (dead
/// rows retained), plus the union-find of coset identifications.
#[derive(Debug, Clone)]
pub struct CosetTable {
    generators: Vec<VertexId>,
    relators: Vec<Vec<usize>>,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
}

impl CosetTable {
    /// Runs the enumeration to closure or to the definition limit.
    pub fn enumerate(g: &CoxeterGraph, max_cosets: usize) -> Result<CosetTable, LimitExceeded> {
        let generators: Vec<VertexId> = g.vertices().to_vec();
        let ngens = generators.len();
        let mut relators: Vec<Vec<usize>> = Vec::new();
        for i in 0..ngens {
            relators.push(vec![i, i]);
        }
        for i in 0..ngens {
            for j in (i + 1)..ngens {
                match g.pair_label(&generators[i], &generators[j]) {
                    PairLabel::Finite(m) => {
                        let mut w = Vec::with_capacity(2 * m as usize);
                        for _ in 0..m {
                            w.push(i);
                            w.push(j);
                        }
                        relators.push(w);
                    }
                    PairLabel::Infinity => {}
                }
            }
        }

        let mut t = CosetTable {
            generators,
            relators,
            table: vec![vec![UNDEF; ngens]],
            parent: vec![0],
            live: 1,
            defined: 1,
        };

        let mut c: u32 = 0;
        while (c as usize) < t.table.len() {
            if t.find(c) == c {
                for ri in 0..t.relators.len() {
                    t.scan_and_fill(c, ri, max_cosets)?;
                    if t.find(c) != c {
                        break;
                    }
                }
            }
            c += 1;
        }
        Ok(t)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    /// Total cosets ever defined, including later-collapsed ones.
    pub fn defined_count(&self) -> usize {
        self.defined
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn entry(&mut self, c: u32, g: usize) -> Option<u32> {
        let t = self.table[c as usize][g];
        if t == UNDEF {
            None
        } else {
            Some(self.find(t))
        }
    }

    /// Installs `c * g = d` together with the involutive mirror `d * g = c`.
    fn set_pair(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize][g] = d;
        self.table[d as usize][g] = c;
    }

    fn define(&mut self, c: u32, g: usize, max_cosets: usize) -> Result<u32, LimitExceeded> {
        if self.defined >= max_cosets {
            return Err(LimitExceeded);
        }
        let d = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.generators.len()]);
        self.parent.push(d);
        self.defined += 1;
        self.live += 1;
        self.set_pair(c, g, d);
        Ok(d)
    }

    fn scan_and_fill(&mut self, c: u32, ri: usize, max_cosets: usize) -> Result<(), LimitExceeded> {
        let r = self.relators[ri].len();
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = r; // b sits after position j - 1; b = x_j
        loop {
            while i < j {
                let g = self.relators[ri][i];
                match self.entry(f, g) {
                    Some(x) => {
                        f = x;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            while j > i {
                let g = self.relators[ri][j - 1];
                match self.entry(b, g) {
                    Some(x) => {
                        b = x;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                // exactly one gap: deduce f * w[i] = b (both entries are
                // undefined, otherwise the scans would have crossed)
                let g = self.relators[ri][i];
                self.set_pair(f, g, b);
                return Ok(());
            }
            // gap of two or more: fill the first hole and keep scanning
            let g = self.relators[ri][i];
            let d = self.define(f, g, max_cosets)?;
            f = d;
            i += 1;
        }
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut VecDeque<u32>) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, dead) = if a < b { (a, b) } else { (b, a) };
        self.parent[dead as usize] = keep;
        self.live -= 1;
        queue.push_back(dead);
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(dead) = queue.pop_front() {
            for g in 0..self.generators.len() {
                let t = self.table[dead as usize][g];
                if t == UNDEF {
                    continue;
                }
                self.table[dead as usize][g] = UNDEF;
                // reinstall the edge dead --g--> t between representatives
                let keep = self.find(dead);
                let t = self.find(t);
                let cur = self.table[keep as usize][g];
                if cur == UNDEF {
                    self.table[keep as usize][g] = t;
                } else {
                    let cur = self.find(cur);
                    if cur != t {
                        self.merge(cur, t, &mut queue);
                    }
                }
                let keep = self.find(keep);
                let t = self.find(t);
                let cur = self.table[t as usize][g];
                if cur == UNDEF {
                    self.table[t as usize][g] = keep;
                } else {
                    let cur = self.find(cur);
                    if cur != keep {
                        self.merge(cur, keep, &mut queue);
                    }
                }
            }
        }
    }

    /// True when every relator scan from every live coset closes without new
    /// definitions; holds after a successful enumeration.
    pub fn is_closed(&mut self) -> bool {
        for c in 0..self.table.len() as u32 {
            if self.find(c) != c {
                continue;
            }
            for ri in 0..self.relators.len() {
                let mut f = c;
                let mut ok = true;
                for k in 0..self.relators[ri].len() {
                    let g = self.relators[ri][k];
                    match self.entry(f, g) {
                        Some(x) => f = x,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || f != c {
                    return false;
                }
            }
        }
        true
    }

    /// The live part of the table with cosets renumbered 0.. in creation
    /// order; used to compare runs for determinism.
    pub fn canonical_table(&mut self) -> Vec<Vec<u32>> {
        let len = self.table.len();
        let mut number = vec![UNDEF; len];
        let mut next = 0u32;
        for c in 0..len as u32 {
            if self.find(c) == c {
                number[c as usize] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next as usize);
        for c in 0..len as u32 {
            if self.find(c) != c {
                continue;
            }
            let mut row = Vec::with_capacity(self.generators.len());
            for g in 0..self.generators.len() {
                row.push(match self.entry(c, g) {
                    Some(x) => number[x as usize],
                    None => UNDEF,
                });
            }
            rows.push(row);
        }
        rows
    }
}
