//! Abelianization through the Smith normal form of the integer relation
//! matrix, with exact big-integer arithmetic. The relation matrix has one
//! column per vertex, a row `2 e_v` for each vertex and a row `m (e_u + e_v)`
//! for each pair with finite label `m` (implicit 2s included; infinity pairs
//! contribute nothing).

#![allow(clippy::needless_range_loop)]

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::graph::{CoxeterGraph, PairLabel};

/// Invariant-factor description of a finitely generated abelian group: the
/// torsion factors (> 1, each dividing the next) and the free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub factors: Vec<BigUint>,
    pub free_rank: usize,
}

/// Computes the abelianization of the Coxeter group presented by `g`. For
/// Coxeter groups the result is always `(Z/2Z)^k` with free rank 0.
pub fn snf_abelianization(g: &CoxeterGraph) -> AbelianInvariants {
    let vs = g.vertices();
    let n = vs.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[i] = BigInt::from(2);
        rows.push(row);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if let PairLabel::Finite(m) = g.pair_label(&vs[i], &vs[j]) {
                let mut row = vec![BigInt::zero(); n];
                row[i] = BigInt::from(m);
                row[j] = BigInt::from(m);
                rows.push(row);
            }
        }
    }
    let diagonal = smith_diagonal(rows, n);
    let rank = diagonal.len();
    let factors = diagonal
        .into_iter()
        .filter(|d| d > &BigInt::from(1))
        .map(|d| d.to_biguint().expect("diagonal normalized positive"))
        .collect();
    AbelianInvariants {
        factors,
        free_rank: n - rank,
    }
}

/// Reduces an integer matrix to Smith normal form and returns the nonzero
/// diagonal, normalized positive and in divisibility order. Pivots are chosen
/// as the smallest-magnitude nonzero entry of the remaining submatrix.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = pivot_position(&m, k, cols) else {
            break;
        };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        loop {
            clear_pivot_cross(&mut m, k, cols);
            // Divisibility sweep: the pivot must divide the rest of the
            // submatrix, otherwise fold an offending row in and reduce again.
            let d = m[k][k].clone();
            let mut offender = None;
            'search: for i in (k + 1)..rows {
                for j in (k + 1)..cols {
                    if !(&m[i][j] % &d).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for jj in k..cols {
                        let t = m[i][jj].clone();
                        m[k][jj] += t;
                    }
                }
                None => break,
            }
        }
        if m[k][k].sign() == Sign::Minus {
            let v = -m[k][k].clone();
            m[k][k] = v;
        }
        diag.push(m[k][k].clone());
        k += 1;
    }
    diag
}

fn pivot_position(m: &[Vec<BigInt>], k: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..cols {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if m[i][j].magnitude() < m[bi][bj].magnitude() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Zeroes column k below the pivot and row k right of the pivot with
/// elementary operations, keeping the smallest remainder as the new pivot
/// whenever a division is inexact.
fn clear_pivot_cross(m: &mut [Vec<BigInt>], k: usize, cols: usize) {
    let rows = m.len();
    loop {
        let mut clean = true;
        for i in (k + 1)..rows {
            if m[i][k].is_zero() {
                continue;
            }
            let q = &m[i][k] / &m[k][k];
            if !q.is_zero() {
                for j in k..cols {
                    let t = &m[k][j] * &q;
                    m[i][j] -= t;
                }
            }
            if !m[i][k].is_zero() {
                m.swap(i, k);
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        for j in (k + 1)..cols {
            if m[k][j].is_zero() {
                continue;
            }
            let q = &m[k][j] / &m[k][k];
            if !q.is_zero() {
                for i in k..rows {
                    let t = &m[i][k] * &q;
                    m[i][j] -= t;
                }
            }
            if !m[k][j].is_zero() {
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
                clean = false;
            }
        }
        if clean {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::catalog;

    fn cat(s: &str) -> CoxeterGraph {
        catalog(&s.parse().unwrap()).unwrap()
    }

    fn two_power(k: usize) -> Vec<BigUint> {
        vec![BigUint::from(2u32); k]
    }

    #[test]
    fn smith_diagonal_of_a_known_matrix() {
        // [[2, 0], [0, 2], [3, 3]] has invariant factors 1, 2.
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(3)],
        ];
        let d = smith_diagonal(m, 2);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
        ];
        let d = smith_diagonal(m, 2);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn coxeter_abelianizations() {
        assert_eq!(
            snf_abelianization(&cat("tC:2")),
            AbelianInvariants {
                factors: two_power(3),
                free_rank: 0
            }
        );
        assert_eq!(
            snf_abelianization(&cat("A:3")),
            AbelianInvariants {
                factors: two_power(1),
                free_rank: 0
            }
        );
        assert_eq!(
            snf_abelianization(&CoxeterGraph::new()),
            AbelianInvariants {
                factors: vec![],
                free_rank: 0
            }
        );
        assert_eq!(
            snf_abelianization(&cat("tA1")),
            AbelianInvariants {
                factors: two_power(2),
                free_rank: 0
            }
        );
    }
}
