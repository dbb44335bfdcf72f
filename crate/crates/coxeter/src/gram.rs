//! The cosine bilinear form of a Coxeter graph and its spectral
//! classification. This is the numerical oracle for the catalog recognizer:
//! connected spherical diagrams have positive definite forms, affine ones are
//! positive semidefinite with a one-dimensional kernel, everything else is
//! indefinite.

#![allow(clippy::needless_range_loop)]

use crate::classify::ClassifyError;
use crate::graph::{CoxeterGraph, PairLabel};

/// Spectral class of the Gram matrix at tolerance `1e-9 * n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramClass {
    PositiveDefinite,
    PositiveSemidefiniteDegenerate { corank: usize },
    Indefinite,
}

/// The symmetric matrix with 1 on the diagonal and, for each vertex pair,
/// 0 when the pair label is 2, `-cos(pi/m)` for finite label `m`, and -1
/// for infinity.
pub fn gram_matrix(g: &CoxeterGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let vs = g.vertices();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = 1.0;
        for j in (i + 1)..n {
            let entry = match g.pair_label(&vs[i], &vs[j]) {
                PairLabel::Finite(2) => 0.0,
                PairLabel::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                PairLabel::Infinity => -1.0,
            };
            a[i][j] = entry;
            a[j][i] = entry;
        }
    }
    a
}

/// Eigenvalues of a symmetric matrix via cyclic Jacobi sweeps, sorted
/// ascending. Exact enough for the tiny matrices that occur here: the
/// off-diagonal mass is driven below 1e-14 per entry.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    const EPS: f64 = 1e-14;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].abs());
            }
        }
        if off < EPS {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < EPS {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    let sign = if theta > 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Classifies the Gram form of a connected, nonempty graph by its spectrum.
pub fn gram_class(g: &CoxeterGraph) -> Result<GramClass, ClassifyError> {
    if g.is_empty() {
        return Err(ClassifyError::EmptyGraph);
    }
    if g.components().len() != 1 {
        return Err(ClassifyError::NotConnected);
    }
    let n = g.vertex_count();
    let eps = 1e-9 * n as f64;
    let eigs = symmetric_eigenvalues(&gram_matrix(g));
    if eigs.iter().any(|&l| l < -eps) {
        return Ok(GramClass::Indefinite);
    }
    let corank = eigs.iter().filter(|&&l| l.abs() <= eps).count();
    if corank == 0 {
        Ok(GramClass::PositiveDefinite)
    } else {
        Ok(GramClass::PositiveSemidefiniteDegenerate { corank })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::catalog;

    fn cat(s: &str) -> CoxeterGraph {
        catalog(&s.parse().unwrap()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn infinite_dihedral_form() {
        let g = cat("tA1");
        let m = gram_matrix(&g);
        assert_eq!(m, vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let eigs = symmetric_eigenvalues(&m);
        assert!(close(eigs[0], 0.0) && close(eigs[1], 2.0));
        assert_eq!(
            gram_class(&g).unwrap(),
            GramClass::PositiveSemidefiniteDegenerate { corank: 1 }
        );
    }

    #[test]
    fn a2_form() {
        let g = cat("A:2");
        let m = gram_matrix(&g);
        assert!(close(m[0][1], -0.5));
        let eigs = symmetric_eigenvalues(&m);
        assert!(close(eigs[0], 0.5) && close(eigs[1], 1.5));
        assert_eq!(gram_class(&g).unwrap(), GramClass::PositiveDefinite);
    }

    #[test]
    fn isolated_vertices_give_identity_matrix() {
        let g = CoxeterGraph::parse("vertex a\nvertex b").unwrap();
        assert_eq!(gram_matrix(&g), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(gram_class(&g), Err(ClassifyError::NotConnected));
        assert_eq!(
            gram_class(&CoxeterGraph::new()),
            Err(ClassifyError::EmptyGraph)
        );
    }

    #[test]
    fn all_fives_triangle_is_indefinite() {
        let g =
            CoxeterGraph::parse("vertex a\nvertex b\nvertex c\nedge a b 5\nedge b c 5\nedge a c 5")
                .unwrap();
        let eigs = symmetric_eigenvalues(&gram_matrix(&g));
        // Smallest eigenvalue is 1 - 2cos(pi/5) on the all-ones direction.
        let expected = 1.0 - 2.0 * (std::f64::consts::PI / 5.0).cos();
        assert!(close(eigs[0], expected), "{} vs {}", eigs[0], expected);
        assert!(expected < -0.61 && expected > -0.62);
        assert_eq!(gram_class(&g).unwrap(), GramClass::Indefinite);
    }

    #[test]
    fn affine_catalogs_have_corank_one() {
        for s in [
            "tA:3", "tB:4", "tC:2", "tD:5", "tE6", "tE7", "tE8", "tF4", "tG2",
        ] {
            assert_eq!(
                gram_class(&cat(s)).unwrap(),
                GramClass::PositiveSemidefiniteDegenerate { corank: 1 },
                "{s}"
            );
        }
    }

    #[test]
    fn spherical_catalogs_are_positive_definite() {
        for s in [
            "A:5", "B:6", "D:7", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2:50",
        ] {
            assert_eq!(
                gram_class(&cat(s)).unwrap(),
                GramClass::PositiveDefinite,
                "{s}"
            );
        }
    }

    #[test]
    fn single_vertex_is_positive_definite() {
        let g = CoxeterGraph::parse("vertex a").unwrap();
        assert_eq!(gram_class(&g).unwrap(), GramClass::PositiveDefinite);
    }
}
