//! Classical codes appearing in the Y-type decomposition.

use crate::gf2::{BitMatrix, BitVec};
use crate::{Error, Result};

/// The cycle code on the edges of the complete graph `K_m`, checked by every
/// triangle.
///
/// Edges are ordered lexicographically `(a, b)` with `a < b`; triangles
/// likewise `(a, b, c)` with `a < b < c`.
#[derive(Clone, Debug)]
pub struct CycleCode {
    m: usize,
    edges: Vec<(usize, usize)>,
    triangles: Vec<(usize, usize, usize)>,
    checks: BitMatrix,
}

/// Builds the cycle code on `K_m`.
pub fn cycle_code(m: usize) -> Result<CycleCode> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "cycle code needs m >= 3 (got {m})"
        )));
    }
    Ok(CycleCode::new(m))
}

impl CycleCode {
    /// Unchecked constructor; also accepts `m = 2` (a single unchecked edge).
    pub(crate) fn new(m: usize) -> CycleCode {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                edges.push((a, b));
            }
        }
        let mut triangles = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    triangles.push((a, b, c));
                }
            }
        }
        let e = edges.len();
        let rows: Vec<BitVec> = triangles
            .iter()
            .map(|&(a, b, c)| {
                BitVec::from_indices(
                    e,
                    [
                        edge_index(m, a, b),
                        edge_index(m, b, c),
                        edge_index(m, a, c),
                    ],
                )
            })
            .collect();
        let checks = BitMatrix::from_rows(e, &rows);
        CycleCode {
            m,
            edges,
            triangles,
            checks,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_bits(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[(usize, usize, usize)] {
        &self.triangles
    }

    /// Redundant triangle check matrix, one row per triangle.
    pub fn checks(&self) -> &BitMatrix {
        &self.checks
    }

    pub fn independent_checks(&self) -> usize {
        self.checks.rank()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> usize {
        edge_index(self.m, a, b)
    }

    /// Triangle syndromes of an edge pattern.
    pub fn syndrome(&self, edges: &BitVec) -> BitVec {
        self.checks.mul_vec(edges)
    }
}

/// Lexicographic index of edge `{a, b}` in `K_m`.
pub fn edge_index(m: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    assert!(a != b && b < m, "bad edge ({a},{b}) for K_{m}");
    // edges before row a: sum_{i<a} (m-1-i)
    a * (2 * m - a - 1) / 2 + (b - a - 1)
}
