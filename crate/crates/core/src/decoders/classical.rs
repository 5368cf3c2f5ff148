//! Majority-vote repetition decoding and the triangle-vote cycle decoder.

use crate::codes::CycleCode;
use crate::gf2::{BitVec, LinearSolver};
use crate::{Error, Result};

/// Majority vote; an exact tie returns 0.
pub fn repetition_decode(bits: &BitVec) -> bool {
    2 * bits.count_ones() > bits.len()
}

/// Estimates the edge error on `K_m` from all triangle syndromes (given in
/// lexicographic triangle order). Edge `(a, b)` is flagged iff more than half
/// of the `m - 2` triangles through it fire; a tie leaves it unflagged.
pub fn cycle_decode(m: usize, triangle_syndromes: &BitVec) -> Result<BitVec> {
    CycleDecoder::new(m)?.decode(triangle_syndromes)
}

/// [`cycle_decode`] with the code and consistency solver built once.
pub struct CycleDecoder {
    code: CycleCode,
    solver: LinearSolver,
}

impl CycleDecoder {
    pub fn new(m: usize) -> Result<Self> {
        let code = crate::codes::cycle_code(m)?;
        let solver = LinearSolver::new(code.checks());
        Ok(CycleDecoder { code, solver })
    }

    pub fn code(&self) -> &CycleCode {
        &self.code
    }

    pub fn decode(&self, triangle_syndromes: &BitVec) -> Result<BitVec> {
        if triangle_syndromes.len() != self.code.triangles().len() {
            return Err(Error::LengthMismatch {
                expected: self.code.triangles().len(),
                got: triangle_syndromes.len(),
            });
        }
        if !self.solver.is_consistent(triangle_syndromes) {
            return Err(Error::InconsistentSyndrome(
                "triangle syndromes are not produced by any edge pattern".into(),
            ));
        }
        Ok(vote(&self.code, triangle_syndromes))
    }
}

/// The vote itself, without the consistency check.
pub(crate) fn vote(code: &CycleCode, triangle_syndromes: &BitVec) -> BitVec {
    let m = code.m();
    let mut fired = vec![0usize; code.n_bits()];
    for (t, &(a, b, c)) in code.triangles().iter().enumerate() {
        if triangle_syndromes.get(t) {
            fired[code.edge_index(a, b)] += 1;
            fired[code.edge_index(b, c)] += 1;
            fired[code.edge_index(a, c)] += 1;
        }
    }
    BitVec::from_indices(
        code.n_bits(),
        fired
            .iter()
            .enumerate()
            .filter(|(_, &f)| 2 * f > m - 2)
            .map(|(e, _)| e),
    )
}

/// Upper bound `2m² exp(-2ε²m)` on the cycle decoder's misidentification
/// probability, clipped to `[0, 1]`, with `ε = 1/2 - 2p(1-p)`.
pub fn cycle_failure_bound(m: usize, p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "cycle failure bound needs 0 <= p < 1/2 (got {p})"
        )));
    }
    let eps = 0.5 - 2.0 * p * (1.0 - p);
    let m = m as f64;
    Ok((2.0 * m * m * (-2.0 * eps * eps * m).exp()).clamp(0.0, 1.0))
}
