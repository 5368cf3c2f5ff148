//! Decoders: classical repetition/cycle decoders, the concatenated pure-Y
//! decoder, the exact pure-Y maximum-likelihood decoder, the rotated-layout
//! MPS decoder, and a brute-force ML oracle.

mod brute_force;
mod classical;
mod concatenated;
mod exact_y;
mod logsum;
mod mps;
mod strings;

pub use brute_force::{brute_force_ml_decode, BruteForceDecoder, BRUTE_FORCE_MAX_QUBITS};
pub use classical::{cycle_decode, cycle_failure_bound, repetition_decode, CycleDecoder};
pub use concatenated::{concatenated_y_decode, ConcatenatedDecoder, EXHAUSTIVE_LABEL_LIMIT};
pub use exact_y::{exact_ml_y_decode, ExactYDecoder};
pub use logsum::{log_sum_exp, LogAccumulator, Precision};
pub use mps::{mps_decode_rotated, MpsDecoder};
pub use strings::boundary_strings;

use serde::{Deserialize, Serialize};

use crate::codes::{LogicalClass, PauliOperator, StabilizerCode};
use crate::gf2::{BitVec, LinearSolver};
use crate::Result;

/// Log-probability of one logical coset, relative to the decoder's reference
/// recovery: class `c` scores the coset of `reference · L_c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetScore {
    pub class: LogicalClass,
    pub log_prob: f64,
}

#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Operator to apply; its syndrome equals the input syndrome.
    pub recovery: PauliOperator,
    /// Fixed operator with the input syndrome that the scores refer to.
    pub reference: PauliOperator,
    /// Chosen class relative to `reference`.
    pub verdict: LogicalClass,
    /// Empty for decoders that do not score cosets.
    pub coset_scores: Vec<CosetScore>,
}

impl DecodeOutcome {
    pub fn score(&self, class: LogicalClass) -> Option<f64> {
        self.coset_scores
            .iter()
            .find(|c| c.class == class)
            .map(|c| c.log_prob)
    }
}

/// A syndrome decoder bound to one code.
pub trait Decoder: Send + Sync {
    /// Short identifier used in output files.
    fn name(&self) -> String;
    fn code(&self) -> &StabilizerCode;
    fn decode(&self, syndrome: &BitVec) -> Result<DecodeOutcome>;
}

/// Log-scores closer than this to the best one count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Picks the best-scoring class; ties (within [`TIE_TOLERANCE`]) go to the
/// earlier class in `LogicalClass` order.
pub(crate) fn argmax_class(scores: &[CosetScore]) -> LogicalClass {
    let best = scores
        .iter()
        .map(|s| s.log_prob)
        .fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .filter(|s| best == f64::NEG_INFINITY || s.log_prob >= best - TIE_TOLERANCE)
        .map(|s| s.class)
        .min()
        .expect("at least one score")
}

/// Fixed operator per syndrome from two GF(2) solves. Decoders rank tied
/// classes relative to it, so verdicts do not depend on their own reference.
#[derive(Clone, Debug)]
pub(crate) struct CanonicalFrame {
    x_solver: LinearSolver,
    z_solver: LinearSolver,
}

impl CanonicalFrame {
    pub(crate) fn new(code: &StabilizerCode) -> Self {
        CanonicalFrame {
            x_solver: LinearSolver::new(code.x_checks()),
            z_solver: LinearSolver::new(code.z_checks()),
        }
    }

    pub(crate) fn reference(&self, code: &StabilizerCode, s: &BitVec) -> Result<PauliOperator> {
        let nx = code.x_checks().rows();
        let nz = code.z_checks().rows();
        if s.len() != nx + nz {
            return Err(crate::Error::LengthMismatch {
                expected: nx + nz,
                got: s.len(),
            });
        }
        let z = self
            .x_solver
            .solve(&s.slice(0, nx))
            .ok_or_else(|| crate::Error::Internal("X-check syndrome unsolvable".into()))?;
        let x = self
            .z_solver
            .solve(&s.slice(nx, nz))
            .ok_or_else(|| crate::Error::Internal("Z-check syndrome unsolvable".into()))?;
        PauliOperator::from_bits(x, z)
    }

    /// [`argmax_class`] with classes of `reference` re-expressed relative to
    /// the canonical operator for `s`.
    pub(crate) fn argmax(
        &self,
        code: &StabilizerCode,
        s: &BitVec,
        reference: &PauliOperator,
        scores: &[CosetScore],
    ) -> Result<LogicalClass> {
        let shift = code.logical_class(&reference.mul(&self.reference(code, s)?));
        let moved: Vec<CosetScore> = scores
            .iter()
            .map(|c| CosetScore {
                class: c.class.mul(shift),
                log_prob: c.log_prob,
            })
            .collect();
        Ok(argmax_class(&moved).mul(shift))
    }
}

/// `w · ln(p)` with the convention `0 · ln(0) = 0`.
#[inline]
pub(crate) fn xlogy(w: f64, ln_p: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        w * ln_p
    }
}

/// Result check shared by all decoders.
pub(crate) fn ensure_syndrome(
    code: &StabilizerCode,
    recovery: &PauliOperator,
    syndrome: &BitVec,
    who: &str,
) -> Result<()> {
    if &code.syndrome(recovery)? != syndrome {
        return Err(crate::Error::Internal(format!(
            "{who}: recovery does not reproduce the syndrome"
        )));
    }
    Ok(())
}

/// Whether `recovery · error` acts trivially on the code space.
pub fn is_success(code: &StabilizerCode, recovery: &PauliOperator, error: &PauliOperator) -> bool {
    code.is_stabilizer(&recovery.mul(error))
}
