//! Exact maximum-likelihood decoding under pure Y noise.
//!
//! Under pure Y noise only Y-type operators have nonzero probability, so the
//! decoder compares the two cosets `f_s G_Y` and `f_s L G_Y`, where `G_Y` is
//! the group of Y-type stabilizers (`2^(g-1)` elements on standard codes,
//! trivial on rotated ones) and `L` the Y-type logical.

use crate::codes::{
    construct_y_logical, construct_y_stabilizer_group, partial_recovery, residual_recovery,
    FamilyTag, LogicalClass, PauliOperator, StabilizerCode,
};
use crate::gf2::{BitVec, LinearSolver};
use crate::noise::BiasedNoiseModel;
use crate::{Error, Result};

use super::logsum::{LogAccumulator, Precision};
use super::{ensure_syndrome, xlogy, CanonicalFrame, CosetScore, DecodeOutcome, Decoder};

/// How the reference recovery `f_s` is assembled from the syndrome.
#[derive(Clone, Debug)]
enum Candidate {
    /// One Y-type destabilizer per check; `f_s` is the product over defects.
    Destabilizers(Vec<BitVec>),
    /// Partial recoveries for non-bottom checks; the bottom-row residual
    /// must cancel (square codes).
    PartialCancelling(Vec<Option<BitVec>>),
    /// Partial recoveries, then a GF(2) solve for the bottom-row residual.
    PartialThenSolve(Vec<Option<BitVec>>),
}

/// Exact pure-Y ML decoder with precomputed destabilizers and Y-stabilizers.
#[derive(Clone, Debug)]
pub struct ExactYDecoder {
    code: StabilizerCode,
    p: f64,
    precision: Precision,
    solver: LinearSolver,
    candidate: Candidate,
    y_logical: BitVec,
    logical_class: LogicalClass,
    /// Every element of `G_Y`, identity first.
    y_stabilizers: Vec<BitVec>,
    frame: CanonicalFrame,
}

impl ExactYDecoder {
    pub fn new(code: &StabilizerCode, model: &BiasedNoiseModel) -> Result<Self> {
        if !model.is_pure_y() {
            return Err(Error::InvalidArgument(
                "exact Y decoder needs pure Y noise (eta = inf)".into(),
            ));
        }
        let solver = LinearSolver::new(code.y_check_matrix());
        let checks = code.num_checks();
        let candidate = match code.family().tag {
            FamilyTag::RotatedOdd => Candidate::Destabilizers(
                (0..checks)
                    .map(|i| {
                        solver
                            .solve(&BitVec::from_indices(checks, [i]))
                            .ok_or_else(|| Error::Internal("rotated check not Y-flippable".into()))
                    })
                    .collect::<Result<_>>()?,
            ),
            FamilyTag::Coprime => {
                let partials = partials(code);
                let residuals: Vec<Option<BitVec>> = (0..checks)
                    .map(|i| residual_recovery(code, code.check_coord(i)))
                    .collect();
                let destab = (0..checks)
                    .map(|i| {
                        let mut v = match &partials[i] {
                            Some(p) => p.clone(),
                            None => return residuals[i].clone().ok_or_else(missing_residual),
                        };
                        let s = code.y_syndrome(&v);
                        for f in s.iter_ones().filter(|&f| f != i) {
                            v.xor_assign(residuals[f].as_ref().ok_or_else(missing_residual)?);
                        }
                        Ok(v)
                    })
                    .collect::<Result<_>>()?;
                Candidate::Destabilizers(destab)
            }
            FamilyTag::Square => Candidate::PartialCancelling(partials(code)),
            FamilyTag::GcdG => Candidate::PartialThenSolve(partials(code)),
        };
        let y_logical = construct_y_logical(code);
        let logical_class = code.logical_class(&y_logical);
        let gens: Vec<BitVec> = construct_y_stabilizer_group(code)
            .into_iter()
            .map(|s| s.x_bits().clone())
            .collect();
        Ok(ExactYDecoder {
            code: code.clone(),
            p: model.p(),
            precision: Precision::Double,
            solver,
            candidate,
            y_logical: y_logical.x_bits().clone(),
            logical_class,
            y_stabilizers: group_elements(code.n(), &gens),
            frame: CanonicalFrame::new(code),
        })
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// Class of the Y-type logical used as the second coset.
    pub fn logical_class(&self) -> LogicalClass {
        self.logical_class
    }

    pub fn y_logical(&self) -> &BitVec {
        &self.y_logical
    }

    pub fn y_stabilizers(&self) -> &[BitVec] {
        &self.y_stabilizers
    }

    /// Y-type support with the given syndrome, or an error if none exists.
    pub fn reference(&self, s: &BitVec) -> Result<BitVec> {
        if s.len() != self.code.num_checks() {
            return Err(Error::LengthMismatch {
                expected: self.code.num_checks(),
                got: s.len(),
            });
        }
        if !self.solver.is_consistent(s) {
            return Err(Error::UnattainableSyndrome);
        }
        let n = self.code.n();
        let f = match &self.candidate {
            Candidate::Destabilizers(d) => {
                let mut f = BitVec::zeros(n);
                for i in s.iter_ones() {
                    f.xor_assign(&d[i]);
                }
                f
            }
            Candidate::PartialCancelling(parts) => {
                let f = xor_partials(n, parts, s);
                if &self.code.y_syndrome(&f) != s {
                    return Err(Error::Internal(
                        "bottom-row residuals did not cancel".into(),
                    ));
                }
                f
            }
            Candidate::PartialThenSolve(parts) => {
                let mut f = xor_partials(n, parts, s);
                let residual = self.code.y_syndrome(&f).xor(s);
                let fix = self
                    .solver
                    .solve(&residual)
                    .ok_or(Error::UnattainableSyndrome)?;
                f.xor_assign(&fix);
                f
            }
        };
        Ok(f)
    }

    /// `ln π(f G_Y)` for Y-type support `f`.
    pub fn coset_log_prob(&self, f: &BitVec) -> f64 {
        let n = self.code.n();
        let mut hist = vec![0u64; n + 1];
        for g in &self.y_stabilizers {
            hist[weight_of_xor(f, g)] += 1;
        }
        let (lp, lq) = (self.p.ln(), (1.0 - self.p).ln());
        let mut acc = LogAccumulator::new(self.precision);
        for (w, &count) in hist.iter().enumerate() {
            if count > 0 {
                acc.add((count as f64).ln() + xlogy(w as f64, lp) + xlogy((n - w) as f64, lq));
            }
        }
        acc.value()
    }
}

fn missing_residual() -> Error {
    Error::Internal("coprime residual path did not terminate".into())
}

fn partials(code: &StabilizerCode) -> Vec<Option<BitVec>> {
    (0..code.num_checks())
        .map(|i| partial_recovery(code, code.check_coord(i)))
        .collect()
}

fn xor_partials(n: usize, parts: &[Option<BitVec>], s: &BitVec) -> BitVec {
    let mut f = BitVec::zeros(n);
    for i in s.iter_ones() {
        if let Some(p) = &parts[i] {
            f.xor_assign(p);
        }
    }
    f
}

#[inline]
fn weight_of_xor(a: &BitVec, b: &BitVec) -> usize {
    a.words()
        .iter()
        .zip(b.words())
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// All `2^r` products of `gens`, in Gray-code order starting at the identity.
fn group_elements(n: usize, gens: &[BitVec]) -> Vec<BitVec> {
    let mut out = Vec::with_capacity(1 << gens.len());
    let mut cur = BitVec::zeros(n);
    out.push(cur.clone());
    for i in 1u64..(1u64 << gens.len()) {
        cur.xor_assign(&gens[i.trailing_zeros() as usize]);
        out.push(cur.clone());
    }
    out
}

impl Decoder for ExactYDecoder {
    fn name(&self) -> String {
        "exact-y".into()
    }

    fn code(&self) -> &StabilizerCode {
        &self.code
    }

    fn decode(&self, s: &BitVec) -> Result<DecodeOutcome> {
        let f = self.reference(s)?;
        let scores = vec![
            CosetScore {
                class: LogicalClass::I,
                log_prob: self.coset_log_prob(&f),
            },
            CosetScore {
                class: self.logical_class,
                log_prob: self.coset_log_prob(&f.xor(&self.y_logical)),
            },
        ];
        let reference = PauliOperator::y_type(f);
        let verdict = self.frame.argmax(&self.code, s, &reference, &scores)?;
        let recovery = if verdict == LogicalClass::I {
            reference.clone()
        } else {
            PauliOperator::y_type(reference.x_bits().xor(&self.y_logical))
        };
        ensure_syndrome(&self.code, &recovery, s, "exact-y")?;
        Ok(DecodeOutcome {
            recovery,
            reference,
            verdict,
            coset_scores: scores,
        })
    }
}

/// One-shot form of [`ExactYDecoder`].
pub fn exact_ml_y_decode(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    s: &BitVec,
) -> Result<DecodeOutcome> {
    ExactYDecoder::new(code, model)?.decode(s)
}
