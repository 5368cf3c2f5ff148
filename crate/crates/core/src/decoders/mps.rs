//! Approximate ML decoding of rotated codes by boundary-MPS contraction.

use crate::codes::{Layout, LogicalClass, PauliOperator, StabilizerCode};
use crate::gf2::BitVec;
use crate::noise::BiasedNoiseModel;
use crate::tensor::coset_log_prob;
use crate::{Error, Result};

use super::strings::boundary_strings;
use super::{ensure_syndrome, CanonicalFrame, CosetScore, DecodeOutcome, Decoder};

#[derive(Clone, Debug)]
pub struct MpsDecoder {
    code: StabilizerCode,
    model: BiasedNoiseModel,
    chi: usize,
    strings: Vec<PauliOperator>,
    frame: CanonicalFrame,
}

impl MpsDecoder {
    pub fn new(code: &StabilizerCode, model: &BiasedNoiseModel, chi: usize) -> Result<Self> {
        if code.layout() != Layout::Rotated {
            return Err(Error::InvalidArgument(
                "MPS decoder supports rotated codes only".into(),
            ));
        }
        if chi == 0 {
            return Err(Error::InvalidArgument("chi must be at least 1".into()));
        }
        Ok(MpsDecoder {
            code: code.clone(),
            model: *model,
            chi,
            strings: boundary_strings(code),
            frame: CanonicalFrame::new(code),
        })
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    /// Product of the boundary strings of all flagged checks.
    pub fn reference(&self, s: &BitVec) -> Result<PauliOperator> {
        if s.len() != self.code.num_checks() {
            return Err(Error::LengthMismatch {
                expected: self.code.num_checks(),
                got: s.len(),
            });
        }
        let mut f = PauliOperator::identity(self.code.n());
        for i in s.iter_ones() {
            f.mul_assign(&self.strings[i]);
        }
        Ok(f)
    }

    /// Approximate `ln π` of the four cosets `f L_c G`.
    pub fn coset_scores(&self, f: &PauliOperator) -> Result<Vec<CosetScore>> {
        LogicalClass::ALL
            .iter()
            .map(|&class| {
                Ok(CosetScore {
                    class,
                    log_prob: coset_log_prob(
                        &self.code,
                        &self.model,
                        &f.mul(&self.code.logical_rep(class)),
                        self.chi,
                    )?,
                })
            })
            .collect()
    }
}

impl Decoder for MpsDecoder {
    fn name(&self) -> String {
        "mps".into()
    }

    fn code(&self) -> &StabilizerCode {
        &self.code
    }

    fn decode(&self, s: &BitVec) -> Result<DecodeOutcome> {
        let reference = self.reference(s)?;
        let scores = self.coset_scores(&reference)?;
        let verdict = self.frame.argmax(&self.code, s, &reference, &scores)?;
        let recovery = reference.mul(&self.code.logical_rep(verdict));
        ensure_syndrome(&self.code, &recovery, s, "mps")?;
        Ok(DecodeOutcome {
            recovery,
            reference,
            verdict,
            coset_scores: scores,
        })
    }
}

/// One-shot form of [`MpsDecoder`].
pub fn mps_decode_rotated(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    s: &BitVec,
    chi: usize,
) -> Result<DecodeOutcome> {
    MpsDecoder::new(code, model, chi)?.decode(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{is_success, BruteForceDecoder, ExactYDecoder};
    use crate::noise::trial_rng;

    #[test]
    fn zero_noise_zero_syndrome() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::depolarizing(0.0).unwrap();
        let out = mps_decode_rotated(&code, &m, &BitVec::zeros(8), 4).unwrap();
        assert_eq!(out.verdict, LogicalClass::I);
        assert!(out.score(LogicalClass::I).unwrap().abs() < 1e-12);
        for c in [LogicalClass::X, LogicalClass::Y, LogicalClass::Z] {
            assert_eq!(out.score(c).unwrap(), f64::NEG_INFINITY);
        }
    }

    #[test]
    fn rejects_standard_layout_and_zero_chi() {
        let m = BiasedNoiseModel::depolarizing(0.1).unwrap();
        assert!(MpsDecoder::new(&StabilizerCode::standard(3, 3).unwrap(), &m, 4).is_err());
        assert!(MpsDecoder::new(&StabilizerCode::rotated(3, 3).unwrap(), &m, 0).is_err());
    }

    #[test]
    fn matches_brute_force_scores() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::depolarizing(0.15).unwrap();
        let mps = MpsDecoder::new(&code, &m, 64).unwrap();
        let bf = BruteForceDecoder::new(&code, &m).unwrap();
        for t in 0..50 {
            let e = m.sample_error(9, &mut trial_rng(3, t));
            let s = code.syndrome(&e).unwrap();
            let a = mps.decode(&s).unwrap();
            // compare scores on the brute-force reference, class by class
            let shift = code.logical_class(&a.reference.mul(&bf.reference(&s).unwrap()));
            let b = bf.decode(&s).unwrap();
            for c in LogicalClass::ALL {
                let sa = a.score(c).unwrap();
                let sb = b.score(c.mul(shift)).unwrap();
                assert!(((sa - sb).exp() - 1.0).abs() < 1e-10, "{sa} {sb}");
            }
            // equal-score cosets may be broken differently; the chosen score must
            // still be the maximum
            let best = b
                .coset_scores
                .iter()
                .map(|c| c.log_prob)
                .fold(f64::NEG_INFINITY, f64::max);
            let chosen = b.score(a.verdict.mul(shift)).unwrap();
            assert!(((chosen - best).exp() - 1.0).abs() < 1e-10);
            if a.verdict.mul(shift) == b.verdict {
                assert_eq!(
                    is_success(&code, &a.recovery, &e),
                    is_success(&code, &b.recovery, &e)
                );
            }
        }
    }

    #[test]
    fn chi_one_is_exact_for_pure_y() {
        let code = StabilizerCode::rotated(5, 5).unwrap();
        let m = BiasedNoiseModel::pure_y(0.3).unwrap();
        let mps = MpsDecoder::new(&code, &m, 1).unwrap();
        let ex = ExactYDecoder::new(&code, &m).unwrap();
        for t in 0..100 {
            let e = m.sample_error(25, &mut trial_rng(9, t));
            let s = code.syndrome(&e).unwrap();
            let a = mps.decode(&s).unwrap();
            let b = ex.decode(&s).unwrap();
            assert!(code.is_stabilizer(&a.recovery.mul(&b.recovery)));
        }
    }
}
