//! Maximum-likelihood oracle by explicit enumeration of the stabilizer group.

use crate::codes::{LogicalClass, PauliOperator, StabilizerCode};
use crate::gf2::BitVec;
use crate::noise::BiasedNoiseModel;
use crate::{Error, Result};

use super::logsum::{LogAccumulator, Precision};
use super::{
    argmax_class, ensure_syndrome, xlogy, CanonicalFrame, CosetScore, DecodeOutcome, Decoder,
};

/// Largest code the oracle accepts.
pub const BRUTE_FORCE_MAX_QUBITS: usize = 16;

/// Enumerates all `2^(n-1)` stabilizers for each of the four logical cosets.
#[derive(Clone, Debug)]
pub struct BruteForceDecoder {
    code: StabilizerCode,
    log_probs: [f64; 4],
    frame: CanonicalFrame,
    /// Group elements as `(x mask, z mask)`.
    group: Vec<(u32, u32)>,
}

fn mask(v: &BitVec) -> u32 {
    v.iter_ones().fold(0u32, |m, i| m | (1 << i))
}

impl BruteForceDecoder {
    pub fn new(code: &StabilizerCode, model: &BiasedNoiseModel) -> Result<Self> {
        if code.n() > BRUTE_FORCE_MAX_QUBITS {
            return Err(Error::SizeGuard(format!(
                "brute force supports n <= {BRUTE_FORCE_MAX_QUBITS} (got {})",
                code.n()
            )));
        }
        let gens: Vec<(u32, u32)> = (0..code.num_checks())
            .map(|i| {
                let op = code.check_operator(i);
                (mask(op.x_bits()), mask(op.z_bits()))
            })
            .collect();
        let mut group = Vec::with_capacity(1 << gens.len());
        let mut cur = (0u32, 0u32);
        group.push(cur);
        for i in 1u64..(1u64 << gens.len()) {
            let g = gens[i.trailing_zeros() as usize];
            cur = (cur.0 ^ g.0, cur.1 ^ g.1);
            group.push(cur);
        }
        Ok(BruteForceDecoder {
            code: code.clone(),
            log_probs: model.log_probs(),
            frame: CanonicalFrame::new(code),
            group,
        })
    }

    /// Reference operator with syndrome `s` from two GF(2) solves.
    pub fn reference(&self, s: &BitVec) -> Result<PauliOperator> {
        self.frame.reference(&self.code, s)
    }

    fn log_prob_masks(&self, x: u32, z: u32) -> f64 {
        let n = self.code.n() as u32;
        let y = (x & z).count_ones();
        let xo = (x & !z).count_ones();
        let zo = (z & !x).count_ones();
        let id = n - (x | z).count_ones();
        let [li, lx, ly, lz] = self.log_probs;
        xlogy(id as f64, li) + xlogy(xo as f64, lx) + xlogy(y as f64, ly) + xlogy(zo as f64, lz)
    }

    /// `ln π(f G)` by summing over the whole group.
    pub fn coset_log_prob(&self, f: &PauliOperator) -> f64 {
        let (fx, fz) = (mask(f.x_bits()), mask(f.z_bits()));
        let mut acc = LogAccumulator::new(Precision::Double);
        for &(gx, gz) in &self.group {
            acc.add(self.log_prob_masks(fx ^ gx, fz ^ gz));
        }
        acc.value()
    }
}

impl Decoder for BruteForceDecoder {
    fn name(&self) -> String {
        "brute-force".into()
    }

    fn code(&self) -> &StabilizerCode {
        &self.code
    }

    fn decode(&self, s: &BitVec) -> Result<DecodeOutcome> {
        let reference = self.reference(s)?;
        let scores: Vec<CosetScore> = LogicalClass::ALL
            .iter()
            .map(|&class| CosetScore {
                class,
                log_prob: self.coset_log_prob(&reference.mul(&self.code.logical_rep(class))),
            })
            .collect();
        let verdict = argmax_class(&scores);
        let recovery = reference.mul(&self.code.logical_rep(verdict));
        ensure_syndrome(&self.code, &recovery, s, "brute-force")?;
        Ok(DecodeOutcome {
            recovery,
            reference,
            verdict,
            coset_scores: scores,
        })
    }
}

/// One-shot form of [`BruteForceDecoder`].
pub fn brute_force_ml_decode(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    s: &BitVec,
) -> Result<DecodeOutcome> {
    BruteForceDecoder::new(code, model)?.decode(s)
}
