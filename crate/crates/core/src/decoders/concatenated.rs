//! Level-by-level decoding of the pure-Y code of a standard surface code.
//!
//! Every Y-type error with syndrome `s` is `y0 + Σ u_i Δ^i` for a fixed
//! solution `y0` and vertex labels `u ∈ {0,1}^{g+1}`. On the block of edge
//! `(a, b)` that sum is the constant `u_a + u_b`, so each block is a noisy
//! repetition code for one cycle-code bit. Blocks are decoded by majority,
//! the resulting edge word by the triangle vote, and the outcome is turned
//! back into vertex labels.
//!
//! The vote output need not be a cut of `K_{g+1}`, so labels are read off by
//! a two-hop majority. For small `g` the top level is then decoded exactly:
//! every labelling is scored by the recovery weight it implies, with the
//! block weights of `y0` as soft input. Larger cycle codes instead improve
//! the labels by single flips while the total weight decreases.

use crate::codes::{
    y_code_structure_for, CycleCode, LogicalClass, PauliOperator, StabilizerCode, YCodeStructure,
};
use crate::gf2::{BitVec, LinearSolver};
use crate::{Error, Result};

use super::classical::vote;
use super::{ensure_syndrome, DecodeOutcome, Decoder};

/// Largest number of free vertex labels searched exhaustively.
pub const EXHAUSTIVE_LABEL_LIMIT: usize = 14;

#[derive(Clone, Debug)]
pub struct ConcatenatedDecoder {
    code: StabilizerCode,
    structure: YCodeStructure,
    solver: LinearSolver,
    cycle: CycleCode,
    block_masks: Vec<BitVec>,
    /// Block index of each cycle-code edge.
    edge_block: Vec<usize>,
    polish: bool,
}

impl ConcatenatedDecoder {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let structure = y_code_structure_for(code)?;
        Self::with_structure(structure, code)
    }

    pub fn with_structure(structure: YCodeStructure, code: &StabilizerCode) -> Result<Self> {
        let m = structure.cycle_order;
        let cycle = CycleCode::new(m);
        let mut edge_block = vec![usize::MAX; cycle.n_bits()];
        for (b, blk) in structure.repetition_blocks.iter().enumerate() {
            edge_block[cycle.edge_index(blk.edge.0, blk.edge.1)] = b;
        }
        if edge_block.contains(&usize::MAX) {
            return Err(Error::Internal("a cycle-code edge has no block".into()));
        }
        let block_masks = structure
            .repetition_blocks
            .iter()
            .map(|b| BitVec::from_indices(code.n(), b.qubits.iter().copied()))
            .collect();
        Ok(ConcatenatedDecoder {
            code: code.clone(),
            solver: LinearSolver::new(code.y_check_matrix()),
            structure,
            cycle,
            block_masks,
            edge_block,
            polish: true,
        })
    }

    /// Disables the final label search, leaving the plain level-by-level
    /// estimate.
    pub fn without_polish(mut self) -> Self {
        self.polish = false;
        self
    }

    pub fn structure(&self) -> &YCodeStructure {
        &self.structure
    }

    /// Y-type support reproducing `s`.
    pub fn decode_support(&self, s: &BitVec) -> Result<BitVec> {
        let y0 = self.solver.solve(s).ok_or(Error::UnattainableSyndrome)?;
        let m = self.structure.cycle_order;
        // ones[e] = weight of y0 on the block of edge e
        let ones: Vec<usize> = self
            .edge_block
            .iter()
            .map(|&b| y0.and(&self.block_masks[b]).count_ones())
            .collect();
        let lens: Vec<usize> = self
            .edge_block
            .iter()
            .map(|&b| self.block_masks[b].count_ones())
            .collect();
        let x = BitVec::from_indices(
            self.cycle.n_bits(),
            (0..self.cycle.n_bits()).filter(|&e| 2 * ones[e] > lens[e]),
        );
        let c = if m >= 3 {
            x.xor(&vote(&self.cycle, &self.cycle.syndrome(&x)))
        } else {
            x
        };
        let mut u = self.labels_from_edges(&c);
        if self.polish {
            if m - 1 <= EXHAUSTIVE_LABEL_LIMIT {
                self.search_labels(&mut u, &ones, &lens);
            } else {
                self.polish_labels(&mut u, &ones, &lens);
            }
        }
        let mut y = y0;
        for (e, &(a, b)) in self.cycle.edges().iter().enumerate() {
            if u[a] != u[b] {
                y.xor_assign(&self.block_masks[self.edge_block[e]]);
            }
        }
        Ok(y)
    }

    /// Vertex labels with `u_0 = 0`; `u_v` is the majority over the direct
    /// estimate `c_{0v}` and the two-hop estimates `c_{0w} + c_{wv}`, ties
    /// going to the direct one.
    fn labels_from_edges(&self, c: &BitVec) -> Vec<bool> {
        let m = self.structure.cycle_order;
        let edge = |a: usize, b: usize| c.get(self.cycle.edge_index(a, b));
        let mut u = vec![false; m];
        for (v, slot) in u.iter_mut().enumerate().skip(1) {
            let direct = edge(0, v);
            let mut yes = usize::from(direct);
            let mut total = 1;
            for w in (1..m).filter(|&w| w != v) {
                yes += usize::from(edge(0, w) ^ edge(w, v));
                total += 1;
            }
            *slot = if 2 * yes == total {
                direct
            } else {
                2 * yes > total
            };
        }
        u
    }

    /// Minimum-weight labelling over all `2^(m-1)` choices, visited in Gray
    /// order starting from `u`; ties keep the earlier candidate.
    fn search_labels(&self, u: &mut [bool], ones: &[usize], lens: &[usize]) {
        let m = u.len();
        // flip[v][w]: weight change on edge (v, w) when exactly one label flips
        let mut cut = vec![vec![0i64; m]; m];
        for (e, &(a, b)) in self.cycle.edges().iter().enumerate() {
            let (o, l) = (ones[e] as i64, lens[e] as i64);
            cut[a][b] = l - 2 * o;
            cut[b][a] = l - 2 * o;
        }
        let sign = |x: bool, y: bool| if x != y { -1 } else { 1 };
        let mut cur = u.to_vec();
        let (mut delta, mut best_delta) = (0i64, 0i64);
        let mut best = cur.clone();
        for step in 1u64..(1u64 << (m - 1)) {
            let v = step.trailing_zeros() as usize + 1;
            for w in (0..m).filter(|&w| w != v) {
                delta += sign(cur[v], cur[w]) * cut[v][w];
            }
            cur[v] = !cur[v];
            if delta < best_delta {
                best_delta = delta;
                best.copy_from_slice(&cur);
            }
        }
        u.copy_from_slice(&best);
    }

    /// Flips single labels (vertex 0 held fixed) while the recovery weight
    /// strictly drops, taking the largest drop each round.
    fn polish_labels(&self, u: &mut [bool], ones: &[usize], lens: &[usize]) {
        let cost = |u: &[bool]| -> usize {
            self.cycle
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| {
                    if u[a] != u[b] {
                        lens[e] - ones[e]
                    } else {
                        ones[e]
                    }
                })
                .sum()
        };
        let mut current = cost(u);
        loop {
            let mut best: Option<(usize, usize)> = None;
            for v in 1..u.len() {
                u[v] = !u[v];
                let c = cost(u);
                u[v] = !u[v];
                if c < current && best.is_none_or(|(_, bc)| c < bc) {
                    best = Some((v, c));
                }
            }
            match best {
                Some((v, c)) => {
                    u[v] = !u[v];
                    current = c;
                }
                None => break,
            }
        }
    }
}

impl Decoder for ConcatenatedDecoder {
    fn name(&self) -> String {
        "concatenated".into()
    }

    fn code(&self) -> &StabilizerCode {
        &self.code
    }

    fn decode(&self, s: &BitVec) -> Result<DecodeOutcome> {
        if s.len() != self.code.num_checks() {
            return Err(Error::LengthMismatch {
                expected: self.code.num_checks(),
                got: s.len(),
            });
        }
        let recovery = PauliOperator::y_type(self.decode_support(s)?);
        ensure_syndrome(&self.code, &recovery, s, "concatenated")?;
        Ok(DecodeOutcome {
            reference: recovery.clone(),
            recovery,
            verdict: LogicalClass::I,
            coset_scores: Vec::new(),
        })
    }
}

/// One-shot form of [`ConcatenatedDecoder`].
pub fn concatenated_y_decode(
    structure: &YCodeStructure,
    code: &StabilizerCode,
    s: &BitVec,
) -> Result<DecodeOutcome> {
    ConcatenatedDecoder::with_structure(structure.clone(), code)?.decode(s)
}
