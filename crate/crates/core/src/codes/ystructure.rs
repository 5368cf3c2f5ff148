//! Y-type operators of standard surface codes.
//!
//! Reflected diagonal paths on the doubled grid give the Y-type logical, the
//! Y-type stabilizers, the extended diagonals that split the qubits into
//! repetition blocks, and the partial/residual recovery operators used by
//! the exact pure-Y decoder.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::classical::CycleCode;
use super::lattice::{gcd, Layout, StabilizerCode};
use super::pauli::PauliOperator;
use crate::gf2::BitVec;
use crate::{Error, Result};

/// Minimum weight of a Y-type logical.
pub fn y_distance(j: usize, k: usize, layout: Layout) -> Result<usize> {
    validate(j, k, layout)?;
    Ok(match layout {
        Layout::Standard => {
            let g = gcd(j, k);
            (2 * g - 1) * j * k / (g * g)
        }
        Layout::Rotated => j * k,
    })
}

/// Number of Y-type logical operators (equivalently of Y-type stabilizers).
pub fn y_logical_count(j: usize, k: usize, layout: Layout) -> Result<u64> {
    validate(j, k, layout)?;
    Ok(match layout {
        Layout::Standard => 1u64 << (gcd(j, k) - 1),
        Layout::Rotated => 1,
    })
}

pub(crate) fn validate(j: usize, k: usize, layout: Layout) -> Result<()> {
    match layout {
        Layout::Standard if j < 2 || k < 2 => Err(Error::InvalidDimensions(format!(
            "standard code needs j, k >= 2 (got {j}x{k})"
        ))),
        Layout::Rotated if j < 3 || k < 3 || j.is_multiple_of(2) || k.is_multiple_of(2) => Err(
            Error::InvalidDimensions(format!("rotated code needs odd j, k >= 3 (got {j}x{k})")),
        ),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stop {
    /// Run until the path reaches a corner of the grid.
    Corner,
    /// Also stop as soon as the path stands on the last row.
    BottomRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ending {
    Corner,
    Cycle,
    BottomRow,
}

/// Diagonal walk on the qubit cells of a `rows×cols` doubled grid.
///
/// Each step moves by `(dr, dc)`. When the row would leave the grid the walk
/// slides two cells along the boundary and flips `dr`; likewise for columns.
/// Leaving through both at once is a corner and ends the walk. A repeated
/// `(position, direction)` state ends it as a cycle.
pub(crate) fn grid_walk(
    rows: isize,
    cols: isize,
    start: (isize, isize),
    dir: (isize, isize),
    stop: Stop,
) -> (Vec<(isize, isize)>, Ending) {
    let (mut r, mut c) = start;
    let (mut dr, mut dc) = dir;
    let mut cells = vec![(r, c)];
    let mut seen = HashSet::new();
    seen.insert((r, c, dr, dc));
    loop {
        if stop == Stop::BottomRow && r == rows - 1 {
            return (cells, Ending::BottomRow);
        }
        let (mut nr, mut nc) = (r + dr, c + dc);
        let row_out = !(0..rows).contains(&nr);
        let col_out = !(0..cols).contains(&nc);
        if row_out && col_out {
            return (cells, Ending::Corner);
        }
        if row_out {
            (nr, nc) = (r, c + 2 * dc);
            dr = -dr;
        } else if col_out {
            (nr, nc) = (r + 2 * dr, c);
            dc = -dc;
        }
        if !(0..rows).contains(&nr) || !(0..cols).contains(&nc) {
            return (cells, Ending::Corner);
        }
        (r, c) = (nr, nc);
        if !seen.insert((r, c, dr, dc)) {
            return (cells, Ending::Cycle);
        }
        cells.push((r, c));
    }
}

/// Mod-2 sum of path cells as a qubit support vector.
fn cells_to_support(code: &StabilizerCode, cells: &[(isize, isize)]) -> BitVec {
    BitVec::from_indices(
        code.n(),
        cells
            .iter()
            .map(|&(r, c)| code.qubit_at(r, c).expect("walk stays on qubit cells")),
    )
}

fn grid_dims(code: &StabilizerCode) -> (isize, isize) {
    (2 * code.j() as isize - 1, 2 * code.k() as isize - 1)
}

/// A minimum-weight Y-type logical: the reflected diagonal from the top-left
/// qubit (standard) or `Y` on every qubit (rotated).
pub fn construct_y_logical(code: &StabilizerCode) -> PauliOperator {
    match code.layout() {
        Layout::Rotated => PauliOperator::y_type(BitVec::ones(code.n())),
        Layout::Standard => {
            let (rows, cols) = grid_dims(code);
            let (cells, ending) = grid_walk(rows, cols, (0, 0), (1, 1), Stop::Corner);
            debug_assert_eq!(ending, Ending::Corner);
            PauliOperator::y_type(cells_to_support(code, &cells))
        }
    }
}

/// Generators of the Y-type stabilizer group: closed reflected paths from the
/// top-row qubits `1..g`. Rotated codes have none.
pub fn construct_y_stabilizer_group(code: &StabilizerCode) -> Vec<PauliOperator> {
    if code.layout() == Layout::Rotated {
        return Vec::new();
    }
    let g = gcd(code.j(), code.k()) as isize;
    let (rows, cols) = grid_dims(code);
    (1..g)
        .map(|i| {
            let (cells, ending) = grid_walk(rows, cols, (0, 2 * i), (1, 1), Stop::Corner);
            debug_assert_eq!(ending, Ending::Cycle);
            PauliOperator::y_type(cells_to_support(code, &cells))
        })
        .collect()
}

/// The `g + 1` diagonals of a `g×g` standard code, as toggled cell sets on its
/// `(2g-1)×(2g-1)` grid.
fn square_diagonals(g: usize) -> Vec<HashSet<(isize, isize)>> {
    let side = 2 * g as isize - 1;
    let toggled = |cells: Vec<(isize, isize)>| {
        let mut s = HashSet::new();
        for p in cells {
            if !s.insert(p) {
                s.remove(&p);
            }
        }
        s
    };
    let mut out = Vec::with_capacity(g + 1);
    out.push(toggled(
        grid_walk(side, side, (0, 0), (1, 1), Stop::Corner).0,
    ));
    for i in 2..=g as isize {
        out.push(toggled(
            grid_walk(side, side, (0, 2 * (i - 1)), (1, 1), Stop::Corner).0,
        ));
    }
    out.push(toggled(
        grid_walk(side, side, (0, side - 1), (1, -1), Stop::Corner).0,
    ));
    out
}

/// One repetition block: the qubits lying on exactly the two extended
/// diagonals `edge.0` and `edge.1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionBlock {
    pub edge: (usize, usize),
    pub qubits: Vec<usize>,
}

impl RepetitionBlock {
    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }
}

/// Decomposition of the pure-Y code of a standard surface code into
/// repetition blocks wired as the cycle code on `K_{g+1}`.
#[derive(Clone, Debug)]
pub struct YCodeStructure {
    pub j: usize,
    pub k: usize,
    pub g: usize,
    /// Tile count `jk / g²`.
    pub t: usize,
    /// Blocks sorted by edge; block `b` is the edge `blocks[b].edge` of `K_{g+1}`.
    pub repetition_blocks: Vec<RepetitionBlock>,
    /// Qubits on no extended diagonal; every Y-type centralizer element
    /// vanishes there.
    pub boundary_zero_qubits: Vec<usize>,
    pub cycle_order: usize,
    /// `Δ^1 .. Δ^{g+1}`.
    pub extended_diagonals: Vec<PauliOperator>,
    /// Block of each qubit, `None` on boundary-zero qubits.
    pub qubit_block: Vec<Option<usize>>,
}

impl YCodeStructure {
    /// `(block length, count)` pairs in increasing length.
    pub fn block_multiset(&self) -> Vec<(usize, usize)> {
        let mut m = BTreeMap::new();
        for b in &self.repetition_blocks {
            *m.entry(b.len()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    /// Block index → cycle-code edge.
    pub fn cycle_edge_map(&self) -> Vec<(usize, (usize, usize))> {
        self.repetition_blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.edge))
            .collect()
    }

    /// The top-level classical code. For `g = 1` this is the trivial code on
    /// a single edge of `K_2`.
    pub fn cycle_code(&self) -> CycleCode {
        CycleCode::new(self.cycle_order)
    }

    pub fn block_membership_total(&self) -> usize {
        self.repetition_blocks.iter().map(|b| b.len()).sum()
    }
}

/// Builds the repetition-block/cycle-code decomposition for a standard j×k
/// code.
pub fn y_code_structure(j: usize, k: usize) -> Result<YCodeStructure> {
    let code = StabilizerCode::standard(j, k)?;
    y_code_structure_for(&code)
}

pub fn y_code_structure_for(code: &StabilizerCode) -> Result<YCodeStructure> {
    if code.layout() != Layout::Standard {
        return Err(Error::InvalidArgument(
            "Y-code structure is defined for standard codes".into(),
        ));
    }
    let (j, k) = (code.j(), code.k());
    let g = gcd(j, k);
    let n = code.n();
    let dg = square_diagonals(g);
    let step = 2 * g as isize;
    let mut diagonals = Vec::with_capacity(g + 1);
    for i in 0..=g {
        let mut v = BitVec::zeros(n);
        for a in 0..(j / g) as isize {
            for b in 0..(k / g) as isize {
                let src = if (a + b) % 2 == 0 { &dg[i] } else { &dg[g - i] };
                for &(r, c) in src {
                    let q = code
                        .qubit_at(step * a + r, step * b + c)
                        .ok_or_else(|| Error::Internal("diagonal left the lattice".into()))?;
                    v.toggle(q);
                }
            }
        }
        diagonals.push(v);
    }
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut zero = Vec::new();
    for q in 0..n {
        let on: Vec<usize> = (0..=g).filter(|&i| diagonals[i].get(q)).collect();
        match on.as_slice() {
            [] => zero.push(q),
            &[a, b] => groups.entry((a, b)).or_default().push(q),
            _ => {
                return Err(Error::Internal(format!(
                    "qubit {q} lies on {} extended diagonals",
                    on.len()
                )))
            }
        }
    }
    let blocks: Vec<RepetitionBlock> = groups
        .into_iter()
        .map(|(edge, qubits)| RepetitionBlock { edge, qubits })
        .collect();
    let mut qubit_block = vec![None; n];
    for (bi, b) in blocks.iter().enumerate() {
        for &q in &b.qubits {
            qubit_block[q] = Some(bi);
        }
    }
    Ok(YCodeStructure {
        j,
        k,
        g,
        t: j * k / (g * g),
        repetition_blocks: blocks,
        boundary_zero_qubits: zero,
        cycle_order: g + 1,
        extended_diagonals: diagonals.into_iter().map(PauliOperator::y_type).collect(),
        qubit_block,
    })
}

/// Partial recovery for a non-bottom check of a standard code: Y-type
/// operator flagging that check plus some checks on the bottom row. `None`
/// for bottom-row checks.
pub fn partial_recovery(code: &StabilizerCode, check: (isize, isize)) -> Option<BitVec> {
    assert_eq!(code.layout(), Layout::Standard);
    let (rows, cols) = grid_dims(code);
    let (r, c) = check;
    if r == rows - 1 {
        return None;
    }
    let mut v = BitVec::zeros(code.n());
    let mut i = 0;
    while r + 1 + i < rows && c + i < cols {
        let (cells, _) = grid_walk(rows, cols, (r + 1 + i, c + i), (1, -1), Stop::BottomRow);
        v.xor_assign(&cells_to_support(code, &cells));
        i += 1;
    }
    Some(v)
}

/// Residual recovery for a bottom-row check: the reflected path from the
/// qubit to its right, heading up. Flags only that check on coprime codes.
/// `None` when the path closes into a cycle (codes with `g > 1`).
pub fn residual_recovery(code: &StabilizerCode, check: (isize, isize)) -> Option<BitVec> {
    assert_eq!(code.layout(), Layout::Standard);
    let (rows, cols) = grid_dims(code);
    let (r, c) = check;
    if r != rows - 1 {
        return None;
    }
    match grid_walk(rows, cols, (r, c + 1), (-1, 1), Stop::Corner) {
        (cells, Ending::Corner) => Some(cells_to_support(code, &cells)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn weights(s: &YCodeStructure) -> Vec<usize> {
        s.extended_diagonals.iter().map(|d| d.weight()).collect()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(y_distance(5, 5, Layout::Standard).unwrap(), 9);
        assert_eq!(y_distance(4, 5, Layout::Standard).unwrap(), 20);
        assert_eq!(y_distance(4, 6, Layout::Standard).unwrap(), 18);
        assert_eq!(y_distance(5, 5, Layout::Rotated).unwrap(), 25);
        assert_eq!(y_logical_count(5, 5, Layout::Standard).unwrap(), 16);
        assert_eq!(y_logical_count(4, 5, Layout::Standard).unwrap(), 1);
        assert_eq!(y_logical_count(7, 7, Layout::Rotated).unwrap(), 1);
        assert!(y_distance(4, 5, Layout::Rotated).is_err());
    }

    #[test]
    fn y_logical_paths() {
        for j in 2..=12 {
            for k in 2..=12 {
                let code = StabilizerCode::standard(j, k).unwrap();
                let l = construct_y_logical(&code);
                assert!(l.is_y_type());
                assert_eq!(
                    l.weight(),
                    y_distance(j, k, Layout::Standard).unwrap(),
                    "{j}x{k}"
                );
                assert!(code.syndrome(&l).unwrap().is_zero());
                assert!(!code.in_stabilizer_group(&l), "{j}x{k}");
            }
        }
        let rot = StabilizerCode::rotated(5, 5).unwrap();
        let l = construct_y_logical(&rot);
        assert_eq!(l.weight(), 25);
        assert!(rot.syndrome(&l).unwrap().is_zero());
        assert!(!rot.in_stabilizer_group(&l));
    }

    #[test]
    fn y_stabilizer_generators() {
        let c44 = StabilizerCode::standard(4, 4).unwrap();
        let gens = construct_y_stabilizer_group(&c44);
        assert_eq!(gens.len(), 3);
        for s in &gens {
            assert!(s.is_y_type());
            assert!(c44.in_stabilizer_group(s));
        }
        let rows: Vec<BitVec> = gens.iter().map(|s| s.x_bits().clone()).collect();
        assert_eq!(BitMatrix::from_rows(c44.n(), &rows).rank(), 3);

        assert!(construct_y_stabilizer_group(&StabilizerCode::standard(3, 4).unwrap()).is_empty());

        let c64 = StabilizerCode::standard(6, 4).unwrap();
        let gens = construct_y_stabilizer_group(&c64);
        assert_eq!(gens.len(), 1);
        let l = construct_y_logical(&c64);
        let other = l.mul(&gens[0]);
        assert!(other.weight() >= l.weight());
        assert!(!c64.in_stabilizer_group(&other));
        assert!(c64.syndrome(&other).unwrap().is_zero());
    }

    #[test]
    fn structure_tables() {
        // (j, k, g, expected block multiset)
        type Case = (usize, usize, usize, Vec<(usize, usize)>);
        let cases: [Case; 7] = [
            (4, 4, 0, vec![(1, 1), (2, 6), (4, 3)]),
            (3, 4, 6, vec![(12, 1)]),
            (8, 12, 23, vec![(6, 1), (12, 6), (24, 3)]),
            (6, 9, 16, vec![(6, 1), (12, 4), (24, 1)]),
            (5, 5, 0, vec![(1, 1), (2, 8), (4, 6)]),
            (6, 4, 9, vec![(6, 1), (12, 2)]),
            (2, 6, 2, vec![(3, 1), (6, 2)]),
        ];
        for (j, k, zeros, blocks) in cases {
            let s = y_code_structure(j, k).unwrap();
            let n = 2 * j * k - j - k + 1;
            assert_eq!(s.boundary_zero_qubits.len(), zeros, "{j}x{k}");
            assert_eq!(s.block_multiset(), blocks, "{j}x{k}");
            assert_eq!(s.block_membership_total() + zeros, n);
            let t = s.t;
            let g = s.g;
            let mut expect = vec![(2 * g - 1) * t];
            expect.extend(std::iter::repeat_n(4 * (g - 1) * t, g - 1));
            expect.push((2 * g - 1) * t);
            assert_eq!(weights(&s), expect, "{j}x{k}");
        }
    }

    #[test]
    fn diagonals_are_centralizer_elements() {
        for (j, k) in [(4, 4), (6, 9), (4, 6), (3, 5)] {
            let code = StabilizerCode::standard(j, k).unwrap();
            let s = y_code_structure(j, k).unwrap();
            let mut total = BitVec::zeros(code.n());
            for d in &s.extended_diagonals {
                assert!(code.syndrome(d).unwrap().is_zero());
                total.xor_assign(d.x_bits());
            }
            assert!(total.is_zero());
            let rows: Vec<BitVec> = s
                .extended_diagonals
                .iter()
                .map(|d| d.x_bits().clone())
                .collect();
            assert_eq!(BitMatrix::from_rows(code.n(), &rows).rank(), s.g);
        }
    }

    #[test]
    fn partial_recoveries_flag_check_and_bottom_row() {
        for (j, k) in [(4, 4), (3, 4), (4, 6), (5, 3)] {
            let code = StabilizerCode::standard(j, k).unwrap();
            let bottom = 2 * j as isize - 2;
            for i in 0..code.num_checks() {
                let loc = code.check_coord(i);
                match partial_recovery(&code, loc) {
                    None => assert_eq!(loc.0, bottom),
                    Some(v) => {
                        let s = code.y_syndrome(&v);
                        assert!(s.get(i), "{j}x{k} {loc:?}");
                        for f in s.iter_ones().filter(|&f| f != i) {
                            assert_eq!(code.check_coord(f).0, bottom, "{j}x{k} {loc:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn residual_recoveries_on_coprime_codes() {
        for (j, k) in [(3, 4), (4, 5), (2, 3), (5, 3)] {
            let code = StabilizerCode::standard(j, k).unwrap();
            let bottom = 2 * j as isize - 2;
            for i in 0..code.num_checks() {
                let loc = code.check_coord(i);
                if loc.0 != bottom {
                    continue;
                }
                let v = residual_recovery(&code, loc).expect("coprime residual path ends");
                let s = code.y_syndrome(&v);
                assert_eq!(
                    s.iter_ones().collect::<Vec<_>>(),
                    vec![i],
                    "{j}x{k} {loc:?}"
                );
            }
        }
        let square = StabilizerCode::standard(4, 4).unwrap();
        assert!(residual_recovery(&square, (6, 1)).is_none());
    }
}
