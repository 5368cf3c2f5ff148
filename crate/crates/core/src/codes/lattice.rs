//! Standard and rotated surface-code lattices.
//!
//! Standard j×k codes live on a doubled grid of `(2j-1)×(2k-1)` cells. Cells
//! with even `r+c` are qubits (edges of the primal lattice), cells at
//! (even, odd) are vertex checks (X type) and cells at (odd, even) are
//! plaquette checks (Z type). Each check acts on its orthogonal neighbours.
//!
//! Rotated j×k codes (j, k odd) put qubit `(r, c)` at row `r < j`, column
//! `c < k`. Face `(i, c)` covers qubits `(i..=i+1, c..=c+1)` clipped to the
//! lattice and is X type iff `i + c` is even. Bulk faces have
//! `0 <= i <= j-2`, `0 <= c <= k-2`. Weight-two boundary faces sit on rows
//! `-1`, `j-1` (Z type only) and columns `-1`, `k-1` (X type only).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, PauliOperator};
use crate::gf2::{BitMatrix, BitVec, LinearSolver};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    Standard,
    Rotated,
}

impl std::fmt::Display for Layout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Layout::Standard => "standard",
            Layout::Rotated => "rotated",
        })
    }
}

impl std::str::FromStr for Layout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Layout::Standard),
            "rotated" => Ok(Layout::Rotated),
            other => Err(Error::InvalidArgument(format!("unknown layout {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Square,
    Coprime,
    GcdG,
    RotatedOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFamily {
    pub tag: FamilyTag,
    pub g: usize,
}

impl CodeFamily {
    pub fn classify(layout: Layout, j: usize, k: usize) -> CodeFamily {
        let g = gcd(j, k);
        let tag = match layout {
            Layout::Rotated => FamilyTag::RotatedOdd,
            Layout::Standard if j == k => FamilyTag::Square,
            Layout::Standard if g == 1 => FamilyTag::Coprime,
            Layout::Standard => FamilyTag::GcdG,
        };
        CodeFamily { tag, g }
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Logical class of an operator in the centralizer. Declaration order is the
/// tie-break order used by all decoders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicalClass {
    I,
    X,
    Y,
    Z,
}

impl LogicalClass {
    pub const ALL: [LogicalClass; 4] = [
        LogicalClass::I,
        LogicalClass::X,
        LogicalClass::Y,
        LogicalClass::Z,
    ];

    /// Group product (the logical Paulis form a Klein four-group up to phase).
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: LogicalClass) -> LogicalClass {
        let to_p = |c: LogicalClass| match c {
            LogicalClass::I => Pauli::I,
            LogicalClass::X => Pauli::X,
            LogicalClass::Y => Pauli::Y,
            LogicalClass::Z => Pauli::Z,
        };
        match to_p(self).mul(to_p(other)) {
            Pauli::I => LogicalClass::I,
            Pauli::X => LogicalClass::X,
            Pauli::Y => LogicalClass::Y,
            Pauli::Z => LogicalClass::Z,
        }
    }
}

impl std::fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    X,
    Z,
}

/// A standard or rotated surface code with one logical qubit.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    layout: Layout,
    j: usize,
    k: usize,
    qubit_coords: Vec<(isize, isize)>,
    qubit_index: HashMap<(isize, isize), usize>,
    x_check_coords: Vec<(isize, isize)>,
    z_check_coords: Vec<(isize, isize)>,
    x_checks: BitMatrix,
    z_checks: BitMatrix,
    y_checks: BitMatrix,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
}

/// JSON form of a code.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CodeDescription {
    pub layout: Layout,
    pub j: usize,
    pub k: usize,
    pub n: usize,
    pub x_checks: Vec<String>,
    pub z_checks: Vec<String>,
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
}

impl StabilizerCode {
    /// Standard j×k surface code with `n = 2jk - j - k + 1`.
    pub fn standard(j: usize, k: usize) -> Result<Self> {
        if j < 2 || k < 2 {
            return Err(Error::InvalidDimensions(format!(
                "standard code needs j, k >= 2 (got {j}x{k})"
            )));
        }
        let (rows, cols) = (2 * j as isize - 1, 2 * k as isize - 1);
        let mut qubit_coords = Vec::new();
        let mut x_check_coords = Vec::new();
        let mut z_check_coords = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                match ((r % 2) as u8, ((r + c) % 2) as u8) {
                    (_, 0) => qubit_coords.push((r, c)),
                    (0, _) => x_check_coords.push((r, c)),
                    _ => z_check_coords.push((r, c)),
                }
            }
        }
        let qubit_index = index_map(&qubit_coords);
        let n = qubit_coords.len();
        let support = |&(r, c): &(isize, isize)| {
            let mut v = BitVec::zeros(n);
            for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                if let Some(&q) = qubit_index.get(&(r + dr, c + dc)) {
                    v.set(q, true);
                }
            }
            v
        };
        let xs: Vec<BitVec> = x_check_coords.iter().map(support).collect();
        let zs: Vec<BitVec> = z_check_coords.iter().map(support).collect();
        let left = BitVec::from_indices(n, (0..j as isize).map(|r| qubit_index[&(2 * r, 0)]));
        let top = BitVec::from_indices(n, (0..k as isize).map(|c| qubit_index[&(0, 2 * c)]));
        Ok(Self::assemble(
            Layout::Standard,
            j,
            k,
            qubit_coords,
            qubit_index,
            x_check_coords,
            z_check_coords,
            xs,
            zs,
            PauliOperator::x_type(left),
            PauliOperator::z_type(top),
        ))
    }

    /// Rotated j×k code (j, k odd, at least 3) with `n = jk`.
    pub fn rotated(j: usize, k: usize) -> Result<Self> {
        if j < 3 || k < 3 || j.is_multiple_of(2) || k.is_multiple_of(2) {
            return Err(Error::InvalidDimensions(format!(
                "rotated code needs odd j, k >= 3 (got {j}x{k})"
            )));
        }
        let (ji, ki) = (j as isize, k as isize);
        let qubit_coords: Vec<(isize, isize)> =
            (0..ji).flat_map(|r| (0..ki).map(move |c| (r, c))).collect();
        let qubit_index = index_map(&qubit_coords);
        let n = qubit_coords.len();
        let mut x_check_coords = Vec::new();
        let mut z_check_coords = Vec::new();
        for i in -1..ji {
            for c in -1..ki {
                match rotated_face_kind(j, k, i, c) {
                    Some(CheckKind::X) => x_check_coords.push((i, c)),
                    Some(CheckKind::Z) => z_check_coords.push((i, c)),
                    None => {}
                }
            }
        }
        let support = |&(i, c): &(isize, isize)| {
            let mut v = BitVec::zeros(n);
            for (dr, dc) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                if let Some(&q) = qubit_index.get(&(i + dr, c + dc)) {
                    v.set(q, true);
                }
            }
            v
        };
        let xs: Vec<BitVec> = x_check_coords.iter().map(support).collect();
        let zs: Vec<BitVec> = z_check_coords.iter().map(support).collect();
        let top_row = BitVec::from_indices(n, 0..k);
        let left_col = BitVec::from_indices(n, (0..j).map(|r| r * k));
        Ok(Self::assemble(
            Layout::Rotated,
            j,
            k,
            qubit_coords,
            qubit_index,
            x_check_coords,
            z_check_coords,
            xs,
            zs,
            PauliOperator::x_type(top_row),
            PauliOperator::z_type(left_col),
        ))
    }

    pub fn new(layout: Layout, j: usize, k: usize) -> Result<Self> {
        match layout {
            Layout::Standard => Self::standard(j, k),
            Layout::Rotated => Self::rotated(j, k),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        layout: Layout,
        j: usize,
        k: usize,
        qubit_coords: Vec<(isize, isize)>,
        qubit_index: HashMap<(isize, isize), usize>,
        x_check_coords: Vec<(isize, isize)>,
        z_check_coords: Vec<(isize, isize)>,
        xs: Vec<BitVec>,
        zs: Vec<BitVec>,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
    ) -> Self {
        let n = qubit_coords.len();
        let x_checks = BitMatrix::from_rows(n, &xs);
        let z_checks = BitMatrix::from_rows(n, &zs);
        let y_checks = x_checks.vstack(&z_checks);
        StabilizerCode {
            layout,
            j,
            k,
            qubit_coords,
            qubit_index,
            x_check_coords,
            z_check_coords,
            x_checks,
            z_checks,
            y_checks,
            logical_x,
            logical_z,
        }
    }

    #[inline]
    pub fn layout(&self) -> Layout {
        self.layout
    }

    #[inline]
    pub fn j(&self) -> usize {
        self.j
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.qubit_coords.len()
    }

    pub fn family(&self) -> CodeFamily {
        CodeFamily::classify(self.layout, self.j, self.k)
    }

    /// Lattice coordinate of each qubit, in index order.
    pub fn qubit_coords(&self) -> &[(isize, isize)] {
        &self.qubit_coords
    }

    pub fn qubit_at(&self, r: isize, c: isize) -> Option<usize> {
        self.qubit_index.get(&(r, c)).copied()
    }

    pub fn x_check_coords(&self) -> &[(isize, isize)] {
        &self.x_check_coords
    }

    pub fn z_check_coords(&self) -> &[(isize, isize)] {
        &self.z_check_coords
    }

    /// Coordinate of check `i` in syndrome order (X checks first).
    pub fn check_coord(&self, i: usize) -> (isize, isize) {
        let nx = self.x_check_coords.len();
        if i < nx {
            self.x_check_coords[i]
        } else {
            self.z_check_coords[i - nx]
        }
    }

    pub fn x_checks(&self) -> &BitMatrix {
        &self.x_checks
    }

    pub fn z_checks(&self) -> &BitMatrix {
        &self.z_checks
    }

    /// Check matrix seen by Y-type errors: every check flags a Y on its
    /// support. Rows are X checks then Z checks, matching [`Self::syndrome`].
    pub fn y_check_matrix(&self) -> &BitMatrix {
        &self.y_checks
    }

    pub fn num_checks(&self) -> usize {
        self.x_checks.rows() + self.z_checks.rows()
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    pub fn logical_rep(&self, class: LogicalClass) -> PauliOperator {
        match class {
            LogicalClass::I => PauliOperator::identity(self.n()),
            LogicalClass::X => self.logical_x.clone(),
            LogicalClass::Z => self.logical_z.clone(),
            LogicalClass::Y => self.logical_x.mul(&self.logical_z),
        }
    }

    /// Generator `i` in syndrome order as a Pauli operator.
    pub fn check_operator(&self, i: usize) -> PauliOperator {
        let nx = self.x_checks.rows();
        if i < nx {
            PauliOperator::x_type(self.x_checks.row(i))
        } else {
            PauliOperator::z_type(self.z_checks.row(i - nx))
        }
    }

    pub fn check_kind(&self, i: usize) -> CheckKind {
        if i < self.x_checks.rows() {
            CheckKind::X
        } else {
            CheckKind::Z
        }
    }

    /// One bit per generator (X checks then Z checks), set iff `e`
    /// anticommutes with it.
    pub fn syndrome(&self, e: &PauliOperator) -> Result<BitVec> {
        if e.n() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: e.n(),
            });
        }
        Ok(self
            .x_checks
            .mul_vec(e.z_bits())
            .concat(&self.z_checks.mul_vec(e.x_bits())))
    }

    /// Syndrome of the Y-type operator with support `y`.
    pub fn y_syndrome(&self, y: &BitVec) -> BitVec {
        self.y_checks.mul_vec(y)
    }

    /// Logical class read off from commutation with the logical
    /// representatives. Meaningful for operators with zero syndrome.
    pub fn logical_class(&self, op: &PauliOperator) -> LogicalClass {
        let flips_z = !op.commutes_with(&self.logical_z);
        let flips_x = !op.commutes_with(&self.logical_x);
        match (flips_z, flips_x) {
            (false, false) => LogicalClass::I,
            (true, false) => LogicalClass::X,
            (true, true) => LogicalClass::Y,
            (false, true) => LogicalClass::Z,
        }
    }

    /// Stabilizer-group membership via syndrome and logical commutation.
    pub fn is_stabilizer(&self, op: &PauliOperator) -> bool {
        self.syndrome(op).map(|s| s.is_zero()).unwrap_or(false)
            && self.logical_class(op) == LogicalClass::I
    }

    /// Symplectic generator matrix, one row `[x | z]` per check.
    pub fn stabilizer_matrix(&self) -> BitMatrix {
        let n = self.n();
        let rows: Vec<BitVec> = (0..self.num_checks())
            .map(|i| self.check_operator(i).symplectic())
            .collect();
        BitMatrix::from_rows(2 * n, &rows)
    }

    /// Stabilizer-group membership by a GF(2) row-space test.
    pub fn in_stabilizer_group(&self, op: &PauliOperator) -> bool {
        if op.n() != self.n() {
            return false;
        }
        LinearSolver::new(&self.stabilizer_matrix().transpose())
            .solve(&op.symplectic())
            .is_some()
    }

    pub fn describe(&self) -> CodeDescription {
        CodeDescription {
            layout: self.layout,
            j: self.j,
            k: self.k,
            n: self.n(),
            x_checks: self
                .x_checks
                .row_vecs()
                .iter()
                .map(|r| r.to_string())
                .collect(),
            z_checks: self
                .z_checks
                .row_vecs()
                .iter()
                .map(|r| r.to_string())
                .collect(),
            logical_x: self.logical_x.clone(),
            logical_z: self.logical_z.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("code description serializes")
    }

    /// Identifier like `rotated-5x5`.
    pub fn id(&self) -> String {
        format!("{}-{}x{}", self.layout, self.j, self.k)
    }
}

fn index_map(coords: &[(isize, isize)]) -> HashMap<(isize, isize), usize> {
    coords.iter().enumerate().map(|(i, &p)| (p, i)).collect()
}

/// Kind of rotated face `(i, c)`, or `None` when no check sits there.
pub(crate) fn rotated_face_kind(j: usize, k: usize, i: isize, c: isize) -> Option<CheckKind> {
    let (ji, ki) = (j as isize, k as isize);
    if i < -1 || i > ji - 1 || c < -1 || c > ki - 1 {
        return None;
    }
    let kind = if (i + c).rem_euclid(2) == 0 {
        CheckKind::X
    } else {
        CheckKind::Z
    };
    let row_edge = i == -1 || i == ji - 1;
    let col_edge = c == -1 || c == ki - 1;
    match (row_edge, col_edge) {
        (false, false) => Some(kind),
        (true, false) if kind == CheckKind::Z => Some(kind),
        (false, true) if kind == CheckKind::X => Some(kind),
        _ => None,
    }
}
