//! Surface-code construction, Pauli operators, and the Y-type structure.

mod classical;
mod lattice;
mod pauli;
mod pure;
mod ystructure;

pub use classical::{cycle_code, edge_index, CycleCode};
pub(crate) use lattice::rotated_face_kind;
pub use lattice::{
    gcd, CheckKind, CodeDescription, CodeFamily, FamilyTag, Layout, LogicalClass, StabilizerCode,
};
pub use pauli::{Pauli, PauliOperator};
pub use pure::{pure_distance, pure_logical_count_log2, pure_noise_summary, PureNoiseSummary};
pub use ystructure::{
    construct_y_logical, construct_y_stabilizer_group, partial_recovery, residual_recovery,
    y_code_structure, y_code_structure_for, y_distance, y_logical_count, RepetitionBlock,
    YCodeStructure,
};

/// Builds a standard j×k code.
pub fn build_standard_code(j: usize, k: usize) -> crate::Result<StabilizerCode> {
    StabilizerCode::standard(j, k)
}

/// Builds a rotated j×k code (odd dimensions).
pub fn build_rotated_code(j: usize, k: usize) -> crate::Result<StabilizerCode> {
    StabilizerCode::rotated(j, k)
}

/// Syndrome of `e`: X-check bits then Z-check bits.
pub fn syndrome(code: &StabilizerCode, e: &PauliOperator) -> crate::Result<crate::gf2::BitVec> {
    code.syndrome(e)
}
