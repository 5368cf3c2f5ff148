//! Distances and logical-operator counts against single-Pauli noise.

use super::lattice::{Layout, StabilizerCode};
use super::pauli::Pauli;
use super::ystructure::{validate, y_distance, y_logical_count};
use crate::{Error, Result};

/// Minimum weight of a logical made only of `pauli` and identities.
pub fn pure_distance(j: usize, k: usize, layout: Layout, pauli: Pauli) -> Result<usize> {
    validate(j, k, layout)?;
    match (layout, pauli) {
        (_, Pauli::Y) => y_distance(j, k, layout),
        (Layout::Standard, Pauli::X) | (Layout::Rotated, Pauli::Z) => Ok(j),
        (Layout::Standard, Pauli::Z) | (Layout::Rotated, Pauli::X) => Ok(k),
        (_, Pauli::I) => Err(identity_rejected()),
    }
}

/// `log2` of the number of logicals made only of `pauli` and identities.
pub fn pure_logical_count_log2(j: usize, k: usize, layout: Layout, pauli: Pauli) -> Result<u32> {
    validate(j, k, layout)?;
    let e = match (layout, pauli) {
        (_, Pauli::Y) => y_logical_count(j, k, layout)?.trailing_zeros() as usize,
        (Layout::Standard, Pauli::X) => j * (k - 1),
        (Layout::Standard, Pauli::Z) => (j - 1) * k,
        (Layout::Rotated, Pauli::X) => (j - 1) * (k + 1) / 2,
        (Layout::Rotated, Pauli::Z) => (j + 1) * (k - 1) / 2,
        (_, Pauli::I) => return Err(identity_rejected()),
    };
    Ok(e as u32)
}

fn identity_rejected() -> Error {
    Error::InvalidArgument("pure noise needs X, Y or Z".into())
}

/// Distances and counts for one code.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PureNoiseSummary {
    pub d_x: usize,
    pub d_y: usize,
    pub d_z: usize,
    pub c_x_log2: u32,
    pub c_y_log2: u32,
    pub c_z_log2: u32,
}

pub fn pure_noise_summary(code: &StabilizerCode) -> Result<PureNoiseSummary> {
    let (j, k, l) = (code.j(), code.k(), code.layout());
    Ok(PureNoiseSummary {
        d_x: pure_distance(j, k, l, Pauli::X)?,
        d_y: pure_distance(j, k, l, Pauli::Y)?,
        d_z: pure_distance(j, k, l, Pauli::Z)?,
        c_x_log2: pure_logical_count_log2(j, k, l, Pauli::X)?,
        c_y_log2: pure_logical_count_log2(j, k, l, Pauli::Y)?,
        c_z_log2: pure_logical_count_log2(j, k, l, Pauli::Z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BitMatrix, BitVec};

    /// Minimum weight over `v` with `detect · v = 0` outside the row space of
    /// `stab`, by enumeration.
    fn brute_min_logical(detect: &BitMatrix, stab: &BitMatrix, n: usize) -> usize {
        (1u32..1 << n)
            .filter_map(|m| {
                let v = BitVec::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1));
                (detect.mul_vec(&v).is_zero() && !stab.row_space_contains(&v))
                    .then(|| m.count_ones() as usize)
            })
            .min()
            .unwrap()
    }

    fn codes() -> Vec<StabilizerCode> {
        let mut v = Vec::new();
        for (j, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (3, 4), (4, 3)] {
            v.push(StabilizerCode::standard(j, k).unwrap());
        }
        for (j, k) in [(3, 3), (3, 5), (5, 3)] {
            v.push(StabilizerCode::rotated(j, k).unwrap());
        }
        v
    }

    #[test]
    fn counts_match_check_ranks() {
        for code in codes().into_iter().chain([
            StabilizerCode::standard(6, 9).unwrap(),
            StabilizerCode::rotated(7, 9).unwrap(),
        ]) {
            let (j, k, l) = (code.j(), code.k(), code.layout());
            let cx = pure_logical_count_log2(j, k, l, Pauli::X).unwrap();
            let cz = pure_logical_count_log2(j, k, l, Pauli::Z).unwrap();
            assert_eq!(cx as usize, code.x_checks().rank(), "{}", code.id());
            assert_eq!(cz as usize, code.z_checks().rank(), "{}", code.id());
        }
    }

    #[test]
    fn distances_match_enumeration() {
        for code in codes() {
            let (j, k, l, n) = (code.j(), code.k(), code.layout(), code.n());
            let dx = brute_min_logical(code.z_checks(), code.x_checks(), n);
            let dz = brute_min_logical(code.x_checks(), code.z_checks(), n);
            assert_eq!(
                pure_distance(j, k, l, Pauli::X).unwrap(),
                dx,
                "{}",
                code.id()
            );
            assert_eq!(
                pure_distance(j, k, l, Pauli::Z).unwrap(),
                dz,
                "{}",
                code.id()
            );
        }
    }

    #[test]
    fn summary_rows() {
        let s = pure_noise_summary(&StabilizerCode::standard(4, 5).unwrap()).unwrap();
        assert_eq!((s.d_y, s.c_y_log2), (20, 0));
        let s = pure_noise_summary(&StabilizerCode::rotated(5, 5).unwrap()).unwrap();
        assert_eq!((s.d_x, s.d_y, s.d_z, s.c_y_log2), (5, 25, 5, 0));
        assert!(pure_distance(3, 3, Layout::Standard, Pauli::I).is_err());
    }
}
