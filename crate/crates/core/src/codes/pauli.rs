//! Phase-free n-qubit Pauli operators stored as X/Z bit vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gf2::BitVec;
use crate::{Error, Result};

/// Single-qubit Pauli, phase ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Index into `[I, X, Y, Z]`.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Pauli) -> Pauli {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Pauli::from_bits(a ^ c, b ^ d)
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An n-qubit Pauli operator up to phase.
///
/// Qubit `i` carries X iff `x[i]`, Z iff `z[i]`, Y iff both.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                got: z.len(),
            });
        }
        Ok(PauliOperator { x, z })
    }

    /// `Y` on every set position of `y`.
    pub fn y_type(y: BitVec) -> Self {
        PauliOperator { x: y.clone(), z: y }
    }

    pub fn x_type(bits: BitVec) -> Self {
        let n = bits.len();
        PauliOperator {
            x: bits,
            z: BitVec::zeros(n),
        }
    }

    pub fn z_type(bits: BitVec) -> Self {
        let n = bits.len();
        PauliOperator {
            x: BitVec::zeros(n),
            z: bits,
        }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(qubit, p);
        op
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_y_type(&self) -> bool {
        self.x == self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n(), other.n(), "qubit count mismatch");
        PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn mul_assign(&mut self, other: &PauliOperator) {
        assert_eq!(self.n(), other.n(), "qubit count mismatch");
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic inner product; true when the operators commute.
    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        assert_eq!(self.n(), other.n(), "qubit count mismatch");
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// Concatenated `[x | z]`, the symplectic row form.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut op = PauliOperator::identity(n);
        for (q, ch) in s.chars().enumerate() {
            let p = match ch {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bad Pauli character {other:?}"
                    )))
                }
            };
            op.set(q, p);
        }
        Ok(op)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
