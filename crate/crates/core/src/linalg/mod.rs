//! Dense complex linear algebra sized for a handful of qubits.
//!
//! Basis convention used everywhere in the crate: for a product state
//! `|q_1 q_2 … q_n⟩` the basis index is `Σ q_k · 2^(n−k)`, so qubit 1 is the
//! most significant bit and `|ab⟩ ↦ 2a + b` for two qubits. Kronecker
//! products follow the same rule: the left factor is the most significant.

mod eigen;
mod matrix;
pub mod pauli;
mod vector;

pub use eigen::{eigenvalues, hermitian_eigensystem, Eigensystem, MAX_SWEEPS};
pub use matrix::CMatrix;
pub use vector::CVector;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which tensor factor of a two-qubit operator to transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    /// Maps the 1-based subsystem label onto the enum.
    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Self::First),
            2 => Ok(Self::Second),
            other => Err(Error::Range(format!("subsystem must be 1 or 2, got {other}"))),
        }
    }
}

/// Kronecker product of two matrices.
pub fn tensor<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kron(b)
}

/// Kronecker product of two vectors.
pub fn tensor_vec<T: Real>(a: &CVector<T>, b: &CVector<T>) -> CVector<T> {
    a.kron(b)
}

/// Kronecker product of a non-empty sequence of vectors.
pub fn tensor_all<'a, T: Real>(factors: impl IntoIterator<Item = &'a CVector<T>>) -> CVector<T> {
    let mut it = factors.into_iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, f| acc.kron(f))
}

/// Partial transpose of a 4×4 two-qubit operator on one tensor factor.
pub fn partial_transpose<T: Real>(m: &CMatrix<T>, subsystem: Subsystem) -> Result<CMatrix<T>> {
    if m.dim() != 4 {
        return Err(Error::Dimension(format!(
            "partial transpose needs a 4x4 operator, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    // row = 2*a + b, col = 2*a' + b'
    Ok(CMatrix::from_fn(4, |row, col| {
        let (a, b) = (row / 2, row % 2);
        let (ap, bp) = (col / 2, col % 2);
        match subsystem {
            Subsystem::First => m.get(2 * ap + b, 2 * a + bp),
            Subsystem::Second => m.get(2 * a + bp, 2 * ap + b),
        }
    }))
}
