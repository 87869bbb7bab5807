//! PPT verdicts, the vanishing-trace table and entanglement witnesses.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, partial_transpose, pauli, CMatrix, Subsystem};
use crate::scalar::Real;
use crate::states::{bell, BellState, DensityOperator, Sign};

/// Smallest eigenvalue of the partial transpose and the resulting verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptVerdict<T> {
    pub min_pt_eigenvalue: T,
    /// For two qubits, PPT is equivalent to separability.
    pub ppt: bool,
}

/// Transposes the second qubit and checks that no eigenvalue is below `−loose_tol`.
pub fn ppt_check<T: Real>(rho: &DensityOperator<T>) -> Result<PptVerdict<T>> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension(format!(
            "PPT check is implemented for two qubits, got {}",
            rho.n_qubits()
        )));
    }
    let pt = partial_transpose(rho.matrix(), Subsystem::Second)?;
    let min_pt_eigenvalue = eigenvalues(&pt, T::tight_tol())?[0];
    Ok(PptVerdict {
        min_pt_eigenvalue,
        ppt: min_pt_eigenvalue >= -T::loose_tol(),
    })
}

/// `¼ Re tr((σ_i⊗σ_i)(σ_j⊗σ_j))`, which is `δ_ij`.
pub fn vanishing_trace<T: Real>(i: usize, j: usize) -> Result<T> {
    if i > 3 || j > 3 {
        return Err(Error::Range(format!("Pauli indices ({i}, {j}) outside 0..=3")));
    }
    let lhs = pauli::pair::<T>(i, i);
    let rhs = pauli::pair::<T>(j, j);
    Ok(T::lit(0.25) * lhs.trace_product_re(&rhs)?)
}

/// The full 4×4 table of [`vanishing_trace`].
pub fn vanishing_trace_table<T: Real>() -> [[T; 4]; 4] {
    let mut out = [[T::zero(); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = vanishing_trace(i, j).expect("indices in range");
        }
    }
    out
}

/// `tr(ϱ^s_Y |β⟩⟨β|)`; row 0 is `s = +`, row 1 is `s = −`, columns follow
/// `β₀₀, β₀₁, β₁₀, β₁₁`.
pub fn zero_event_table<T: Real>() -> [[T; 4]; 2] {
    let mut out = [[T::zero(); 4]; 2];
    for (row, sign) in out.iter_mut().zip(Sign::ALL) {
        let rho = crate::states::rho_family::<T>(crate::states::Axis::Y, sign);
        for (cell, b) in row.iter_mut().zip(BellState::ALL) {
            *cell = rho.expectation(&bell::<T>(b).projector()).expect("4x4");
        }
    }
    out
}

/// Hermitian operator whose negative expectation certifies entanglement.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub name: String,
    matrix: CMatrix<T>,
}

impl<T: Real> Witness<T> {
    pub fn new(name: impl Into<String>, matrix: CMatrix<T>) -> Result<Self> {
        matrix.ensure_hermitian(T::tight_tol())?;
        Ok(Self {
            name: name.into(),
            matrix,
        })
    }

    /// `W = ¼(I⊗I + Z⊗Z + X⊗X + Y⊗Y)`, negative only near the singlet.
    pub fn werner() -> Self {
        let m = (0..4)
            .map(|k| pauli::pair::<T>(k, k))
            .fold(CMatrix::zeros(4), |acc, p| &acc + &p)
            .scale_real(T::lit(0.25));
        Self {
            name: "werner".into(),
            matrix: m,
        }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }
}

/// `Re tr(W ρ)`.
pub fn witness_expectation<T: Real>(w: &Witness<T>, rho: &DensityOperator<T>) -> Result<T> {
    rho.expectation(&w.matrix)
}

/// Bisects `[lo, hi]` for the sign change of `f` until the interval is
/// narrower than `width`. `f(lo)` and `f(hi)` must have opposite signs.
pub fn bisect<T: Real>(mut f: impl FnMut(T) -> Result<T>, mut lo: T, mut hi: T, width: T) -> Result<T> {
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Range(format!("no sign change on [{lo}, {hi}]")));
    }
    while hi - lo > width {
        let mid = (lo + hi) / T::lit(2.0);
        let f_mid = f(mid)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / T::lit(2.0))
}

/// Werner weight at which the minimal partial-transpose eigenvalue crosses zero.
pub fn werner_ppt_threshold<T: Real>(width: T) -> Result<T> {
    bisect(
        |p| ppt_check(&crate::states::werner(p)?).map(|v| v.min_pt_eigenvalue),
        T::zero(),
        T::one(),
        width,
    )
}
