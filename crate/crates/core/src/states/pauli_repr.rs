use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix};
use crate::scalar::Real;

/// Real coefficients `c[i][j]` of a Hermitian two-qubit operator in the
/// basis `σ_i ⊗ σ_j`, indices ordered `I, X, Y, Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTensor<T> {
    pub c: [[T; 4]; 4],
}

impl<T: Real> PauliTensor<T> {
    pub fn zero() -> Self {
        Self { c: [[T::zero(); 4]; 4] }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.c[i][j]
    }

    pub fn with(mut self, i: usize, j: usize, value: T) -> Self {
        self.c[i][j] = value;
        self
    }

    pub fn to_matrix(&self) -> CMatrix<T> {
        from_pauli(self)
    }

    /// Largest coefficient deviation.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.c[i][j] - other.c[i][j]).abs());
            }
        }
        worst
    }
}

impl<T: Real> fmt::Display for PauliTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];
        let mut first = true;
        for (row, a) in self.c.iter().zip(NAMES) {
            for (&v, b) in row.iter().zip(NAMES) {
                if v == T::zero() {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{v:+}·{a}{b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `c[i][j] = ¼ Re tr((σ_i⊗σ_j) m)`. Rejects operators that are not
/// Hermitian within `loose_tol`, since their coefficients are not real.
pub fn to_pauli<T: Real>(m: &CMatrix<T>) -> Result<PauliTensor<T>> {
    if m.dim() != 4 {
        return Err(Error::Dimension(format!(
            "Pauli representation needs a 4x4 operator, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    m.ensure_hermitian(T::loose_tol())?;
    let quarter = T::lit(0.25);
    let mut out = PauliTensor::zero();
    for i in 0..4 {
        for j in 0..4 {
            out.c[i][j] = quarter * pauli::pair::<T>(i, j).trace_product_re(m)?;
        }
    }
    Ok(out)
}

/// `Σ c[i][j] σ_i⊗σ_j`.
pub fn from_pauli<T: Real>(t: &PauliTensor<T>) -> CMatrix<T> {
    let mut acc = CMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            if t.c[i][j] != T::zero() {
                acc = &acc + &pauli::pair::<T>(i, j).scale_real(t.c[i][j]);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell, rho_family, Axis, BellState, Sign};
    use num_complex::Complex;
    use proptest::prelude::*;

    fn expected(ii: f64, zz: f64, xx: f64, yy: f64) -> PauliTensor<f64> {
        PauliTensor::zero()
            .with(0, 0, ii)
            .with(3, 3, zz)
            .with(1, 1, xx)
            .with(2, 2, yy)
    }

    #[test]
    fn bell_projectors_in_pauli_form() {
        let q = 0.25;
        let cases = [
            (BellState::B00, expected(q, q, q, -q)),
            (BellState::B10, expected(q, q, -q, q)),
            (BellState::B01, expected(q, -q, q, q)),
            (BellState::B11, expected(q, -q, -q, -q)),
        ];
        for (b, want) in cases {
            let got = to_pauli(&bell::<f64>(b).projector()).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-15, "{b}: {got}");
        }
    }

    #[test]
    fn round_trip_of_family_member() {
        let m = rho_family::<f64>(Axis::Y, Sign::Minus).into_matrix();
        let back = from_pauli(&to_pauli(&m).unwrap());
        assert!(back.max_abs_diff(&m) <= 1e-12);
    }

    #[test]
    fn rejects_non_hermitian_and_wrong_size() {
        let m = CMatrix::<f64>::identity(4).scale(Complex::new(0.0, 1.0));
        assert!(matches!(to_pauli(&m), Err(Error::Hermiticity { .. })));
        assert!(matches!(
            to_pauli(&CMatrix::<f64>::identity(2)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn display() {
        let t = expected(0.25, 0.0, 0.0, -0.25);
        assert_eq!(t.to_string(), "+0.25·II -0.25·YY");
        assert_eq!(PauliTensor::<f64>::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(coeffs in proptest::collection::vec(-2.0f64..2.0, 16)) {
            let mut t = PauliTensor::zero();
            for (k, v) in coeffs.iter().enumerate() {
                t.c[k / 4][k % 4] = *v;
            }
            let m = from_pauli(&t);
            let back = to_pauli(&m).unwrap();
            prop_assert!(back.max_abs_diff(&t) <= 1e-12);
            prop_assert!(from_pauli(&back).max_abs_diff(&m) <= 1e-12);
        }
    }
}
