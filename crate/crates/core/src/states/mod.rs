//! Named kets and density operators: single-qubit states, the Bell basis,
//! the four post-selected product states, the separable Bell-mixture family
//! and Werner states.

mod pauli_repr;

pub use pauli_repr::{from_pauli, to_pauli, PauliTensor};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, pauli, tensor_all, CMatrix, CVector};
use crate::scalar::Real;

/// Normalized pure state on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T> {
    n_qubits: usize,
    amplitudes: CVector<T>,
}

impl<T: Real> Ket<T> {
    pub fn new(amplitudes: CVector<T>) -> Result<Self> {
        let dim = amplitudes.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::Dimension(format!("ket dimension {dim} is not 2^n with n >= 1")));
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > T::tight_tol() {
            return Err(Error::InvalidState(format!("ket norm {norm} differs from 1")));
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalize(amplitudes: CVector<T>) -> Result<Self> {
        Self::new(amplitudes.normalized()?)
    }

    /// Computational basis state `|index⟩` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if n_qubits == 0 || index >= dim {
            return Err(Error::Range(format!("basis index {index} for {n_qubits} qubits")));
        }
        Ok(Self {
            n_qubits,
            amplitudes: CVector::basis(dim, index),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.amplitudes.inner(&other.amplitudes)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes: self.amplitudes.kron(&other.amplitudes),
        }
    }

    /// `self ⊗ self ⊗ … ⊗ self` (`n` factors).
    pub fn power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("tensor power needs n >= 1".into()));
        }
        let amplitudes = tensor_all(std::iter::repeat_n(&self.amplitudes, n));
        Ok(Self {
            n_qubits: self.n_qubits * n,
            amplitudes,
        })
    }

    pub fn projector(&self) -> CMatrix<T> {
        self.amplitudes.projector()
    }

    pub fn density(&self) -> DensityOperator<T> {
        DensityOperator {
            n_qubits: self.n_qubits,
            matrix: self.projector(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T> {
    n_qubits: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    /// Validates Hermiticity and unit trace to the tight tolerance and the
    /// smallest eigenvalue against `−loose_tol`.
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::Dimension(format!(
                "operator dimension {dim} is not 2^n with n >= 1"
            )));
        }
        matrix.ensure_hermitian(T::tight_tol())?;
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::tight_tol() || tr.im.abs() > T::tight_tol() {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = eigenvalues(&matrix, T::tight_tol())?[0];
        if min < -T::loose_tol() {
            return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
        }
        Ok(Self {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            n_qubits,
            matrix: CMatrix::identity(dim).scale_real(T::one() / T::from_usize(dim).expect("small dim")),
        }
    }

    /// Convex combination `Σ w_k ρ_k`; weights must be nonnegative and sum to 1.
    pub fn mixture(components: &[(T, &DensityOperator<T>)]) -> Result<Self> {
        let (_, first) = components
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut total = T::zero();
        let mut acc = CMatrix::zeros(first.matrix.dim());
        for (w, rho) in components {
            if *w < T::zero() {
                return Err(Error::InvalidState(format!("negative mixture weight {w}")));
            }
            total += *w;
            acc = acc.checked_add(&rho.matrix.scale_real(*w))?;
        }
        if (total - T::one()).abs() > T::tight_tol() {
            return Err(Error::InvalidState(format!("mixture weights sum to {total}")));
        }
        Ok(Self {
            n_qubits: first.n_qubits,
            matrix: acc,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    /// `Re tr(ρ · observable)`.
    pub fn expectation(&self, observable: &CMatrix<T>) -> Result<T> {
        self.matrix.trace_product_re(observable)
    }
}

impl<T: Real> From<Ket<T>> for DensityOperator<T> {
    fn from(k: Ket<T>) -> Self {
        k.density()
    }
}

/// The five named single-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicKet {
    Zero,
    One,
    Plus,
    PlusI,
    MinusI,
}

impl FromStr for BasicKet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Self::Zero),
            "one" | "1" => Ok(Self::One),
            "plus" | "+" => Ok(Self::Plus),
            "plus_i" | "+i" => Ok(Self::PlusI),
            "minus_i" | "-i" => Ok(Self::MinusI),
            other => Err(Error::Name(other.to_string())),
        }
    }
}

/// `|0⟩`, `|1⟩`, `|+⟩ = (|0⟩+|1⟩)/√2`, `|±i⟩ = (|0⟩ ± i|1⟩)/√2`.
pub fn ket_basic<T: Real>(which: BasicKet) -> Ket<T> {
    let h = T::FRAC_1_SQRT_2();
    let (o, z) = (T::one(), T::zero());
    let amps = match which {
        BasicKet::Zero => [Complex::new(o, z), Complex::zero()],
        BasicKet::One => [Complex::zero(), Complex::new(o, z)],
        BasicKet::Plus => [Complex::new(h, z), Complex::new(h, z)],
        BasicKet::PlusI => [Complex::new(h, z), Complex::new(z, h)],
        BasicKet::MinusI => [Complex::new(h, z), Complex::new(z, -h)],
    };
    Ket {
        n_qubits: 1,
        amplitudes: CVector::from_vec_unchecked(amps.to_vec()),
    }
}

/// Looks up a single-qubit state by name (`zero`, `one`, `plus`, `plus_i`, `minus_i`).
pub fn ket_named<T: Real>(name: &str) -> Result<Ket<T>> {
    name.parse().map(ket_basic)
}

/// Bell basis label `β_jk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellState {
    B00,
    B01,
    B10,
    B11,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::B00, Self::B01, Self::B10, Self::B11];

    pub fn new(j: u8, k: u8) -> Result<Self> {
        match (j, k) {
            (0, 0) => Ok(Self::B00),
            (0, 1) => Ok(Self::B01),
            (1, 0) => Ok(Self::B10),
            (1, 1) => Ok(Self::B11),
            _ => Err(Error::Range(format!("Bell indices must be bits, got ({j}, {k})"))),
        }
    }

    pub fn bits(self) -> (u8, u8) {
        match self {
            Self::B00 => (0, 0),
            Self::B01 => (0, 1),
            Self::B10 => (1, 0),
            Self::B11 => (1, 1),
        }
    }

    /// Sign of the `σ⊗σ` component of `|β⟩⟨β|` along `axis`.
    pub fn correlation_sign(self, axis: Axis) -> Sign {
        use Sign::{Minus, Plus};
        let (zz, xx, yy) = match self {
            Self::B00 => (Plus, Plus, Minus),
            Self::B01 => (Minus, Plus, Plus),
            Self::B10 => (Plus, Minus, Plus),
            Self::B11 => (Minus, Minus, Minus),
        };
        match axis {
            Axis::X => xx,
            Axis::Y => yy,
            Axis::Z => zz,
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (j, k) = self.bits();
        write!(f, "bell{j}{k}")
    }
}

impl FromStr for BellState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bell00" => Ok(Self::B00),
            "bell01" => Ok(Self::B01),
            "bell10" => Ok(Self::B10),
            "bell11" => Ok(Self::B11),
            other => Err(Error::Name(other.to_string())),
        }
    }
}

/// `β₀₀ = (|00⟩+|11⟩)/√2`, `β₀₁ = (|01⟩+|10⟩)/√2`, `β₁₀ = (|00⟩−|11⟩)/√2`,
/// `β₁₁ = (|01⟩−|10⟩)/√2`.
pub fn bell<T: Real>(which: BellState) -> Ket<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let amps = match which {
        BellState::B00 => [h, z, z, h],
        BellState::B01 => [z, h, h, z],
        BellState::B10 => [h, z, z, -h],
        BellState::B11 => [z, h, -h, z],
    };
    Ket {
        n_qubits: 2,
        amplitudes: CVector::from_vec_unchecked(amps.iter().map(|&a| Complex::new(a, z)).collect()),
    }
}

/// `β_jk` from bit indices.
pub fn bell_bits<T: Real>(j: u8, k: u8) -> Result<Ket<T>> {
    BellState::new(j, k).map(bell)
}

/// Post-selected product state `φ_k`, `k ∈ 1..=4`:
/// `|+i,+i⟩`, `|+i,−i⟩`, `|−i,+i⟩`, `|−i,−i⟩`.
pub fn postselected<T: Real>(k: usize) -> Result<Ket<T>> {
    let (a, b) = match k {
        1 => (BasicKet::PlusI, BasicKet::PlusI),
        2 => (BasicKet::PlusI, BasicKet::MinusI),
        3 => (BasicKet::MinusI, BasicKet::PlusI),
        4 => (BasicKet::MinusI, BasicKet::MinusI),
        _ => return Err(Error::Name(format!("phi_{k}"))),
    };
    Ok(ket_basic(a).tensor(&ket_basic(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Self::X, Self::Y, Self::Z];

    /// Pauli index: X = 1, Y = 2, Z = 3.
    pub fn pauli_index(self) -> usize {
        match self {
            Self::X => 1,
            Self::Y => 2,
            Self::Z => 3,
        }
    }

    pub fn matrix<T: Real>(self) -> CMatrix<T> {
        pauli::sigma(self.pauli_index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Self::Plus, Self::Minus];

    pub fn value<T: Real>(self) -> T {
        match self {
            Self::Plus => T::one(),
            Self::Minus => -T::one(),
        }
    }
}

/// `ϱ^±_A = ¼(I⊗I ± A⊗A)`.
pub fn rho_family<T: Real>(axis: Axis, sign: Sign) -> DensityOperator<T> {
    let aa = axis.matrix::<T>().kron(&axis.matrix());
    let m = CMatrix::identity(4)
        .checked_add(&aa.scale_real(sign.value()))
        .expect("4x4");
    DensityOperator {
        n_qubits: 2,
        matrix: m.scale_real(T::lit(0.25)),
    }
}

/// The two Bell states whose equal mixture is `ϱ^±_A`.
pub fn rho_family_components(axis: Axis, sign: Sign) -> [BellState; 2] {
    use BellState::*;
    match (axis, sign) {
        (Axis::Z, Sign::Plus) => [B00, B10],
        (Axis::X, Sign::Plus) => [B00, B01],
        (Axis::Y, Sign::Plus) => [B01, B10],
        (Axis::Y, Sign::Minus) => [B00, B11],
        (Axis::X, Sign::Minus) => [B10, B11],
        (Axis::Z, Sign::Minus) => [B01, B11],
    }
}

/// `ϱ^±_A` built as `½(|β⟩⟨β| + |β'⟩⟨β'|)`.
pub fn rho_family_as_bell_mixture<T: Real>(axis: Axis, sign: Sign) -> DensityOperator<T> {
    let [a, b] = rho_family_components(axis, sign);
    let m = &bell::<T>(a).projector() + &bell::<T>(b).projector();
    DensityOperator {
        n_qubits: 2,
        matrix: m.scale_real(T::lit(0.5)),
    }
}

/// `ϱ^+_Y = ½(|φ₁⟩⟨φ₁| + |φ₄⟩⟨φ₄|)` and `ϱ^−_Y = ½(|φ₂⟩⟨φ₂| + |φ₃⟩⟨φ₃|)`.
pub fn rho_y_as_product_mixture<T: Real>(sign: Sign) -> DensityOperator<T> {
    let (j, k) = match sign {
        Sign::Plus => (1, 4),
        Sign::Minus => (2, 3),
    };
    let m = &postselected::<T>(j).expect("valid").projector() + &postselected::<T>(k).expect("valid").projector();
    DensityOperator {
        n_qubits: 2,
        matrix: m.scale_real(T::lit(0.5)),
    }
}

/// `p·|β₁₁⟩⟨β₁₁| + (1−p)·I/4`.
pub fn werner<T: Real>(p: T) -> Result<DensityOperator<T>> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(Error::Range(format!("Werner weight p = {p} outside [0, 1]")));
    }
    let singlet = bell::<T>(BellState::B11).projector().scale_real(p);
    let noise = CMatrix::identity(4).scale_real((T::one() - p) * T::lit(0.25));
    Ok(DensityOperator {
        n_qubits: 2,
        matrix: &singlet + &noise,
    })
}
