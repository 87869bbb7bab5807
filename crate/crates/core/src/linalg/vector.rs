use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::CMatrix;
use crate::scalar::Real;

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> CVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("vector must have dim >= 1".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { entries })
    }

    pub fn from_real(entries: &[T]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector must have dim >= 1");
        Self {
            entries: vec![Complex::zero(); dim],
        }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex::new(T::one(), T::zero());
        v
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Complex<T>>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.entries.iter()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "inner product of dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> Result<CMatrix<T>> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "outer product of dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let n = self.dim();
        let mut data = Vec::with_capacity(n * n);
        for a in &self.entries {
            for b in &other.entries {
                data.push(a * b.conj());
            }
        }
        Ok(CMatrix::from_vec_unchecked(n, data))
    }

    /// Projector `|self⟩⟨self|`.
    pub fn projector(&self) -> CMatrix<T> {
        self.outer(self).expect("same dimension")
    }

    /// Kronecker product; the left factor is the most significant index.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                out.push(a * b);
            }
        }
        Self { entries: out }
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::zero() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(self.scale(Complex::new(n.recip(), T::zero())))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Distance to `other` after removing the best global phase.
    pub fn phase_distance(&self, other: &Self) -> T {
        let overlap = self.inner(other).expect("same dimension");
        let phase = if overlap.norm() > T::zero() {
            overlap / Complex::new(overlap.norm(), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        };
        self.scale(phase).max_abs_diff(other)
    }
}

impl<T> Index<usize> for CVector<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}

impl<T: Real> Add for &CVector<T> {
    type Output = CVector<T>;
    fn add(self, rhs: Self) -> CVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CVector<T> {
    type Output = CVector<T>;
    fn sub(self, rhs: Self) -> CVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul<T> for &CVector<T> {
    type Output = CVector<T>;
    fn mul(self, rhs: T) -> CVector<T> {
        CVector {
            entries: self.entries.iter().map(|z| z * rhs).collect(),
        }
    }
}
