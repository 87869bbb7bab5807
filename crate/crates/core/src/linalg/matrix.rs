use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::vector::CVector;
use crate::scalar::Real;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("matrix must have dim >= 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[&[Complex<T>]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        Self::new(dim, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub(crate) fn from_vec_unchecked(dim: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix must have dim >= 1");
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = Complex::new(d, T::zero());
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        assert!(dim >= 1, "matrix must have dim >= 1");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Kronecker product with row index `r = r_a * dim(b) + r_b`.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut data = vec![Complex::zero(); n * n];
        for ra in 0..na {
            for ca in 0..na {
                let a = self.get(ra, ca);
                if a.is_zero() {
                    continue;
                }
                for rb in 0..nb {
                    for cb in 0..nb {
                        data[(ra * nb + rb) * n + ca * nb + cb] = a * other.get(rb, cb);
                    }
                }
            }
        }
        Self { dim: n, data }
    }

    fn check_same_dim(&self, other: &Self, what: &str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "{what} of {}x{} and {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "product")?;
        let n = self.dim;
        let mut data = vec![Complex::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &mut data[r * n..(r + 1) * n];
                for (c, out) in row.iter_mut().enumerate() {
                    *out += a * other.data[k * n + c];
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "sum")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "difference")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn apply(&self, v: &CVector<T>) -> Result<CVector<T>> {
        if v.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to vector of dim {}",
                self.dim,
                self.dim,
                v.dim()
            )));
        }
        let n = self.dim;
        let out = (0..n)
            .map(|r| {
                self.data[r * n..(r + 1) * n]
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(CVector::from_vec_unchecked(out))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    /// `‖self‖_max`, the largest entry modulus.
    pub fn max_norm(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `‖self − other‖_max`. Panics on a dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn hermiticity_deviation(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub(crate) fn ensure_hermitian(&self, tol: T) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::Hermiticity {
                deviation: deviation.to_f64_lossy(),
                tol: tol.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich(&self, u: &CVector<T>, v: &CVector<T>) -> Result<Complex<T>> {
        u.inner(&self.apply(v)?)
    }

    /// `Re tr(self · other)` without forming the product.
    pub fn trace_product_re(&self, other: &Self) -> Result<T> {
        self.check_same_dim(other, "trace product")?;
        let n = self.dim;
        let mut acc = T::zero();
        for r in 0..n {
            for k in 0..n {
                let p = self.data[r * n + k] * other.data[k * n + r];
                acc += p.re;
            }
        }
        Ok(acc)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    /// Panics on a dimension mismatch; use [`CMatrix::checked_add`] otherwise.
    fn add(self, rhs: Self) -> CMatrix<T> {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl<T: Real> Mul<T> for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: T) -> CMatrix<T> {
        self.scale_real(rhs)
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.scale_real(-T::one())
    }
}
