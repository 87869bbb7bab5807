//! Cyclic Jacobi eigensolver for small dense complex Hermitian matrices.
//!
//! Each rotation acts on one `(p, q)` plane with the unitary
//!
//! ```text
//!     J = [  c        s·e ]      e = a_pq / |a_pq|
//!         [ -s·conj(e)  c ]
//! ```
//!
//! chosen so that `(J† A J)_pq = 0`. Sweeps visit every upper-triangular
//! pair in row order until the off-diagonal Frobenius norm drops below
//! `tol · max(1, ‖A‖_F)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::CMatrix;
use crate::linalg::vector::CVector;
use crate::scalar::Real;

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem<T> {
    pub values: Vec<T>,
    pub vectors: Vec<CVector<T>>,
}

impl<T: Real> Eigensystem<T> {
    pub fn pairs(&self) -> impl Iterator<Item = (T, &CVector<T>)> {
        self.values.iter().copied().zip(self.vectors.iter())
    }

    pub fn min(&self) -> T {
        self.values[0]
    }

    pub fn max(&self) -> T {
        *self.values.last().expect("non-empty spectrum")
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let n = self.values.len();
        CMatrix::from_fn(n, |r, c| {
            self.pairs().map(|(lambda, v)| v[r] * v[c].conj() * lambda).sum()
        })
    }
}

fn off_diagonal_norm<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a.get(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// Fails with [`Error::Hermiticity`] if `‖m − m†‖_max > tol`, and with
/// [`Error::Convergence`] if [`MAX_SWEEPS`] sweeps do not suffice.
pub fn hermitian_eigensystem<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Eigensystem<T>> {
    m.ensure_hermitian(tol)?;
    let n = m.dim();
    // symmetrize so the rotations see an exactly Hermitian input
    let mut a = CMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex::new(m.get(r, r).re, T::zero())
        } else {
            (m.get(r, c) + m.get(c, r).conj()) * T::lit(0.5)
        }
    });
    let mut v = CMatrix::identity(n);
    let threshold = tol * T::one().max(m.frobenius_norm());

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps,
                off_norm: off.to_f64_lossy(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = order
        .iter()
        .map(|&col| CVector::from_vec_unchecked((0..n).map(|r| v.get(r, col)).collect()))
        .collect();
    Ok(Eigensystem { values, vectors })
}

/// Ascending eigenvalues only.
pub fn eigenvalues<T: Real>(m: &CMatrix<T>, tol: T) -> Result<Vec<T>> {
    hermitian_eigensystem(m, tol).map(|e| e.values)
}

fn rotate<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize) {
    let g = a.get(p, q);
    let g_abs = g.norm();
    if g_abs.is_zero() {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // below roundoff relative to the diagonal; annihilate directly
    if g_abs <= T::epsilon() * T::lit(1e-3) * (app.abs() + aqq.abs()) {
        a.set(p, q, Complex::zero());
        a.set(q, p, Complex::zero());
        return;
    }
    let e = g / g_abs;
    let tau = (aqq - app) / (g_abs + g_abs);
    let t = if tau >= T::zero() {
        (tau + (T::one() + tau * tau).sqrt()).recip()
    } else {
        -(-tau + (T::one() + tau * tau).sqrt()).recip()
    };
    let c = (T::one() + t * t).sqrt().recip();
    let s = t * c;
    let cc = Complex::new(c, T::zero());
    let jpq = e * s; // J[p][q]
    let jqp = -e.conj() * s; // J[q][p]
    let n = a.dim();

    // A <- A J (columns p, q)
    for r in 0..n {
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        a.set(r, p, arp * cc + arq * jqp);
        a.set(r, q, arp * jpq + arq * cc);
    }
    // A <- J† A (rows p, q)
    for col in 0..n {
        let apc = a.get(p, col);
        let aqc = a.get(q, col);
        a.set(p, col, apc * cc + aqc * jqp.conj());
        a.set(q, col, apc * jpq.conj() + aqc * cc);
    }
    a.set(p, q, Complex::zero());
    a.set(q, p, Complex::zero());
    a.set(p, p, Complex::new(a.get(p, p).re, T::zero()));
    a.set(q, q, Complex::new(a.get(q, q).re, T::zero()));

    // V <- V J
    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp * cc + vrq * jqp);
        v.set(r, q, vrp * jpq + vrq * cc);
    }
}
