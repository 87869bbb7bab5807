//! Single-qubit Pauli matrices, `σ_0 = I, σ_1 = X, σ_2 = Y, σ_3 = Z`, with
//! `Y = [[0, −i], [i, 0]]`.

use num_complex::Complex;

use crate::linalg::CMatrix;
use crate::scalar::Real;

fn m2<T: Real>(entries: [(f64, f64); 4]) -> CMatrix<T> {
    CMatrix::from_fn(2, |r, c| {
        let (re, im) = entries[2 * r + c];
        Complex::new(T::lit(re), T::lit(im))
    })
}

pub fn i<T: Real>() -> CMatrix<T> {
    CMatrix::identity(2)
}

pub fn x<T: Real>() -> CMatrix<T> {
    m2([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)])
}

pub fn y<T: Real>() -> CMatrix<T> {
    m2([(0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0)])
}

pub fn z<T: Real>() -> CMatrix<T> {
    m2([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)])
}

/// `σ_k` for `k ∈ 0..4`.
pub fn sigma<T: Real>(k: usize) -> CMatrix<T> {
    match k {
        0 => i(),
        1 => x(),
        2 => y(),
        3 => z(),
        _ => panic!("Pauli index {k} out of range 0..4"),
    }
}

/// `σ_i ⊗ σ_j`.
pub fn pair<T: Real>(i: usize, j: usize) -> CMatrix<T> {
    sigma::<T>(i).kron(&sigma(j))
}

/// `v_x X + v_y Y + v_z Z` for an arbitrary real vector.
pub fn dot<T: Real>(v: [T; 3]) -> CMatrix<T> {
    let [vx, vy, vz] = v;
    CMatrix::from_fn(2, |r, c| match (r, c) {
        (0, 0) => Complex::new(vz, T::zero()),
        (1, 1) => Complex::new(-vz, T::zero()),
        (0, 1) => Complex::new(vx, -vy),
        _ => Complex::new(vx, vy),
    })
}
