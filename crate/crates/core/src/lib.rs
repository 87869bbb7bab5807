//! Two-qubit simulation of pigeonhole-derived Bell inequalities, the quantum
//! pigeonhole effect under pre- and post-selection, and the family of
//! separable states that are equal mixtures of two Bell states.
//!
//! The numeric modules are generic over [`Real`] (`f32` or `f64`). The
//! `*64` aliases below fix the scalar to `f64`, which is what the identity
//! checks and the Monte Carlo samplers use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod pigeonhole;
pub mod samplers;
pub mod scalar;
pub mod separability;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type CVector64 = linalg::CVector<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type Ket64 = states::Ket<f64>;
pub type DensityOperator64 = states::DensityOperator<f64>;
pub type PauliTensor64 = states::PauliTensor<f64>;
pub type Direction64 = bell::Direction3<f64>;
pub type MeasurementSetup64 = bell::MeasurementSetup<f64>;

pub type CMatrix32 = linalg::CMatrix<f32>;
pub type Ket32 = states::Ket<f32>;
pub type DensityOperator32 = states::DensityOperator<f32>;
