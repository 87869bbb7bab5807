use crate::bell::{spin_pair, Direction3, MeasurementSetup};
use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix};
use crate::scalar::Real;
use crate::states::{DensityOperator, PauliTensor};

/// `a·σ⊗b·σ + a·σ⊗c·σ + b·σ⊗c·σ`.
pub fn bell_operator<T: Real>(setup: &MeasurementSetup<T>) -> CMatrix<T> {
    let [ab, ac, bc] = setup.pairs().map(|(u, v)| spin_pair(&u, &v));
    &(&ab + &ac) + &bc
}

fn check_angle<T: Real>(name: &str, angle: T) -> Result<()> {
    let slack = T::tight_tol();
    if !(angle >= -slack && angle <= T::PI() + slack) {
        return Err(Error::Range(format!("{name} = {angle} rad outside [0, π]")));
    }
    Ok(())
}

/// Bell operator of the XZ-plane setup `(α, β)` with the `Z⊗X` and `X⊗Z`
/// cross terms dropped: `(cos α + cos β + cos α cos β) Z⊗Z − sin α sin β X⊗X`.
pub fn reduced_bell_operator<T: Real>(alpha: T, beta: T) -> Result<PauliTensor<T>> {
    check_angle("alpha", alpha)?;
    check_angle("beta", beta)?;
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Ok(PauliTensor::zero().with(3, 3, ca + cb + ca * cb).with(1, 1, -(sa * sb)))
}

/// `−¾ (Z⊗Z + X⊗X)`, the reduced operator at `α = β = 120°`.
pub fn max_violation_operator<T: Real>() -> CMatrix<T> {
    let zz = pauli::pair::<T>(3, 3);
    let xx = pauli::pair::<T>(1, 1);
    (&zz + &xx).scale_real(T::lit(-0.75))
}

/// `a·σ ⊗ (b+b′)·σ + a′·σ ⊗ (b−b′)·σ`.
pub fn chsh_operator<T: Real>(
    a: &Direction3<T>,
    a_prime: &Direction3<T>,
    b: &Direction3<T>,
    b_prime: &Direction3<T>,
) -> CMatrix<T> {
    let (u, v) = (b.components(), b_prime.components());
    let sum: [T; 3] = std::array::from_fn(|k| u[k] + v[k]);
    let diff: [T; 3] = std::array::from_fn(|k| u[k] - v[k]);
    let left = pauli::dot(a.components()).kron(&pauli::dot(sum));
    let right = pauli::dot(a_prime.components()).kron(&pauli::dot(diff));
    &left + &right
}

/// `√2 (Z⊗Z + X⊗X)`.
pub fn chsh_max_form<T: Real>() -> CMatrix<T> {
    let zz = pauli::pair::<T>(3, 3);
    let xx = pauli::pair::<T>(1, 1);
    (&zz + &xx).scale_real(T::SQRT_2())
}

/// One point of the `α = β = θ` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint<T> {
    pub theta: T,
    pub total: T,
    pub zz_part: T,
    pub xx_part: T,
}

/// Expectation of the reduced Bell operator at `α = β = θ` for each `θ` on
/// the grid `theta_min + k·step ≤ theta_max`, split into its `Z⊗Z` and
/// `X⊗X` contributions.
pub fn scan_curve<T: Real>(
    state: &DensityOperator<T>,
    theta_min: T,
    theta_max: T,
    step: T,
) -> Result<Vec<ScanPoint<T>>> {
    if !(step > T::zero()) {
        return Err(Error::Range(format!("scan step {step} must be positive")));
    }
    if !(theta_min <= theta_max) {
        return Err(Error::Range(format!("scan range [{theta_min}, {theta_max}] is empty")));
    }
    check_angle("theta_min", theta_min)?;
    check_angle("theta_max", theta_max)?;
    let zz = state.expectation(&pauli::pair::<T>(3, 3))?;
    let xx = state.expectation(&pauli::pair::<T>(1, 1))?;
    let count = ((theta_max - theta_min) / step + T::lit(1e-9))
        .floor()
        .to_usize()
        .expect("finite scan length")
        + 1;
    (0..count)
        .map(|k| {
            let theta = theta_min + step * T::from_usize(k).expect("small index");
            let clamped = theta.min(T::PI());
            let reduced = reduced_bell_operator(clamped, clamped)?;
            let zz_part = reduced.get(3, 3) * zz;
            let xx_part = reduced.get(1, 1) * xx;
            Ok(ScanPoint {
                theta,
                total: zz_part + xx_part,
                zz_part,
                xx_part,
            })
        })
        .collect()
}
