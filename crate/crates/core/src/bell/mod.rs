//! Spin observables, two-party correlations and the Bell-type inequalities
//! built from them.
//!
//! Correlations are always computed from the trace formula
//! `E(a, b) = Re tr(ρ · (a·σ ⊗ b·σ))`. Closed forms such as
//! `E = u·v` (XZ-plane, `β₀₀`) are used only as test oracles.
//!
//! The `±i`-valued variables of the upper pigeonhole inequality are realized
//! operationally as outcomes of a `Y` measurement, whose eigenstates are
//! `|±i⟩`; the enumeration check in [`crate::samplers`] uses them as literal
//! complex numbers.

mod minimize;
mod operators;

pub use minimize::{f_value, minimize_f, FMinimum, DEFAULT_GRID_STEP_DEG, DEFAULT_REFINE_TOL};
pub use operators::{
    bell_operator, chsh_max_form, chsh_operator, max_violation_operator, reduced_bell_operator, scan_curve, ScanPoint,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix};
use crate::scalar::{deg, Real};
use crate::states::DensityOperator;

/// Unit vector in R³ selecting a spin measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction3<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> Direction3<T> {
    /// Fails with [`Error::Norm`] when `|‖d‖ − 1| > norm_tol`.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - T::one()).abs() > T::norm_tol() {
            return Err(Error::Norm {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(Self { x, y, z })
    }

    /// Rescales a nonzero vector to unit length.
    pub fn normalized(x: T, y: T, z: T) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Norm {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self {
            x: T::one(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn y_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::one(),
            z: T::zero(),
        }
    }

    pub fn z_axis() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }

    /// `(sin θ, 0, cos θ)`: tilted by `theta` radians from `+z` toward `+x`.
    pub fn in_xz(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            x: s,
            y: T::zero(),
            z: c,
        }
    }

    pub fn components(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Angle to `other` in radians.
    pub fn angle_to(&self, other: &Self) -> T {
        self.dot(other).max(-T::one()).min(T::one()).acos()
    }
}

impl<T: Real> std::ops::Neg for Direction3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// `d_x X + d_y Y + d_z Z`.
pub fn spin_observable<T: Real>(d: &Direction3<T>) -> CMatrix<T> {
    pauli::dot(d.components())
}

/// `a·σ ⊗ b·σ`.
pub fn spin_pair<T: Real>(da: &Direction3<T>, db: &Direction3<T>) -> CMatrix<T> {
    spin_observable(da).kron(&spin_observable(db))
}

fn require_two_qubits<T: Real>(state: &DensityOperator<T>) -> Result<()> {
    if state.n_qubits() != 2 {
        return Err(Error::Dimension(format!(
            "correlations need a two-qubit state, got {} qubits",
            state.n_qubits()
        )));
    }
    Ok(())
}

/// `E(a, b) = Re tr(ρ (a·σ ⊗ b·σ))`, clamped to `[−1−loose_tol, 1+loose_tol]`.
pub fn correlation<T: Real>(state: &DensityOperator<T>, da: &Direction3<T>, db: &Direction3<T>) -> Result<T> {
    require_two_qubits(state)?;
    let e = state.expectation(&spin_pair(da, db))?;
    let lim = T::one() + T::loose_tol();
    Ok(e.max(-lim).min(lim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    XZ,
}

/// Three measurement directions `a`, `b`, `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup<T> {
    pub a: Direction3<T>,
    pub b: Direction3<T>,
    pub c: Direction3<T>,
    pub plane: Option<Plane>,
}

impl<T: Real> MeasurementSetup<T> {
    pub fn new(a: Direction3<T>, b: Direction3<T>, c: Direction3<T>) -> Self {
        let plane = [a, b, c]
            .iter()
            .all(|d| d.y.abs() <= T::tight_tol())
            .then_some(Plane::XZ);
        Self { a, b, c, plane }
    }

    /// `a = (0,0,1)`, `b = (sin α, 0, cos α)`, `c = (−sin β, 0, cos β)`.
    pub fn xz(alpha: T, beta: T) -> Self {
        Self {
            a: Direction3::z_axis(),
            b: Direction3::in_xz(alpha),
            c: Direction3::in_xz(-beta),
            plane: Some(Plane::XZ),
        }
    }

    /// Three coplanar directions at equal 120° intervals.
    pub fn equal_intervals() -> Self {
        let t = deg(T::lit(120.0));
        Self::xz(t, t)
    }

    /// Same setup with `c` replaced by `−c`.
    pub fn with_c_reversed(&self) -> Self {
        Self { c: -self.c, ..*self }
    }

    /// The three measured pairs `(a,b)`, `(a,c)`, `(b,c)` in that order.
    pub fn pairs(&self) -> [(Direction3<T>, Direction3<T>); 3] {
        [(self.a, self.b), (self.a, self.c), (self.b, self.c)]
    }
}

/// `E(a,b) + E(a,c) + E(b,c)`.
pub fn pigeonhole_sum<T: Real>(state: &DensityOperator<T>, setup: &MeasurementSetup<T>) -> Result<T> {
    setup.pairs().iter().map(|(u, v)| correlation(state, u, v)).sum()
}

/// The four inequalities and their classical bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `E(a,b) + E(a,c) + E(b,c) ≥ −1` for `±1`-valued variables.
    PigeonLower,
    /// `E(a,b) + E(a,c) + E(b,c) ≤ 1` for `±i`-valued variables.
    PigeonUpper,
    /// `|E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)| ≤ 2`.
    Chsh,
    /// `E(a,b) − E(a,c) − E(b,c) ≤ 1`.
    OriginalBell,
}

impl InequalityId {
    pub const ALL: [InequalityId; 4] = [Self::PigeonLower, Self::PigeonUpper, Self::Chsh, Self::OriginalBell];

    pub fn name(self) -> &'static str {
        match self {
            Self::PigeonLower => "pigeon_lower",
            Self::PigeonUpper => "pigeon_upper",
            Self::Chsh => "chsh",
            Self::OriginalBell => "original_bell",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Self::Chsh => 4,
            _ => 3,
        }
    }

    /// The bound reported alongside a value (`2` for CHSH, meaning `|v| ≤ 2`).
    pub fn bound<T: Real>(self) -> T {
        match self {
            Self::PigeonLower => -T::one(),
            Self::PigeonUpper | Self::OriginalBell => T::one(),
            Self::Chsh => T::lit(2.0),
        }
    }

    /// Amount by which `value` exceeds the classical range; `≤ 0` means satisfied.
    pub fn excess<T: Real>(self, value: T) -> T {
        match self {
            Self::PigeonLower => self.bound::<T>() - value,
            Self::PigeonUpper | Self::OriginalBell => value - self.bound::<T>(),
            Self::Chsh => value.abs() - self.bound::<T>(),
        }
    }

    /// Violated when the excess is above `threshold`.
    pub fn is_violated<T: Real>(self, value: T, threshold: T) -> bool {
        self.excess(value) > threshold
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Name(s.to_string()))
    }
}

/// Settings `a, a′, b, b′` of a CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings<T> {
    pub a: Direction3<T>,
    pub a_prime: Direction3<T>,
    pub b: Direction3<T>,
    pub b_prime: Direction3<T>,
}

impl<T: Real> ChshSettings<T> {
    /// `a = Z`, `a′ = X`, `b = (Z+X)/√2`, `b′ = (Z−X)/√2`.
    pub fn standard() -> Self {
        let quarter = T::FRAC_PI_4();
        Self {
            a: Direction3::z_axis(),
            a_prime: Direction3::x_axis(),
            b: Direction3::in_xz(quarter),
            b_prime: Direction3::in_xz(-quarter),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Settings<T> {
    Triple(MeasurementSetup<T>),
    Quadruple(ChshSettings<T>),
}

impl<T> Settings<T> {
    pub fn arity(&self) -> usize {
        match self {
            Self::Triple(_) => 3,
            Self::Quadruple(_) => 4,
        }
    }
}

/// Outcome of evaluating one inequality on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationReport<T> {
    pub inequality: InequalityId,
    pub value: T,
    pub bound: T,
    pub violated: bool,
    pub settings: Settings<T>,
}

/// Combines the correlations required by `id` and checks the classical bound
/// with a `loose_tol` margin.
pub fn evaluate_inequality<T: Real>(
    id: InequalityId,
    state: &DensityOperator<T>,
    settings: &Settings<T>,
) -> Result<ViolationReport<T>> {
    let value = match (id, settings) {
        (InequalityId::PigeonLower | InequalityId::PigeonUpper, Settings::Triple(s)) => pigeonhole_sum(state, s)?,
        (InequalityId::OriginalBell, Settings::Triple(s)) => {
            correlation(state, &s.a, &s.b)? - correlation(state, &s.a, &s.c)? - correlation(state, &s.b, &s.c)?
        }
        (InequalityId::Chsh, Settings::Quadruple(q)) => {
            correlation(state, &q.a, &q.b)?
                + correlation(state, &q.a, &q.b_prime)?
                + correlation(state, &q.a_prime, &q.b)?
                - correlation(state, &q.a_prime, &q.b_prime)?
        }
        _ => {
            return Err(Error::Arity {
                inequality: id.name(),
                expected: id.arity(),
                got: settings.arity(),
            })
        }
    };
    Ok(ViolationReport {
        inequality: id,
        value,
        bound: id.bound(),
        violated: id.is_violated(value, T::loose_tol()),
        settings: *settings,
    })
}
