//! Minimization of `F(α, β) = cos α + cos β + cos α cos β − sin α sin β`
//! over `[0, π]²`: a grid scan followed by coordinate descent with a
//! golden-section line search on each axis.

use crate::error::{Error, Result};
use crate::scalar::{deg, Real};

pub const DEFAULT_GRID_STEP_DEG: f64 = 0.5;
pub const DEFAULT_REFINE_TOL: f64 = 1e-9;

const MAX_DESCENT_SWEEPS: usize = 200;
const MAX_GOLDEN_ITERS: usize = 200;

/// Expectation of the reduced Bell operator on `β₀₀` at `(α, β)`.
pub fn f_value<T: Real>(alpha: T, beta: T) -> T {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    ca + cb + ca * cb - sa * sb
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FMinimum<T> {
    pub alpha: T,
    pub beta: T,
    pub value: T,
}

/// `grid_step` in radians must lie in `(0, 1°]`. Ties on the grid resolve to
/// the lowest `α`, then the lowest `β`.
pub fn minimize_f<T: Real>(grid_step: T, refine_tol: T) -> Result<FMinimum<T>> {
    if !(grid_step > T::zero() && grid_step <= deg(T::one()) + T::epsilon()) {
        return Err(Error::Range(format!("grid step {grid_step} rad must be in (0, 1°]")));
    }
    if !(refine_tol > T::zero()) {
        return Err(Error::Range(format!(
            "refinement tolerance {refine_tol} must be positive"
        )));
    }
    let pi = T::PI();
    let n = (pi / grid_step).floor().to_usize().expect("finite grid") + 1;
    let axis: Vec<T> = (0..n)
        .map(|k| (grid_step * T::from_usize(k).expect("small index")).min(pi))
        .chain(std::iter::once(pi))
        .collect();

    let mut best = FMinimum {
        alpha: axis[0],
        beta: axis[0],
        value: f_value(axis[0], axis[0]),
    };
    for &alpha in &axis {
        for &beta in &axis {
            let value = f_value(alpha, beta);
            if value < best.value {
                best = FMinimum { alpha, beta, value };
            }
        }
    }

    let (mut alpha, mut beta) = (best.alpha, best.beta);
    for _ in 0..MAX_DESCENT_SWEEPS {
        let new_alpha = golden_section(|a| f_value(a, beta), bracket(alpha, grid_step), refine_tol);
        let new_beta = golden_section(|b| f_value(new_alpha, b), bracket(beta, grid_step), refine_tol);
        let moved = (new_alpha - alpha).abs().max((new_beta - beta).abs());
        alpha = new_alpha;
        beta = new_beta;
        if moved < refine_tol {
            break;
        }
    }
    let value = f_value(alpha, beta);
    if value < best.value {
        best = FMinimum { alpha, beta, value };
    }
    Ok(best)
}

fn bracket<T: Real>(center: T, half_width: T) -> (T, T) {
    ((center - half_width).max(T::zero()), (center + half_width).min(T::PI()))
}

fn golden_section<T: Real>(f: impl Fn(T) -> T, (mut lo, mut hi): (T, T), tol: T) -> T {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..MAX_GOLDEN_ITERS {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = (lo + hi) / T::lit(2.0);
    // keep the best probe in case the bracket hit a boundary
    let mut best = (f(mid), mid);
    for cand in [(f1, x1), (f2, x2)] {
        if cand.0 < best.0 {
            best = cand;
        }
    }
    best.1
}
