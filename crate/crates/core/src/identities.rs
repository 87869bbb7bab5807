//! Deterministic identity checks over the `f64` instantiation, each reported
//! with its largest residual.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::bell::{chsh_max_form, max_violation_operator, pigeonhole_sum, MeasurementSetup};
use crate::error::Result;
use crate::linalg::{hermitian_eigensystem, partial_transpose, pauli, CMatrix, Subsystem};
use crate::pigeonhole::{
    collapse, pair_amplitude, pigeonhole_boundary_states, pigeonhole_report, postselect_probability, projector,
    BoxLabel,
};
use crate::separability::{ppt_check, vanishing_trace_table, witness_expectation, zero_event_table, Witness};
use crate::states::{
    bell, ket_basic, postselected, rho_family, rho_family_as_bell_mixture, rho_y_as_product_mixture, to_pauli, werner,
    Axis, BasicKet, BellState, PauliTensor, Sign,
};

/// Default residual budget.
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    fn evaluate(name: impl Into<String>, tol: f64, f: impl FnOnce() -> Result<f64>) -> Self {
        let residual = f().unwrap_or(f64::INFINITY);
        Self {
            name: name.into(),
            residual,
            tol,
            passed: residual <= tol,
        }
    }
}

type F = f64;

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().map(f64::abs).fold(0.0, f64::max)
}

fn phi(k: usize) -> crate::states::Ket<F> {
    postselected(k).expect("k in 1..=4")
}

fn spectrum_residual(m: &CMatrix<F>, expected: [f64; 4]) -> Result<f64> {
    let e = hermitian_eigensystem(m, 1e-12)?;
    Ok(max_abs(e.values.iter().zip(expected).map(|(g, w)| g - w)))
}

/// Runs every identity and returns one entry per check, in a fixed order.
pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();
    let tol = IDENTITY_TOL;

    checks.push(Check::evaluate("bell_basis_orthonormal", tol, || {
        let mut worst = 0.0f64;
        for a in BellState::ALL {
            for b in BellState::ALL {
                let g = bell::<F>(a).inner(&bell(b))?;
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g.re - want).abs()).max(g.im.abs());
            }
        }
        Ok(worst)
    }));

    checks.push(Check::evaluate("postselected_completeness", tol, || {
        let sum = (1..=4).fold(CMatrix::zeros(4), |acc, k| &acc + &phi(k).projector());
        Ok(sum.max_abs_diff(&CMatrix::identity(4)))
    }));

    let same = projector::<F>(BoxLabel::Same).matrix;
    let diff = projector::<F>(BoxLabel::Diff).matrix;
    checks.push(Check::evaluate("projectors_sum_to_identity", tol, || {
        Ok((&same + &diff).max_abs_diff(&CMatrix::identity(4)))
    }));
    checks.push(Check::evaluate("projector_same_idempotent", tol, || {
        Ok((&same * &same).max_abs_diff(&same))
    }));
    checks.push(Check::evaluate("projector_diff_idempotent", tol, || {
        Ok((&diff * &diff).max_abs_diff(&diff))
    }));
    checks.push(Check::evaluate("projectors_orthogonal", tol, || {
        Ok((&same * &diff).max_norm())
    }));

    let psi = ket_basic::<F>(BasicKet::Plus).power(2).expect("n >= 1");
    checks.push(Check::evaluate("preselected_same_box_half", tol, || {
        let p = same.sandwich(psi.amplitudes(), psi.amplitudes())?;
        Ok((p.re - 0.5).abs().max(p.im.abs()))
    }));
    for (label, target) in [(BoxLabel::Same, BellState::B00), (BoxLabel::Diff, BellState::B01)] {
        checks.push(Check::evaluate(format!("collapse_{label}_to_{target}"), tol, || {
            let k = collapse(&psi, &projector(label))?;
            Ok(k.amplitudes().max_abs_diff(bell::<F>(target).amplitudes()))
        }));
    }

    checks.push(Check::evaluate("postselection_zero_events", 1e-12, || {
        let b00 = bell::<F>(BellState::B00);
        let b01 = bell::<F>(BellState::B01);
        Ok(max_abs([
            postselect_probability(&phi(1), &b00)?,
            postselect_probability(&phi(4), &b00)?,
            postselect_probability(&phi(2), &b01)?,
            postselect_probability(&phi(3), &b01)?,
        ]))
    }));
    checks.push(Check::evaluate("postselection_half_events", 1e-12, || {
        let b00 = bell::<F>(BellState::B00);
        let b01 = bell::<F>(BellState::B01);
        Ok(max_abs([
            postselect_probability(&phi(2), &b00)? - 0.5,
            postselect_probability(&phi(3), &b00)? - 0.5,
            postselect_probability(&phi(1), &b01)? - 0.5,
            postselect_probability(&phi(4), &b01)? - 0.5,
        ]))
    }));

    for n in [3, 4, 5] {
        checks.push(Check::evaluate(
            format!("pigeonhole_same_box_vanishes_n{n}"),
            1e-12,
            || {
                Ok(max_abs(
                    pigeonhole_report::<F>(n)?.iter().map(|r| r.result.amplitude.norm()),
                ))
            },
        ));
    }
    checks.push(Check::evaluate("pigeonhole_factorized_amplitude", 1e-12, || {
        let (pre, post) = pigeonhole_boundary_states::<F>(3)?;
        let overlap = ket_basic::<F>(BasicKet::PlusI).inner(&ket_basic(BasicKet::Plus))?;
        let mut worst = 0.0f64;
        for (label, b) in [(BoxLabel::Same, BellState::B00), (BoxLabel::Diff, BellState::B01)] {
            let factored = phi(1).inner(&bell(b))? * overlap * FRAC_1_SQRT_2;
            let embedded = pair_amplitude(3, (1, 2), &pre, &post, label)?.amplitude;
            worst = worst.max((factored - embedded).norm());
        }
        Ok(worst)
    }));

    for axis in Axis::ALL {
        for sign in Sign::ALL {
            let s = if sign == Sign::Plus { '+' } else { '-' };
            checks.push(Check::evaluate(format!("family_dual_form_{axis:?}{s}"), 1e-12, || {
                Ok(rho_family::<F>(axis, sign)
                    .matrix()
                    .max_abs_diff(rho_family_as_bell_mixture::<F>(axis, sign).matrix()))
            }));
        }
    }
    checks.push(Check::evaluate("family_y_as_product_mixture", 1e-12, || {
        Ok(max_abs(Sign::ALL.map(|s| {
            rho_family::<F>(Axis::Y, s)
                .matrix()
                .max_abs_diff(rho_y_as_product_mixture::<F>(s).matrix())
        })))
    }));
    checks.push(Check::evaluate("partial_transpose_swaps_y_members", 1e-12, || {
        let pt = partial_transpose(rho_family::<F>(Axis::Y, Sign::Plus).matrix(), Subsystem::Second)?;
        Ok(pt.max_abs_diff(rho_family::<F>(Axis::Y, Sign::Minus).matrix()))
    }));
    checks.push(Check::evaluate("family_is_ppt", tol, || {
        let mut worst = 0.0f64;
        for axis in Axis::ALL {
            for sign in Sign::ALL {
                worst = worst.max(-ppt_check(&rho_family::<F>(axis, sign))?.min_pt_eigenvalue);
            }
        }
        Ok(worst.max(0.0))
    }));
    checks.push(Check::evaluate("bell_projectors_are_npt", tol, || {
        let mut worst = 0.0f64;
        for b in BellState::ALL {
            worst = worst.max((ppt_check(&bell::<F>(b).density())?.min_pt_eigenvalue + 0.5).abs());
        }
        Ok(worst)
    }));

    checks.push(Check::evaluate("vanishing_trace_delta", 1e-12, || {
        let t = vanishing_trace_table::<F>();
        Ok(max_abs(
            (0..16).map(|k| t[k / 4][k % 4] - if k / 4 == k % 4 { 1.0 } else { 0.0 }),
        ))
    }));
    checks.push(Check::evaluate("bell_projector_pauli_forms", 1e-12, || {
        let q = 0.25;
        let mut worst = 0.0f64;
        for b in BellState::ALL {
            let sign = |a: Axis| b.correlation_sign(a).value::<F>() * q;
            let want = PauliTensor::zero()
                .with(0, 0, q)
                .with(1, 1, sign(Axis::X))
                .with(2, 2, sign(Axis::Y))
                .with(3, 3, sign(Axis::Z));
            worst = worst.max(to_pauli(&bell::<F>(b).projector())?.max_abs_diff(&want));
        }
        Ok(worst)
    }));
    checks.push(Check::evaluate("zero_event_table", 1e-12, || {
        let t = zero_event_table::<F>();
        let want = [[0.0, 0.5, 0.5, 0.0], [0.5, 0.0, 0.0, 0.5]];
        Ok(max_abs((0..8).map(|k| t[k / 4][k % 4] - want[k / 4][k % 4])))
    }));

    checks.push(Check::evaluate("max_violation_spectrum", tol, || {
        spectrum_residual(&max_violation_operator(), [-1.5, 0.0, 0.0, 1.5])
    }));
    checks.push(Check::evaluate("max_violation_eigenvectors", 1e-8, || {
        let e = hermitian_eigensystem(&max_violation_operator::<F>(), 1e-12)?;
        Ok(e.vectors[0]
            .phase_distance(bell::<F>(BellState::B00).amplitudes())
            .max(e.vectors[3].phase_distance(bell::<F>(BellState::B11).amplitudes())))
    }));
    checks.push(Check::evaluate("tsirelson_spectrum", tol, || {
        let r = 2.0 * std::f64::consts::SQRT_2;
        spectrum_residual(&chsh_max_form(), [-r, 0.0, 0.0, r])
    }));
    checks.push(Check::evaluate("pigeonhole_sums_at_120_degrees", tol, || {
        let setup = MeasurementSetup::equal_intervals();
        Ok(max_abs([
            pigeonhole_sum(&bell::<F>(BellState::B00).density(), &setup)? + 1.5,
            pigeonhole_sum(&bell::<F>(BellState::B11).density(), &setup)? - 1.5,
        ]))
    }));
    checks.push(Check::evaluate("werner_witness_line", tol, || {
        let w = Witness::<F>::werner();
        let mut worst = 0.0f64;
        for k in 0..=10 {
            let p = f64::from(k) / 10.0;
            worst = worst.max((witness_expectation(&w, &werner(p)?)? - (0.25 - 0.75 * p)).abs());
        }
        Ok(worst)
    }));
    checks.push(Check::evaluate("su2_so3_conjugation", tol, || {
        let mut worst = 0.0f64;
        for k in 0..12 {
            let theta = f64::from(k) * std::f64::consts::PI / 6.0;
            let (s, c) = (theta / 2.0).sin_cos();
            let u = &CMatrix::identity(2).scale_real(c) - &pauli::y().scale(num_complex::Complex::new(0.0, s));
            let rotated = &(&u * &pauli::z()) * &u.adjoint();
            let want = &pauli::z::<F>().scale_real(theta.cos()) + &pauli::x::<F>().scale_real(theta.sin());
            worst = worst.max(rotated.max_abs_diff(&want));
        }
        Ok(worst)
    }));

    checks
}
