//! Same-box / different-box projectors, collapse onto Bell states, and
//! pre/post-selected transition amplitudes for `n` particles in two boxes.
//!
//! Box `0` or `1` of particle `k` is the computational basis bit of qubit `k`.
//! Qubits are numbered from 1 and qubit 1 is the most significant index bit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::scalar::Real;
use crate::states::{ket_basic, BasicKet, Ket};

/// Largest particle count accepted by [`pigeonhole_report`].
pub const MAX_PARTICLES: usize = 10;

/// Default threshold below which a measurement outcome counts as impossible.
pub const ZERO_PROBABILITY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxLabel {
    Same,
    Diff,
}

impl BoxLabel {
    fn keeps(self, a: usize, b: usize) -> bool {
        match self {
            Self::Same => a == b,
            Self::Diff => a != b,
        }
    }
}

impl fmt::Display for BoxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Same => "same",
            Self::Diff => "diff",
        })
    }
}

impl FromStr for BoxLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "same" => Ok(Self::Same),
            "diff" => Ok(Self::Diff),
            other => Err(Error::Name(other.to_string())),
        }
    }
}

/// `Π_same = |00⟩⟨00| + |11⟩⟨11|` or `Π_diff = |01⟩⟨01| + |10⟩⟨10|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T> {
    pub label: BoxLabel,
    pub matrix: CMatrix<T>,
}

pub fn projector<T: Real>(label: BoxLabel) -> Projector<T> {
    let diag: Vec<T> = (0..4)
        .map(|idx| {
            if label.keeps(idx >> 1, idx & 1) {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect();
    Projector {
        label,
        matrix: CMatrix::from_diagonal(&diag),
    }
}

/// `P|ψ⟩ / √⟨ψ|P|ψ⟩` with the default zero-probability threshold.
pub fn collapse<T: Real>(state: &Ket<T>, p: &Projector<T>) -> Result<Ket<T>> {
    collapse_with_eps(state, p, T::lit(ZERO_PROBABILITY_EPS))
}

pub fn collapse_with_eps<T: Real>(state: &Ket<T>, p: &Projector<T>, eps: T) -> Result<Ket<T>> {
    let projected = p.matrix.apply(state.amplitudes())?;
    let probability = state.amplitudes().inner(&projected)?.re;
    if probability <= eps {
        return Err(Error::ZeroProbability {
            probability: probability.to_f64_lossy(),
            eps: eps.to_f64_lossy(),
        });
    }
    Ket::new(projected.scale(Complex::new(probability.sqrt().recip(), T::zero())))
}

/// `|⟨post|state⟩|²`.
pub fn postselect_probability<T: Real>(post: &Ket<T>, state: &Ket<T>) -> Result<T> {
    if post.n_qubits() != state.n_qubits() {
        return Err(Error::Dimension(format!(
            "post-selection on {} qubits against a {}-qubit state",
            post.n_qubits(),
            state.n_qubits()
        )));
    }
    Ok(post.inner(state)?.norm_sqr())
}

/// Transition amplitude and its squared modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionResult<T> {
    pub amplitude: Complex<T>,
    pub probability: T,
}

impl<T: Real> SelectionResult<T> {
    fn from_amplitude(amplitude: Complex<T>) -> Self {
        Self {
            amplitude,
            probability: amplitude.norm_sqr(),
        }
    }
}

/// Applies a two-qubit operator to qubits `i < j` (1-based) of an `n`-qubit
/// vector, identity elsewhere.
pub fn apply_pair_operator<T: Real>(
    op: &CMatrix<T>,
    n: usize,
    (i, j): (usize, usize),
    v: &CVector<T>,
) -> Result<CVector<T>> {
    check_pair(n, (i, j))?;
    if op.dim() != 4 {
        return Err(Error::Dimension(format!(
            "pair operator must be 4x4, got {}x{}",
            op.dim(),
            op.dim()
        )));
    }
    if v.dim() != 1 << n {
        return Err(Error::Dimension(format!(
            "vector of dim {} is not on {n} qubits",
            v.dim()
        )));
    }
    let (bi, bj) = (n - i, n - j);
    let mask = (1usize << bi) | (1usize << bj);
    let mut out = vec![Complex::zero(); v.dim()];
    for (x, amp) in v.iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let col = 2 * ((x >> bi) & 1) + ((x >> bj) & 1);
        let rest = x & !mask;
        for row in 0..4 {
            let coeff = op.get(row, col);
            if coeff.is_zero() {
                continue;
            }
            let y = rest | ((row >> 1) << bi) | ((row & 1) << bj);
            out[y] += coeff * amp;
        }
    }
    CVector::new(out)
}

fn check_pair(n: usize, (i, j): (usize, usize)) -> Result<()> {
    if n < 2 {
        return Err(Error::Range(format!("need at least two particles, got {n}")));
    }
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Range(format!("pair ({i}, {j}) invalid for {n} particles")));
    }
    Ok(())
}

/// `⟨post| (Π_label on qubits i, j ⊗ I elsewhere) |pre⟩`.
pub fn pair_amplitude<T: Real>(
    n: usize,
    pair: (usize, usize),
    pre: &Ket<T>,
    post: &Ket<T>,
    label: BoxLabel,
) -> Result<SelectionResult<T>> {
    check_pair(n, pair)?;
    for (name, k) in [("pre", pre), ("post", post)] {
        if k.n_qubits() != n {
            return Err(Error::Dimension(format!(
                "{name}-selected state has {} qubits, expected {n}",
                k.n_qubits()
            )));
        }
    }
    let projected = apply_pair_operator(&projector::<T>(label).matrix, n, pair, pre.amplitudes())?;
    Ok(SelectionResult::from_amplitude(post.amplitudes().inner(&projected)?))
}

/// One row of the pigeonhole report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAmplitude<T> {
    pub pair: (usize, usize),
    pub result: SelectionResult<T>,
}

/// `|+⟩^⊗n` pre-selection and `|+i⟩^⊗n` post-selection.
pub fn pigeonhole_boundary_states<T: Real>(n: usize) -> Result<(Ket<T>, Ket<T>)> {
    Ok((
        ket_basic::<T>(BasicKet::Plus).power(n)?,
        ket_basic::<T>(BasicKet::PlusI).power(n)?,
    ))
}

/// Amplitudes for finding each pair in boxes matching `label`, ordered by
/// `(i, j)` lexicographically.
pub fn pair_report<T: Real>(n: usize, label: BoxLabel) -> Result<Vec<PairAmplitude<T>>> {
    if !(2..=MAX_PARTICLES).contains(&n) {
        return Err(Error::Range(format!("particle count {n} outside 2..={MAX_PARTICLES}")));
    }
    let (pre, post) = pigeonhole_boundary_states::<T>(n)?;
    let mut rows = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            rows.push(PairAmplitude {
                pair: (i, j),
                result: pair_amplitude(n, (i, j), &pre, &post, label)?,
            });
        }
    }
    Ok(rows)
}

/// Same-box amplitudes for every pair; all vanish.
pub fn pigeonhole_report<T: Real>(n: usize) -> Result<Vec<PairAmplitude<T>>> {
    pair_report(n, BoxLabel::Same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell, postselected, BellState};
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn psi() -> Ket<f64> {
        ket_basic::<f64>(BasicKet::Plus).power(2).unwrap()
    }

    /// Dense embedding by explicit Kronecker products with a swap network,
    /// independent of the index arithmetic in `apply_pair_operator`.
    fn dense_pair_projector(n: usize, (i, j): (usize, usize), label: BoxLabel) -> CMatrix<f64> {
        let dim = 1 << n;
        CMatrix::from_fn(dim, |r, c| {
            if r != c {
                return C::new(0.0, 0.0);
            }
            let bits: Vec<usize> = (0..n).map(|k| (r >> (n - 1 - k)) & 1).collect();
            let keep = match label {
                BoxLabel::Same => bits[i - 1] == bits[j - 1],
                BoxLabel::Diff => bits[i - 1] != bits[j - 1],
            };
            C::new(if keep { 1.0 } else { 0.0 }, 0.0)
        })
    }

    #[test]
    fn projectors_partition_identity() {
        let same = projector::<f64>(BoxLabel::Same).matrix;
        let diff = projector::<f64>(BoxLabel::Diff).matrix;
        assert!((&same + &diff).max_abs_diff(&CMatrix::identity(4)) <= 1e-12);
        assert!((&same * &same).max_abs_diff(&same) <= 1e-12);
        assert!((&diff * &diff).max_abs_diff(&diff) <= 1e-12);
        assert!((&same * &diff).max_norm() <= 1e-12);
        assert!(same.is_hermitian(0.0));
    }

    #[test]
    fn preselected_state_is_even_between_boxes() {
        let same = projector::<f64>(BoxLabel::Same);
        let p = same.matrix.sandwich(psi().amplitudes(), psi().amplitudes()).unwrap();
        assert!((p - C::new(0.5, 0.0)).norm() < 1e-15);
        let ket01 = Ket::<f64>::basis(2, 1).unwrap();
        assert_eq!(same.matrix.apply(ket01.amplitudes()).unwrap(), CVector::zeros(4));
    }

    #[test]
    fn collapse_yields_bell_states() {
        let same = collapse(&psi(), &projector(BoxLabel::Same)).unwrap();
        assert!(same.amplitudes().max_abs_diff(bell::<f64>(BellState::B00).amplitudes()) < 1e-15);
        let diff = collapse(&psi(), &projector(BoxLabel::Diff)).unwrap();
        assert!(diff.amplitudes().max_abs_diff(bell::<f64>(BellState::B01).amplitudes()) < 1e-15);
    }

    #[test]
    fn collapse_of_orthogonal_input_fails() {
        let ket01 = Ket::<f64>::basis(2, 1).unwrap();
        assert!(matches!(
            collapse(&ket01, &projector(BoxLabel::Same)),
            Err(Error::ZeroProbability { .. })
        ));
        let three = ket_basic::<f64>(BasicKet::Plus).power(3).unwrap();
        assert!(matches!(
            collapse(&three, &projector(BoxLabel::Same)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn postselection_table() {
        let phi = |k| postselected::<f64>(k).unwrap();
        let b00 = bell::<f64>(BellState::B00);
        let b01 = bell::<f64>(BellState::B01);
        assert!(postselect_probability(&phi(1), &b00).unwrap() < 1e-30);
        assert!((postselect_probability(&phi(2), &b00).unwrap() - 0.5).abs() < 1e-15);
        assert!((postselect_probability(&phi(4), &b01).unwrap() - 0.5).abs() < 1e-15);
        let three = ket_basic::<f64>(BasicKet::Plus).power(3).unwrap();
        assert!(matches!(
            postselect_probability(&phi(1), &three),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn three_particle_amplitudes_vanish() {
        let (pre, post) = pigeonhole_boundary_states::<f64>(3).unwrap();
        for pair in [(1, 2), (1, 3), (2, 3)] {
            let r = pair_amplitude(3, pair, &pre, &post, BoxLabel::Same).unwrap();
            assert!(r.amplitude.norm() <= 1e-12, "{pair:?}");
        }
    }

    #[test]
    fn two_particle_amplitude_against_phi2() {
        let r = pair_amplitude(2, (1, 2), &psi(), &postselected(2).unwrap(), BoxLabel::Same).unwrap();
        assert!((r.probability - 0.25).abs() <= 1e-12);
        assert!((r.probability - r.amplitude.norm_sqr()).abs() <= 1e-12);
    }

    #[test]
    fn factored_form_matches_embedding() {
        // ⟨Φ|Π_12 ⊗ I|Ψ⟩ = (1/√2)⟨φ₁|β⟩⟨+i|+⟩ with β = β₀₀ (same) or β₀₁ (diff)
        let (pre, post) = pigeonhole_boundary_states::<f64>(3).unwrap();
        let overlap = ket_basic::<f64>(BasicKet::PlusI)
            .inner(&ket_basic(BasicKet::Plus))
            .unwrap();
        let phi1 = postselected::<f64>(1).unwrap();
        for (label, b) in [(BoxLabel::Same, BellState::B00), (BoxLabel::Diff, BellState::B01)] {
            let factored = phi1.inner(&bell(b)).unwrap() * overlap * std::f64::consts::FRAC_1_SQRT_2;
            let embedded = pair_amplitude(3, (1, 2), &pre, &post, label).unwrap().amplitude;
            assert!((factored - embedded).norm() <= 1e-12, "{label}");
        }
    }

    #[test]
    fn report_sizes_and_order() {
        for (n, count) in [(2, 1), (3, 3), (4, 6), (5, 10)] {
            let rows = pigeonhole_report::<f64>(n).unwrap();
            assert_eq!(rows.len(), count);
            assert!(rows.windows(2).all(|w| w[0].pair < w[1].pair));
            assert!(rows.iter().all(|r| r.result.amplitude.norm() <= 1e-12));
        }
        assert!(matches!(pigeonhole_report::<f64>(1), Err(Error::Range(_))));
        assert!(matches!(pigeonhole_report::<f64>(11), Err(Error::Range(_))));
    }

    #[test]
    fn bad_pairs_are_rejected() {
        let (pre, post) = pigeonhole_boundary_states::<f64>(3).unwrap();
        for pair in [(0, 1), (2, 2), (3, 2), (1, 4)] {
            assert!(matches!(
                pair_amplitude(3, pair, &pre, &post, BoxLabel::Same),
                Err(Error::Range(_))
            ));
        }
        assert!(matches!(
            pair_amplitude(4, (1, 2), &pre, &post, BoxLabel::Same),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn different_box_probability_halves_per_untouched_particle() {
        // oracle: dense diagonal projector, then ⟨post|P|pre⟩
        for n in 2..=6 {
            let (pre, post) = pigeonhole_boundary_states::<f64>(n).unwrap();
            for r in pair_report::<f64>(n, BoxLabel::Diff).unwrap() {
                let dense = dense_pair_projector(n, r.pair, BoxLabel::Diff);
                let oracle = dense.sandwich(post.amplitudes(), pre.amplitudes()).unwrap();
                assert!((oracle - r.result.amplitude).norm() <= 1e-12);
                assert!((r.result.probability - 0.5f64.powi(n as i32)).abs() <= 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn embedding_matches_dense_oracle(
            n in 2usize..=5,
            seed in proptest::collection::vec(-1.0f64..1.0, 64),
            i in 1usize..=5,
            dj in 1usize..=4,
        ) {
            let j = i + dj;
            prop_assume!(j <= n);
            let dim = 1 << n;
            let v = CVector::new((0..dim).map(|k| C::new(seed[k % 64], seed[(k * 7 + 3) % 64])).collect()).unwrap();
            for label in [BoxLabel::Same, BoxLabel::Diff] {
                let got = apply_pair_operator(&projector::<f64>(label).matrix, n, (i, j), &v).unwrap();
                let want = dense_pair_projector(n, (i, j), label).apply(&v).unwrap();
                prop_assert!(got.max_abs_diff(&want) <= 1e-15);
            }
        }

        #[test]
        fn postselection_is_complete(re in proptest::collection::vec(-1.0f64..1.0, 4), im in proptest::collection::vec(-1.0f64..1.0, 4)) {
            let v = CVector::new(re.iter().zip(&im).map(|(&a, &b)| C::new(a, b)).collect()).unwrap();
            prop_assume!(v.norm() > 1e-3);
            let s = Ket::normalize(v).unwrap();
            let total: f64 = (1..=4).map(|k| postselect_probability(&postselected(k).unwrap(), &s).unwrap()).sum();
            prop_assert!((total - 1.0).abs() <= 1e-10);
        }
    }
}
