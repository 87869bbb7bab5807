//! Monte Carlo sampling of correlations.
//!
//! The local-hidden-variable sampler draws one assignment of all three
//! variables per trial and evaluates every product from it, which is the
//! counterfactual step a local realistic model permits. The quantum sampler
//! measures exactly two settings per trial, drawn from Born probabilities;
//! a campaign uses fresh trials for each of the three pairs.
//!
//! Randomness comes from ChaCha8 seeded with [`RngSeed`]; pair `k` of a
//! campaign always reads stream `k`, so results do not depend on the order
//! in which pairs are evaluated.

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{spin_observable, Direction3, InequalityId, MeasurementSetup, Settings, ViolationReport};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::DensityOperator;

/// Multiple of the standard error used for statistical verdicts.
pub const VERDICT_SIGMAS: f64 = 4.0;

const NEGATIVE_PROBABILITY_TOL: f64 = 1e-12;
const DISTRIBUTION_SUM_TOL: f64 = 1e-12;

/// Setting indices `(a,b)`, `(a,c)`, `(b,c)` in campaign order.
pub const PAIR_INDICES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Independent generator for substream `index`.
    pub fn substream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

/// Value set of the hidden variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LhvMode {
    /// `a, b, c ∈ {+1, −1}`.
    PlusMinusOne,
    /// `a, b, c ∈ {+i, −i}`.
    PlusMinusI,
}

impl LhvMode {
    /// Per-trial sums `ab + ac + bc` the mode can produce.
    pub fn allowed_sums(self) -> [f64; 2] {
        match self {
            Self::PlusMinusOne => [-1.0, 3.0],
            Self::PlusMinusI => [-3.0, 1.0],
        }
    }

    pub fn inequality(self) -> InequalityId {
        match self {
            Self::PlusMinusOne => InequalityId::PigeonLower,
            Self::PlusMinusI => InequalityId::PigeonUpper,
        }
    }
}

/// Definite values for `a`, `b`, `c`; `true` is the `+` branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LhvAssignment {
    pub lambda_a: bool,
    pub lambda_b: bool,
    pub lambda_c: bool,
}

impl LhvAssignment {
    /// Index `k ∈ 0..8`; bit 2 is `a`, bit 1 is `b`, bit 0 is `c`, and a set bit means `−`.
    pub fn from_index(k: usize) -> Self {
        assert!(k < 8, "assignment index {k} out of range");
        Self {
            lambda_a: k & 4 == 0,
            lambda_b: k & 2 == 0,
            lambda_c: k & 1 == 0,
        }
    }

    pub fn index(self) -> usize {
        (usize::from(!self.lambda_a) << 2) | (usize::from(!self.lambda_b) << 1) | usize::from(!self.lambda_c)
    }

    pub fn values(self, mode: LhvMode) -> [Complex64; 3] {
        let unit = match mode {
            LhvMode::PlusMinusOne => Complex64::new(1.0, 0.0),
            LhvMode::PlusMinusI => Complex64::new(0.0, 1.0),
        };
        [self.lambda_a, self.lambda_b, self.lambda_c].map(|plus| if plus { unit } else { -unit })
    }

    /// `[ab, ac, bc]`, always real.
    pub fn products(self, mode: LhvMode) -> [f64; 3] {
        let [a, b, c] = self.values(mode);
        [a * b, a * c, b * c].map(|z| {
            debug_assert_eq!(z.im, 0.0);
            z.re
        })
    }

    /// Branch signs `±1` of `a`, `b`, `c`.
    pub fn signs(self) -> [i64; 3] {
        [self.lambda_a, self.lambda_b, self.lambda_c].map(|p| if p { 1 } else { -1 })
    }

    /// Number of variables on the `+` branch.
    pub fn plus_count(self) -> usize {
        [self.lambda_a, self.lambda_b, self.lambda_c]
            .iter()
            .filter(|&&p| p)
            .count()
    }
}

/// Categorical distribution over the eight assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct LhvDistribution {
    weights: [f64; 8],
}

impl LhvDistribution {
    pub fn new(weights: [f64; 8]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Distribution(format!(
                "weights must be finite and nonnegative: {weights:?}"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_SUM_TOL {
            return Err(Error::Distribution(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn point_mass(assignment: LhvAssignment) -> Self {
        let mut weights = [0.0; 8];
        weights[assignment.index()] = 1.0;
        Self { weights }
    }

    /// Uniform over the assignments selected by `keep`.
    pub fn uniform_where(keep: impl Fn(LhvAssignment) -> bool) -> Result<Self> {
        let chosen: Vec<usize> = (0..8).filter(|&k| keep(LhvAssignment::from_index(k))).collect();
        if chosen.is_empty() {
            return Err(Error::Distribution("no assignment selected".into()));
        }
        let mut weights = [0.0; 8];
        for &k in &chosen {
            weights[k] = 1.0 / chosen.len() as f64;
        }
        Self::new(weights)
    }

    /// Random weights, normalized.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut weights = [0.0; 8];
        for w in &mut weights {
            *w = rng.gen::<f64>() + f64::EPSILON;
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Self { weights }
    }

    pub fn weights(&self) -> &[f64; 8] {
        &self.weights
    }

    fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(self.weights).expect("validated weights")
    }
}

/// Empirical correlation of one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub n: u64,
    pub e: f64,
    /// `sqrt((1 − e²) / n)`.
    pub stderr: f64,
    /// Mean of the first party's `±1` outcome.
    pub mean_a: f64,
    pub mean_b: f64,
}

#[derive(Debug, Default)]
struct PairAccumulator {
    n: u64,
    product: i64,
    a: i64,
    b: i64,
}

impl PairAccumulator {
    fn record(&mut self, product: i64, s: i64, t: i64) {
        self.n += 1;
        self.product += product;
        self.a += s;
        self.b += t;
    }

    fn push(&mut self, s: i64, t: i64) {
        self.record(s * t, s, t);
    }

    fn finish(&self) -> PairStats {
        let n = self.n as f64;
        let e = self.product as f64 / n;
        PairStats {
            n: self.n,
            e,
            stderr: ((1.0 - e * e).max(0.0) / n).sqrt(),
            mean_a: self.a as f64 / n,
            mean_b: self.b as f64 / n,
        }
    }
}

/// Empirical correlations for the pairs `(a,b)`, `(a,c)`, `(b,c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n: u64,
    pub pairs: [PairStats; 3],
}

impl SampleStats {
    pub fn e_ab(&self) -> f64 {
        self.pairs[0].e
    }

    pub fn e_ac(&self) -> f64 {
        self.pairs[1].e
    }

    pub fn e_bc(&self) -> f64 {
        self.pairs[2].e
    }

    /// `Σ coeff_k · e_k` and its standard error, treating pairs as independent.
    pub fn combine(&self, coeffs: [f64; 3]) -> (f64, f64) {
        let value = self.pairs.iter().zip(coeffs).map(|(p, c)| c * p.e).sum();
        let var: f64 = self.pairs.iter().map(|p| p.stderr * p.stderr).sum();
        (value, var.sqrt())
    }
}

/// Output of [`lhv_sample`].
#[derive(Debug, Clone, PartialEq)]
pub struct LhvSample {
    pub stats: SampleStats,
    /// Distinct per-trial values of `ab + ac + bc`, ascending.
    pub observed_sums: Vec<f64>,
}

fn check_count(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Range("sample count must be at least 1".into()));
    }
    Ok(())
}

/// Draws `n` assignments and evaluates all three products on each.
pub fn lhv_sample(dist: &LhvDistribution, mode: LhvMode, n: u64, seed: RngSeed) -> Result<LhvSample> {
    check_count(n)?;
    let mut rng = seed.substream(0);
    let sampler = dist.sampler();
    let mut acc: [PairAccumulator; 3] = Default::default();
    let mut seen = [false; 4]; // sums −3, −1, 1, 3
    for _ in 0..n {
        let assignment = LhvAssignment::from_index(sampler.sample(&mut rng));
        let signs = assignment.signs();
        let products = assignment.products(mode);
        for (k, (i, j)) in PAIR_INDICES.into_iter().enumerate() {
            acc[k].record(products[k] as i64, signs[i], signs[j]);
        }
        let sum: f64 = products.iter().sum();
        let slot = ((sum + 3.0) / 2.0).round();
        if (slot * 2.0 - 3.0 - sum).abs() > 0.0 || !(0.0..=3.0).contains(&slot) {
            return Err(Error::Model(format!(
                "per-trial sum {sum} is not an odd integer in [-3, 3]"
            )));
        }
        seen[slot as usize] = true;
    }
    let observed_sums = [-3.0, -1.0, 1.0, 3.0]
        .into_iter()
        .zip(seen)
        .filter_map(|(v, s)| s.then_some(v))
        .collect();
    Ok(LhvSample {
        stats: SampleStats {
            n,
            pairs: acc.map(|a| a.finish()),
        },
        observed_sums,
    })
}

/// `P(s, t)` for `(s, t) = (+,+), (+,−), (−,+), (−,−)`.
pub fn born_probabilities(
    state: &DensityOperator<f64>,
    da: &Direction3<f64>,
    db: &Direction3<f64>,
) -> Result<[f64; 4]> {
    if state.n_qubits() != 2 {
        return Err(Error::Dimension(format!(
            "two-qubit state required, got {} qubits",
            state.n_qubits()
        )));
    }
    let half = |d: &Direction3<f64>, sign: f64| -> CMatrix<f64> {
        (&CMatrix::identity(2) + &spin_observable(d).scale_real(sign)).scale_real(0.5)
    };
    let mut probs = [0.0; 4];
    for (k, (s, t)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .into_iter()
        .enumerate()
    {
        let p = state.expectation(&half(da, s).kron(&half(db, t)))?;
        if p < -NEGATIVE_PROBABILITY_TOL {
            return Err(Error::Model(format!("negative outcome probability {p} for ({s}, {t})")));
        }
        probs[k] = p.max(0.0);
    }
    Ok(probs)
}

fn sample_pair(probs: &[f64; 4], n: u64, rng: &mut ChaCha8Rng) -> Result<PairStats> {
    let sampler = WeightedIndex::new(probs).map_err(|e| Error::Model(format!("outcome weights: {e}")))?;
    let mut acc = PairAccumulator::default();
    for _ in 0..n {
        let k = sampler.sample(rng);
        let s = if k < 2 { 1 } else { -1 };
        let t = if k % 2 == 0 { 1 } else { -1 };
        acc.push(s, t);
    }
    Ok(acc.finish())
}

/// Measures `da` on the first qubit and `db` on the second, `n` times.
pub fn quantum_sample(
    state: &DensityOperator<f64>,
    da: &Direction3<f64>,
    db: &Direction3<f64>,
    n: u64,
    seed: RngSeed,
) -> Result<PairStats> {
    check_count(n)?;
    let probs = born_probabilities(state, da, db)?;
    sample_pair(&probs, n, &mut seed.substream(0))
}

/// Aggregate of a three-pair sampling run.
#[derive(Debug, Clone, PartialEq)]
pub struct Campaign {
    pub stats: SampleStats,
    pub value: f64,
    pub stderr: f64,
    /// Violation is flagged only beyond [`VERDICT_SIGMAS`] standard errors.
    pub report: ViolationReport<f64>,
    pub seed: RngSeed,
}

fn pair_coefficients(id: InequalityId) -> Result<[f64; 3]> {
    match id {
        InequalityId::PigeonLower | InequalityId::PigeonUpper => Ok([1.0, 1.0, 1.0]),
        InequalityId::OriginalBell => Ok([1.0, -1.0, -1.0]),
        InequalityId::Chsh => Err(Error::Arity {
            inequality: id.name(),
            expected: 4,
            got: 3,
        }),
    }
}

fn finish_campaign(
    stats: SampleStats,
    setup: &MeasurementSetup<f64>,
    id: InequalityId,
    seed: RngSeed,
) -> Result<Campaign> {
    let (value, stderr) = stats.combine(pair_coefficients(id)?);
    Ok(Campaign {
        stats,
        value,
        stderr,
        report: ViolationReport {
            inequality: id,
            value,
            bound: id.bound(),
            violated: id.is_violated(value, VERDICT_SIGMAS * stderr),
            settings: Settings::Triple(*setup),
        },
        seed,
    })
}

/// Samples the pairs `(a,b)`, `(a,c)`, `(b,c)` on fresh trials, pair `k`
/// from substream `k`, and judges `id` with a [`VERDICT_SIGMAS`] margin.
pub fn campaign(
    state: &DensityOperator<f64>,
    setup: &MeasurementSetup<f64>,
    id: InequalityId,
    n_per_pair: u64,
    seed: RngSeed,
) -> Result<Campaign> {
    check_count(n_per_pair)?;
    pair_coefficients(id)?;
    let probs = setup
        .pairs()
        .iter()
        .map(|(u, v)| born_probabilities(state, u, v))
        .collect::<Result<Vec<_>>>()?;
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = probs
            .iter()
            .enumerate()
            .map(|(k, p)| scope.spawn(move || sample_pair(p, n_per_pair, &mut seed.substream(k as u64))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampler thread"))
            .collect::<Result<Vec<_>>>()
    })?;
    let pairs = [results[0], results[1], results[2]];
    finish_campaign(SampleStats { n: n_per_pair, pairs }, setup, id, seed)
}

/// Local-hidden-variable counterpart of [`campaign`]: each pair is estimated
/// from its own fresh assignments, judged against the mode's inequality.
pub fn lhv_campaign(dist: &LhvDistribution, mode: LhvMode, n_per_pair: u64, seed: RngSeed) -> Result<Campaign> {
    check_count(n_per_pair)?;
    let sampler = dist.sampler();
    let pairs: [PairStats; 3] = std::array::from_fn(|k| {
        let mut rng = seed.substream(k as u64);
        let (i, j) = PAIR_INDICES[k];
        let mut acc = PairAccumulator::default();
        for _ in 0..n_per_pair {
            let assignment = LhvAssignment::from_index(sampler.sample(&mut rng));
            let signs = assignment.signs();
            acc.record(assignment.products(mode)[k] as i64, signs[i], signs[j]);
        }
        acc.finish()
    });
    let setup = MeasurementSetup::equal_intervals();
    finish_campaign(SampleStats { n: n_per_pair, pairs }, &setup, mode.inequality(), seed)
}
