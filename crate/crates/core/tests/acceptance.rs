use bellpigeon::bell::{
    chsh_max_form, evaluate_inequality, max_violation_operator, minimize_f, pigeonhole_sum, scan_curve, Direction3,
    InequalityId, MeasurementSetup, Settings, DEFAULT_GRID_STEP_DEG, DEFAULT_REFINE_TOL,
};
use bellpigeon::linalg::{hermitian_eigensystem, partial_transpose, Subsystem};
use bellpigeon::pigeonhole::{pigeonhole_report, postselect_probability};
use bellpigeon::samplers::{campaign, lhv_campaign, lhv_sample, LhvDistribution, LhvMode, RngSeed};
use bellpigeon::scalar::deg;
use bellpigeon::separability::{ppt_check, vanishing_trace_table, werner_ppt_threshold, witness_expectation, Witness};
use bellpigeon::states::{
    bell, postselected, rho_family, rho_family_as_bell_mixture, werner, Axis, BellState, DensityOperator, Sign,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rho(b: BellState) -> DensityOperator<f64> {
    bell::<f64>(b).density()
}

fn inequality_violations() -> Outcome {
    let setup = MeasurementSetup::equal_intervals();
    let s00 = pigeonhole_sum(&rho(BellState::B00), &setup).map_err(|e| e.to_string())?;
    let s11 = pigeonhole_sum(&rho(BellState::B11), &setup).map_err(|e| e.to_string())?;
    ensure((s00 + 1.5).abs() <= 1e-10, || format!("beta00 sum {s00}"))?;
    ensure((s11 - 1.5).abs() <= 1e-10, || format!("beta11 sum {s11}"))
}

fn scan_shape() -> Outcome {
    let pts = scan_curve(&rho(BellState::B11), 0.0, std::f64::consts::PI, deg(0.5)).map_err(|e| e.to_string())?;
    ensure(pts.len() == 361, || format!("{} grid points", pts.len()))?;
    for p in &pts {
        let d = p.theta.to_degrees();
        if d <= 90.0 + 1e-9 {
            ensure(p.total <= 1.0 + 1e-12, || format!("total {} at {d}", p.total))?;
        } else if d < 180.0 - 1e-9 {
            ensure(p.total > 1.0, || format!("total {} at {d}", p.total))?;
        }
    }
    let best = pts
        .iter()
        .max_by(|a, b| a.total.total_cmp(&b.total))
        .expect("non-empty");
    ensure((best.theta.to_degrees() - 120.0).abs() <= 0.5, || {
        format!("maximum at {}", best.theta.to_degrees())
    })?;
    ensure((best.total - 1.5).abs() <= 1e-10, || format!("maximum {}", best.total))
}

fn zero_probability_table() -> Outcome {
    let b00 = bell::<f64>(BellState::B00);
    let b01 = bell::<f64>(BellState::B01);
    let cases = [
        (1, &b00, 0.0),
        (4, &b00, 0.0),
        (2, &b01, 0.0),
        (3, &b01, 0.0),
        (2, &b00, 0.5),
        (3, &b00, 0.5),
        (1, &b01, 0.5),
        (4, &b01, 0.5),
    ];
    for (k, b, want) in cases {
        let p = postselect_probability(&postselected(k).map_err(|e| e.to_string())?, b).map_err(|e| e.to_string())?;
        ensure((p - want).abs() <= 1e-12, || format!("phi_{k}: {p} vs {want}"))?;
    }
    Ok(())
}

fn pigeonhole_amplitudes() -> Outcome {
    for n in [3, 4, 5] {
        for r in pigeonhole_report::<f64>(n).map_err(|e| e.to_string())? {
            let a = r.result.amplitude.norm();
            ensure(a <= 1e-12, || format!("n={n} pair {:?}: |amp| {a}", r.pair))?;
        }
    }
    Ok(())
}

fn family_dual_construction() -> Outcome {
    for axis in Axis::ALL {
        for sign in Sign::ALL {
            let direct = rho_family::<f64>(axis, sign);
            let mixed = rho_family_as_bell_mixture::<f64>(axis, sign);
            let d = direct.matrix().max_abs_diff(mixed.matrix());
            ensure(d <= 1e-12, || format!("{axis:?}{sign:?} forms differ by {d}"))?;
            let v = ppt_check(&direct).map_err(|e| e.to_string())?;
            ensure(v.ppt, || format!("{axis:?}{sign:?} not PPT: {}", v.min_pt_eigenvalue))?;
        }
    }
    let plus = rho_family::<f64>(Axis::Y, Sign::Plus);
    let minus = rho_family::<f64>(Axis::Y, Sign::Minus);
    let fwd = partial_transpose(plus.matrix(), Subsystem::Second).map_err(|e| e.to_string())?;
    let back = partial_transpose(minus.matrix(), Subsystem::Second).map_err(|e| e.to_string())?;
    ensure(fwd == *minus.matrix() && back == *plus.matrix(), || {
        "partial transpose does not swap Y members".into()
    })
}

fn vanishing_trace() -> Outcome {
    let t = vanishing_trace_table::<f64>();
    for (i, row) in t.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            ensure((v - want).abs() <= 1e-12, || format!("({i},{j}) = {v}"))?;
        }
    }
    Ok(())
}

fn spectra() -> Outcome {
    let e = hermitian_eigensystem(&max_violation_operator::<f64>(), 1e-12).map_err(|e| e.to_string())?;
    for (g, w) in e.values.iter().zip([-1.5, 0.0, 0.0, 1.5]) {
        ensure((g - w).abs() <= 1e-10, || format!("eigenvalues {:?}", e.values))?;
    }
    let d00 = e.vectors[0].phase_distance(bell::<f64>(BellState::B00).amplitudes());
    let d11 = e.vectors[3].phase_distance(bell::<f64>(BellState::B11).amplitudes());
    ensure(d00 <= 1e-8 && d11 <= 1e-8, || {
        format!("eigenvector distances {d00}, {d11}")
    })?;
    let r = 2.0 * std::f64::consts::SQRT_2;
    let t = hermitian_eigensystem(&chsh_max_form::<f64>(), 1e-12).map_err(|e| e.to_string())?;
    for (g, w) in t.values.iter().zip([-r, 0.0, 0.0, r]) {
        ensure((g - w).abs() <= 1e-10, || {
            format!("Tsirelson eigenvalues {:?}", t.values)
        })?;
    }
    Ok(())
}

fn minimization() -> Outcome {
    let m = minimize_f(deg(DEFAULT_GRID_STEP_DEG), DEFAULT_REFINE_TOL).map_err(|e| e.to_string())?;
    let (a, b) = (m.alpha.to_degrees(), m.beta.to_degrees());
    ensure((m.value + 1.5).abs() <= 1e-6, || format!("minimum {}", m.value))?;
    ensure((a - 120.0).abs() <= 0.01 && (b - 120.0).abs() <= 0.01, || {
        format!("argmin ({a}, {b})")
    })
}

fn original_bell_contrast() -> Outcome {
    let state = rho(BellState::B11);
    let a = Direction3::<f64>::z_axis();
    let b = Direction3::in_xz(deg(120.0));
    let c = Direction3::in_xz(deg(60.0));
    ensure(
        (a.angle_to(&b).to_degrees() - 120.0).abs() < 1e-9
            && (a.angle_to(&c).to_degrees() - 60.0).abs() < 1e-9
            && (b.angle_to(&c).to_degrees() - 60.0).abs() < 1e-9,
        || "setting angles".into(),
    )?;
    let tilted = Settings::Triple(MeasurementSetup::new(a, b, c));
    let v = evaluate_inequality(InequalityId::OriginalBell, &state, &tilted)
        .map_err(|e| e.to_string())?
        .value;
    ensure((v - 1.5).abs() <= 1e-10, || format!("tilted value {v}"))?;
    let equal = Settings::Triple(MeasurementSetup::equal_intervals());
    let r = evaluate_inequality(InequalityId::OriginalBell, &state, &equal).map_err(|e| e.to_string())?;
    ensure((r.value + 0.5).abs() <= 1e-10 && !r.violated, || {
        format!("equal-interval value {}", r.value)
    })
}

fn monte_carlo() -> Outcome {
    let setup = MeasurementSetup::equal_intervals();
    for (b, id, want) in [
        (BellState::B00, InequalityId::PigeonLower, -1.5),
        (BellState::B11, InequalityId::PigeonUpper, 1.5),
    ] {
        let c = campaign(&rho(b), &setup, id, 100_000, RngSeed(7)).map_err(|e| e.to_string())?;
        ensure((c.value - want).abs() <= 4.0 * c.stderr, || {
            format!("{b}: {} vs {want} (stderr {})", c.value, c.stderr)
        })?;
        ensure(c.report.violated, || format!("{b}: campaign not flagged as violating"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_160_113);
    for trial in 0..100u64 {
        let dist = LhvDistribution::random(&mut rng);
        for mode in [LhvMode::PlusMinusOne, LhvMode::PlusMinusI] {
            let allowed = mode.allowed_sums();
            let s = lhv_sample(&dist, mode, 10_000, RngSeed(trial)).map_err(|e| e.to_string())?;
            if let Some(bad) = s.observed_sums.iter().find(|v| !allowed.contains(v)) {
                return Err(format!("trial {trial} {mode:?}: per-draw sum {bad}"));
            }
            let c = lhv_campaign(&dist, mode, 10_000, RngSeed(trial)).map_err(|e| e.to_string())?;
            ensure(!c.report.violated, || {
                format!("trial {trial} {mode:?}: LHV campaign flagged, value {}", c.value)
            })?;
        }
    }
    Ok(())
}

fn witness() -> Outcome {
    let w = Witness::<f64>::werner();
    for k in 0..=10 {
        let p = f64::from(k) / 10.0;
        let state = werner(p).map_err(|e| e.to_string())?;
        let v = witness_expectation(&w, &state).map_err(|e| e.to_string())?;
        ensure((v - (0.25 - 0.75 * p)).abs() <= 1e-10, || format!("p={p}: {v}"))?;
    }
    let t = werner_ppt_threshold(1e-9f64).map_err(|e| e.to_string())?;
    ensure((t - 1.0 / 3.0).abs() <= 1e-6, || format!("threshold {t}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("inequality violations at equal intervals", inequality_violations),
        ("beta11 scan curve shape", scan_shape),
        ("postselection zero-probability table", zero_probability_table),
        ("pigeonhole amplitudes vanish for n = 3, 4, 5", pigeonhole_amplitudes),
        ("dual construction of the separable family", family_dual_construction),
        ("vanishing trace table", vanishing_trace),
        ("maximal-violation and Tsirelson spectra", spectra),
        ("minimization of F", minimization),
        ("original Bell inequality contrast", original_bell_contrast),
        ("Monte Carlo sampling", monte_carlo),
        ("Werner witness and PPT threshold", witness),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
