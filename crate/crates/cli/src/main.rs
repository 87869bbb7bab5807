use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bellpigeon::bell::{pigeonhole_sum, scan_curve, InequalityId, MeasurementSetup, ScanPoint};
use bellpigeon::identities::run_all;
use bellpigeon::pigeonhole::pigeonhole_report;
use bellpigeon::samplers::{campaign, RngSeed, PAIR_INDICES};
use bellpigeon::scalar::deg;
use bellpigeon::separability::{ppt_check, witness_expectation, Witness};
use bellpigeon::states::{bell, werner, BellState};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA: &str = "bellpigeon/1";
const SETTING_NAMES: [&str; 3] = ["a", "b", "c"];

#[derive(Parser)]
#[command(
    name = "bellpigeon",
    version,
    about = "Bell inequalities and the quantum pigeonhole effect"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the reduced Bell expression at alpha = beta = theta
    Scan {
        #[arg(long, default_value = "bell11")]
        state: String,
        /// Degrees
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 180.0)]
        to: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Run the deterministic identity suite
    Verify,
    /// Same-box amplitudes for every particle pair
    Pigeonhole {
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo estimate of the pigeonhole sum with a = z, b at +theta, c at -theta
    Sample {
        #[arg(long, default_value = "bell00")]
        state: String,
        /// Degrees
        #[arg(long, default_value_t = 120.0)]
        theta: f64,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Werner-state witness expectation and PPT verdict
    Witness {
        #[arg(long)]
        p: f64,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
    Verify(usize),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<bellpigeon::Error> for Failure {
    fn from(e: bellpigeon::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Rounds to 12 significant digits and drops negative zero.
fn sig12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// CSV cell: plain decimal, scientific below 1e-4.
fn cell(x: f64) -> String {
    let r = sig12(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(sig12(x)).map_or(Value::Null, Value::Number)
}

fn parse_state(name: &str) -> Result<BellState, Failure> {
    name.parse()
        .map_err(|_| Failure::Usage(format!("unknown state '{name}'")))
}

fn check_angle(name: &str, degrees: f64) -> Result<(), Failure> {
    if (0.0..360.0).contains(&degrees) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--{name} must lie in [0, 360) degrees, got {degrees}"
        )))
    }
}

fn scan(state: &str, from: f64, to: f64, step: f64, format: Format) -> Result<String, Failure> {
    let state = parse_state(state)?;
    if !matches!(state, BellState::B00 | BellState::B11) {
        return Err(Failure::Usage("scan supports bell00 and bell11".into()));
    }
    check_angle("from", from)?;
    check_angle("to", to)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Failure::Usage(format!("--step must be positive, got {step}")));
    }
    let points = scan_curve(&bell::<f64>(state).density(), deg(from), deg(to), deg(step))?;
    let theta_deg = |k: usize, p: &ScanPoint<f64>| if k == 0 { from } else { p.theta.to_degrees() };
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("theta_deg,total,zz_component,xx_component\n");
            for (k, p) in points.iter().enumerate() {
                let row = [theta_deg(k, p), p.total, p.zz_part, p.xx_part].map(cell);
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    json!({
                        "theta_deg": num(theta_deg(k, p)),
                        "total": num(p.total),
                        "zz_component": num(p.zz_part),
                        "xx_component": num(p.xx_part),
                    })
                })
                .collect();
            pretty(json!({ "schema": SCHEMA, "state": state.to_string(), "rows": rows }))
        }
    })
}

fn verify() -> (String, usize) {
    let checks = run_all();
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks {
        if !c.passed {
            failed += 1;
        }
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {} residual={:.3e} tol={:.0e}\n",
            c.name, c.residual, c.tol
        ));
    }
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    (out, failed)
}

fn pigeonhole(n: usize) -> Result<String, Failure> {
    let rows: Vec<Value> = pigeonhole_report::<f64>(n)?
        .iter()
        .map(|r| {
            json!({
                "i": r.pair.0,
                "j": r.pair.1,
                "amplitude": { "re": num(r.result.amplitude.re), "im": num(r.result.amplitude.im) },
                "probability": num(r.result.probability),
            })
        })
        .collect();
    Ok(pretty(json!({
        "schema": SCHEMA,
        "n": n,
        "preselected": "plus",
        "postselected": "plus_i",
        "pairs": rows,
    })))
}

fn sample(state: &str, theta: f64, n: u64, seed: u64) -> Result<String, Failure> {
    let state = parse_state(state)?;
    check_angle("theta", theta)?;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let rho = bell::<f64>(state).density();
    let t = deg(theta);
    let setup = MeasurementSetup::xz(t, t);
    // the inequality at risk is the one on the side the analytic sum falls
    let id = if pigeonhole_sum(&rho, &setup)? < 0.0 {
        InequalityId::PigeonLower
    } else {
        InequalityId::PigeonUpper
    };
    let c = campaign(&rho, &setup, id, n, RngSeed(seed))?;
    let pairs: Vec<Value> = c
        .stats
        .pairs
        .iter()
        .zip(PAIR_INDICES)
        .map(|(p, (i, j))| {
            json!({
                "setting_a": SETTING_NAMES[i],
                "setting_b": SETTING_NAMES[j],
                "e": num(p.e),
                "stderr": num(p.stderr),
            })
        })
        .collect();
    Ok(pretty(json!({
        "schema": SCHEMA,
        "state": state.to_string(),
        "settings_deg": { "a": 0.0, "b": num(theta), "c": num(-theta) },
        "n": n,
        "pairs": pairs,
        "inequality": id.name(),
        "sum": num(c.value),
        "stderr": num(c.stderr),
        "bound": num(c.report.bound),
        "violated": c.report.violated,
        "seed": seed,
    })))
}

fn witness(p: f64) -> Result<String, Failure> {
    let rho = werner(p)?;
    let expectation = witness_expectation(&Witness::werner(), &rho)?;
    let verdict = ppt_check(&rho)?;
    Ok(pretty(json!({
        "schema": SCHEMA,
        "p": num(p),
        "expectation": num(expectation),
        "entangled_flag": expectation < -1e-10,
        "ppt_verdict": { "min_pt_eigenvalue": num(verdict.min_pt_eigenvalue), "ppt": verdict.ppt },
    })))
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json_only = |name: &str| match cli.format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(Failure::Usage(format!("{name} only supports --format json"))),
    };
    let mut verify_failures = 0;
    let body = match cli.command {
        Command::Scan {
            ref state,
            from,
            to,
            step,
        } => scan(state, from, to, step, cli.format.unwrap_or(Format::Csv))?,
        Command::Verify => {
            let (text, failed) = verify();
            verify_failures = failed;
            text
        }
        Command::Pigeonhole { n } => {
            json_only("pigeonhole")?;
            pigeonhole(n)?
        }
        Command::Sample {
            ref state,
            theta,
            n,
            seed,
        } => {
            json_only("sample")?;
            sample(state, theta, n, seed)?
        }
        Command::Witness { p } => {
            json_only("witness")?;
            witness(p)?
        }
    };
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(body.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    if verify_failures > 0 {
        return Err(Failure::Verify(verify_failures));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(k)) => {
            eprintln!("error: {k} identity checks failed");
            ExitCode::from(3)
        }
    }
}
