//! Plot-ready tables and machine-readable reports for the generalized
//! isotonic oscillator: closed-form spectra, sampled eigenstates, the
//! partner-potential pair, and the full cross-verification sweep.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gqio::exact::{isotonic_spectrum, isotonic_wavefunction};
use gqio::model::{snap_a, solvability_gate};
use gqio::numeric::{integrate, suggest_r_max};
use gqio::susy::{partner_v1, partner_v2, superpotential};
use gqio::verify::{default_sweep, identity_suites, run_verification, SweepPoint, VerifyConfig};
use gqio::{EffectiveParams64, PotentialParams64, SuperpotentialAnsatz64};

#[derive(Parser)]
#[command(
    name = "gqio",
    version,
    about = "Spectra, wavefunctions and partner potentials of the generalized quantum isotonic oscillator",
    after_help = "Exit codes: 0 success, 2 parameter or gate rejection, 1 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy levels on the solvable line.
    ///
    /// CSV columns, in order: n, k, energy_shifted, energy_unshifted.
    Spectrum(SpectrumArgs),
    /// Samples of one normalized eigenstate.
    ///
    /// CSV columns, in order: r, phi. Leading comment lines carry the
    /// quadrature norm check and the level's energies.
    Wavefunction(WavefunctionArgs),
    /// Cross-check of the closed forms against the finite-difference solver.
    ///
    /// CSV columns, in order: case, b2, d, ell, omega, a2, g, k, n, exact,
    /// numeric, gap, overlap, norm_dev, pairing_dev.
    Verify(VerifyArgs),
    /// The superpotential and both partner potentials, tabulated.
    ///
    /// CSV columns, in order: r, v1, v2, w.
    Partner(PartnerArgs),
    /// The special-function identity suites, each swept in full.
    ///
    /// CSV columns, in order: suite, cases, worst, tolerance, pass, worst_at.
    CheckIdentities(CheckIdentitiesArgs),
}

#[derive(Args, Clone)]
struct PotentialArgs {
    /// Strength of the extra inverse-square term, as B².
    #[arg(long = "B2", default_value_t = 0.0, allow_negative_numbers = true)]
    b2: f64,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega: f64,
    /// Coupling of the rational term; 2 is the solvable value.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    g: f64,
    /// a² directly, avoiding the √ rounding of --a [default: (k+½)/ω]
    #[arg(long, conflicts_with = "a", allow_negative_numbers = true)]
    a2: Option<f64>,
    /// Length scale a; squared internally.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Spatial dimension (at least 2).
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Angular momentum ℓ.
    #[arg(long, default_value_t = 0)]
    ell: u32,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table to PATH instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Highest printed level; rows cover n = 0..=n_max.
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Level to sample (at most 12).
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Sample count; row i sits at r = i·r_max/samples.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Outer sample radius [default: sized so the Gaussian tail is negligible]
    #[arg(long, allow_negative_numbers = true)]
    r_max: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Append one extra sweep point with this B² (a snaps to the solvable value).
    #[arg(long = "B2", allow_negative_numbers = true)]
    b2: Option<f64>,
    /// ω of the extra sweep point.
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Dimension of the extra sweep point.
    #[arg(long)]
    d: Option<u32>,
    /// Angular momentum of the extra sweep point.
    #[arg(long)]
    ell: Option<u32>,
    /// Coarse grid size; the Richardson companion grid doubles the resolution.
    #[arg(long, default_value_t = 6000)]
    grid_points: usize,
    /// Highest cross-checked level per parameter set (at most 11).
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Worker threads; 0 takes the machine's parallelism.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Corrupt one numeric eigenvalue to exercise the failure path.
    #[arg(long, hide = true)]
    inject_gap_failure: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PartnerArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Sample count; row i sits at r = i·r_max/samples.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Outer sample radius.
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    r_max: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CheckIdentitiesArgs {
    #[command(flatten)]
    output: OutputArgs,
}

/// Exit contract: 0 success, 2 parameter or gate rejection, 1 verification
/// failure. Usage errors from the parser also exit 2.
struct Failure {
    code: u8,
    message: String,
}

fn reject(message: String) -> Failure {
    Failure { code: 2, message }
}

fn fail(message: String) -> Failure {
    Failure { code: 1, message }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Partner(args) => cmd_partner(args),
        Command::CheckIdentities(args) => cmd_check_identities(args),
    }
}

/// 17 significant digits; every finite double survives the round trip.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(output: &OutputArgs, payload: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| fail(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

impl PotentialArgs {
    fn resolve(&self) -> Result<PotentialParams64, Failure> {
        for (name, value) in [("B2", self.b2), ("omega", self.omega), ("g", self.g)] {
            if !value.is_finite() {
                return Err(reject(format!("--{name} must be finite, got {value}")));
            }
        }
        let a2 = match (self.a2, self.a) {
            (Some(a2), _) => {
                if !a2.is_finite() {
                    return Err(reject(format!("--a2 must be finite, got {a2}")));
                }
                a2
            }
            (None, Some(a)) => {
                if !a.is_finite() || a <= 0.0 {
                    return Err(reject(format!("--a must be positive and finite, got {a}")));
                }
                a * a
            }
            // a is the adjustable knob: with no explicit value, take the one
            // the solvability condition selects, a² = (k+½)/ω, computed
            // without a √ round trip so the gate sees it exactly
            (None, None) => {
                if self.omega <= 0.0 {
                    return Err(reject(format!(
                        "omega must be positive, got {}",
                        self.omega
                    )));
                }
                if self.b2 < 0.0 {
                    return Err(reject(format!("B2 must be nonnegative, got {}", self.b2)));
                }
                if self.d < 2 {
                    return Err(reject(format!(
                        "dimension must be at least 2, got {}",
                        self.d
                    )));
                }
                let a = snap_a(self.b2, self.omega, self.d, self.ell);
                let provisional =
                    PotentialParams64::new(self.b2, self.omega, self.g, a, self.d, self.ell)
                        .map_err(|e| reject(e.to_string()))?;
                solvability_gate(provisional).gamma_d / self.omega
            }
        };
        PotentialParams64::with_a_squared(self.b2, self.omega, self.g, a2, self.d, self.ell)
            .map_err(|e| reject(e.to_string()))
    }
}

fn gate(p: PotentialParams64) -> Result<EffectiveParams64, Failure> {
    let e = solvability_gate(p);
    if e.solvable {
        return Ok(e);
    }
    let a = snap_a(p.b2, p.omega, p.d, p.ell);
    Err(reject(format!(
        "no closed-form spectrum here: the gate needs g=2 and ωa²=k+½, \
         got g={}, ωa²={} against k+½={}; nearest solvable a={} (a²={})",
        p.g,
        p.omega * p.a2,
        e.gamma_d,
        a,
        e.gamma_d / p.omega
    )))
}

fn params_json(p: PotentialParams64, e: EffectiveParams64) -> serde_json::Value {
    serde_json::json!({
        "B2": p.b2, "omega": p.omega, "g": p.g, "a": p.a, "a2": p.a2,
        "d": p.d, "ell": p.ell, "k": e.k,
    })
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let p = args.potential.resolve()?;
    let e = gate(p)?;
    let rows: Vec<(usize, f64)> = (0..=args.n_max)
        .map(|n| (n, isotonic_spectrum(e, p.omega, n).expect("gate passed").shifted))
        .collect();
    let payload = match args.output.format {
        Format::Csv => {
            let mut s = String::from("n,k,energy_shifted,energy_unshifted\n");
            for &(n, shifted) in &rows {
                let _ = writeln!(
                    s,
                    "{n},{},{},{}",
                    full(e.k),
                    full(shifted),
                    full(shifted - e.shift1)
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(n, shifted)| {
                    serde_json::json!({
                        "n": n,
                        "k": e.k,
                        "energy_shifted": shifted,
                        "energy_unshifted": shifted - e.shift1,
                    })
                })
                .collect();
            pretty(&serde_json::json!({ "params": params_json(p, e), "rows": rows }))
        }
    };
    emit(&args.output, payload)
}

fn cmd_wavefunction(args: WavefunctionArgs) -> Result<(), Failure> {
    let p = args.potential.resolve()?;
    let e = gate(p)?;
    if args.n > 12 {
        return Err(reject(format!("n is capped at 12, got {}", args.n)));
    }
    if args.samples == 0 {
        return Err(reject("samples must be at least 1".into()));
    }
    let state = isotonic_wavefunction(e, p.omega, p.a, args.n).expect("gate passed");
    // quadrature over the full support; beyond `tail` the Gaussian factor
    // leaves less mass than the 1e-8 norm tolerance resolves
    let tail = suggest_r_max(state.energy, state.origin_exponent, p.omega);
    let norm = integrate(|r| state.evaluate(r) * state.evaluate(r), 0.0, tail)
        .map_err(|err| fail(format!("norm quadrature failed: {err}")))?;
    let r_max = match args.r_max {
        Some(v) if v.is_finite() && v > 0.0 => v,
        Some(v) => {
            return Err(reject(format!("r-max must be positive and finite, got {v}")));
        }
        None => tail,
    };
    let rows: Vec<(f64, f64)> = (1..=args.samples)
        .map(|i| {
            let r = r_max * i as f64 / args.samples as f64;
            (r, state.evaluate(r))
        })
        .collect();
    let payload = match args.output.format {
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "# norm_check={}", full(norm));
            let _ = writeln!(
                s,
                "# n={} k={} energy_shifted={} energy_unshifted={}",
                args.n,
                full(e.k),
                full(state.energy),
                full(state.energy - e.shift1)
            );
            s.push_str("r,phi\n");
            for &(r, phi) in &rows {
                let _ = writeln!(s, "{},{}", full(r), full(phi));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(r, phi)| serde_json::json!({ "r": r, "phi": phi }))
                .collect();
            pretty(&serde_json::json!({
                "params": params_json(p, e),
                "n": args.n,
                "energy_shifted": state.energy,
                "energy_unshifted": state.energy - e.shift1,
                "norm_check": norm,
                "rows": rows,
            }))
        }
    };
    emit(&args.output, payload)
}

fn cmd_partner(args: PartnerArgs) -> Result<(), Failure> {
    let p = args.potential.resolve()?;
    let e = gate(p)?;
    if args.samples == 0 {
        return Err(reject("samples must be at least 1".into()));
    }
    if !args.r_max.is_finite() || args.r_max <= 0.0 {
        return Err(reject(format!(
            "r-max must be positive and finite, got {}",
            args.r_max
        )));
    }
    let w = SuperpotentialAnsatz64::new(e.k, p.omega, 2.0, p.a).expect("gate passed");
    let mut rows = Vec::with_capacity(args.samples);
    for i in 1..=args.samples {
        let r = args.r_max * i as f64 / args.samples as f64;
        let wr = superpotential(w, r)
            .map_err(|err| reject(format!("sample radius unusable: {err}")))?;
        rows.push((r, partner_v1(e.k, p.omega, p.a2, r), partner_v2(e.k, p.omega, r), wr));
    }
    let payload = match args.output.format {
        Format::Csv => {
            let mut s = String::from("r,v1,v2,w\n");
            for &(r, v1, v2, wr) in &rows {
                let _ = writeln!(s, "{},{},{},{}", full(r), full(v1), full(v2), full(wr));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(r, v1, v2, wr)| {
                    serde_json::json!({ "r": r, "v1": v1, "v2": v2, "w": wr })
                })
                .collect();
            pretty(&serde_json::json!({ "params": params_json(p, e), "rows": rows }))
        }
    };
    emit(&args.output, payload)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.grid_points < 100 {
        return Err(reject(format!(
            "grid-points must be at least 100, got {}",
            args.grid_points
        )));
    }
    if args.n_max > 11 {
        return Err(reject(format!("n-max is capped at 11, got {}", args.n_max)));
    }
    let mut points = default_sweep();
    if args.b2.is_some() || args.omega.is_some() || args.d.is_some() || args.ell.is_some() {
        let b2 = args.b2.unwrap_or(0.0);
        let omega = args.omega.unwrap_or(1.0);
        let d = args.d.unwrap_or(3);
        let ell = args.ell.unwrap_or(0);
        if !b2.is_finite() || b2 < 0.0 {
            return Err(reject(format!("B2 must be nonnegative and finite, got {b2}")));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(reject(format!("omega must be positive and finite, got {omega}")));
        }
        if d < 2 {
            return Err(reject(format!("dimension must be at least 2, got {d}")));
        }
        points.push(SweepPoint { b2, d, ell, omega });
    }
    let config = VerifyConfig {
        grid_points: args.grid_points,
        levels: args.n_max + 1,
        jobs: args.jobs,
        inject_gap_failure: args.inject_gap_failure,
    };
    let report = run_verification(&points, &config);
    let payload = match args.output.format {
        Format::Json => {
            let doc = serde_json::to_value(&report).expect("serializable");
            pretty(&doc)
        }
        Format::Csv => {
            let sm = &report.summary;
            let mut s = String::new();
            let _ = writeln!(s, "# version={}", report.version);
            let _ = writeln!(
                s,
                "# pass={} max_gap={} max_overlap_defect={} max_norm_dev={} max_gram_dev={} max_pairing_dev={}",
                sm.pass,
                full(sm.max_gap),
                full(sm.max_overlap_defect),
                full(sm.max_norm_dev),
                full(sm.max_gram_dev),
                full(sm.max_pairing_dev)
            );
            let _ = writeln!(s, "# note={}", sm.note);
            s.push_str("case,b2,d,ell,omega,a2,g,k,n,exact,numeric,gap,overlap,norm_dev,pairing_dev\n");
            for (i, c) in report.cases.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    full(c.params.b2),
                    c.params.d,
                    c.params.ell,
                    full(c.params.omega),
                    full(c.params.a2),
                    full(c.params.g),
                    full(c.params.k),
                    c.n,
                    full(c.exact),
                    full(c.numeric),
                    full(c.gap),
                    full(c.overlap),
                    full(c.norm_dev),
                    full(c.pairing_dev)
                );
            }
            s
        }
    };
    emit(&args.output, payload)?;
    if !report.summary.pass {
        let worst = report
            .summary
            .worst
            .clone()
            .unwrap_or_else(|| "unnamed case".into());
        return Err(fail(format!("verification failed, worst offender: {worst}")));
    }
    Ok(())
}

fn cmd_check_identities(args: CheckIdentitiesArgs) -> Result<(), Failure> {
    let suites = identity_suites();
    let payload = match args.output.format {
        Format::Json => {
            let doc = serde_json::to_value(&suites).expect("serializable");
            pretty(&doc)
        }
        Format::Csv => {
            let mut s = String::from("suite,cases,worst,tolerance,pass,worst_at\n");
            for suite in &suites {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},\"{}\"",
                    suite.name,
                    suite.cases,
                    full(suite.worst),
                    full(suite.tolerance),
                    suite.pass,
                    suite.worst_at
                );
            }
            s
        }
    };
    emit(&args.output, payload)?;
    if let Some(bad) = suites.iter().find(|s| !s.pass) {
        return Err(fail(format!(
            "identity suite '{}' failed: worst deviation {} at {} (tolerance {})",
            bad.name, bad.worst, bad.worst_at, bad.tolerance
        )));
    }
    Ok(())
}
