//! `boolstab`: certificates, bound evaluation, brute-force sweeps and plot data.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use boolstab_core::bounds::{eps_star, gamma_one, gamma_phi, gamma_q, PhiSpec};
use boolstab_core::certify::{
    ck_point, verify_interval_with, VerifyOptions, DEFAULT_DELTA, DEFAULT_LIPSCHITZ, DEFAULT_RHO_HI, DEFAULT_RHO_LO,
};
use boolstab_core::sweep::{run_brute, BruteConfig, BruteReport, Check};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "boolstab", version, about = "Noise-stability bounds and the Courtade-Kumar certificate")]
struct Cli {
    /// Worker threads (default: all logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify θ(ρ) < 0 on [rho-lo, rho-hi] by a grid/Lipschitz argument.
    Verify(VerifyArgs),
    /// The threshold ε*(ρ).
    EpsStar(EpsStarArgs),
    /// Γ(ε) for a chosen Φ.
    Gamma(GammaArgs),
    /// Γ, Γ_q and Γ_1 over an ε-grid.
    BoundsTable(TableArgs),
    /// Check the bounds against balanced functions on a small cube.
    Brute(BruteArgs),
    /// ε*(ρ) on a ρ-grid as CSV.
    Plot(PlotArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PhiArg {
    QSym,
    QAsym,
    OneSym,
    OneAsym,
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_RHO_LO)]
    rho_lo: f64,
    #[arg(long, default_value_t = DEFAULT_RHO_HI)]
    rho_hi: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_LIPSCHITZ)]
    lipschitz: f64,
    /// Grid spacing (default delta / lipschitz).
    #[arg(long)]
    step: Option<f64>,
    /// Include every grid evaluation in the certificate.
    #[arg(long)]
    per_point: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct EpsStarArgs {
    #[arg(long, default_value_t = DEFAULT_RHO_HI)]
    rho: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GammaArgs {
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = PhiArg::OneSym)]
    phi: PhiArg,
    /// Exponent for the q-functions.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    rho: f64,
    #[arg(long, value_enum, default_value_t = PhiArg::OneSym)]
    phi: PhiArg,
    /// Exponent for Γ_q and the q-functions.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// ε spacing on [0, ½].
    #[arg(long, default_value_t = 0.05)]
    eps_step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[arg(long)]
    n: usize,
    /// Correlations, comma separated (default 0.1, 0.2, …, 0.9).
    #[arg(long, value_delimiter = ',')]
    rho: Vec<f64>,
    /// Checks to run, comma separated (default all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Sample this many balanced functions instead of enumerating.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long, default_value_t = 0.01)]
    rho_step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    output: Output,
}

/// A usage or configuration error (exit code 2). Failed checks are `Ok(false)`.
enum Failure {
    Usage(String),
}

impl From<boolstab_core::Error> for Failure {
    fn from(e: boolstab_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(output: &Output, mut text: String) -> Result<(), Failure> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

fn phi_spec(phi: PhiArg, q: f64) -> Result<PhiSpec, Failure> {
    if matches!(phi, PhiArg::QSym | PhiArg::QAsym) && !(q > 0.0) {
        return Err(usage(format!("q must be positive, got {q}")));
    }
    Ok(match phi {
        PhiArg::QSym => PhiSpec::QSym(q),
        PhiArg::QAsym => PhiSpec::QAsym(q),
        PhiArg::OneSym => PhiSpec::OneSym,
        PhiArg::OneAsym => PhiSpec::OneAsym,
    })
}

fn check_rho(name: &str, rho: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(usage(format!("{name} must lie in [0, 1], got {rho}")))
    }
}

/// Published values at ρ = 0.914.
const PUBLISHED: [(&str, f64); 5] = [
    ("eps_star", 0.195055),
    ("omega_max", 0.193026),
    ("beta0", 0.175661),
    ("t_rho", 0.663100),
    ("worst_theta", -0.00169063),
];

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    check_rho("rho-lo", a.rho_lo)?;
    check_rho("rho-hi", a.rho_hi)?;
    if a.rho_hi < a.rho_lo {
        return Err(usage(format!("rho-hi {} is below rho-lo {}", a.rho_hi, a.rho_lo)));
    }
    let cert = verify_interval_with(
        a.rho_lo,
        a.rho_hi,
        a.delta,
        a.lipschitz,
        VerifyOptions {
            step: a.step,
            parallel: true,
            per_point: a.per_point,
            check_slope: true,
        },
    )?;
    let text = match a.format {
        Format::Json => cert.to_json(),
        Format::Csv => return Err(usage("verify writes json or text")),
        Format::Text => {
            let ours = match ck_point(cert.worst_rho) {
                Ok(p) => [p.eps_star, p.omega_max, p.beta0, p.t_rho, cert.worst_theta],
                Err(_) => [f64::NAN, f64::NAN, f64::NAN, f64::NAN, cert.worst_theta],
            };
            let mut s = String::new();
            let _ = writeln!(
                s,
                "interval [{}, {}]  delta {}  M {}  step {:e}  points {}",
                cert.rho_lo, cert.rho_hi, cert.delta, cert.lipschitz_m, cert.step, cert.n_points
            );
            let _ = writeln!(s, "worst point rho = {}", cert.worst_rho);
            let _ = writeln!(s, "{:<12} {:>16} {:>16}", "quantity", "computed", "published@0.914");
            for ((name, published), value) in PUBLISHED.iter().zip(ours) {
                let _ = writeln!(s, "{name:<12} {value:>16.9} {published:>16.9}");
            }
            let _ = writeln!(s, "max |theta'| {:.6}", cert.max_abs_slope);
            match &cert.reason {
                None => s.push_str("PASS\n"),
                Some(r) => {
                    let _ = writeln!(s, "FAIL: {r}");
                }
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(cert.pass)
}

fn cmd_eps_star(a: &EpsStarArgs) -> CmdResult {
    check_rho("rho", a.rho)?;
    let e = eps_star(a.rho)?;
    let text = match a.format {
        Format::Json => pretty(&json!({ "rho": a.rho, "eps_star": e })),
        Format::Csv => format!("rho,eps_star\n{},{:.12}", a.rho, e),
        Format::Text => format!("eps_star({}) = {:.12}", a.rho, e),
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn cmd_gamma(a: &GammaArgs) -> CmdResult {
    check_rho("rho", a.rho)?;
    if !(0.0..=1.0).contains(&a.eps) {
        return Err(usage(format!("eps must lie in [0, 1], got {}", a.eps)));
    }
    let phi = phi_spec(a.phi, a.q)?;
    let g = gamma_phi(a.eps, a.rho, &phi)?;
    let text = match a.format {
        Format::Json => pretty(&json!({ "rho": a.rho, "eps": a.eps, "phi": phi.name(), "gamma": g })),
        Format::Csv => format!("rho,eps,phi,gamma\n{},{},{},{:.15e}", a.rho, a.eps, phi.name(), g),
        Format::Text => format!("Gamma[{}](eps = {}, rho = {}) = {:.15}", phi.name(), a.eps, a.rho, g),
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn cmd_bounds_table(a: &TableArgs) -> CmdResult {
    check_rho("rho", a.rho)?;
    if !(a.eps_step > 0.0 && a.eps_step <= 0.5) {
        return Err(usage(format!("eps-step must lie in (0, 1/2], got {}", a.eps_step)));
    }
    if !(a.q > 0.0) {
        return Err(usage(format!("q must be positive, got {}", a.q)));
    }
    let phi = phi_spec(a.phi, a.q)?;
    let k_max = (0.5 / a.eps_step + 1e-9).floor() as usize;
    let mut rows = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let eps = (k as f64 * a.eps_step).min(0.5);
        rows.push([eps, gamma_phi(eps, a.rho, &phi)?, gamma_q(eps, a.rho, a.q)?, gamma_one(eps, a.rho)?]);
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("eps,gamma_phi,gamma_q,gamma_one\n");
            for r in &rows {
                let _ = writeln!(s, "{},{:.15e},{:.15e},{:.15e}", r[0], r[1], r[2], r[3]);
            }
            s
        }
        Format::Text => {
            let mut s = format!("rho = {}  phi = {}  q = {}\n", a.rho, phi.name(), a.q);
            let _ = writeln!(s, "{:>8} {:>18} {:>18} {:>18}", "eps", "gamma_phi", "gamma_q", "gamma_one");
            for r in &rows {
                let _ = writeln!(s, "{:>8.4} {:>18.12} {:>18.12} {:>18.12}", r[0], r[1], r[2], r[3]);
            }
            s
        }
        Format::Json => pretty(&json!({
            "rho": a.rho,
            "phi": phi.name(),
            "q": a.q,
            "rows": rows.iter().map(|r| json!({
                "eps": r[0], "gamma_phi": r[1], "gamma_q": r[2], "gamma_one": r[3]
            })).collect::<Vec<_>>(),
        })),
    };
    emit(&a.output, text)?;
    Ok(true)
}

fn brute_text(r: &BruteReport) -> String {
    let mut s = format!(
        "n = {}  functions = {}{}  rho = {:?}\n",
        r.n,
        r.functions,
        match r.seed {
            Some(seed) => format!(" (sampled, seed {seed})"),
            None => String::new(),
        },
        r.rhos
    );
    let _ = writeln!(s, "{:<16} {:>10} {:>10} {:>14} {:>8}", "check", "tested", "violations", "max excess", "result");
    for c in &r.checks {
        let excess = if c.tested == 0 {
            "-".to_string()
        } else {
            format!("{:.3e}", c.max_excess)
        };
        let _ = writeln!(
            s,
            "{:<16} {:>10} {:>10} {:>14} {:>8}",
            c.check.name(),
            c.tested,
            c.violations,
            excess,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    s.push_str(if r.pass { "PASS\n" } else { "FAIL\n" });
    s
}

fn cmd_brute(a: &BruteArgs) -> CmdResult {
    let rhos = if a.rho.is_empty() {
        (1..=9).map(|k| k as f64 / 10.0).collect()
    } else {
        a.rho.clone()
    };
    for &r in &rhos {
        check_rho("rho", r)?;
    }
    let mut cfg = BruteConfig::new(a.n, rhos);
    if !a.checks.is_empty() && !(a.checks.len() == 1 && a.checks[0] == "all") {
        cfg.checks = a
            .checks
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<Result<_, _>>()?;
    }
    cfg.sample = a.sample;
    cfg.seed = a.seed;
    let report = run_brute(&cfg)?;
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports always serialize"),
        Format::Text => brute_text(&report),
        Format::Csv => {
            let mut s = String::from("check,tested,violations,max_excess,pass\n");
            for c in &report.checks {
                let _ = writeln!(s, "{},{},{},{:e},{}", c.check.name(), c.tested, c.violations, c.max_excess, c.pass);
            }
            s
        }
    };
    emit(&a.output, text)?;
    Ok(report.pass)
}

fn cmd_plot(a: &PlotArgs) -> CmdResult {
    if !(a.rho_step > 0.0 && a.rho_step < 1.0) {
        return Err(usage(format!("rho-step must lie in (0, 1), got {}", a.rho_step)));
    }
    if a.format != Format::Csv {
        return Err(usage("plot writes csv"));
    }
    let k_max = (1.0 / a.rho_step - 1e-9).ceil() as usize;
    let mut s = String::from("rho,eps_star\n");
    for k in 1..k_max {
        let rho = k as f64 * a.rho_step;
        let _ = writeln!(s, "{},{:.12}", round_decimal(rho), eps_star(rho)?);
    }
    emit(&a.output, s)?;
    Ok(true)
}

/// Prints grid values like 0.07 instead of 0.07000000000000001.
fn round_decimal(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if (r - x).abs() < 1e-13 {
        r
    } else {
        x
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::EpsStar(a) => cmd_eps_star(a),
        Command::Gamma(a) => cmd_gamma(a),
        Command::BoundsTable(a) => cmd_bounds_table(a),
        Command::Brute(a) => cmd_brute(a),
        Command::Plot(a) => cmd_plot(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
