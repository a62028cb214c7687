//! Command-line front end shared by the `reservoir-sim` binary and tests.
//!
//! Exit codes: 0 on success, 1 when a computation or validation gate fails,
//! 2 on usage errors. Failures print a single `error[<kind>]: <message>` line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::channel::audit_kraus;
use crate::error::{Error, Result};
use crate::measures::ESD_EPS;
use crate::reservoir::{squeezing_bound, ReservoirParams};
use crate::states::CorrelationTriple;
use crate::sweep::{self, format_number, oracle_check, oracle_grid, SweepConfig, ORACLE_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "reservoir-sim",
    about = "Two entangled qubits in local thermal or squeezed reservoirs",
    long_about = "Two entangled qubits in local thermal or squeezed reservoirs.\n\n\
        All times are scaled as Γt with Γ = Γ1 + Γ2. States are evolved with Kraus \
        operators extracted from the integrated master equation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve one initial state and write its time series as CSV
    #[command(allow_negative_numbers = true)]
    Evolve(EvolveArgs),
    /// Evolve over an n × m-fraction grid and write time series plus a summary CSV
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Compare the literal, repaired and Choi-derived Kraus sets at one point
    #[command(allow_negative_numbers = true)]
    ValidateKraus(ValidateArgs),
    /// Compare channel evolution with direct master-equation integration on a fixed grid
    #[command(allow_negative_numbers = true)]
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Correlation c1 of the Bell-diagonal initial state
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c1: f64,
    /// Correlation c2
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    c2: f64,
    /// Correlation c3
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c3: f64,
}

#[derive(Debug, Args)]
struct TimeArgs {
    /// Horizon in units of Γt
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    /// Number of evenly spaced samples on [0, t-max], endpoints included
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Negativity at or below this counts as zero when locating sudden death
    #[arg(long, default_value_t = ESD_EPS)]
    esd_eps: f64,
}

#[derive(Debug, Args)]
struct ReservoirArgs {
    /// Emission rate of qubit A
    #[arg(long, default_value_t = 1.0)]
    gamma1: f64,
    /// Emission rate of qubit B
    #[arg(long, default_value_t = 1.0)]
    gamma2: f64,
    /// Squeezing phase θ in radians (both qubits)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    reservoir: ReservoirArgs,
    #[command(flatten)]
    time: TimeArgs,
    /// Mean photon number of both reservoirs
    #[arg(long, default_value_t = 0.0)]
    n: f64,
    /// Override the mean photon number of qubit A
    #[arg(long)]
    n1: Option<f64>,
    /// Override the mean photon number of qubit B
    #[arg(long)]
    n2: Option<f64>,
    /// |M| as a fraction of sqrt(n(n+1))
    #[arg(long, default_value_t = 0.0)]
    m_frac: f64,
    /// Absolute |M|; overrides --m-frac and must respect |M| <= sqrt(n(n+1))
    #[arg(long)]
    m_abs: Option<f64>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Optional summary CSV path (ESD, plateau and saturation values)
    #[arg(long)]
    summary_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    reservoir: ReservoirArgs,
    #[command(flatten)]
    time: TimeArgs,
    /// Comma-separated mean photon numbers
    #[arg(long, value_delimiter = ',', default_value = "0.00001,0.05,0.2,0.6,6")]
    n_grid: Vec<f64>,
    /// Comma-separated |M| fractions of sqrt(n(n+1))
    #[arg(long, value_delimiter = ',', default_value = "0")]
    m_frac_grid: Vec<f64>,
    /// Time-series CSV path
    #[arg(long)]
    out: PathBuf,
    /// Summary CSV path [default: <out stem>.summary.csv]
    #[arg(long)]
    summary_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Mean photon number
    #[arg(long, default_value_t = 0.0)]
    n: f64,
    /// |M| as a fraction of sqrt(n(n+1))
    #[arg(long, default_value_t = 0.0)]
    m_frac: f64,
    /// Absolute |M|; overrides --m-frac
    #[arg(long)]
    m_abs: Option<f64>,
    /// Squeezing phase θ in radians
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
    /// Emission rate Γ of the qubit
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Evaluation time as Γt with Γ = 2γ (the symmetric-pair axis)
    #[arg(long, default_value_t = 1.0)]
    gamma_t: f64,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Maximum accepted trace distance
    #[arg(long, default_value_t = ORACLE_TOL)]
    tol: f64,
}

fn reservoir(gamma: f64, n: f64, m_frac: f64, m_abs: Option<f64>, theta: f64) -> Result<ReservoirParams> {
    match m_abs {
        Some(m) => ReservoirParams::new(gamma, n, m, theta),
        None => ReservoirParams::squeezed_fraction(gamma, n, m_frac, theta),
    }
}

fn triple(s: &StateArgs) -> Result<CorrelationTriple> {
    CorrelationTriple::new(s.c1, s.c2, s.c3)
}

fn apply_time(cfg: &mut SweepConfig, t: &TimeArgs) {
    cfg.t_max = t.t_max;
    cfg.samples = t.samples;
    cfg.esd_eps = t.esd_eps;
}

fn run_evolve_cmd(a: &EvolveArgs, out: &mut dyn Write) -> Result<i32> {
    let r = &a.reservoir;
    let n1 = a.n1.unwrap_or(a.n);
    let n2 = a.n2.unwrap_or(a.n);
    let pa = reservoir(r.gamma1, n1, a.m_frac, a.m_abs, r.theta)?;
    let pb = reservoir(r.gamma2, n2, a.m_frac, a.m_abs, r.theta)?;
    let mut cfg = SweepConfig::new(triple(&a.state)?, pa);
    cfg.reservoir_b = pb;
    cfg.output_path = a.out.clone();
    apply_time(&mut cfg, &a.time);

    let traj = sweep::evolve_trajectory(&cfg)?;
    sweep::write_rows_csv(&cfg.output_path, &traj.rows)?;
    if let Some(path) = &a.summary_out {
        sweep::write_summary_csv(path, &[traj.summary])?;
    }
    let s = &traj.summary;
    let opt = |x: Option<f64>| x.map(format_number).unwrap_or_else(|| "none".into());
    writeln!(
        out,
        "wrote {} rows to {}; esd_time={} disturbance_plateau_time={} entropy_saturation_time={}",
        traj.rows.len(),
        cfg.output_path.display(),
        opt(s.esd_time),
        opt(s.disturbance_plateau_time),
        opt(s.entropy_saturation_time)
    )
    .ok();
    Ok(0)
}

fn run_sweep_cmd(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let r = &a.reservoir;
    let n0 = a.n_grid.first().copied().unwrap_or(0.0);
    let pa = ReservoirParams::new(r.gamma1, n0, 0.0, r.theta)?;
    let pb = ReservoirParams::new(r.gamma2, n0, 0.0, r.theta)?;
    let mut cfg = SweepConfig::new(triple(&a.state)?, pa);
    cfg.reservoir_b = pb;
    cfg.n_grid = a.n_grid.clone();
    cfg.m_fractions = a.m_frac_grid.clone();
    cfg.output_path = a.out.clone();
    cfg.summary_path = a.summary_out.clone();
    apply_time(&mut cfg, &a.time);

    let res = sweep::run_sweep(&cfg)?;
    writeln!(
        out,
        "wrote {} rows to {} and {} summary rows to {}",
        res.rows_written,
        res.output_path.display(),
        res.summaries.len(),
        res.summary_path.display()
    )
    .ok();
    Ok(0)
}

fn run_validate_cmd(a: &ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let p = reservoir(a.gamma, a.n, a.m_frac, a.m_abs, a.theta)?;
    if !(a.gamma_t.is_finite() && a.gamma_t >= 0.0) {
        return Err(Error::InvalidConfig(format!("gamma-t must be >= 0, got {}", a.gamma_t)));
    }
    let t = a.gamma_t / (2.0 * p.gamma);
    let rows = audit_kraus(&p, t)?;
    writeln!(
        out,
        "# gamma={} n={} m_abs={} (bound {}) theta={} gamma_t={}",
        format_number(p.gamma),
        format_number(p.n),
        format_number(p.m_abs),
        format_number(squeezing_bound(p.n)),
        format_number(p.theta),
        format_number(a.gamma_t)
    )
    .ok();
    writeln!(out, "provenance,ops,completeness_defect,distance_to_choi").ok();
    for r in &rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.provenance,
            r.op_count,
            format_number(r.completeness_defect),
            format_number(r.distance_to_choi)
        )
        .ok();
    }
    let choi = rows.last().expect("audit returns three rows");
    if choi.completeness_defect > 1e-10 {
        return Err(Error::ChannelNotTP { defect: choi.completeness_defect });
    }
    Ok(0)
}

fn run_oracle_cmd(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let results = oracle_check(&oracle_grid())?;
    writeln!(out, "n,m_fraction,theta,t_scaled,trace_distance,choi_defect,status").ok();
    let mut worst: f64 = 0.0;
    for r in &results {
        let ok = r.trace_distance <= a.tol;
        worst = worst.max(r.trace_distance);
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_number(r.case.n),
            format_number(r.case.m_fraction),
            format_number(r.case.theta),
            format_number(r.case.t_scaled),
            format_number(r.trace_distance),
            format_number(r.choi_defect),
            if ok { "ok" } else { "FAIL" }
        )
        .ok();
    }
    writeln!(out, "# points={} max_trace_distance={} tol={}", results.len(), format_number(worst), format_number(a.tol)).ok();
    Ok(if worst <= a.tol { 0 } else { 1 })
}

/// Parses `argv` (program name first) and runs the chosen subcommand.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    write!(out, "{}", e.render()).ok();
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 }
                }
                _ => {
                    let msg = e.render().to_string();
                    let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
                    writeln!(err, "error[usage]: {first}").ok();
                    2
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Evolve(a) => run_evolve_cmd(a, out),
        Command::Sweep(a) => run_sweep_cmd(a, out),
        Command::ValidateKraus(a) => run_validate_cmd(a, out),
        Command::OracleCheck(a) => run_oracle_cmd(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error[{}]: {}", e.kind(), e.to_string().replace('\n', " ")).ok();
            1
        }
    }
}

/// Entry point for the binary: uses the process stdout and stderr.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli(argv, &mut stdout.lock(), &mut stderr.lock())
}
