//! Time series, parameter sweeps, CSV output and the channel-vs-oracle grid.
//!
//! All times are scaled as Γt with Γ = Γ₁ + Γ₂. Grid points are evaluated in
//! parallel and written back in grid order, so output files depend only on
//! the configuration.

use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::channel::{choi_channel, evolve_pair, Provenance};
use crate::error::{Error, Result};
use crate::lindblad::{integrate, LindbladSpec, CHOI_TOL};
use crate::linalg::{hermitian_eigenvalues, kron, ComplexMat, C64};
use crate::measures::{
    disturbance_plateau_time, entropy_saturation_time, esd_time, negativity, trace_distance, MeasureRow, ESD_EPS,
};
use crate::reservoir::ReservoirParams;
use crate::states::{state_from_correlations, validate_state, Bell, CorrelationTriple, DensityMatrix};

pub const CSV_HEADER: &str =
    "t_scaled,n1,n2,m1,m2,theta1,theta2,c1,c2,c3,doe,disturbance,entropy,trace_defect,provenance";
pub const SUMMARY_HEADER: &str = "grid_id,esd_time,disturbance_plateau_time,entropy_saturation_value";
/// Acceptance bound on the channel-vs-integrator trace distance.
pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub c_triple: CorrelationTriple,
    pub reservoir_a: ReservoirParams,
    pub reservoir_b: ReservoirParams,
    /// Horizon in units of Γt.
    pub t_max: f64,
    pub samples: usize,
    /// Mean photon numbers, applied to both qubits.
    pub n_grid: Vec<f64>,
    /// |ℳ| as fractions of √(𝒩(𝒩+1)).
    pub m_fractions: Vec<f64>,
    pub esd_eps: f64,
    pub output_path: PathBuf,
    pub summary_path: Option<PathBuf>,
}

impl SweepConfig {
    /// Γ₁ = Γ₂ = 1, symmetric reservoirs, Γt ≤ 10 with 256 samples.
    pub fn new(c_triple: CorrelationTriple, reservoir: ReservoirParams) -> Self {
        Self {
            c_triple,
            reservoir_a: reservoir,
            reservoir_b: reservoir,
            t_max: 10.0,
            samples: 256,
            n_grid: vec![reservoir.n],
            m_fractions: vec![reservoir.m_fraction()],
            esd_eps: ESD_EPS,
            output_path: PathBuf::from("sweep.csv"),
            summary_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidConfig(format!("samples must be >= 2, got {}", self.samples)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidConfig(format!("t_max must be > 0, got {}", self.t_max)));
        }
        if let Some(n) = self.n_grid.iter().find(|n| !(n.is_finite() && **n >= 0.0)) {
            return Err(Error::InvalidConfig(format!("grid n must be >= 0, got {n}")));
        }
        if let Some(f) = self.m_fractions.iter().find(|f| !(0.0..=1.0).contains(*f)) {
            return Err(Error::InvalidConfig(format!("m fraction must lie in [0, 1], got {f}")));
        }
        if !(self.esd_eps.is_finite() && self.esd_eps >= 0.0) {
            return Err(Error::InvalidConfig(format!("esd_eps must be >= 0, got {}", self.esd_eps)));
        }
        Ok(())
    }

    pub fn gamma_total(&self) -> f64 {
        self.reservoir_a.gamma + self.reservoir_b.gamma
    }

    /// Sample times in Γt, evenly spaced on [0, t_max].
    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.samples - 1) as f64;
        (0..self.samples).map(|k| self.t_max * k as f64 / last).collect()
    }

    /// Cartesian product n × m-fraction (n-major). An empty axis falls back
    /// to the configured reservoirs.
    pub fn grid_points(&self) -> Result<Vec<GridPoint>> {
        if self.n_grid.is_empty() || self.m_fractions.is_empty() {
            return Ok(vec![GridPoint { id: 0, a: self.reservoir_a, b: self.reservoir_b }]);
        }
        let (ra, rb) = (&self.reservoir_a, &self.reservoir_b);
        let mut out = Vec::new();
        for &n in &self.n_grid {
            for &f in &self.m_fractions {
                out.push(GridPoint {
                    id: out.len(),
                    a: ReservoirParams::squeezed_fraction(ra.gamma, n, f, ra.theta)?,
                    b: ReservoirParams::squeezed_fraction(rb.gamma, n, f, rb.theta)?,
                });
            }
        }
        Ok(out)
    }

    pub fn summary_path(&self) -> PathBuf {
        self.summary_path.clone().unwrap_or_else(|| default_summary_path(&self.output_path))
    }
}

/// `out.csv` → `out.summary.csv`.
pub fn default_summary_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{stem}.summary.csv"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub id: usize,
    pub a: ReservoirParams,
    pub b: ReservoirParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSeriesRow {
    pub measures: MeasureRow,
    pub a: ReservoirParams,
    pub b: ReservoirParams,
    pub c: CorrelationTriple,
    pub provenance: Provenance,
}

impl TimeSeriesRow {
    pub fn to_csv(&self) -> String {
        let m = &self.measures;
        let nums = [
            m.t_scaled,
            self.a.n,
            self.b.n,
            self.a.m_abs,
            self.b.m_abs,
            self.a.theta,
            self.b.theta,
            self.c.c1,
            self.c.c2,
            self.c.c3,
            m.doe,
            m.disturbance,
            m.entropy,
            m.trace_defect,
        ];
        let mut line: Vec<String> = nums.iter().map(|&x| format_number(x)).collect();
        line.push(self.provenance.as_str().to_string());
        line.join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSummary {
    pub grid_id: usize,
    pub esd_time: Option<f64>,
    pub disturbance_plateau_time: Option<f64>,
    pub entropy_saturation_time: Option<f64>,
    /// Entropy at the horizon, reported only once saturation was detected.
    pub entropy_saturation_value: Option<f64>,
}

impl GridSummary {
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        format!(
            "{},{},{},{}",
            self.grid_id,
            opt(self.esd_time),
            opt(self.disturbance_plateau_time),
            opt(self.entropy_saturation_value)
        )
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub point: GridPoint,
    pub rows: Vec<TimeSeriesRow>,
    pub summary: GridSummary,
}

impl Trajectory {
    pub fn measures(&self) -> Vec<MeasureRow> {
        self.rows.iter().map(|r| r.measures).collect()
    }
}

/// Evolves `c` under the reservoirs of `point` on the Γt grid `times` and
/// computes every measure plus the summary times.
pub fn evolve_point(c: &CorrelationTriple, point: GridPoint, times: &[f64], esd_eps: f64) -> Result<Trajectory> {
    let rho0 = state_from_correlations(c)?;
    let gamma_total = point.a.gamma + point.b.gamma;
    let mut rows = Vec::with_capacity(times.len());
    for &tau in times {
        let out = evolve_pair(&rho0, &point.a, &point.b, tau / gamma_total)?;
        rows.push(TimeSeriesRow {
            measures: MeasureRow::new(tau, &rho0, &out.state, out.trace_defect),
            a: point.a,
            b: point.b,
            c: *c,
            provenance: Provenance::ChoiDerived,
        });
    }
    let measures: Vec<MeasureRow> = rows.iter().map(|r| r.measures).collect();
    let doe: Vec<(f64, f64)> = measures.iter().map(|m| (m.t_scaled, m.doe)).collect();
    let refine = |tau: f64| -> Result<f64> {
        Ok(negativity(&evolve_pair(&rho0, &point.a, &point.b, tau / gamma_total)?.state))
    };
    let esd = esd_time(&doe, esd_eps, Some(&refine))?;
    let entropy_saturation_time = entropy_saturation_time(&measures)?;
    let summary = GridSummary {
        grid_id: point.id,
        esd_time: esd,
        disturbance_plateau_time: disturbance_plateau_time(&measures)?,
        entropy_saturation_time,
        entropy_saturation_value: entropy_saturation_time.map(|_| measures.last().unwrap().entropy),
    };
    Ok(Trajectory { point, rows, summary })
}

/// ESD time (in Γt) of `c` under the given reservoirs, on an explicit grid.
pub fn esd_time_for(
    c: &CorrelationTriple,
    a: &ReservoirParams,
    b: &ReservoirParams,
    t_max: f64,
    samples: usize,
    eps: f64,
) -> Result<Option<f64>> {
    let mut cfg = SweepConfig::new(*c, *a);
    cfg.reservoir_b = *b;
    cfg.t_max = t_max;
    cfg.samples = samples;
    cfg.validate()?;
    let point = GridPoint { id: 0, a: *a, b: *b };
    Ok(evolve_point(c, point, &cfg.time_grid(), eps)?.summary.esd_time)
}

/// Single trajectory with the configured reservoirs (the grid is ignored).
pub fn run_evolve(cfg: &SweepConfig) -> Result<Vec<TimeSeriesRow>> {
    Ok(evolve_trajectory(cfg)?.rows)
}

pub fn evolve_trajectory(cfg: &SweepConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let point = GridPoint { id: 0, a: cfg.reservoir_a, b: cfg.reservoir_b };
    evolve_point(&cfg.c_triple, point, &cfg.time_grid(), cfg.esd_eps)
}

/// Evaluates every grid point; results are in grid order.
pub fn sweep_trajectories(cfg: &SweepConfig) -> Result<Vec<Trajectory>> {
    cfg.validate()?;
    let times = cfg.time_grid();
    cfg.grid_points()?
        .into_par_iter()
        .map(|p| {
            evolve_point(&cfg.c_triple, p, &times, cfg.esd_eps)
                .map_err(|e| Error::InvalidConfig(format!("grid point {} (n={}, |M|={}): {e}", p.id, p.a.n, p.a.m_abs)))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub rows_written: usize,
    pub summaries: Vec<GridSummary>,
    pub output_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Runs the grid and writes the time-series CSV and the summary CSV.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    let trajectories = sweep_trajectories(cfg)?;
    let rows: Vec<TimeSeriesRow> = trajectories.iter().flat_map(|t| t.rows.iter().copied()).collect();
    let summaries: Vec<GridSummary> = trajectories.iter().map(|t| t.summary).collect();
    let summary_path = cfg.summary_path();
    write_rows_csv(&cfg.output_path, &rows)?;
    write_summary_csv(&summary_path, &summaries)?;
    Ok(SweepOutput { rows_written: rows.len(), summaries, output_path: cfg.output_path.clone(), summary_path })
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

pub fn write_rows_csv(path: &Path, rows: &[TimeSeriesRow]) -> Result<()> {
    write_lines(path, CSV_HEADER, rows.iter().map(|r| r.to_csv()))
}

pub fn write_summary_csv(path: &Path, summaries: &[GridSummary]) -> Result<()> {
    write_lines(path, SUMMARY_HEADER, summaries.iter().map(|s| s.to_csv()))
}

fn write_lines(path: &Path, header: &str, lines: impl Iterator<Item = String>) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{header}").map_err(io_err(path))?;
    for line in lines {
        writeln!(w, "{line}").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Formats with 12 significant digits, like C's `%.12g`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Parameters of one channel-vs-integrator comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCase {
    pub n: f64,
    pub m_fraction: f64,
    pub theta: f64,
    pub t_scaled: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleResult {
    pub case: OracleCase,
    /// Max over the probe inputs.
    pub trace_distance: f64,
    pub choi_defect: f64,
    pub min_eigenvalue: f64,
    pub trace_defect: f64,
}

/// n ∈ {0, 0.2, 0.6, 6} × m-fraction ∈ {0, 0.2, 0.9} × θ ∈ {0, π/2} ×
/// Γt ∈ {0.25, 1, 2, 5}, skipping combinations that coincide (θ has no
/// effect without squeezing, and n = 0 forces |ℳ| = 0).
pub fn oracle_grid() -> Vec<OracleCase> {
    let mut cases = Vec::new();
    for n in [0.0, 0.2, 0.6, 6.0] {
        for m_fraction in [0.0, 0.2, 0.9] {
            if n == 0.0 && m_fraction > 0.0 {
                continue;
            }
            for theta in [0.0, FRAC_PI_2] {
                if m_fraction == 0.0 && theta != 0.0 {
                    continue;
                }
                for t_scaled in [0.25, 1.0, 2.0, 5.0] {
                    cases.push(OracleCase { n, m_fraction, theta, t_scaled });
                }
            }
        }
    }
    cases
}

/// φ⁺ and a state with non-zero Bloch vectors and complex coherences.
pub fn oracle_inputs() -> Result<Vec<DensityMatrix>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = ComplexMat::projector(&[C64::new(h, 0.0), C64::new(h, 0.0)]);
    let plus_i = ComplexMat::projector(&[C64::new(h, 0.0), C64::new(0.0, h)]);
    let generic = Bell::PhiPlus.projector().scale(0.6) + kron(&plus, &plus_i).scale(0.4);
    Ok(vec![Bell::PhiPlus.state(), validate_state(&generic)?])
}

/// Compares Choi-derived channel evolution with direct two-qubit integration.
/// Both qubits see the same reservoir with Γ = 1.
pub fn oracle_check_case(case: &OracleCase, inputs: &[DensityMatrix]) -> Result<OracleResult> {
    let p = ReservoirParams::squeezed_fraction(1.0, case.n, case.m_fraction, case.theta)?;
    let t = case.t_scaled / (2.0 * p.gamma);
    let spec = LindbladSpec::pair(p, p);
    let choi_defect = choi_channel(&p, t)?.completeness_defect;
    let mut worst = OracleResult { case: *case, trace_distance: 0.0, choi_defect, min_eigenvalue: f64::INFINITY, trace_defect: 0.0 };
    for rho0 in inputs {
        let channel = evolve_pair(rho0, &p, &p, t)?;
        let direct = integrate(rho0, &spec, t, CHOI_TOL)?;
        let d = trace_distance(channel.state.mat(), direct.state.mat());
        let min_eig = hermitian_eigenvalues(channel.state.mat())?[0];
        worst.trace_distance = worst.trace_distance.max(d);
        worst.min_eigenvalue = worst.min_eigenvalue.min(min_eig);
        worst.trace_defect = worst.trace_defect.max(channel.trace_defect);
    }
    Ok(worst)
}

pub fn oracle_check(cases: &[OracleCase]) -> Result<Vec<OracleResult>> {
    let inputs = oracle_inputs()?;
    cases.par_iter().map(|c| oracle_check_case(c, &inputs)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(-1.0), "-1");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(2.0 / 3.0 * 1e-7), "6.66666666667e-8");
        assert_eq!(format_number(123456.789), "123456.789");
        assert_eq!(format_number(1e-5), "1e-5");
        assert_eq!(format_number(1e-4), "0.0001");
        assert_eq!(format_number(1.5e12), "1.5e12");
    }

    #[test]
    fn oracle_grid_size() {
        // 1 combination at n = 0, 5 for each positive n, 4 times each.
        assert_eq!(oracle_grid().len(), 64);
    }

    #[test]
    fn config_validation() {
        let p = ReservoirParams::thermal(1.0, 0.2).unwrap();
        let mut cfg = SweepConfig::new(CorrelationTriple::MAXIMAL, p);
        assert!(cfg.validate().is_ok());
        cfg.samples = 1;
        assert!(cfg.validate().is_err());
        cfg.samples = 4;
        cfg.m_fractions = vec![1.5];
        assert!(cfg.validate().is_err());
        cfg.m_fractions = vec![0.0];
        cfg.t_max = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn time_grid_endpoints() {
        let p = ReservoirParams::thermal(1.0, 0.2).unwrap();
        let mut cfg = SweepConfig::new(CorrelationTriple::MAXIMAL, p);
        cfg.samples = 5;
        cfg.t_max = 2.0;
        assert_eq!(cfg.time_grid(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn summary_path_default() {
        assert_eq!(default_summary_path(Path::new("/tmp/out.csv")), PathBuf::from("/tmp/out.summary.csv"));
    }
}
