//! Scalar diagnostics of evolved states and of their time series.
//!
//! Fidelity here is the plain overlap Tr(ρ_f ρ_i), not the Uhlmann fidelity;
//! the two agree only when one of the states is pure. Entropies are in bits.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose, ComplexMat, Subsystem};
use crate::states::DensityMatrix;

/// Default threshold below which negativity counts as zero.
pub const ESD_EPS: f64 = 1e-6;
/// Bisection halvings applied to the bracketing grid interval.
pub const ESD_BISECTIONS: u32 = 10;
/// Plateau onset requires |d𝒟/d(Γt)| below this from then on.
pub const DISTURBANCE_SLOPE_TOL: f64 = 1e-4;
/// Saturation onset requires |ΔS_e| per sample step below this from then on.
pub const ENTROPY_STEP_TOL: f64 = 1e-4;

/// One sample of the measures along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureRow {
    /// Γt with Γ = Γ₁ + Γ₂.
    pub t_scaled: f64,
    pub doe: f64,
    pub disturbance: f64,
    pub entropy: f64,
    pub trace_defect: f64,
}

impl MeasureRow {
    pub fn new(t_scaled: f64, initial: &DensityMatrix, state: &DensityMatrix, trace_defect: f64) -> Self {
        Self {
            t_scaled,
            doe: negativity(state),
            disturbance: disturbance(initial, state),
            entropy: entropy_exchange(state),
            trace_defect,
        }
    }
}

/// Σ|λ_i| − 1 over the spectrum of the partial transpose.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    negativity_with(rho, Subsystem::B)
}

pub fn negativity_with(rho: &DensityMatrix, subsystem: Subsystem) -> f64 {
    let pt = partial_transpose(rho.mat(), subsystem);
    let ev = hermitian_eigenvalues(&pt).expect("partial transpose of a Hermitian matrix is Hermitian");
    let n = ev.iter().map(|l| l.abs()).sum::<f64>() - 1.0;
    if n < 1e-12 {
        0.0
    } else {
        n
    }
}

/// Tr(ρ_f ρ_i).
pub fn fidelity(rho_i: &DensityMatrix, rho_f: &DensityMatrix) -> f64 {
    let (a, b) = (rho_i.mat(), rho_f.mat());
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    s
}

/// 1 − Tr(ρ_f ρ_i).
pub fn disturbance(rho_i: &DensityMatrix, rho_f: &DensityMatrix) -> f64 {
    1.0 - fidelity(rho_i, rho_f)
}

/// −Tr ρ log₂ ρ.
pub fn entropy_exchange(rho: &DensityMatrix) -> f64 {
    let ev = hermitian_eigenvalues(rho.mat()).expect("density matrices are Hermitian");
    ev.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum::<f64>().max(0.0)
}

/// ½‖A − B‖₁ for Hermitian operators of equal dimension.
pub fn trace_distance(a: &ComplexMat, b: &ComplexMat) -> f64 {
    let d = (*a - *b).hermitian_part();
    let ev = hermitian_eigenvalues(&d).expect("Hermitian part");
    0.5 * ev.iter().map(|l| l.abs()).sum::<f64>()
}

/// First time the negativity drops to `eps` or below and stays there.
///
/// `series` holds (Γt, DoE) on an increasing grid. When `refine` is given the
/// bracketing grid interval is bisected [`ESD_BISECTIONS`] times with it,
/// otherwise the first sample at or below `eps` is returned. Returns `None`
/// if the final sample is still above `eps`.
pub fn esd_time(
    series: &[(f64, f64)],
    eps: f64,
    refine: Option<&dyn Fn(f64) -> Result<f64>>,
) -> Result<Option<f64>> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let last_above = match series.iter().rposition(|&(_, d)| d > eps) {
        None => return Ok(Some(series[0].0)),
        Some(k) if k + 1 == series.len() => return Ok(None),
        Some(k) => k,
    };
    let (mut lo, mut hi) = (series[last_above].0, series[last_above + 1].0);
    if let Some(f) = refine {
        for _ in 0..ESD_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if f(mid)? > eps {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(Some(hi))
}

/// Time after which every consecutive-sample slope |Δy/Δt| stays below
/// `slope_tol`; `None` if the last interval still exceeds it.
pub fn slope_plateau_time(series: &[(f64, f64)], slope_tol: f64) -> Result<Option<f64>> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let slopes = series.windows(2).map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs());
    onset_after_last_violation(series, slopes, slope_tol)
}

/// Time after which every per-sample increment |Δy| stays below `step_tol`.
pub fn step_plateau_time(series: &[(f64, f64)], step_tol: f64) -> Result<Option<f64>> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let steps = series.windows(2).map(|w| (w[1].1 - w[0].1).abs());
    onset_after_last_violation(series, steps, step_tol)
}

fn onset_after_last_violation(
    series: &[(f64, f64)],
    deltas: impl Iterator<Item = f64>,
    tol: f64,
) -> Result<Option<f64>> {
    let deltas: Vec<f64> = deltas.collect();
    match deltas.iter().rposition(|&d| d >= tol) {
        None => Ok(Some(series[0].0)),
        Some(k) if k + 1 == deltas.len() => Ok(None),
        Some(k) => Ok(Some(series[k + 1].0)),
    }
}

/// Onset of the disturbance plateau: |d𝒟/d(Γt)| < 1e-4 from then on.
///
/// With Γ = Γ₁ + Γ₂ this is the same as |d𝒟/dt| < 1e-4·Γ in unscaled time.
pub fn disturbance_plateau_time(rows: &[MeasureRow]) -> Result<Option<f64>> {
    let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t_scaled, r.disturbance)).collect();
    slope_plateau_time(&s, DISTURBANCE_SLOPE_TOL)
}

/// Onset of entropy saturation: |ΔS_e| per sample step < 1e-4 from then on.
pub fn entropy_saturation_time(rows: &[MeasureRow]) -> Result<Option<f64>> {
    let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t_scaled, r.entropy)).collect();
    step_plateau_time(&s, ENTROPY_STEP_TOL)
}
