//! Direct integration of the local-reservoir master equation.
//!
//! For each qubit i the dissipator is
//!
//! ```text
//! L_i(ρ) = −Γ/2 (1+𝒩) (σ₊σ₋ρ − 2σ₋ρσ₊ + ρσ₊σ₋)
//!          −Γ/2 𝒩     (σ₋σ₊ρ − 2σ₊ρσ₋ + ρσ₋σ₊)
//!          −Γ/2 ℳ     (σ₊σ₊ρ − 2σ₊ρσ₊ + ρσ₊σ₊)
//!          −Γ/2 ℳ*    (σ₋σ₋ρ − 2σ₋ρσ₋ + ρσ₋σ₋)
//! ```
//!
//! and dρ/dt = L_a(ρ) + L_b(ρ). The integrator is classical fixed-step RK4;
//! the step count is doubled until a full run at h and at h/2 agree to the
//! requested tolerance in Frobenius norm. This path does not use any Kraus
//! construction and serves as the reference for the channel module.

use crate::error::{Error, Result};
use crate::linalg::{embed, sigma_minus, sigma_plus, ComplexMat, Subsystem, C64};
use crate::reservoir::ReservoirParams;
use crate::states::{validate_state, DensityMatrix};

/// Richardson tolerance used when building Choi matrices.
pub const CHOI_TOL: f64 = 1e-10;
/// The finest allowed step is t / 2^20.
pub const MAX_STEPS: usize = 1 << 20;

/// One or two locally coupled qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladSpec {
    pub params_a: ReservoirParams,
    pub params_b: Option<ReservoirParams>,
}

impl LindbladSpec {
    pub fn single(p: ReservoirParams) -> Self {
        Self { params_a: p, params_b: None }
    }

    pub fn pair(a: ReservoirParams, b: ReservoirParams) -> Self {
        Self { params_a: a, params_b: Some(b) }
    }

    pub fn dim(&self) -> usize {
        if self.params_b.is_some() {
            4
        } else {
            2
        }
    }

    /// Rough spectral radius of the generator, used to pick the first step.
    fn rate_scale(&self) -> f64 {
        let r = |p: &ReservoirParams| 2.0 * p.zeta() + p.eta();
        r(&self.params_a) + self.params_b.as_ref().map_or(0.0, r)
    }
}

#[derive(Debug, Clone)]
pub struct IntegrationResult<S> {
    pub state: S,
    pub step_count: usize,
    /// ‖ρ_h − ρ_{h/2}‖_F of the accepted pair of runs.
    pub error_estimate: f64,
}

struct QubitTerms {
    sp: ComplexMat,
    sm: ComplexMat,
    sp_sm: ComplexMat,
    sm_sp: ComplexMat,
    sp_sp: ComplexMat,
    sm_sm: ComplexMat,
    half_gamma: f64,
    n: f64,
    m: C64,
}

impl QubitTerms {
    fn new(p: &ReservoirParams, on: Option<Subsystem>) -> Self {
        let lift = |op: ComplexMat| match on {
            Some(s) => embed(&op, s),
            None => op,
        };
        let sp = lift(sigma_plus());
        let sm = lift(sigma_minus());
        Self {
            sp,
            sm,
            sp_sm: sp * sm,
            sm_sp: sm * sp,
            sp_sp: sp * sp,
            sm_sm: sm * sm,
            half_gamma: 0.5 * p.gamma,
            n: p.n,
            m: p.m(),
        }
    }

    fn apply(&self, rho: &ComplexMat) -> ComplexMat {
        let r = *rho;
        let emission = self.sp_sm * r - (self.sm * r * self.sp).scale(2.0) + r * self.sp_sm;
        let absorption = self.sm_sp * r - (self.sp * r * self.sm).scale(2.0) + r * self.sm_sp;
        let squeeze = self.sp_sp * r - (self.sp * r * self.sp).scale(2.0) + r * self.sp_sp;
        let squeeze_conj = self.sm_sm * r - (self.sm * r * self.sm).scale(2.0) + r * self.sm_sm;
        let g = self.half_gamma;
        emission.scale(-g * (1.0 + self.n))
            + absorption.scale(-g * self.n)
            + squeeze.scale_c(self.m * -g)
            + squeeze_conj.scale_c(self.m.conj() * -g)
    }
}

/// Precomputed generator for a [`LindbladSpec`].
pub struct Generator {
    dim: usize,
    terms: Vec<QubitTerms>,
}

impl Generator {
    pub fn new(spec: &LindbladSpec) -> Self {
        let terms = match spec.params_b {
            None => vec![QubitTerms::new(&spec.params_a, None)],
            Some(b) => vec![
                QubitTerms::new(&spec.params_a, Some(Subsystem::A)),
                QubitTerms::new(&b, Some(Subsystem::B)),
            ],
        };
        Self { dim: spec.dim(), terms }
    }

    pub fn apply(&self, rho: &ComplexMat) -> Result<ComplexMat> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        Ok(self.apply_unchecked(rho))
    }

    fn apply_unchecked(&self, rho: &ComplexMat) -> ComplexMat {
        let mut out = ComplexMat::zeros(self.dim);
        for t in &self.terms {
            out += t.apply(rho);
        }
        out
    }

    fn rk4_step(&self, x: &ComplexMat, h: f64) -> ComplexMat {
        let k1 = self.apply_unchecked(x);
        let k2 = self.apply_unchecked(&(*x + k1.scale(0.5 * h)));
        let k3 = self.apply_unchecked(&(*x + k2.scale(0.5 * h)));
        let k4 = self.apply_unchecked(&(*x + k3.scale(h)));
        *x + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0)
    }
}

/// dρ/dt for a 2×2 (single qubit) or 4×4 (pair) matrix.
pub fn lindblad_rhs(rho: &ComplexMat, spec: &LindbladSpec) -> Result<ComplexMat> {
    Generator::new(spec).apply(rho)
}

/// RK4 with exactly `steps` equal steps over `[0, t]`.
pub fn rk4_fixed(x0: &ComplexMat, spec: &LindbladSpec, t: f64, steps: usize) -> Result<ComplexMat> {
    Ok(*rk4_trajectory(x0, spec, t, steps)?.last().unwrap())
}

/// All intermediate RK4 states, including the initial one.
pub fn rk4_trajectory(x0: &ComplexMat, spec: &LindbladSpec, t: f64, steps: usize) -> Result<Vec<ComplexMat>> {
    let g = Generator::new(spec);
    if x0.dim() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: x0.dim() });
    }
    let steps = steps.max(1);
    let h = t / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = *x0;
    out.push(x);
    for _ in 0..steps {
        x = g.rk4_step(&x, h);
        out.push(x);
    }
    Ok(out)
}

/// Evolves an arbitrary operator (not necessarily a state) to time `t`.
///
/// The Choi construction feeds `|i⟩⟨j|` through this.
pub fn integrate_operator(x0: &ComplexMat, spec: &LindbladSpec, t: f64, tol: f64) -> Result<IntegrationResult<ComplexMat>> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidConfig(format!("integration time must be >= 0, got {t}")));
    }
    let g = Generator::new(spec);
    if x0.dim() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: x0.dim() });
    }
    if t == 0.0 {
        return Ok(IntegrationResult { state: *x0, step_count: 0, error_estimate: 0.0 });
    }

    let run = |steps: usize| {
        let h = t / steps as f64;
        let mut x = *x0;
        for _ in 0..steps {
            x = g.rk4_step(&x, h);
        }
        x
    };

    let mut steps = ((t * spec.rate_scale() / 0.5).ceil() as usize).clamp(1, MAX_STEPS / 2);
    let mut coarse = run(steps);
    loop {
        let fine = run(2 * steps);
        let diff = (fine - coarse).frobenius_norm();
        if diff <= tol {
            return Ok(IntegrationResult { state: fine, step_count: 2 * steps, error_estimate: diff });
        }
        if 2 * steps >= MAX_STEPS {
            return Err(Error::IntegratorFailure { tol, achieved: diff, steps: 2 * steps });
        }
        steps *= 2;
        coarse = fine;
    }
}

/// Evolves a two-qubit state under both local reservoirs.
pub fn integrate(rho0: &DensityMatrix, spec: &LindbladSpec, t: f64, tol: f64) -> Result<IntegrationResult<DensityMatrix>> {
    let r = integrate_operator(rho0.mat(), spec, t, tol)?;
    Ok(IntegrationResult {
        state: validate_state(&r.state)?,
        step_count: r.step_count,
        error_estimate: r.error_estimate,
    })
}

/// Evolves a single-qubit density matrix; the result is Hermitized but
/// otherwise unvalidated.
pub fn integrate_single(rho0: &ComplexMat, p: &ReservoirParams, t: f64, tol: f64) -> Result<IntegrationResult<ComplexMat>> {
    let mut r = integrate_operator(rho0, &LindbladSpec::single(*p), t, tol)?;
    r.state = r.state.hermitian_part();
    Ok(r)
}

/// Long-time state reached from I/2 after Γt = 40.
pub fn single_qubit_steady_state(p: &ReservoirParams) -> Result<ComplexMat> {
    let rho0 = ComplexMat::identity(2).scale(0.5);
    Ok(integrate_single(&rho0, p, 40.0 / p.gamma, CHOI_TOL)?.state)
}
