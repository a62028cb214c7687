//! Single-qubit reservoir channels in Kraus form and their action on a pair.
//!
//! Three constructions are kept side by side:
//!
//! * [`kraus_paper`]: the four operators in their literal closed form for the squeezed
//!   reservoir. They are not trace preserving (already at t = 0) and are only
//!   used for audits.
//! * [`kraus_repaired`]: the same amplitudes placed in the
//!   generalized-amplitude-damping layout.
//! * [`choi_channel`]: the authoritative channel, obtained by integrating the
//!   master equation on the operator basis, assembling the Choi matrix and
//!   reading Kraus operators off its eigendecomposition.
//!
//! Everything downstream evolves states with the Choi-derived sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::lindblad::{integrate_operator, LindbladSpec, CHOI_TOL};
use crate::linalg::{basis_op, hermitian_eig, kron, ComplexMat, C64, ONE, ZERO};
use crate::measures::trace_distance;
use crate::reservoir::ReservoirParams;
use crate::states::{validate_state, Bell, CorrelationTriple, DensityMatrix};

/// Completeness defect above which [`apply_local_channels`] refuses a set.
pub const KRAUS_GATE: f64 = 1e-8;
/// Eigenvalue cut used when reading Kraus operators off a Choi matrix.
pub const CHOI_EIG_TOL: f64 = 1e-12;
/// A Choi eigenvalue below −CHOI_CP_TOL marks the map as not completely
/// positive. Integration error of size [`CHOI_TOL`] can push a zero eigenvalue
/// slightly negative, so this sits above it.
pub const CHOI_CP_TOL: f64 = 1e-9;
/// Below this value of ηt the sinh(ηt) ratios use their small-argument forms.
const ETA_T_LIMIT: f64 = 1e-8;
const RADICAND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PaperLiteral,
    PaperRepaired,
    ChoiDerived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperLiteral => "paper-literal",
            Provenance::PaperRepaired => "paper-repaired",
            Provenance::ChoiDerived => "choi-derived",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The α_j, β_j amplitudes of the literal operator family, j = 1..4.
///
/// α₂ and β₄ do not appear in the operators and are stored as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausAmplitudes {
    pub alpha: [C64; 4],
    pub beta: [C64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub ops: Vec<ComplexMat>,
    pub provenance: Provenance,
    /// ‖Σ κ†κ − I‖_F.
    pub completeness_defect: f64,
    pub amplitudes: Option<KrausAmplitudes>,
}

/// ‖Σ κ†κ − I‖_F for a list of 2×2 operators.
pub fn completeness_defect(ops: &[ComplexMat]) -> f64 {
    let mut sum = ComplexMat::zeros(2);
    for k in ops {
        sum += k.adjoint() * *k;
    }
    (sum - ComplexMat::identity(2)).frobenius_norm()
}

impl KrausSet {
    pub fn new(ops: Vec<ComplexMat>, provenance: Provenance, amplitudes: Option<KrausAmplitudes>) -> Self {
        assert!(ops.len() <= 4, "a qubit channel needs at most 4 Kraus operators");
        let completeness_defect = completeness_defect(&ops);
        Self { ops, provenance, completeness_defect, amplitudes }
    }

    pub fn identity() -> Self {
        Self::new(vec![ComplexMat::identity(2)], Provenance::ChoiDerived, None)
    }

    /// Σ κ ρ κ† on a single-qubit operator.
    pub fn apply(&self, rho: &ComplexMat) -> ComplexMat {
        let mut out = ComplexMat::zeros(2);
        for k in &self.ops {
            out += k.sandwich(rho);
        }
        out
    }

    /// Choi matrix Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|) of the set's action.
    pub fn choi(&self) -> ComplexMat {
        choi_from_action(|x| self.apply(x))
    }
}

fn choi_from_action(mut action: impl FnMut(&ComplexMat) -> ComplexMat) -> ComplexMat {
    let mut c = ComplexMat::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let out = action(&basis_op(i, j));
            for a in 0..2 {
                for b in 0..2 {
                    c[(2 * i + a, 2 * j + b)] = out[(a, b)];
                }
            }
        }
    }
    c
}

fn sqrt_checked(x: f64, term: &'static str) -> Result<f64> {
    if x < -RADICAND_TOL {
        return Err(Error::NumericalDomain { term, value: x });
    }
    Ok(x.max(0.0).sqrt())
}

/// sinh(ηt)/η with the η → 0 limit t.
fn sinh_ratio(eta: f64, t: f64) -> f64 {
    let x = eta * t;
    if x < ETA_T_LIMIT {
        t * (1.0 + x * x / 6.0)
    } else {
        x.sinh() / eta
    }
}

/// Evaluates the literal amplitude formulas at time `t`.
pub fn literal_amplitudes(p: &ReservoirParams, t: f64) -> Result<KrausAmplitudes> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidConfig(format!("time must be >= 0, got {t}")));
    }
    let zeta = p.zeta();
    let eta = p.eta();
    let r = p.gamma / (2.0 * zeta);
    let zt = zeta * t;
    let et = eta * t;
    let half = (-0.5 * zt).exp();
    let em = (-2.0 * zt).exp();

    // e^{-ζt}(cosh ζt + (Γ/2ζ) sinh ζt), kept finite for large ζt.
    let rad_a1 = 0.5 * (1.0 + em) + 0.5 * r * (1.0 - em);
    let alpha1 = sqrt_checked(rad_a1, "alpha1")?;
    let beta1 = half * et.cosh() / alpha1;

    // e^{-2ζt}([1 − (Γ/2ζ)²] sinh²ζt − sinh²ηt)
    let sh_scaled = 0.5 * (1.0 - em);
    let shn_scaled = (-zt).exp() * et.sinh();
    let x_scaled = (1.0 - r * r) * sh_scaled * sh_scaled - shn_scaled * shn_scaled;
    let beta2 = sqrt_checked(x_scaled / rad_a1, "beta2")?;

    // (1 + Γ/2η) sinh ηt, and α₃ = sinh ηt / √((1 + Γ/2ζ) sinh ηt).
    let (d3, alpha3) = if et < ETA_T_LIMIT {
        let d3 = (eta + 0.5 * p.gamma) * sinh_ratio(eta, t);
        (d3, half * (et / (1.0 + r)).sqrt())
    } else {
        let sh = et.sinh();
        let d3 = (1.0 + p.gamma / (2.0 * eta)) * sh;
        (d3, half * sh / sqrt_checked((1.0 + r) * sh, "alpha3")?)
    };
    let beta3 = C64::from_polar(half * sqrt_checked(d3, "beta3")?, -p.theta);
    let alpha4 = if t == 0.0 {
        0.0
    } else {
        sqrt_checked(x_scaled / d3, "alpha4")? * (0.5 * zt).exp()
    };

    let re = |x: f64| C64::new(x, 0.0);
    Ok(KrausAmplitudes {
        alpha: [re(alpha1), ZERO, re(alpha3), re(alpha4)],
        beta: [re(beta1), re(beta2), beta3, ZERO],
    })
}

fn op2(entries: [(usize, usize, C64); 2]) -> ComplexMat {
    let mut m = ComplexMat::zeros(2);
    for (i, j, z) in entries {
        m[(i, j)] += z;
    }
    m
}

/// The literal operators:
/// κ₁ = α₁|0⟩⟨1| + β₁|1⟩⟨1|, κ₂ = β₂|1⟩⟨1|, κ₃ = α₃|0⟩⟨1| + β₃|1⟩⟨0|, κ₄ = α₄|1⟩⟨0|.
pub fn kraus_paper(p: &ReservoirParams, t: f64) -> Result<KrausSet> {
    let a = literal_amplitudes(p, t)?;
    let ops = vec![
        op2([(0, 1, a.alpha[0]), (1, 1, a.beta[0])]),
        op2([(1, 1, a.beta[1]), (0, 0, ZERO)]),
        op2([(0, 1, a.alpha[2]), (1, 0, a.beta[2])]),
        op2([(1, 0, a.alpha[3]), (0, 0, ZERO)]),
    ];
    Ok(KrausSet::new(ops, Provenance::PaperLiteral, Some(a)))
}

/// Same amplitudes in the generalized-amplitude-damping layout:
/// κ₁ = α₁|0⟩⟨0| + β₁|1⟩⟨1|, κ₂ = β₂|0⟩⟨1|, κ₃ and κ₄ unchanged.
pub fn kraus_repaired(p: &ReservoirParams, t: f64) -> Result<KrausSet> {
    let a = literal_amplitudes(p, t)?;
    let ops = vec![
        op2([(0, 0, a.alpha[0]), (1, 1, a.beta[0])]),
        op2([(0, 1, a.beta[1]), (0, 0, ZERO)]),
        op2([(0, 1, a.alpha[2]), (1, 0, a.beta[2])]),
        op2([(1, 0, a.alpha[3]), (0, 0, ZERO)]),
    ];
    Ok(KrausSet::new(ops, Provenance::PaperRepaired, Some(a)))
}

/// Choi matrix of the single-qubit master-equation propagator at time `t`.
///
/// `tol` is the Richardson tolerance handed to the integrator for each basis
/// operator. Only |0⟩⟨0|, |0⟩⟨1| and |1⟩⟨1| are integrated; the |1⟩⟨0| block
/// is the adjoint of the |0⟩⟨1| block, which keeps the result exactly Hermitian.
pub fn propagator_choi(p: &ReservoirParams, t: f64, tol: f64) -> Result<ComplexMat> {
    let spec = LindbladSpec::single(*p);
    let evolve = |i, j| integrate_operator(&basis_op(i, j), &spec, t, tol).map(|r| r.state);
    let b00 = evolve(0, 0)?;
    let b01 = evolve(0, 1)?;
    let b11 = evolve(1, 1)?;
    let b10 = b01.adjoint();
    let blocks = [[b00.hermitian_part(), b01], [b10, b11.hermitian_part()]];
    Ok(ComplexMat::from_fn(4, |r, c| blocks[r / 2][c / 2][(r % 2, c % 2)]))
}

/// Kraus operators √λ·unvec(v) from the eigenpairs of a Choi matrix with λ > tol,
/// largest first.
pub fn kraus_from_choi(choi: &ComplexMat, tol: f64) -> Result<KrausSet> {
    if choi.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: choi.dim() });
    }
    let eig = hermitian_eig(choi, tol.max(1e-12))?;
    if eig.min() < -tol.max(CHOI_CP_TOL) {
        return Err(Error::NotCP { min_eigenvalue: eig.min() });
    }
    let mut ops = Vec::new();
    for k in (0..4).rev() {
        let lambda = eig.eigenvalues[k];
        if lambda <= tol {
            continue;
        }
        let v = eig.eigenvector(k);
        let s = lambda.sqrt();
        ops.push(ComplexMat::from_fn(2, |a, i| v[2 * i + a] * s));
    }
    Ok(KrausSet::new(ops, Provenance::ChoiDerived, None))
}

/// Choi-derived Kraus set of one reservoir at time `t`, with default tolerances.
pub fn choi_channel(p: &ReservoirParams, t: f64) -> Result<KrausSet> {
    if t == 0.0 {
        return Ok(KrausSet::identity());
    }
    kraus_from_choi(&propagator_choi(p, t, CHOI_TOL)?, CHOI_EIG_TOL)
}

/// How the two local Kraus lists are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// Σ_{j,k} (κ_j ⊗ κ_k) ρ (κ_j ⊗ κ_k)†, the product of independent channels.
    Product,
    /// Σ_j (κ_j ⊗ κ_j) ρ (κ_j ⊗ κ_j)†, the single-index sum of the literal form.
    SingleIndex,
}

/// Applies two local Kraus sets without any gate. Diagnostic use only: the
/// output need not be a state.
pub fn apply_local_channels_raw(rho: &ComplexMat, ka: &KrausSet, kb: &KrausSet, pairing: Pairing) -> ComplexMat {
    let mut out = ComplexMat::zeros(4);
    match pairing {
        Pairing::Product => {
            for a in &ka.ops {
                for b in &kb.ops {
                    out += kron(a, b).sandwich(rho);
                }
            }
        }
        Pairing::SingleIndex => {
            for (a, b) in ka.ops.iter().zip(&kb.ops) {
                out += kron(a, b).sandwich(rho);
            }
        }
    }
    out
}

/// A channel output together with the trace defect measured before
/// renormalization.
#[derive(Debug, Clone, Copy)]
pub struct LocalEvolution {
    pub state: DensityMatrix,
    pub trace_defect: f64,
}

pub fn apply_local_channels_checked(rho: &DensityMatrix, ka: &KrausSet, kb: &KrausSet) -> Result<LocalEvolution> {
    for set in [ka, kb] {
        if set.completeness_defect > KRAUS_GATE {
            return Err(Error::DefectiveKrausSet { defect: set.completeness_defect });
        }
    }
    let raw = apply_local_channels_raw(rho.mat(), ka, kb, Pairing::Product);
    let tr = raw.trace();
    let trace_defect = (tr - ONE).norm();
    if trace_defect > KRAUS_GATE {
        return Err(Error::ChannelNotTP { defect: trace_defect });
    }
    let state = validate_state(&raw.scale(1.0 / tr.re))?;
    Ok(LocalEvolution { state, trace_defect })
}

/// ρ ↦ Σ_{j,k} (κ_j^a ⊗ κ_k^b) ρ (κ_j^a ⊗ κ_k^b)†.
///
/// Both sets must satisfy completeness to within 1e-8; use
/// [`apply_local_channels_raw`] to push defective sets through anyway.
pub fn apply_local_channels(rho: &DensityMatrix, ka: &KrausSet, kb: &KrausSet) -> Result<DensityMatrix> {
    apply_local_channels_checked(rho, ka, kb).map(|e| e.state)
}

/// Evolves a pair state to time `t` with Choi-derived channels on both qubits.
pub fn evolve_pair(rho: &DensityMatrix, pa: &ReservoirParams, pb: &ReservoirParams, t: f64) -> Result<LocalEvolution> {
    let ka = choi_channel(pa, t)?;
    let kb = if pa == pb { ka.clone() } else { choi_channel(pb, t)? };
    apply_local_channels_checked(rho, &ka, &kb)
}

/// The coefficients s₁…s₈ of the Bell-diagonal closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoefficients {
    pub s: [C64; 8],
}

impl ClosedFormCoefficients {
    /// Literal index ranges: most sums run over j ∈ {1, 3}; s₄ adds the
    /// |α_j|² products over j ∈ {2, 4}.
    pub fn from_amplitudes(a: &KrausAmplitudes, b: &KrausAmplitudes) -> Self {
        const ODD: [usize; 2] = [0, 2];
        const EVEN: [usize; 2] = [1, 3];
        let sum = |f: &dyn Fn(usize) -> C64, idx: [usize; 2]| -> C64 { idx.iter().map(|&j| f(j)).sum() };
        let (aa, ba, ab, bb) = (&a.alpha, &a.beta, &b.alpha, &b.beta);
        let sq = |z: C64| C64::new(z.norm_sqr(), 0.0);

        let s1 = sum(&|j| sq(aa[j]) * sq(ab[j]), ODD);
        let s2 = sum(&|j| aa[j] * ab[j] * ba[j].conj() * bb[j].conj(), ODD);
        let s3 = sum(&|j| ba[j] * bb[j] * aa[j].conj() * ab[j].conj(), ODD);
        let s4 = sum(&|j| sq(aa[j]) * sq(ab[j]), EVEN) + sum(&|j| sq(ba[j]) * sq(bb[j]), ODD);
        let s5 = sum(&|j| sq(aa[j]) * sq(bb[j]), ODD);
        let s6 = sum(&|j| aa[j] * bb[j] * ba[j].conj() * ab[j].conj(), ODD);
        let s7 = sum(&|j| ba[j] * ab[j] * aa[j].conj() * bb[j].conj(), ODD);
        let s8 = sum(&|j| sq(ba[j]) * sq(ab[j]), ODD);
        Self { s: [s1, s2, s3, s4, s5, s6, s7, s8] }
    }

    /// The unnormalized Bell-basis assembly for a correlation triple.
    pub fn assemble(&self, c: &CorrelationTriple) -> ComplexMat {
        use Bell::*;
        let [s1, s2, s3, s4, s5, s6, s7, s8] = self.s;
        let p = |b: Bell| b.projector();
        let kb = |x: Bell, y: Bell| x.ket_bra(y);

        let phi_pop = (p(PhiPlus) + p(PhiMinus)).scale_c(s1 + s4)
            + (kb(PhiPlus, PhiMinus) + kb(PhiMinus, PhiPlus)).scale_c(s1 - s4);
        let phi_coh = (p(PhiPlus) - p(PhiMinus)).scale_c(s2 + s3)
            + (kb(PhiMinus, PhiPlus) - kb(PhiPlus, PhiMinus)).scale_c(s2 - s3);
        let psi_pop = (p(PsiPlus) + p(PsiMinus)).scale_c(s5 + s8)
            + (kb(PsiPlus, PsiMinus) + kb(PsiMinus, PsiPlus)).scale_c(s5 - s8);
        let psi_coh = (p(PsiPlus) - p(PsiMinus)).scale_c(s6 + s7)
            + (kb(PsiMinus, PsiPlus) - kb(PsiPlus, PsiMinus)).scale_c(s6 - s7);

        phi_pop.scale((1.0 + c.c3) / 8.0)
            + phi_coh.scale((c.c1 - c.c2) / 8.0)
            + psi_pop.scale((1.0 - c.c3) / 8.0)
            + psi_coh.scale((c.c1 + c.c2) / 8.0)
    }
}

/// Closed-form output state for a Bell-diagonal input, built from the
/// amplitudes carried by the two Kraus sets and normalized to unit trace
/// (the literal global factor e^{−iΓt} is not a valid density-matrix scale).
pub fn closed_form_output(c: &CorrelationTriple, ka: &KrausSet, kb: &KrausSet) -> Result<DensityMatrix> {
    let amp = |k: &KrausSet| k.amplitudes.ok_or(Error::MissingAmplitudes(k.provenance.as_str()));
    let coeffs = ClosedFormCoefficients::from_amplitudes(&amp(ka)?, &amp(kb)?);
    let m = coeffs.assemble(c);
    let tr = m.trace().re;
    if !(tr.is_finite() && tr > 0.0) {
        return Err(Error::TraceDefect { defect: (tr - 1.0).abs() });
    }
    validate_state(&m.scale(1.0 / tr))
}

/// Single-qubit probe states: |0⟩, |1⟩, |+⟩, |+i⟩.
fn probe_states() -> [ComplexMat; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [C64::new(h, 0.0), C64::new(h, 0.0)];
    let plus_i = [C64::new(h, 0.0), C64::new(0.0, h)];
    [
        ComplexMat::diag(&[1.0, 0.0]),
        ComplexMat::diag(&[0.0, 1.0]),
        ComplexMat::projector(&plus),
        ComplexMat::projector(&plus_i),
    ]
}

/// Largest trace distance between the actions of two sets over a
/// tomographically complete set of probe states.
pub fn action_distance(a: &KrausSet, b: &KrausSet) -> f64 {
    probe_states()
        .iter()
        .map(|rho| trace_distance(&a.apply(rho), &b.apply(rho)))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct KrausAuditRow {
    pub provenance: Provenance,
    pub op_count: usize,
    pub completeness_defect: f64,
    /// Max probe trace distance to the Choi-derived channel.
    pub distance_to_choi: f64,
}

/// Completeness defect and action distance of all three constructions at one
/// parameter point.
pub fn audit_kraus(p: &ReservoirParams, t: f64) -> Result<Vec<KrausAuditRow>> {
    let choi = choi_channel(p, t)?;
    let sets = [kraus_paper(p, t)?, kraus_repaired(p, t)?, choi];
    let reference = &sets[2];
    Ok(sets
        .iter()
        .map(|s| KrausAuditRow {
            provenance: s.provenance,
            op_count: s.ops.len(),
            completeness_defect: s.completeness_defect,
            distance_to_choi: action_distance(s, reference),
        })
        .collect())
}
