//! Initial two-qubit states: the general Bloch form, the Bell-diagonal
//! correlation family and the Werner state.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, paulis, ComplexMat, C64, ONE, ZERO};

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-CLAMP_BAND, 0)` are treated as rounding and clamped.
pub const CLAMP_BAND: f64 = 1e-9;
/// Slack for Bell weights at exact boundary triples.
pub const WEIGHT_TOL: f64 = 1e-12;

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMat);

impl DensityMatrix {
    pub fn mat(&self) -> &ComplexMat {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMat {
        self.0
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMat::identity(4).scale(0.25))
    }

    pub fn pure(psi: &[C64; 4]) -> Result<Self> {
        validate_state(&ComplexMat::projector(psi))
    }

    /// Diagonal entries of the state in the Bell basis, ordered
    /// (φ⁺, φ⁻, ψ⁻, ψ⁺).
    pub fn bell_diagonal(&self) -> [f64; 4] {
        Bell::ALL.map(|b| {
            let v = b.vector();
            let rv: Vec<C64> = (0..4).map(|i| (0..4).map(|j| self.0[(i, j)] * v[j]).sum()).collect();
            v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum::<C64>().re
        })
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiMinus,
    PsiPlus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiMinus, Bell::PsiPlus];

    pub fn vector(self) -> [C64; 4] {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            Bell::PhiPlus => [h, ZERO, ZERO, h],
            Bell::PhiMinus => [h, ZERO, ZERO, -h],
            Bell::PsiMinus => [ZERO, h, -h, ZERO],
            Bell::PsiPlus => [ZERO, h, h, ZERO],
        }
    }

    pub fn projector(self) -> ComplexMat {
        ComplexMat::projector(&self.vector())
    }

    /// `|self⟩⟨other|`.
    pub fn ket_bra(self, other: Bell) -> ComplexMat {
        ComplexMat::outer(&self.vector(), &other.vector())
    }

    pub fn state(self) -> DensityMatrix {
        DensityMatrix(self.projector())
    }

    pub fn name(self) -> &'static str {
        match self {
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
            Bell::PsiMinus => "psi-",
            Bell::PsiPlus => "psi+",
        }
    }
}

/// Bloch vectors of both qubits plus the 3×3 correlation (cross dyadic) matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralStateSpec {
    pub s: [f64; 3],
    pub t: [f64; 3],
    pub c: [[f64; 3]; 3],
}

impl GeneralStateSpec {
    pub fn new(s: [f64; 3], t: [f64; 3], c: [[f64; 3]; 3]) -> Result<Self> {
        let norm = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm(s) > 1.0 + 1e-12 {
            return Err(Error::OutOfRange { what: "|s|", value: norm(s), range: "[0, 1]" });
        }
        if norm(t) > 1.0 + 1e-12 {
            return Err(Error::OutOfRange { what: "|t|", value: norm(t), range: "[0, 1]" });
        }
        for &x in c.iter().flatten() {
            if !(-1.0..=1.0).contains(&x) {
                return Err(Error::OutOfRange { what: "C entry", value: x, range: "[-1, 1]" });
            }
        }
        Ok(Self { s, t, c })
    }
}

/// Diagonal correlations (c₁, c₂, c₃) of a Bell-diagonal state with zero
/// Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CorrelationTriple {
    /// |φ⁺⟩⟨φ⁺|.
    pub const MAXIMAL: Self = Self { c1: 1.0, c2: -1.0, c3: 1.0 };
    /// φ⁺ mixed with white noise; the partially entangled reference input.
    pub const PARTIAL: Self = Self { c1: 0.85, c2: -0.85, c3: 0.85 };
    pub const SINGLET: Self = Self { c1: -1.0, c2: -1.0, c3: -1.0 };

    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (what, v) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange { what, value: v, range: "[-1, 1]" });
            }
        }
        Ok(Self { c1, c2, c3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Bell-basis populations (φ⁺, φ⁻, ψ⁻, ψ⁺) of the correlation state,
/// i.e. ⟨B|ρ|B⟩. They always sum to 1; a negative entry flags an
/// unphysical triple.
pub fn bell_weights(c: &CorrelationTriple) -> [f64; 4] {
    let CorrelationTriple { c1, c2, c3 } = *c;
    [
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ]
}

/// ρ = ¼(I + s·σ⊗I + I⊗t·σ + Σ C_jk σ_j⊗σ_k), validated.
pub fn state_from_bloch(spec: &GeneralStateSpec) -> Result<DensityMatrix> {
    validate_state(&bloch_matrix(spec))
}

fn bloch_matrix(spec: &GeneralStateSpec) -> ComplexMat {
    let id = ComplexMat::identity(2);
    let sigma = paulis();
    let mut m = ComplexMat::identity(4);
    for k in 0..3 {
        m += kron(&sigma[k], &id).scale(spec.s[k]);
        m += kron(&id, &sigma[k]).scale(spec.t[k]);
        for l in 0..3 {
            if spec.c[k][l] != 0.0 {
                m += kron(&sigma[k], &sigma[l]).scale(spec.c[k][l]);
            }
        }
    }
    m.scale(0.25)
}

pub fn state_from_correlations(c: &CorrelationTriple) -> Result<DensityMatrix> {
    let weights = bell_weights(c);
    for (b, w) in Bell::ALL.iter().zip(weights) {
        if w < -WEIGHT_TOL {
            return Err(Error::NotPositive {
                value: w,
                detail: format!("Bell weight of {} for triple {:?}", b.name(), c.as_array()),
            });
        }
    }
    let spec = GeneralStateSpec {
        s: [0.0; 3],
        t: [0.0; 3],
        c: [[c.c1, 0.0, 0.0], [0.0, c.c2, 0.0], [0.0, 0.0, c.c3]],
    };
    state_from_bloch(&spec)
}

/// ((3x+1)/4)|ψ⁻⟩⟨ψ⁻| + ((1−x)/4)(|φ⁺⟩⟨φ⁺| + |φ⁻⟩⟨φ⁻| + |ψ⁺⟩⟨ψ⁺|) for x in [−1/3, 1].
pub fn werner(x: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0 - 1e-15..=1.0).contains(&x) {
        return Err(Error::OutOfRange { what: "werner x", value: x, range: "[-1/3, 1]" });
    }
    let rest = (1.0 - x) / 4.0;
    let m = Bell::PsiMinus.projector().scale((3.0 * x + 1.0) / 4.0)
        + (Bell::PhiPlus.projector() + Bell::PhiMinus.projector() + Bell::PsiPlus.projector()).scale(rest);
    validate_state(&m)
}

/// Product state ρ_a ⊗ ρ_b of two single-qubit density matrices.
pub fn product_state(rho_a: &ComplexMat, rho_b: &ComplexMat) -> Result<DensityMatrix> {
    validate_state(&kron(rho_a, rho_b))
}

/// Checks Hermiticity, unit trace and positivity of a 4×4 matrix.
///
/// Slightly negative eigenvalues (down to −1e-9) are clamped to zero and the
/// trace renormalized; the returned matrix is exactly Hermitian.
pub fn validate_state(rho: &ComplexMat) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let defect = rho.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let tr = rho.trace();
    let trace_defect = (tr - ONE).norm();
    if trace_defect > TRACE_TOL {
        return Err(Error::TraceDefect { defect: trace_defect });
    }
    let herm = rho.hermitian_part();
    let eig = hermitian_eig(&herm, 1e-8)?;
    let min = eig.min();
    if min < -CLAMP_BAND {
        return Err(Error::NotPositive { value: min, detail: "minimum eigenvalue".into() });
    }
    if min >= 0.0 {
        return Ok(DensityMatrix(herm));
    }
    let clamped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let m = eig.reconstruct_with(&clamped).hermitian_part().scale(1.0 / total);
    Ok(DensityMatrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;

    fn diag3(a: f64, b: f64, c: f64) -> [[f64; 3]; 3] {
        [[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]
    }

    #[test]
    fn bloch_examples() {
        let mixed = state_from_bloch(&GeneralStateSpec::new([0.0; 3], [0.0; 3], diag3(0.0, 0.0, 0.0)).unwrap()).unwrap();
        assert!(mixed.mat().approx_eq(DensityMatrix::maximally_mixed().mat(), 1e-15));

        let pole = GeneralStateSpec::new([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], diag3(0.0, 0.0, 1.0)).unwrap();
        let rho = state_from_bloch(&pole).unwrap();
        assert!(rho.mat().approx_eq(&ComplexMat::diag(&[1.0, 0.0, 0.0, 0.0]), 1e-15));

        let bell = GeneralStateSpec::new([0.0; 3], [0.0; 3], diag3(1.0, -1.0, 1.0)).unwrap();
        let rho = state_from_bloch(&bell).unwrap();
        assert!(rho.mat().approx_eq(&Bell::PhiPlus.projector(), 1e-15));
    }

    #[test]
    fn bloch_rejects_long_vectors() {
        assert!(matches!(
            GeneralStateSpec::new([1.0, 1.0, 0.0], [0.0; 3], diag3(0.0, 0.0, 0.0)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn bloch_rejects_non_positive() {
        // Pure poles with anti-aligned correlation.
        let spec = GeneralStateSpec::new([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], diag3(0.0, 0.0, -1.0)).unwrap();
        assert!(matches!(state_from_bloch(&spec), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn correlation_examples() {
        let mixed = state_from_correlations(&CorrelationTriple::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert!(mixed.mat().approx_eq(DensityMatrix::maximally_mixed().mat(), 1e-15));

        let singlet = state_from_correlations(&CorrelationTriple::SINGLET).unwrap();
        assert!(singlet.mat().approx_eq(&Bell::PsiMinus.projector(), 1e-15));

        let err = state_from_correlations(&CorrelationTriple::new(1.0, 1.0, 1.0).unwrap()).unwrap_err();
        match err {
            Error::NotPositive { value, detail } => {
                assert!((value + 0.5).abs() < 1e-15);
                assert!(detail.contains("psi-"));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn weights_examples() {
        assert_eq!(bell_weights(&CorrelationTriple::new(0.0, 0.0, 0.0).unwrap()), [0.25; 4]);
        assert_eq!(bell_weights(&CorrelationTriple::SINGLET), [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(bell_weights(&CorrelationTriple::MAXIMAL), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn triple_range_checked() {
        assert!(CorrelationTriple::new(1.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn werner_examples() {
        assert!(werner(1.0).unwrap().mat().approx_eq(&Bell::PsiMinus.projector(), 1e-15));
        assert!(werner(0.0).unwrap().mat().approx_eq(DensityMatrix::maximally_mixed().mat(), 1e-15));
        let third = werner(-1.0 / 3.0).unwrap();
        let expected = (Bell::PhiPlus.projector() + Bell::PhiMinus.projector() + Bell::PsiPlus.projector()).scale(1.0 / 3.0);
        assert!(third.mat().approx_eq(&expected, 1e-15));
        assert!(matches!(werner(-0.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(werner(1.01), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn validate_accepts_mixed() {
        let m = ComplexMat::identity(4).scale(0.25);
        assert_eq!(*validate_state(&m).unwrap().mat(), m);
    }

    #[test]
    fn validate_clamps_tiny_negative_eigenvalue() {
        let eig = hermitian_eig(&Bell::PhiPlus.projector(), 1e-12).unwrap();
        // Ascending: three zeros then the unit eigenvalue.
        let perturbed = eig.reconstruct_with(&[-1e-10, 0.0, 0.0, 1.0 + 1e-10]);
        let rho = validate_state(&perturbed).unwrap();
        let ev = hermitian_eigenvalues(rho.mat()).unwrap();
        assert!(ev[0] >= -1e-15, "{ev:?}");
        assert!((rho.mat().trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn validate_rejects() {
        let sigma = paulis();
        let bad = (ComplexMat::identity(4)
            + kron(&sigma[0], &sigma[0])
            + kron(&sigma[1], &sigma[1])
            + kron(&sigma[2], &sigma[2]))
        .scale(0.25);
        match validate_state(&bad) {
            Err(Error::NotPositive { value, .. }) => assert!((value + 0.5).abs() < 1e-12),
            r => panic!("unexpected {r:?}"),
        }
        assert!(matches!(
            validate_state(&ComplexMat::identity(4).scale(0.3)),
            Err(Error::TraceDefect { .. })
        ));
        let mut skew = ComplexMat::identity(4).scale(0.25);
        skew[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(validate_state(&skew), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            validate_state(&ComplexMat::identity(2).scale(0.5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
