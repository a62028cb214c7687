//! Dense complex matrices of dimension 2 and 4.
//!
//! Everything in this crate lives on one qubit (2×2) or a qubit pair (4×4),
//! so matrices are stored inline in a fixed 16-slot array and are `Copy`.
//! Two-qubit indices follow the tensor ordering `2·a + b`, with `a` the first
//! (Alice's) qubit and `b` the second (Bob's).
//!
//! Basis convention: `|0⟩` is the ground state (σ_z = +1) and `|1⟩` the
//! excited state, so the lowering operator is `σ₋ = |0⟩⟨1|`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Jacobi stops once the off-diagonal Frobenius mass drops below this
/// fraction of ‖M‖_F.
const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMat {
    dim: usize,
    data: [C64; 16],
}

/// Which tensor factor of a two-qubit operator an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl ComplexMat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "ComplexMat dimension must be 2 or 4, got {dim}");
        Self { dim, data: [ZERO; 16] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries; the slice length fixes the dimension.
    pub fn from_row_major(entries: &[C64]) -> Result<Self> {
        let dim = match entries.len() {
            4 => 2,
            16 => 4,
            n => return Err(Error::DimensionMismatch { expected: 16, found: n }),
        };
        Ok(Self::from_fn(dim, |i, j| entries[i * dim + j]))
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        assert_eq!(v.len(), w.len());
        Self::from_fn(v.len(), |i, j| v[i] * w[j].conj())
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= s;
        }
        out
    }

    /// `A B A†`.
    pub fn sandwich(&self, inner: &Self) -> Self {
        *self * *inner * self.adjoint()
    }

    /// ‖M − M†‖_F.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius_norm()
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && (*self - *other).frobenius_norm() <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, dim: usize) {
        assert_eq!(self.dim, dim, "expected a {dim}x{dim} matrix, got {0}x{0}", self.dim);
    }
}

impl Index<(usize, usize)> for ComplexMat {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * self.dim + j]
    }
}

impl Add for ComplexMat {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for ComplexMat {
    fn add_assign(&mut self, rhs: Self) {
        self.check_dim(rhs.dim);
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
    }
}

impl Sub for ComplexMat {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self.check_dim(rhs.dim);
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for ComplexMat {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for ComplexMat {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.check_dim(rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMat({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Single-qubit operators.

pub fn pauli_x() -> ComplexMat {
    ComplexMat::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMat {
    ComplexMat::from_row_major(&[ZERO, -I, I, ZERO]).unwrap()
}

pub fn pauli_z() -> ComplexMat {
    ComplexMat::diag(&[1.0, -1.0])
}

pub fn paulis() -> [ComplexMat; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// Lowering operator `σ₋ = |0⟩⟨1|` (excited `|1⟩` to ground `|0⟩`).
pub fn sigma_minus() -> ComplexMat {
    ComplexMat::from_real_rows([[0.0, 1.0], [0.0, 0.0]])
}

/// Raising operator `σ₊ = |1⟩⟨0|`.
pub fn sigma_plus() -> ComplexMat {
    sigma_minus().adjoint()
}

/// `|i⟩⟨j|` on one qubit.
pub fn basis_op(i: usize, j: usize) -> ComplexMat {
    let mut m = ComplexMat::zeros(2);
    m[(i, j)] = ONE;
    m
}

/// Tensor product of two single-qubit operators:
/// `(A⊗B)[2i+k][2j+l] = A[i][j]·B[k][l]`.
pub fn kron(a: &ComplexMat, b: &ComplexMat) -> ComplexMat {
    a.check_dim(2);
    b.check_dim(2);
    ComplexMat::from_fn(4, |r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Embeds a single-qubit operator on the chosen factor of a qubit pair.
pub fn embed(op: &ComplexMat, on: Subsystem) -> ComplexMat {
    let id = ComplexMat::identity(2);
    match on {
        Subsystem::A => kron(op, &id),
        Subsystem::B => kron(&id, op),
    }
}

pub fn partial_transpose(rho: &ComplexMat, subsystem: Subsystem) -> ComplexMat {
    rho.check_dim(4);
    ComplexMat::from_fn(4, |r, c| {
        let (a, b, a2, b2) = (r / 2, r % 2, c / 2, c % 2);
        match subsystem {
            Subsystem::A => rho[(2 * a2 + b, 2 * a + b2)],
            Subsystem::B => rho[(2 * a + b2, 2 * a2 + b)],
        }
    })
}

/// Reduced single-qubit operator keeping `keep` and tracing out the other factor.
pub fn partial_trace(rho: &ComplexMat, keep: Subsystem) -> ComplexMat {
    rho.check_dim(4);
    ComplexMat::from_fn(2, |i, j| match keep {
        Subsystem::A => (0..2).map(|b| rho[(2 * i + b, 2 * j + b)]).sum(),
        Subsystem::B => (0..2).map(|a| rho[(2 * a + i, 2 * a + j)]).sum(),
    })
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMat,
    pub sweeps: usize,
}

impl EigenResult {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `V Λ V†` with the stored (or replaced) eigenvalues.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMat {
        let v = self.eigenvectors;
        let lambda = ComplexMat::diag(values);
        v * lambda * v.adjoint()
    }

    pub fn reconstruct(&self) -> ComplexMat {
        self.reconstruct_with(&self.eigenvalues)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Rejects inputs with ‖M − M†‖_F > tol·‖M‖_F. Eigenvectors are phase-fixed
/// so their largest-magnitude component is real and positive.
pub fn hermitian_eig(m: &ComplexMat, tol: f64) -> Result<EigenResult> {
    let n = m.dim();
    let norm = m.frobenius_norm();
    let defect = m.hermiticity_defect();
    if defect > tol * norm {
        return Err(Error::NotHermitian { defect });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMat::identity(n);
    let mut sweeps = 0;

    while sweeps < JACOBI_MAX_SWEEPS && off_diagonal_norm(&a) >= JACOBI_REL_TOL * norm {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // U = diag(1, e^{-iφ}) on (p,q) followed by a real rotation.
                let mut u = ComplexMat::identity(n);
                u[(p, p)] = C64::new(c, 0.0);
                u[(p, q)] = C64::new(s, 0.0);
                u[(q, p)] = -phase.conj() * s;
                u[(q, q)] = phase.conj() * c;

                a = u.adjoint() * a * u;
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                v = v * u;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMat::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let pivot = (0..n)
            .max_by(|&i, &j| v[(i, src)].norm().total_cmp(&v[(j, src)].norm()))
            .unwrap();
        let z = v[(pivot, src)];
        let gauge = if z.norm() > 0.0 { z.conj() / z.norm() } else { ONE };
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)] * gauge;
        }
    }

    Ok(EigenResult { eigenvalues, eigenvectors: vectors, sweeps })
}

/// Eigenvalues only; the Hermiticity gate uses a loose 1e-8 relative tolerance.
pub fn hermitian_eigenvalues(m: &ComplexMat) -> Result<Vec<f64>> {
    hermitian_eig(m, 1e-8).map(|e| e.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMat) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}
