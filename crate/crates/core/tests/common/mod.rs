//! Reference implementations used only by the integration tests. None of them
//! go through the crate's integrator, channel builder or eigensolver.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::Rng;
use reservoir_entanglement::linalg::ComplexMat;
use reservoir_entanglement::reservoir::ReservoirParams;

/// Closed-form single-qubit evolution under one reservoir.
///
/// Populations relax at rate Γ(2N+1) to p_e = N/(2N+1). The coherence pair
/// (ρ01, ρ10) obeys x' = −ζx + Γℳ*·y, y' = −ζy + Γℳ·x with ζ = Γ(2N+1)/2.
/// Linear in its argument, so it also acts on non-Hermitian operators.
pub fn qubit_channel(p: &ReservoirParams, t: f64, x: &ComplexMat) -> ComplexMat {
    let rate = p.gamma * (2.0 * p.n + 1.0);
    let pe_ss = p.n / (2.0 * p.n + 1.0);
    let tr = x[(0, 0)] + x[(1, 1)];
    let decay = (-rate * t).exp();
    let pe = tr * pe_ss + (x[(1, 1)] - tr * pe_ss) * decay;

    let zeta = 0.5 * rate;
    let eta = p.gamma * p.m_abs;
    let damp = (-zeta * t).exp();
    let (ch, sh) = ((eta * t).cosh(), (eta * t).sinh());
    let phase = C64::from_polar(1.0, p.theta);
    let (x01, x10) = (x[(0, 1)], x[(1, 0)]);
    let y01 = (x01 * ch + phase.conj() * x10 * sh) * damp;
    let y10 = (x10 * ch + phase * x01 * sh) * damp;

    let mut out = ComplexMat::zeros(2);
    out[(0, 0)] = tr - pe;
    out[(1, 1)] = pe;
    out[(0, 1)] = y01;
    out[(1, 0)] = y10;
    out
}

/// (Λ_a ⊗ Λ_b)(ρ) assembled entry by entry from the single-qubit maps.
pub fn pair_channel(pa: &ReservoirParams, pb: &ReservoirParams, t: f64, rho: &ComplexMat) -> ComplexMat {
    let unit = |i: usize, k: usize| {
        let mut m = ComplexMat::zeros(2);
        m[(i, k)] = C64::new(1.0, 0.0);
        m
    };
    let mut out = ComplexMat::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let c = rho[(2 * i + j, 2 * k + l)];
                    if c == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let a = qubit_channel(pa, t, &unit(i, k));
                    let b = qubit_channel(pb, t, &unit(j, l));
                    for r in 0..4 {
                        for s in 0..4 {
                            out[(r, s)] += c * a[(r / 2, s / 2)] * b[(r % 2, s % 2)];
                        }
                    }
                }
            }
        }
    }
    out
}

/// Power sums Tr(Mᵏ), k = 1..=4, which fix the spectrum of a 4×4 matrix.
pub fn trace_powers(m: &ComplexMat) -> [f64; 4] {
    let mut p = *m;
    let mut out = [0.0; 4];
    for slot in out.iter_mut() {
        *slot = p.trace().re;
        p = p * *m;
    }
    out
}

pub fn eigen_power_sums(values: &[f64]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = values.iter().map(|v| v.powi(k as i32 + 1)).sum();
    }
    out
}

/// Negativity of a Bell-diagonal state from its largest weight.
pub fn bell_diagonal_negativity(weights: &[f64; 4]) -> f64 {
    let w = weights.iter().cloned().fold(f64::MIN, f64::max);
    (2.0 * w - 1.0).max(0.0)
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> ComplexMat {
    let mut m = ComplexMat::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.gen_range(-scale..scale), 0.0);
        for j in i + 1..dim {
            let z = C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// G·G† / Tr, a full-rank random state.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> ComplexMat {
    let g = ComplexMat::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let p = g * g.adjoint();
    let tr = p.trace().re;
    p.scale(1.0 / tr)
}
