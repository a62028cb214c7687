use crate::error::{Error, Result};
use crate::linalg::C64;

/// Per-qubit reservoir: emission rate Γ, mean photon number 𝒩 and the
/// two-photon correlation ℳ = |ℳ|·e^{iθ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirParams {
    pub gamma: f64,
    pub n: f64,
    pub m_abs: f64,
    pub theta: f64,
}

/// |ℳ| ≤ √(𝒩(𝒩+1)).
pub fn squeezing_bound(n: f64) -> f64 {
    (n * (n + 1.0)).sqrt()
}

impl ReservoirParams {
    pub fn new(gamma: f64, n: f64, m_abs: f64, theta: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParams(format!("gamma must be positive, got {gamma}")));
        }
        if !(n.is_finite() && n >= 0.0) {
            return Err(Error::InvalidParams(format!("n must be non-negative, got {n}")));
        }
        if !(m_abs.is_finite() && m_abs >= 0.0) {
            return Err(Error::InvalidParams(format!("|M| must be non-negative, got {m_abs}")));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParams(format!("theta must be finite, got {theta}")));
        }
        let bound = squeezing_bound(n);
        if m_abs > bound + 1e-12 {
            return Err(Error::InvalidParams(format!(
                "|M| = {m_abs} exceeds sqrt(n(n+1)) = {bound}"
            )));
        }
        let p = Self { gamma, n, m_abs, theta };
        debug_assert!(p.zeta() + 1e-12 >= p.eta());
        Ok(p)
    }

    pub fn thermal(gamma: f64, n: f64) -> Result<Self> {
        Self::new(gamma, n, 0.0, 0.0)
    }

    /// Squeezed reservoir with |ℳ| given as a fraction of the physicality bound.
    pub fn squeezed_fraction(gamma: f64, n: f64, fraction: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::OutOfRange { what: "m fraction", value: fraction, range: "[0, 1]" });
        }
        Self::new(gamma, n, fraction * squeezing_bound(n), theta)
    }

    /// ζ = (Γ/2)(2𝒩+1).
    pub fn zeta(&self) -> f64 {
        0.5 * self.gamma * (2.0 * self.n + 1.0)
    }

    /// η = Γ|ℳ|.
    pub fn eta(&self) -> f64 {
        self.gamma * self.m_abs
    }

    pub fn m(&self) -> C64 {
        C64::from_polar(self.m_abs, self.theta)
    }

    /// Excited-state population of the thermal fixed point, 𝒩/(2𝒩+1).
    pub fn thermal_excited_population(&self) -> f64 {
        self.n / (2.0 * self.n + 1.0)
    }

    pub fn m_fraction(&self) -> f64 {
        let b = squeezing_bound(self.n);
        if b == 0.0 {
            0.0
        } else {
            self.m_abs / b
        }
    }
}
