//! Model parameters, chain states, weighted norms, the energy functional,
//! and the lattice dispersion relation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default light-cone safety margin in lattice units.
///
/// Observables at sites `x ≤ x_obs` on a chain truncated at `L` are trusted
/// for `t ≤ L − x_obs − margin`: the lattice group speed is at most 1 and
/// beyond-cone leakage decays super-exponentially.
pub const LIGHT_CONE_MARGIN: usize = 50;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} = {value} must be finite and non-negative")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("state vectors must have equal length ≥ 1, got u: {u}, v: {v}")]
    StateShape { u: usize, v: usize },
    #[error("state contains a non-finite entry at site {site}")]
    NonFinite { site: usize },
}

/// The parameter triple `(m, γ, κ)` of the chain plus derived spectral
/// constants.
///
/// `m` is the on-site mass (pinning), `γ` the boundary damping, `κ` the
/// boundary stiffness of the linear boundary force `F(q) = −κq`. The
/// propagation band of the lattice is `Λ = ±[band_lo, band_hi]` with
/// `band_lo = m` and `band_hi = √(4 + m²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub m: f64,
    pub gamma: f64,
    pub kappa: f64,
}

impl ModelParams {
    pub fn new(m: f64, gamma: f64, kappa: f64) -> Result<Self, ModelError> {
        for (name, value) in [("m", m), ("gamma", gamma), ("kappa", kappa)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        Ok(Self { m, gamma, kappa })
    }

    /// Lower band edge, `m`.
    pub fn band_lo(&self) -> f64 {
        self.m
    }

    /// Upper band edge, `√(4 + m²)`.
    pub fn band_hi(&self) -> f64 {
        (4.0 + self.m * self.m).sqrt()
    }

    /// Dispersion relation `φ(θ) = √(2 − 2 cos θ + m²)`.
    ///
    /// Ranges over `[band_lo, band_hi]` as `θ` ranges over the torus; even
    /// in `θ`. For `m = 0` it reduces to `2|sin(θ/2)|`.
    pub fn phi(&self, theta: f64) -> f64 {
        dispersion_phi(theta, self.m)
    }

    /// `dφ/dθ = sin θ / φ(θ)`, the lattice group velocity (≤ 1 in modulus).
    /// Continuous limit 1 at `θ = 0` when `m = 0`.
    pub fn phi_prime(&self, theta: f64) -> f64 {
        let phi = self.phi(theta);
        if phi == 0.0 {
            // m = 0, θ = 0: sin θ / (2|sin(θ/2)|) → cos(θ/2) → 1.
            1.0
        } else {
            theta.sin() / phi
        }
    }
}

/// `φ(θ) = √(2 − 2 cos θ + m²)`, the plane-wave frequency at wavenumber `θ`.
pub fn dispersion_phi(theta: f64, m: f64) -> f64 {
    // 2 − 2cosθ = 4 sin²(θ/2), in this form exact at θ = 0.
    let s = (theta / 2.0).sin();
    (4.0 * s * s + m * m).sqrt()
}

/// Finite truncation of the chain state `Y = (u, v)` on sites `0..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
}

impl ChainState {
    /// Zero state on sites `0..=l`.
    pub fn zeros(l: usize) -> Self {
        Self {
            u: vec![0.0; l + 1],
            v: vec![0.0; l + 1],
            t: 0.0,
        }
    }

    pub fn new(u: Vec<f64>, v: Vec<f64>, t: f64) -> Result<Self, ModelError> {
        if u.len() != v.len() || u.is_empty() {
            return Err(ModelError::StateShape { u: u.len(), v: v.len() });
        }
        for (site, val) in u.iter().chain(v.iter()).enumerate() {
            if !val.is_finite() {
                return Err(ModelError::NonFinite { site: site % u.len() });
            }
        }
        Ok(Self { u, v, t })
    }

    /// Index of the last site, `L`.
    pub fn last_site(&self) -> usize {
        self.u.len() - 1
    }

    /// Largest time at which observables at sites `≤ x_obs` are trusted.
    pub fn light_cone_budget(&self, x_obs: usize) -> f64 {
        light_cone_budget(self.last_site(), x_obs)
    }

    /// Weighted phase-space norm
    /// `√( Σ_{x=0..L} (u(x)² + v(x)²) (1+x²)^α )`.
    pub fn weighted_norm(&self, alpha: f64) -> f64 {
        let mut sum = 0.0;
        for x in 0..self.u.len() {
            let w = (1.0 + (x as f64) * (x as f64)).powf(alpha);
            sum += (self.u[x] * self.u[x] + self.v[x] * self.v[x]) * w;
        }
        sum.sqrt()
    }

    /// Primed weighted norm: the same sum restricted to `x ≥ 1`.
    pub fn weighted_norm_primed(&self, alpha: f64) -> f64 {
        let mut sum = 0.0;
        for x in 1..self.u.len() {
            let w = (1.0 + (x as f64) * (x as f64)).powf(alpha);
            sum += (self.u[x] * self.u[x] + self.v[x] * self.v[x]) * w;
        }
        sum.sqrt()
    }

    /// Energy of the truncated chain,
    /// `½ Σ_{x<L} (v² + (u(x+1)−u(x))² + m²u²) + ½(v(L)² + m²u(L)²) + κu(0)²/2`.
    ///
    /// The gradient term at the free end is absent, so this is exactly the
    /// Hamiltonian generating the truncated dynamics and is conserved for
    /// `γ = 0`.
    pub fn hamiltonian(&self, params: &ModelParams) -> f64 {
        let l = self.last_site();
        let m2 = params.m * params.m;
        let mut h = 0.0;
        for x in 0..l {
            let grad = self.u[x + 1] - self.u[x];
            h += self.v[x] * self.v[x] + grad * grad + m2 * self.u[x] * self.u[x];
        }
        h += self.v[l] * self.v[l] + m2 * self.u[l] * self.u[l];
        0.5 * h + 0.5 * params.kappa * self.u[0] * self.u[0]
    }

    /// Pairing `⟨Y, Ψ⟩₊ = Σ_i Σ_x Y^i(x) Ψ^i(x)` with a finitely supported
    /// test function.
    pub fn pair(&self, psi: &TestFunction) -> f64 {
        let mut s = 0.0;
        for (x, &c) in psi.psi0.iter().enumerate() {
            if x < self.u.len() {
                s += self.u[x] * c;
            }
        }
        for (x, &c) in psi.psi1.iter().enumerate() {
            if x < self.v.len() {
                s += self.v[x] * c;
            }
        }
        s
    }
}

/// Trusted horizon for observables at `x ≤ x_obs` on a chain of length `L`.
pub fn light_cone_budget(l: usize, x_obs: usize) -> f64 {
    (l as f64) - (x_obs as f64) - (LIGHT_CONE_MARGIN as f64)
}

/// A compactly supported test function `Ψ = (Ψ⁰, Ψ¹)`.
///
/// Coefficients are stored densely from site 0; the support is the index
/// range of the stored vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub psi0: Vec<f64>,
    pub psi1: Vec<f64>,
}

impl TestFunction {
    pub fn new(psi0: Vec<f64>, psi1: Vec<f64>) -> Self {
        Self { psi0, psi1 }
    }

    /// Largest site carrying a coefficient (0 for the empty function).
    pub fn max_site(&self) -> usize {
        self.psi0.len().max(self.psi1.len()).saturating_sub(1)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self {
            psi0: self.psi0.iter().map(|c| c * lambda).collect(),
            psi1: self.psi1.iter().map(|c| c * lambda).collect(),
        }
    }
}
