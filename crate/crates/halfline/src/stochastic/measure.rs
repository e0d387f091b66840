//! Random initial data from finite-range moving averages.
//!
//! `Y₀^i(x) = Σ_{|k| ≤ R} a_i(k) ξ^i(x−k)` for `x ≥ 1` with i.i.d.
//! unit-variance innovations `ξ^i` on an extended index range; an optional
//! 2×2 mixing matrix correlates the two components. Finite range makes the
//! construction mixing with coefficient exactly zero beyond `2R+1` sites,
//! so the mean-zero, finite-variance, translation-invariance-in-the-limit
//! and strong-mixing hypotheses hold by construction. The implied limit
//! correlations are `q₀^{ij}(x) = Σ_l M_{il} M_{jl} (a_l ⋆ a_l)(x)`.

use crate::equilibrium::spectral_density::{DensityError, Q0Hat, ThetaGrid};
use crate::model::ChainState;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Law of `Y₀(0)` under the unconditioned measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryMode {
    /// `Y₀(0) = 0` (the conditioned measure ν₀ itself).
    Zero,
    /// Independent centered Gaussian with variance `s0²` per component.
    IndependentGaussian { s0: f64 },
}

/// Innovation law (always mean zero, unit variance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Innovation {
    #[default]
    Gaussian,
    /// Uniform on `(−√3, √3)` — non-Gaussian input for the
    /// Gaussianization checks.
    Uniform,
}

/// Finite-range moving-average specification of the initial measure.
///
/// `a0`, `a1` hold the taps for `k = −R..=R` (length `2R+1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialMeasureSpec {
    pub a0: Vec<f64>,
    pub a1: Vec<f64>,
    /// Optional component-mixing matrix applied to the two independent
    /// moving-average fields.
    pub mix: Option<[[f64; 2]; 2]>,
    pub boundary: BoundaryMode,
    #[serde(default)]
    pub innovation: Innovation,
}

impl InitialMeasureSpec {
    /// Velocity white noise of variance σ² with displacement zero.
    pub fn velocity_white(sigma: f64) -> Self {
        Self {
            a0: vec![0.0],
            a1: vec![sigma],
            mix: None,
            boundary: BoundaryMode::Zero,
            innovation: Innovation::Gaussian,
        }
    }

    /// Tap range `R` (taps cover `|k| ≤ R`).
    pub fn range(&self) -> usize {
        self.a0.len().max(self.a1.len()) / 2
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, a) in [("a0", &self.a0), ("a1", &self.a1)] {
            if a.is_empty() || a.len() % 2 == 0 {
                return Err(format!("{name} must have odd length 2R+1, got {}", a.len()));
            }
            if a.iter().any(|v| !v.is_finite()) {
                return Err(format!("{name} contains a non-finite tap"));
            }
        }
        if self.a0.iter().chain(self.a1.iter()).all(|&v| v == 0.0) {
            return Err("at least one moving-average tap must be nonzero".into());
        }
        Ok(())
    }

    /// Limit correlations `q₀^{ij}(d)` for `d = −2R..=2R`.
    pub fn q0_site(&self) -> [[Vec<f64>; 2]; 2] {
        let r = self.range();
        let span = 2 * r;
        let tap = |a: &[f64], k: i64| -> f64 {
            let rr = (a.len() / 2) as i64;
            if k.abs() > rr {
                0.0
            } else {
                a[(k + rr) as usize]
            }
        };
        // autocovariance of each independent field
        let auto = |a: &[f64]| -> Vec<f64> {
            (-(span as i64)..=span as i64)
                .map(|d| {
                    let mut s = 0.0;
                    for k in -(r as i64)..=r as i64 {
                        s += tap(a, k) * tap(a, k + d);
                    }
                    s
                })
                .collect()
        };
        let c = [auto(&self.a0), auto(&self.a1)];
        let m = self.mix.unwrap_or([[1.0, 0.0], [0.0, 1.0]]);
        let mut q: [[Vec<f64>; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                q[i][j] = (0..=2 * span)
                    .map(|idx| (0..2).map(|l| m[i][l] * m[j][l] * c[l][idx]).sum())
                    .collect();
            }
        }
        q
    }

    /// `q̂₀` on a θ-grid by the finite Fourier sum of `q0_site`.
    pub fn analytic_q0(&self, grid: ThetaGrid) -> Result<Q0Hat, DensityError> {
        let q = self.q0_site();
        let span = 2 * self.range() as i64;
        Q0Hat::from_fns(grid, |i, j, theta| {
            let mut acc = Complex64::new(0.0, 0.0);
            for d in -span..=span {
                let v = q[i][j][(d + span) as usize];
                acc += v * Complex64::new(0.0, d as f64 * theta).exp();
            }
            acc
        })
    }
}

/// Deterministic per-replica stream: ChaCha8 keyed by
/// `(master_seed, replica)` through a splitmix64 expansion, so ensembles
/// are order-independent and parallelizable.
pub fn replica_rng(master_seed: u64, replica: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut state = master_seed ^ 0x9E3779B97F4A7C15u64.wrapping_mul(replica.wrapping_add(1));
    for chunk in key.chunks_mut(8) {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        chunk.copy_from_slice(&z.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

fn draw(innovation: Innovation, rng: &mut ChaCha8Rng) -> f64 {
    match innovation {
        Innovation::Gaussian => StandardNormal.sample(rng),
        Innovation::Uniform => rng.gen_range(-(3.0f64.sqrt())..3.0f64.sqrt()),
    }
}

/// Samples `Y₀` on sites `0..=l`.
///
/// Requires `l > 4R` so the window of dependent sites is well inside the
/// chain.
pub fn sample_initial(spec: &InitialMeasureSpec, l: usize, rng: &mut ChaCha8Rng) -> ChainState {
    let r = spec.range();
    assert!(l > 4 * r, "need L > 4R");
    let tap = |a: &[f64], k: i64| -> f64 {
        let rr = (a.len() / 2) as i64;
        if k.abs() > rr {
            0.0
        } else {
            a[(k + rr) as usize]
        }
    };

    // innovations on the extended index range x − k ∈ [1−R, L+R]
    let ext = l + 2 * r + 1;
    let mut noise = [vec![0.0; ext], vec![0.0; ext]];
    for field in noise.iter_mut() {
        for slot in field.iter_mut() {
            *slot = draw(spec.innovation, rng);
        }
    }
    let field_at = |which: usize, a: &[f64], x: usize| -> f64 {
        let mut s = 0.0;
        for k in -(r as i64)..=r as i64 {
            // noise index x − k, shifted by R − 1 + ... to stay in range
            let idx = (x as i64 - k + r as i64 - 1) as usize;
            s += tap(a, k) * noise[which][idx];
        }
        s
    };

    let m = spec.mix.unwrap_or([[1.0, 0.0], [0.0, 1.0]]);
    let mut state = ChainState::zeros(l);
    for x in 1..=l {
        let w = [field_at(0, &spec.a0, x), field_at(1, &spec.a1, x)];
        state.u[x] = m[0][0] * w[0] + m[0][1] * w[1];
        state.v[x] = m[1][0] * w[0] + m[1][1] * w[1];
    }
    match spec.boundary {
        BoundaryMode::Zero => {}
        BoundaryMode::IndependentGaussian { s0 } => {
            state.u[0] = s0 * draw(Innovation::Gaussian, rng);
            state.v[0] = s0 * draw(Innovation::Gaussian, rng);
        }
    }
    state
}
