//! Zero boundary-condition dynamics by odd extension.
//!
//! The half-line problem with `u(0,t) ≡ 0` is the restriction of the
//! whole-line problem with odd initial data. On a ring large enough that
//! periodic images stay outside the light cone, the whole-line evolution
//! is the exact Fourier multiplier
//!
//! ```text
//! (û, v̂) ↦ (cos(φt) û + sin(φt)/φ · v̂, −φ sin(φt) û + cos(φt) v̂)
//! ```
//!
//! so the method is exact in time (no step-size error at all).

use super::DynamicsError;
use crate::model::ChainState;
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Ring length: next power of two ≥ 2(L + t + 64).
pub fn ring_len(l: usize, t: f64) -> usize {
    let need = 2 * (l as f64 + t.abs() + 64.0).ceil() as usize;
    need.next_power_of_two()
}

/// Evolves a zero-boundary state by time `t` (may be negative).
///
/// Requires `u(0) = v(0) = 0`; returns a state on the same sites with
/// `z(0, t) = 0` identically.
pub fn evolve_zero_bc(state: &ChainState, m: f64, t: f64) -> Result<ChainState, DynamicsError> {
    if state.u[0] != 0.0 || state.v[0] != 0.0 {
        return Err(DynamicsError::NonzeroBoundary { u0: state.u[0], v0: state.v[0] });
    }
    let l = state.last_site();
    let n = ring_len(l, t);

    // odd extension on the ring: f(n − x) = −f(x), f(0) = 0
    let mut uh: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
    let mut vh: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
    for x in 1..=l {
        uh[x] = Complex64::new(state.u[x], 0.0);
        uh[n - x] = Complex64::new(-state.u[x], 0.0);
        vh[x] = Complex64::new(state.v[x], 0.0);
        vh[n - x] = Complex64::new(-state.v[x], 0.0);
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    fft.process(&mut uh);
    fft.process(&mut vh);

    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let phi = crate::model::dispersion_phi(theta, m);
        let (c, s) = ((phi * t).cos(), (phi * t).sin());
        // sin(φt)/φ → t as φ → 0 (only the k = 0 mode for m = 0, which
        // carries zero weight for odd data; kept for safety)
        let sinc = if phi > 1e-12 { s / phi } else { t };
        let (u0, v0) = (uh[k], vh[k]);
        uh[k] = u0 * c + v0 * sinc;
        vh[k] = -u0 * phi * s + v0 * c;
    }

    ifft.process(&mut uh);
    ifft.process(&mut vh);
    let scale = 1.0 / n as f64;

    let mut out = ChainState::zeros(l);
    out.t = state.t + t;
    for x in 0..=l {
        out.u[x] = uh[x].re * scale;
        out.v[x] = vh[x].re * scale;
    }
    out.u[0] = 0.0;
    out.v[0] = 0.0;
    Ok(out)
}

/// Evolution at several times from one transform of the initial data.
pub fn evolve_zero_bc_at_times(
    state: &ChainState,
    m: f64,
    times: &[f64],
) -> Result<Vec<ChainState>, DynamicsError> {
    times.iter().map(|&t| evolve_zero_bc(state, m, t)).collect()
}

/// Precomputed zero-BC propagator for a fixed `(L, m, t)`: FFT plans and
/// multiplier tables are built once and shared across ensemble members.
pub struct ZeroBcPropagator {
    l: usize,
    n: usize,
    t: f64,
    cos_tab: Vec<f64>,
    sinc_tab: Vec<f64>,
    phi_sin_tab: Vec<f64>,
    fft: std::sync::Arc<dyn rustfft::Fft<f64>>,
    ifft: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl ZeroBcPropagator {
    pub fn new(l: usize, m: f64, t: f64) -> Self {
        let n = ring_len(l, t);
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut cos_tab = vec![0.0; n];
        let mut sinc_tab = vec![0.0; n];
        let mut phi_sin_tab = vec![0.0; n];
        for k in 0..n {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let phi = crate::model::dispersion_phi(theta, m);
            let (c, s) = ((phi * t).cos(), (phi * t).sin());
            cos_tab[k] = c;
            sinc_tab[k] = if phi > 1e-12 { s / phi } else { t };
            phi_sin_tab[k] = phi * s;
        }
        Self { l, n, t, cos_tab, sinc_tab, phi_sin_tab, fft, ifft }
    }

    pub fn propagate(&self, state: &ChainState) -> Result<ChainState, DynamicsError> {
        if state.u[0] != 0.0 || state.v[0] != 0.0 {
            return Err(DynamicsError::NonzeroBoundary { u0: state.u[0], v0: state.v[0] });
        }
        assert_eq!(state.last_site(), self.l, "propagator built for L = {}", self.l);
        let n = self.n;
        let mut uh: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
        let mut vh: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n];
        for x in 1..=self.l {
            uh[x] = Complex64::new(state.u[x], 0.0);
            uh[n - x] = Complex64::new(-state.u[x], 0.0);
            vh[x] = Complex64::new(state.v[x], 0.0);
            vh[n - x] = Complex64::new(-state.v[x], 0.0);
        }
        self.fft.process(&mut uh);
        self.fft.process(&mut vh);
        for k in 0..n {
            let (u0, v0) = (uh[k], vh[k]);
            uh[k] = u0 * self.cos_tab[k] + v0 * self.sinc_tab[k];
            vh[k] = -u0 * self.phi_sin_tab[k] + v0 * self.cos_tab[k];
        }
        self.ifft.process(&mut uh);
        self.ifft.process(&mut vh);
        let scale = 1.0 / n as f64;
        let mut out = ChainState::zeros(self.l);
        out.t = state.t + self.t;
        for x in 1..=self.l {
            out.u[x] = uh[x].re * scale;
            out.v[x] = vh[x].re * scale;
        }
        Ok(out)
    }
}
