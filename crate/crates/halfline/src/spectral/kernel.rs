//! The boundary kernel `K(x, t)`: response at interior site `x ≥ 1` to a
//! unit boundary history. Its Fourier–Laplace transform is `e^{iθ(ω)x}`.
//!
//! Collapsing the inversion contour onto the band and using that the
//! boundary value of `θ` at `ω = φ(θ)` is `θ` itself gives the real form
//!
//! ```text
//! K(x, t) = (2/π) ∫₀^π sin(φ(θ) t) · sin(x θ) · φ′(θ) dθ
//! ```
//!
//! which is evaluated by adaptive Gauss–Kronrod over oscillation-sized
//! panels. `K(x, 0) = 0` for all `x ≥ 1` (odd integrand in `t`).

use crate::model::ModelParams;
use crate::numerics::quad::{self, QuadError, QuadResult};

/// Absolute quadrature target per kernel evaluation.
pub const KERNEL_TOL: f64 = 1e-9;

/// `K(x, t)` by band quadrature.
pub fn kernel_k(x: usize, t: f64, m: f64) -> Result<QuadResult<f64>, QuadError> {
    assert!(x >= 1, "the kernel is defined on interior sites x ≥ 1");
    assert!(t >= 0.0, "the kernel is causal");
    if t == 0.0 {
        return Ok(QuadResult { value: 0.0, abs_err: 0.0 });
    }
    let params = ModelParams { m, gamma: 0.0, kappa: 0.0 };
    let band_sweep = (params.band_hi() - params.band_lo()) * t;
    let total_phase = band_sweep + (x as f64) * std::f64::consts::PI;
    let panels = quad::oscillation_panels(total_phase) + 4;
    let edges = quad::uniform_edges(0.0, std::f64::consts::PI, panels);
    let xf = x as f64;
    let result = quad::integrate(
        |theta| {
            let phi = params.phi(theta);
            (phi * t).sin() * (xf * theta).sin() * params.phi_prime(theta)
        },
        &edges,
        KERNEL_TOL,
        panels * 64,
    )?;
    Ok(QuadResult {
        value: result.value * std::f64::consts::FRAC_2_PI,
        abs_err: result.abs_err * std::f64::consts::FRAC_2_PI,
    })
}

/// `K(x, ·)` tabulated on `t = t0 + i·dt`, `i = 0..n`.
pub fn kernel_table(x: usize, t0: f64, dt: f64, n: usize, m: f64) -> Result<Vec<f64>, QuadError> {
    use crate::exec::{indexed_map, ExecPolicy};
    let values = indexed_map(ExecPolicy::Parallel, n + 1, |i| {
        kernel_k(x, t0 + dt * i as f64, m).map(|r| r.value)
    });
    values.into_iter().collect()
}
