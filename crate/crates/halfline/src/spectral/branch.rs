//! The dispersion branch `θ(ω)`: the unique solution of
//! `2 − 2 cos θ + m² = ω²` with `Im θ > 0`, `−π < Re θ ≤ π`, analytic off
//! the band `Λ = ±[m, √(4+m²)]`.
//!
//! `e^{iθ(ω)}` is the root of `z² − 2cz + 1 = 0`, `c = 1 + (m² − ω²)/2`,
//! with `|z| < 1`. On the band the boundary value from above has `|z| = 1`
//! with `sign(Im θ) = 0` and `sign(sin Re θ) = sign ω`.

use super::SpectralError;
use num_complex::Complex64;

/// Branch data at one frequency: `e^{iθ(ω)}` and `θ(ω)` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaBranch {
    pub e_itheta: Complex64,
    pub theta: Complex64,
}

/// `e^{iθ(ω)}` for complex `ω` off the band (and, by continuity, its
/// boundary value from the side `Im ω` approaches).
///
/// The quadratic is solved in the cancellation-free form: the root of
/// larger modulus is built first, the small root is its reciprocal.
pub fn e_itheta(omega: Complex64, m: f64) -> Complex64 {
    let c = Complex64::new(1.0 + m * m / 2.0, 0.0) - omega * omega * 0.5;
    let mut s = (c * c - 1.0).sqrt();
    // orient the square root so that c + s is the larger-modulus root
    if (c.conj() * s).re < 0.0 {
        s = -s;
    }
    let big = c + s;
    if big.norm_sqr() == 0.0 {
        // c = ±1 exactly (band edge): double root z = c
        return c;
    }
    1.0 / big
}

/// Boundary value `e^{iθ(ω + i0)}` for real `ω`.
///
/// Exact closed form: inside the band `cos θ = 1 + (m² − ω²)/2` and
/// `sin θ = sign(ω)·√(1 − cos²θ)`; outside, the real root of modulus < 1.
pub fn e_itheta_above(omega: f64, m: f64) -> Complex64 {
    let c = 1.0 + (m * m - omega * omega) / 2.0;
    if c.abs() <= 1.0 {
        let s = (1.0 - c * c).max(0.0).sqrt();
        Complex64::new(c, omega.signum() * s)
    } else {
        // gap (c > 1) or exterior (c < −1): real z with |z| < 1
        let root = (c * c - 1.0).sqrt();
        let big = if c > 0.0 { c + root } else { c - root };
        Complex64::new(1.0 / big, 0.0)
    }
}

/// Distance from real `ω` to the nearest band-edge point `±m, ±√(4+m²)`.
pub fn band_edge_distance(omega: f64, m: f64) -> f64 {
    let hi = (4.0 + m * m).sqrt();
    let a = omega.abs();
    (a - m).abs().min((a - hi).abs())
}

/// The branch `θ(ω)` with `Im θ ≥ 0`, via `θ = −i log e^{iθ}`.
///
/// Real `ω` (zero imaginary part) is interpreted as `ω + i0`. Inputs within
/// `1e-14` of a band edge are rejected; callers take one-sided limits.
pub fn theta_branch(omega: Complex64, m: f64) -> Result<ThetaBranch, SpectralError> {
    if omega.im == 0.0 && band_edge_distance(omega.re, m) < 1e-14 {
        return Err(SpectralError::BandEdge { omega });
    }
    let z = if omega.im == 0.0 {
        e_itheta_above(omega.re, m)
    } else {
        e_itheta(omega, m)
    };
    let theta = Complex64::new(z.im.atan2(z.re), -z.norm().ln());
    Ok(ThetaBranch { e_itheta: z, theta })
}
