//! The boundary symbol `D̃(ω) = −ω² + κ + 1 + m² − iωγ − e^{iθ(ω)}` and its
//! reciprocal `Ñ(ω)`.
//!
//! `D̃ = p − e^{iθ}` with the polynomial part
//! `p(ω) = −ω² − iωγ + (κ + 1 + m²)`; zeros of `D̃` are the resonances of
//! the boundary Volterra equation.

use super::branch::{e_itheta, e_itheta_above};
use super::SpectralError;
use crate::model::ModelParams;
use num_complex::Complex64;

/// Polynomial part `p(ω) = −ω² − iωγ + (κ + 1 + m²)`.
pub fn poly_part(omega: Complex64, params: &ModelParams) -> Complex64 {
    -omega * omega - Complex64::i() * omega * params.gamma
        + (params.kappa + 1.0 + params.m * params.m)
}

/// `D̃(ω)` for complex `ω` off the band.
pub fn dtilde(omega: Complex64, params: &ModelParams) -> Complex64 {
    poly_part(omega, params) - e_itheta(omega, params.m)
}

/// Boundary value `D̃(ω + i0)` for real `ω`.
pub fn dtilde_above(omega: f64, params: &ModelParams) -> Complex64 {
    poly_part(Complex64::new(omega, 0.0), params) - e_itheta_above(omega, params.m)
}

/// Boundary value `D̃(ω − i0)` for real `ω` (conjugate branch value).
pub fn dtilde_below(omega: f64, params: &ModelParams) -> Complex64 {
    poly_part(Complex64::new(omega, 0.0), params) - e_itheta_above(omega, params.m).conj()
}

/// Band form: `D̃(φ(θ) + i0) = −φ² + κ + 1 + m² − iφγ − e^{iθ}`, `θ ∈ (0, π)`.
///
/// On the positive band the branch value is literally `e^{iθ}`, so no
/// root-selection logic is involved.
pub fn dtilde_band(theta: f64, params: &ModelParams) -> Complex64 {
    let phi = params.phi(theta);
    Complex64::new(
        -phi * phi + params.kappa + 1.0 + params.m * params.m - theta.cos(),
        -phi * params.gamma - theta.sin(),
    )
}

/// `Ñ(ω) = 1/D̃(ω)`; fails within `1e-12` of a resonance.
pub fn ntilde(omega: Complex64, params: &ModelParams) -> Result<Complex64, SpectralError> {
    let d = dtilde(omega, params);
    if d.norm() < 1e-12 {
        return Err(SpectralError::Resonance { omega });
    }
    Ok(1.0 / d)
}

/// `Ñ(ω + i0)` for real `ω`.
pub fn ntilde_above(omega: f64, params: &ModelParams) -> Result<Complex64, SpectralError> {
    let d = dtilde_above(omega, params);
    if d.norm() < 1e-12 {
        return Err(SpectralError::Resonance { omega: Complex64::new(omega, 0.0) });
    }
    Ok(1.0 / d)
}

/// `dD̃/dω` off the band: `−2ω − iγ − z′(ω)` with `z′ = −ωz/(z − c)`.
pub fn dtilde_prime(omega: Complex64, params: &ModelParams) -> Complex64 {
    let z = e_itheta(omega, params.m);
    let c = Complex64::new(1.0 + params.m * params.m / 2.0, 0.0) - omega * omega * 0.5;
    let zprime = -omega * z / (z - c);
    -2.0 * omega - Complex64::i() * params.gamma - zprime
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn edge_values_match_closed_forms() {
        // D̃(±m ∓ ... ) limits: κ ∓ iγm and κ − 2 ∓ iγ√(4+m²)
        let p = ModelParams::new(1.5, 0.7, 0.9).unwrap();
        let hi = p.band_hi();
        for sign in [1.0f64, -1.0] {
            let d = dtilde(Complex64::new(sign * p.m, 1e-9), &p);
            assert_abs_diff_eq!(d.re, p.kappa, epsilon = 1e-4);
            assert_abs_diff_eq!(d.im, -sign * p.gamma * p.m, epsilon = 1e-4);

            let d = dtilde(Complex64::new(sign * hi, 1e-9), &p);
            assert_abs_diff_eq!(d.re, p.kappa - 2.0, epsilon = 1e-4);
            assert_abs_diff_eq!(d.im, -sign * p.gamma * hi, epsilon = 1e-4);
        }
    }

    #[test]
    fn exterior_zero_for_stiff_boundary() {
        // m = 0, γ = 0, κ = 3: D̃(ω₀) = 0 at ω₀ = √4.5 (root of 6 − ω² = ω√(ω²−4))
        let p = ModelParams::new(0.0, 0.0, 3.0).unwrap();
        let omega0 = 4.5f64.sqrt();
        let d = dtilde_above(omega0, &p);
        assert_abs_diff_eq!(d.norm(), 0.0, epsilon = 1e-12);
        // slope formula −2ω₀(κ−1)/(2κ + m² − ω₀²)
        let expected = -2.0 * omega0 * (p.kappa - 1.0) / (2.0 * p.kappa - omega0 * omega0);
        let slope = dtilde_prime(Complex64::new(omega0, 1e-12), &p);
        assert_abs_diff_eq!(slope.re, expected, epsilon = 1e-5);
        assert!(expected < 0.0);
    }

    #[test]
    fn ntilde_small_omega_massless() {
        // m = 0, κ > 0: Ñ(ω) = 1/κ + iω(γ+1)/κ² + O(ω²)
        let p = ModelParams::new(0.0, 0.4, 1.7).unwrap();
        let om = 1e-4;
        let n = ntilde_above(om, &p).unwrap();
        assert_abs_diff_eq!(n.re, 1.0 / p.kappa, epsilon = 1e-6);
        assert_abs_diff_eq!(n.im, om * (p.gamma + 1.0) / (p.kappa * p.kappa), epsilon = 1e-7);
    }

    #[test]
    fn ntilde_quadratic_decay_on_shifted_line() {
        let p = ModelParams::new(0.5, 0.3, 1.0).unwrap();
        for &r in &[20.0, 40.0, 80.0] {
            let n = ntilde(Complex64::new(r, 1.0), &p).unwrap();
            let ratio = n.norm() * r * r;
            assert!((0.5..2.0).contains(&ratio), "ratio {ratio} at |ω| = {r}");
        }
    }

    #[test]
    fn conjugation_symmetry_undamped() {
        // γ = 0: D̃(ω̄) = conj D̃(ω)
        let p = ModelParams::new(0.9, 0.0, 1.2).unwrap();
        let mut seed = 3u64;
        let mut next = move || {
            seed = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0
        };
        for _ in 0..100 {
            let omega = Complex64::new(next(), next());
            if omega.im.abs() < 1e-2 {
                continue;
            }
            let a = dtilde(omega.conj(), &p);
            let b = dtilde(omega, &p).conj();
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn band_form_matches_generic_path() {
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        for i in 1..30 {
            let theta = std::f64::consts::PI * i as f64 / 30.0;
            let omega = p.phi(theta);
            let a = dtilde_band(theta, &p);
            let b = dtilde_above(omega, &p);
            assert!((a - b).norm() < 1e-12, "θ = {theta}");
        }
    }

    #[test]
    fn resonance_reported() {
        let p = ModelParams::new(0.0, 0.0, 3.0).unwrap();
        assert!(matches!(
            ntilde_above(4.5f64.sqrt(), &p),
            Err(SpectralError::Resonance { .. })
        ));
    }

    #[test]
    fn no_upper_half_plane_zeros_for_stable_params() {
        // winding of D̃ along a rectangle in C₊ is zero
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        let corners = [
            Complex64::new(-8.0, 0.05),
            Complex64::new(8.0, 0.05),
            Complex64::new(8.0, 6.0),
            Complex64::new(-8.0, 6.0),
        ];
        let mut winding = 0.0;
        let mut prev_arg = dtilde(corners[0], &p).arg();
        for leg in 0..4 {
            let a = corners[leg];
            let b = corners[(leg + 1) % 4];
            let steps = 4000;
            for s in 1..=steps {
                let w = a + (b - a) * (s as f64 / steps as f64);
                let arg = dtilde(w, &p).arg();
                let mut d = arg - prev_arg;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                winding += d;
                prev_arg = arg;
            }
        }
        assert!(winding.abs() < 1e-6, "winding = {winding}");
    }
}
