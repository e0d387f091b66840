//! The stationary boundary observables: the limit variance of the
//! boundary velocity and the energy current `J = −γ · lim E(u̇(0,t))²`.
//!
//! With uncorrelated components (`q̂₀^{01} = q̂₀^{10} = 0`) and
//! `r(θ) = φ²(θ) q̂₀^{00}(θ) + q̂₀^{11}(θ)`,
//!
//! ```text
//! v_limit = (1/2π) ∫_T sin²θ · r(θ) · |Ñ(φ(θ)+i0)|² dθ,   J = −γ v_limit
//! ```
//!
//! using the closed-form boundary value `Ñ = 1/D̃` (no time integration).

use super::spectral_density::Q0Hat;
use crate::model::ModelParams;
use crate::spectral::stability::classify_stability;
use crate::spectral::symbol::dtilde_band;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurrentError {
    #[error("the Remark requires uncorrelated components; max |q̂₀^01| = {defect:.3e}")]
    CrossCorrelated { defect: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `(v_limit, J)`.
pub fn boundary_variance_and_current(
    params: &ModelParams,
    q0: &Q0Hat,
) -> Result<(f64, f64), CurrentError> {
    let report = classify_stability(params);
    if !report.is_stable() {
        return Err(SpectralError::ResonantParams { kind: report.resonance_kind.as_str() }.into());
    }
    let defect = q0.q[0][1]
        .iter()
        .chain(q0.q[1][0].iter())
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    if defect > 1e-12 {
        return Err(CurrentError::CrossCorrelated { defect });
    }

    let n = q0.grid.len() as f64;
    let mut v = 0.0;
    for (k, &theta) in q0.grid.points.iter().enumerate() {
        let phi = params.phi(theta);
        let r = phi * phi * q0.q[0][0][k].re + q0.q[1][1][k].re;
        let ntilde2 = 1.0 / dtilde_band(theta.abs(), params).norm_sqr();
        v += theta.sin().powi(2) * r * ntilde2;
    }
    v /= n;
    Ok((v, -params.gamma * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::spectral_density::{Q0Hat, ThetaGrid};
    use num_complex::Complex64;

    fn white_velocity(sigma2: f64) -> Q0Hat {
        Q0Hat::from_fns(ThetaGrid::new(12), |i, j, _| {
            if i == 1 && j == 1 {
                Complex64::new(sigma2, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .unwrap()
    }

    #[test]
    fn zero_data_zero_current() {
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        let q0 = Q0Hat::from_fns(ThetaGrid::new(10), |_, _, _| Complex64::new(0.0, 0.0)).unwrap();
        let (v, j) = boundary_variance_and_current(&p, &q0).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(j, 0.0);
    }

    #[test]
    fn damped_current_strictly_negative() {
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        let (v, j) = boundary_variance_and_current(&p, &white_velocity(1.0)).unwrap();
        assert!(v > 0.0);
        assert!(j < 0.0);
        assert_eq!(j, -p.gamma * v);
    }

    #[test]
    fn interior_resonance_rejected() {
        let p = ModelParams::new(0.0, 0.5, 1.5).unwrap();
        assert!(boundary_variance_and_current(&p, &white_velocity(1.0)).is_err());
    }

    #[test]
    fn cross_correlation_rejected() {
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        let q0 = Q0Hat::from_fns(ThetaGrid::new(8), |i, j, t| match (i, j) {
            (0, 1) => Complex64::new(0.1 * t.cos(), 0.0),
            (1, 0) => Complex64::new(0.1 * t.cos(), 0.0),
            _ => Complex64::new(1.0, 0.0),
        })
        .unwrap();
        assert!(matches!(
            boundary_variance_and_current(&p, &q0),
            Err(CurrentError::CrossCorrelated { .. })
        ));
    }

    #[test]
    fn time_route_cross_check() {
        // |Ñ(φ(θ))|² against |∫₀^S N(s) e^{iφs} ds|² with a Volterra-
        // tabulated resolvent
        let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
        let dt = 0.01;
        let s_max = 300.0;
        let steps = (s_max / dt) as usize;
        let prob = crate::dynamics::volterra::VolterraProblem::new(p, dt, steps).unwrap();
        let n_tab = prob.resolvent();

        for &theta in &[0.7f64, 1.3, 2.2] {
            let phi = p.phi(theta);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &nk) in n_tab.q.iter().enumerate() {
                let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
                acc += w * nk * Complex64::new(0.0, phi * dt * k as f64).exp();
            }
            acc *= dt;
            let closed = 1.0 / dtilde_band(theta, &p).norm_sqr();
            let diff = (acc.norm_sqr() - closed).abs();
            assert!(diff <= 1e-3, "θ = {theta}: |gap| = {diff:.2e}");
        }
    }
}
