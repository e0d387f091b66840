//! The limit quadratic form `Q′_∞(Ψ, Ψ)` by two algebraically independent
//! routes:
//!
//! * Fourier route: `(1/2π) ∫ Σ_{ij} q̂_∞^{ij}(θ) σ_i(θ) σ_j(θ) dθ` with
//!   `σ_i(θ) = 2 Σ_{x≥1} Ψ^i(x) sin(xθ)` the transform of the odd
//!   extension (`Ψ(0)` drops out).
//! * Site route: the double sum `Σ Q_∞^{ij}(x,x′) Ψ^i(x) Ψ^j(x′)` with the
//!   covariance entries from the combined-integrand quadrature.
//!
//! For `m = 0` both routes only ever evaluate combined integrands carrying
//! `sin(xθ)` factors, so the infrared singularity of `q̂_∞^{00}` is
//! integrable throughout.

use super::spectral_density::{limit_covariance_qinf, QInfHat};
use crate::model::TestFunction;

/// Transform of the odd extension: `σ(θ) = 2 Σ_{x≥1} c(x) sin(xθ)`.
pub fn odd_sine_transform(coeffs: &[f64], theta: f64) -> f64 {
    let mut s = 0.0;
    for (x, &c) in coeffs.iter().enumerate().skip(1) {
        s += c * (x as f64 * theta).sin();
    }
    2.0 * s
}

/// Fourier-space evaluation of `Q′_∞(Ψ, Ψ)`.
pub fn quadratic_form_qprime(psi: &TestFunction, qinf: &QInfHat) -> f64 {
    let n = qinf.grid.len() as f64;
    let mut total = 0.0;
    for (k, &theta) in qinf.grid.points.iter().enumerate() {
        let sigma = [
            odd_sine_transform(&psi.psi0, theta),
            odd_sine_transform(&psi.psi1, theta),
        ];
        let mut val = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                val += (qinf.plus[i][j][k].re + qinf.minus[i][j][k].re) * sigma[i] * sigma[j];
            }
        }
        total += val;
    }
    total / n
}

/// Site-space evaluation of `Q′_∞(Ψ, Ψ)` through the covariance window.
pub fn quadratic_form_qprime_site(psi: &TestFunction, qinf: &QInfHat) -> f64 {
    let extent = psi.psi0.len().max(psi.psi1.len());
    let coeff = |i: usize, x: usize| -> f64 {
        let v = if i == 0 { &psi.psi0 } else { &psi.psi1 };
        v.get(x).copied().unwrap_or(0.0)
    };
    let mut total = 0.0;
    for x in 1..extent {
        for xp in 1..extent {
            let q = limit_covariance_qinf(qinf, x, xp);
            for i in 0..2 {
                for j in 0..2 {
                    total += q[i][j] * coeff(i, x) * coeff(j, xp);
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::spectral_density::{q_inf_spectral, Q0Hat, ThetaGrid};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn generic_qinf(m: f64) -> QInfHat {
        let q0 = Q0Hat::from_fns(ThetaGrid::new(12), |i, j, t| match (i, j) {
            (0, 0) => Complex64::new(0.9 + 0.4 * t.cos(), 0.0),
            (1, 1) => Complex64::new(1.1 + 0.3 * (2.0 * t).cos(), 0.0),
            (0, 1) => Complex64::new(0.1 * t.cos(), 0.2 * t.sin()),
            _ => Complex64::new(0.1 * t.cos(), -0.2 * t.sin()),
        })
        .unwrap();
        q_inf_spectral(&q0, m).unwrap()
    }

    fn pseudo_random_psi(seed: u64, len: usize) -> TestFunction {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        TestFunction::new((0..len).map(|_| next()).collect(), (0..len).map(|_| next()).collect())
    }

    #[test]
    fn zero_function_zero_form() {
        let qi = generic_qinf(1.0);
        let psi = TestFunction::new(vec![], vec![]);
        assert_eq!(quadratic_form_qprime(&psi, &qi), 0.0);
    }

    #[test]
    fn route_equivalence_random_functions() {
        for m in [0.0, 1.0] {
            let qi = generic_qinf(m);
            for seed in 0..20u64 {
                let psi = pseudo_random_psi(seed + 1, 6);
                let fourier = quadratic_form_qprime(&psi, &qi);
                let site = quadratic_form_qprime_site(&psi, &qi);
                assert_abs_diff_eq!(fourier, site, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn nonnegative_on_random_functions() {
        for m in [0.0, 0.7] {
            let qi = generic_qinf(m);
            for seed in 0..100u64 {
                let psi = pseudo_random_psi(seed * 7 + 3, 8);
                let q = quadratic_form_qprime(&psi, &qi);
                assert!(q >= -1e-10, "Q′ = {q} at seed {seed}");
            }
        }
    }

    #[test]
    fn origin_coefficient_is_ignored() {
        let qi = generic_qinf(0.5);
        let mut a = pseudo_random_psi(11, 5);
        let mut b = a.clone();
        a.psi0[0] = 3.0;
        b.psi0[0] = -2.0;
        a.psi1[0] = 1.0;
        b.psi1[0] = 0.0;
        assert_abs_diff_eq!(
            quadratic_form_qprime(&a, &qi),
            quadratic_form_qprime(&b, &qi),
            epsilon = 1e-14
        );
    }

    #[test]
    fn scaling_is_quadratic() {
        let qi = generic_qinf(1.0);
        let psi = pseudo_random_psi(5, 6);
        let q1 = quadratic_form_qprime(&psi, &qi);
        let q2 = quadratic_form_qprime(&psi.scale(3.0), &qi);
        assert_abs_diff_eq!(q2, 9.0 * q1, epsilon = 1e-10 * q1.abs().max(1.0));
    }
}
