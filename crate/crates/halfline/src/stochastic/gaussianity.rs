//! Weak-convergence diagnostics: second moments against the predicted
//! limit form, the empirical characteristic function against the Gaussian
//! profile, and excess kurtosis.

use super::ensemble::{CharMoments, ScalarMoments};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GaussianityError {
    #[error("insufficient samples: {m} < 100")]
    InsufficientSamples { m: u64 },
}

/// One comparison line: estimate vs theory with the estimate's standard
/// error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Comparison {
    pub estimate: f64,
    pub theory: f64,
    pub se: f64,
    pub sigmas: f64,
    pub pass_3se: bool,
}

impl Comparison {
    pub fn new(estimate: f64, theory: f64, se: f64) -> Self {
        let sigmas = if se > 0.0 { (estimate - theory).abs() / se } else { f64::INFINITY };
        Self { estimate, theory, se, sigmas, pass_3se: sigmas <= 3.0 }
    }
}

/// Report of the weak-convergence checks for one test function.
#[derive(Debug, Clone, Serialize)]
pub struct WeakConvergenceReport {
    /// `Ê⟨Y,Ψ⟩²` against `Q_∞(Ψ,Ψ)`.
    pub second_moment: Comparison,
    /// `Re Ê e^{iλ⟨Y,Ψ⟩}` against `exp(−λ²Q_∞/2)` per λ.
    pub char_fn: Vec<(f64, Comparison)>,
    /// Excess kurtosis against 0.
    pub kurtosis: Comparison,
    pub all_pass: bool,
}

/// Builds the report from final-time pairing moments.
pub fn test_weak_convergence(
    pairing: &ScalarMoments,
    char_fn: &[(f64, CharMoments)],
    q_inf: f64,
) -> Result<WeakConvergenceReport, GaussianityError> {
    if pairing.count < 100 {
        return Err(GaussianityError::InsufficientSamples { m: pairing.count });
    }
    let second_moment = Comparison::new(pairing.second_moment(), q_inf, pairing.se_second_moment());
    let mut char_rows = Vec::with_capacity(char_fn.len());
    for &(lambda, ref cm) in char_fn {
        let (est, se) = cm.real_part();
        let theory = (-lambda * lambda * q_inf / 2.0).exp();
        char_rows.push((lambda, Comparison::new(est, theory, se)));
    }
    let (kurt, kurt_se) = pairing.excess_kurtosis();
    let kurtosis = Comparison::new(kurt, 0.0, kurt_se);
    let all_pass = second_moment.pass_3se
        && kurtosis.pass_3se
        && char_rows.iter().all(|(_, c)| c.pass_3se);
    Ok(WeakConvergenceReport { second_moment, char_fn: char_rows, kurtosis, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_on_synthetic_gaussian() {
        // feed exact N(0, v) samples; every comparison must pass
        let v = 1.7;
        let mut pairing = ScalarMoments::default();
        let mut chars = vec![(0.5, CharMoments::default()), (1.0, CharMoments::default())];
        let mut state = 42u64;
        let mut normal = move || {
            // Box–Muller on a splitmix stream
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            let a = ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64;
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut w = state;
            w = (w ^ (w >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            w = (w ^ (w >> 27)).wrapping_mul(0x94D049BB133111EB);
            let b = ((w ^ (w >> 31)) >> 11) as f64 / (1u64 << 53) as f64;
            (-2.0 * a.max(1e-300).ln()).sqrt() * (2.0 * std::f64::consts::PI * b).cos()
        };
        for _ in 0..50_000 {
            let z = v.sqrt() * normal();
            pairing.push(z);
            for (lambda, cm) in chars.iter_mut() {
                cm.push(*lambda * z);
            }
        }
        let report = test_weak_convergence(&pairing, &chars, v).unwrap();
        assert!(report.second_moment.pass_3se, "{:?}", report.second_moment);
        assert!(report.kurtosis.pass_3se, "{:?}", report.kurtosis);
        for (_, c) in &report.char_fn {
            assert!(c.pass_3se, "{c:?}");
        }
        assert!(report.all_pass);
    }

    #[test]
    fn wrong_theory_fails() {
        let mut pairing = ScalarMoments::default();
        for i in 0..10_000 {
            pairing.push(if i % 2 == 0 { 1.0 } else { -1.0 });
        }
        let report = test_weak_convergence(&pairing, &[], 5.0).unwrap();
        assert!(!report.second_moment.pass_3se);
        assert!(!report.all_pass);
    }

    #[test]
    fn small_samples_rejected() {
        let mut pairing = ScalarMoments::default();
        for _ in 0..10 {
            pairing.push(0.5);
        }
        assert!(matches!(
            test_weak_convergence(&pairing, &[], 1.0),
            Err(GaussianityError::InsufficientSamples { m: 10 })
        ));
    }
}
