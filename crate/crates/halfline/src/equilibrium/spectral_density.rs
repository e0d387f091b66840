//! Spectral densities on the torus: the initial covariance transform
//! `q̂₀(θ)` and the limit densities `q̂_∞^±(θ)`.
//!
//! Grids are uniform midpoint grids with `2^k` points, `θ_j = −π + (j+½)h`:
//! the periodic midpoint rule is spectrally accurate for smooth integrands
//! and never places a node at `θ = 0` or `±π` (for `m = 0` the point
//! `θ = 0` must be excluded).

use crate::model::ModelParams;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DensityError {
    #[error("q̂₀ is not Hermitian-consistent: max |q̂₀^01 − conj(q̂₀^10)| = {defect:.3e}")]
    NotHermitian { defect: f64 },
    #[error("grid contains θ = 0, which is excluded for m = 0")]
    MasslessOrigin,
    #[error("grids have different lengths: {a} vs {b}")]
    GridMismatch { a: usize, b: usize },
    #[error("negative diagonal density: q̂^{which}{which}(θ) = {value:.3e}")]
    NegativeDensity { which: usize, value: f64 },
}

/// Uniform midpoint grid on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid {
    pub points: Vec<f64>,
}

impl ThetaGrid {
    /// `2^log2_n` midpoints covering `(−π, π)`.
    pub fn new(log2_n: usize) -> Self {
        let n = 1usize << log2_n;
        let h = 2.0 * std::f64::consts::PI / n as f64;
        let points = (0..n)
            .map(|j| -std::f64::consts::PI + (j as f64 + 0.5) * h)
            .collect();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Quadrature weight of the midpoint rule.
    pub fn weight(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.len() as f64
    }

    /// `(1/2π) Σ w f(θ_j)` — the normalized torus integral.
    pub fn mean<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points.iter().map(|&th| f(th)).sum::<f64>() / self.len() as f64
    }
}

/// The 2×2 matrix of initial spectral densities on a grid, indexed
/// `[i][j] = q̂₀^{ij}`.
#[derive(Debug, Clone)]
pub struct Q0Hat {
    pub grid: ThetaGrid,
    pub q: [[Vec<Complex64>; 2]; 2],
}

impl Q0Hat {
    /// Builds from closed-form entry functions.
    pub fn from_fns(
        grid: ThetaGrid,
        f: impl Fn(usize, usize, f64) -> Complex64,
    ) -> Result<Self, DensityError> {
        let q = [
            [
                grid.points.iter().map(|&t| f(0, 0, t)).collect::<Vec<_>>(),
                grid.points.iter().map(|&t| f(0, 1, t)).collect::<Vec<_>>(),
            ],
            [
                grid.points.iter().map(|&t| f(1, 0, t)).collect::<Vec<_>>(),
                grid.points.iter().map(|&t| f(1, 1, t)).collect::<Vec<_>>(),
            ],
        ];
        let out = Self { grid, q };
        out.validate()?;
        Ok(out)
    }

    /// Hermitian consistency `q̂^{01} = conj(q̂^{10})` and real non-negative
    /// diagonals.
    pub fn validate(&self) -> Result<(), DensityError> {
        let mut defect: f64 = 0.0;
        for k in 0..self.grid.len() {
            defect = defect.max((self.q[0][1][k] - self.q[1][0][k].conj()).norm());
        }
        if defect > 1e-10 {
            return Err(DensityError::NotHermitian { defect });
        }
        for which in 0..2 {
            for v in &self.q[which][which] {
                if v.re < -1e-14 || v.im.abs() > 1e-12 {
                    return Err(DensityError::NegativeDensity { which, value: v.re });
                }
            }
        }
        Ok(())
    }
}

/// The limit spectral densities: `plus` is `q̂_∞^+`, `minus` is `q̂_∞^−`
/// (stored with the `sign θ` factor applied).
#[derive(Debug, Clone)]
pub struct QInfHat {
    pub grid: ThetaGrid,
    pub plus: [[Vec<Complex64>; 2]; 2],
    pub minus: [[Vec<Complex64>; 2]; 2],
}

/// Evaluates the limit densities
///
/// ```text
/// q̂⁺ = ½ [[q̂00 + q̂11/φ²,  q̂01 − q̂10], [−q̂01 + q̂10,  φ²q̂00 + q̂11]]
/// q̂⁻ = ½ sign(θ) [[(q̂10 − q̂01)/φ,  q̂00 φ + q̂11/φ],
///                  [−q̂00 φ − q̂11/φ,  (q̂10 − q̂01) φ]]
/// ```
pub fn q_inf_spectral(q0: &Q0Hat, m: f64) -> Result<QInfHat, DensityError> {
    q0.validate()?;
    if m == 0.0 && q0.grid.points.iter().any(|&t| t == 0.0) {
        return Err(DensityError::MasslessOrigin);
    }
    let n = q0.grid.len();
    let mut plus: [[Vec<Complex64>; 2]; 2] = Default::default();
    let mut minus: [[Vec<Complex64>; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            plus[i][j] = Vec::with_capacity(n);
            minus[i][j] = Vec::with_capacity(n);
        }
    }
    for (k, &theta) in q0.grid.points.iter().enumerate() {
        let phi = crate::model::dispersion_phi(theta, m);
        let (q00, q01, q10, q11) =
            (q0.q[0][0][k], q0.q[0][1][k], q0.q[1][0][k], q0.q[1][1][k]);
        let p2 = phi * phi;
        plus[0][0].push(0.5 * (q00 + q11 / p2));
        plus[0][1].push(0.5 * (q01 - q10));
        plus[1][0].push(0.5 * (-q01 + q10));
        plus[1][1].push(0.5 * (p2 * q00 + q11));
        let s = 0.5 * theta.signum();
        minus[0][0].push(s * (q10 - q01) / phi);
        minus[0][1].push(s * (q00 * phi + q11 / phi));
        minus[1][0].push(s * (-q00 * phi - q11 / phi));
        minus[1][1].push(s * (q10 - q01) * phi);
    }
    Ok(QInfHat { grid: q0.grid.clone(), plus, minus })
}

/// The limit covariance matrix entry
/// `Q_∞(x, x′) = q_∞(x−x′) − q_∞(x+x′) − q_∞(−x−x′) + q_∞(−x+x′)`
/// by the combined integrand: the even part couples to
/// `4 sin(xθ) sin(x′θ)` (integrable at `θ = 0` even for `m = 0`), the odd
/// (`sign θ`) part through the explicit four-term phase sum, which cancels
/// identically by parity.
pub fn limit_covariance_qinf(qinf: &QInfHat, x: usize, xp: usize) -> [[f64; 2]; 2] {
    if x == 0 || xp == 0 {
        return [[0.0; 2]; 2];
    }
    let n = qinf.grid.len() as f64;
    let (xf, xpf) = (x as f64, xp as f64);
    let mut out = [[0.0f64; 2]; 2];
    for (k, &theta) in qinf.grid.points.iter().enumerate() {
        let plus_kernel = 4.0 * (xf * theta).sin() * (xpf * theta).sin();
        // e^{−i(x−x′)θ} − e^{−i(x+x′)θ} − e^{i(x+x′)θ} + e^{i(x−x′)θ} keeps
        // the full phase combination for the odd part
        let minus_kernel = 2.0 * ((xf - xpf) * theta).cos() - 2.0 * ((xf + xpf) * theta).cos();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += (qinf.plus[i][j][k].re * plus_kernel
                    + qinf.minus[i][j][k].re * minus_kernel)
                    / n;
            }
        }
    }
    out
}
