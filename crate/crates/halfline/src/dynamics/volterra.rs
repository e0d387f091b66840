//! Second-order product-trapezoidal solver for the boundary Volterra
//! equation
//!
//! ```text
//! q̈(0,t) = −(κ+1+m²) q(0,t) − γ q̇(0,t) + ∫₀ᵗ K(1,t−s) q(0,s) ds + h(t)
//! ```
//!
//! With `h ≡ 0`, `q₀ = 0`, `p₀ = 1` the solution is the resolvent `N(t)` —
//! the time-domain oracle for the contour route.
//!
//! The kernel `K(1,·)` is smooth and bounded with `K(1,0) = 0`, so the
//! memory term at the new time level involves only known history and the
//! implicit trapezoidal step reduces to a 2×2 linear solve.

use super::{BoundaryTrace, DynamicsError};
use crate::model::ModelParams;
use crate::spectral::kernel::kernel_table;

/// Hard cap on the Volterra step (memory-quadrature stability heuristic).
pub const MAX_VOLTERRA_DT: f64 = 0.01;

/// The boundary problem with its kernel tabulated on the step grid.
#[derive(Debug, Clone)]
pub struct VolterraProblem {
    pub params: ModelParams,
    pub dt: f64,
    /// `K(1, k·dt)` for `k = 0..=steps`.
    pub kernel: Vec<f64>,
}

impl VolterraProblem {
    /// Tabulates `K(1,·)` for `steps` steps of size `dt`.
    pub fn new(params: ModelParams, dt: f64, steps: usize) -> Result<Self, DynamicsError> {
        if !(dt > 0.0 && dt <= MAX_VOLTERRA_DT) {
            return Err(DynamicsError::StepSize { dt, max: MAX_VOLTERRA_DT });
        }
        let kernel = kernel_table(1, 0.0, dt, steps, params.m)
            .expect("kernel quadrature converges on the step grid");
        Ok(Self { params, dt, kernel })
    }

    /// Number of steps the tabulated kernel supports.
    pub fn steps(&self) -> usize {
        self.kernel.len() - 1
    }

    /// Runs the homogeneous or forced problem from `(q₀, p₀)`.
    ///
    /// `h` samples the forcing on the step grid (`None` ⇒ `h ≡ 0`).
    pub fn solve(&self, q0: f64, p0: f64, h: Option<&[f64]>) -> BoundaryTrace {
        let steps = self.steps();
        if let Some(h) = h {
            assert!(h.len() > steps, "forcing must cover the whole grid");
        }
        let dt = self.dt;
        let a = self.params.kappa + 1.0 + self.params.m * self.params.m;
        let gamma = self.params.gamma;
        let hval = |k: usize| h.map_or(0.0, |h| h[k]);

        let mut q = Vec::with_capacity(steps + 1);
        let mut p = Vec::with_capacity(steps + 1);
        q.push(q0);
        p.push(p0);

        // trapezoidal memory term at level n: dt·(½K_n q_0 + Σ_{0<j<n} K_{n−j} q_j)
        // (the j = n endpoint drops since K(1,0) = 0)
        let memory = |n: usize, q: &[f64]| -> f64 {
            let mut m = 0.5 * self.kernel[n] * q[0];
            for j in 1..n {
                m += self.kernel[n - j] * q[j];
            }
            m * dt
        };

        // 2×2 implicit-trapezoid matrix [[1, −dt/2], [a·dt/2, 1 + γ·dt/2]]
        let det = 1.0 + 0.5 * dt * gamma + 0.25 * dt * dt * a;

        let mut mem_n = 0.0; // memory term at the current level
        for n in 0..steps {
            let f_n = -a * q[n] - gamma * p[n] + mem_n + hval(n);
            let mem_next = memory(n + 1, &q);
            let rhs_a = q[n] + 0.5 * dt * p[n];
            let rhs_b = p[n] + 0.5 * dt * (f_n + mem_next + hval(n + 1));
            let q_next = ((1.0 + 0.5 * dt * gamma) * rhs_a + 0.5 * dt * rhs_b) / det;
            let p_next = (rhs_b - 0.5 * dt * a * rhs_a) / det;
            q.push(q_next);
            p.push(p_next);
            mem_n = mem_next;
        }

        BoundaryTrace { dt, q, p }
    }

    /// The resolvent by the time-domain route: `h ≡ 0`, `q₀ = 0`, `p₀ = 1`.
    pub fn resolvent(&self) -> BoundaryTrace {
        self.solve(0.0, 1.0, None)
    }
}
