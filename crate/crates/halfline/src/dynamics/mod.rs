//! Deterministic time evolution: full dynamics of the damped-boundary
//! chain, zero boundary-condition dynamics by odd extension, the boundary
//! Volterra solver, and interior reconstruction from the boundary trace.

pub mod integrator;
pub mod reconstruct;
pub mod volterra;
pub mod zerobc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("step size {dt} outside (0, {max}]")]
    StepSize { dt: f64, max: f64 },
    #[error("horizon t_max = {t_max} exceeds the light-cone budget {budget} (L = {l}, x_obs = {x_obs})")]
    LightCone { t_max: f64, budget: f64, l: usize, x_obs: usize },
    #[error("non-finite state at t = {t}; last valid time {last_valid}")]
    Blowup { t: f64, last_valid: f64 },
    #[error("zero boundary condition required: state has u(0) = {u0}, v(0) = {v0}")]
    NonzeroBoundary { u0: f64, v0: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

/// Fixed-step integration plan (classical 4th-order Runge–Kutta).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Record every `stride`-th step (boundary samples are always kept
    /// every step).
    pub stride: usize,
}

impl IntegratorConfig {
    pub const MAX_DT: f64 = 0.05;

    pub fn new(dt: f64, t_max: f64, stride: usize) -> Result<Self, DynamicsError> {
        if !(dt > 0.0 && dt <= Self::MAX_DT) {
            return Err(DynamicsError::StepSize { dt, max: Self::MAX_DT });
        }
        Ok(Self { dt, t_max, stride: stride.max(1) })
    }

    pub fn steps(&self) -> usize {
        (self.t_max / self.dt).round() as usize
    }

    /// Enforce the light-cone rule for observables at sites `≤ x_obs`.
    pub fn check_budget(&self, l: usize, x_obs: usize) -> Result<(), DynamicsError> {
        let budget = crate::model::light_cone_budget(l, x_obs);
        if self.t_max > budget {
            return Err(DynamicsError::LightCone { t_max: self.t_max, budget, l, x_obs });
        }
        Ok(())
    }
}

/// Boundary samples `q(0, t_k)`, `q̇(0, t_k)` on the uniform step grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    pub dt: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl BoundaryTrace {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.dt * k as f64
    }
}
