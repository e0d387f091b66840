//! Classical fixed-step 4th-order Runge–Kutta integration of the chain.
//!
//! Site accelerations:
//! * interior `1 ≤ x < L`: `ü = u(x+1) − 2u(x) + u(x−1) − m²u(x)`
//! * boundary `x = 0`:     `ü = −κu(0) − m²u(0) − γv(0) + u(1) − u(0)`
//! * free end `x = L`:     `ü = u(L−1) − u(L) − m²u(L)`
//!
//! The free-end force is the gradient of the truncated energy, so the
//! energy identity holds exactly for the truncated system and the
//! truncation error is confined behind the light cone.

use super::{BoundaryTrace, DynamicsError, IntegratorConfig};
use crate::model::{ChainState, ModelParams};

/// A recorded trajectory: snapshots every `stride` steps plus dense
/// boundary samples for the energy identity and decomposition checks.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub dt: f64,
    pub stride: usize,
    /// Snapshot times `t_j = j·stride·dt`.
    pub times: Vec<f64>,
    pub frames: Vec<ChainState>,
    /// `(u(0, t_k), v(0, t_k))` every step.
    pub boundary: BoundaryTrace,
}

impl Trajectory {
    pub fn last(&self) -> &ChainState {
        self.frames.last().expect("trajectory has at least the initial frame")
    }
}

fn accelerations(u: &[f64], v: &[f64], params: &ModelParams, out: &mut [f64]) {
    let l = u.len() - 1;
    let m2 = params.m * params.m;
    out[0] = -(params.kappa + m2) * u[0] - params.gamma * v[0] + u[1] - u[0];
    for x in 1..l {
        out[x] = u[x + 1] - 2.0 * u[x] + u[x - 1] - m2 * u[x];
    }
    out[l] = u[l - 1] - u[l] - m2 * u[l];
}

struct Rk4Buffers {
    ka: [Vec<f64>; 4],
    kv: [Vec<f64>; 4],
    tu: Vec<f64>,
    tv: Vec<f64>,
}

impl Rk4Buffers {
    fn new(n: usize) -> Self {
        Self {
            ka: std::array::from_fn(|_| vec![0.0; n]),
            kv: std::array::from_fn(|_| vec![0.0; n]),
            tu: vec![0.0; n],
            tv: vec![0.0; n],
        }
    }
}

fn rk4_step(u: &mut [f64], v: &mut [f64], params: &ModelParams, dt: f64, buf: &mut Rk4Buffers) {
    let n = u.len();
    // stage 1
    buf.kv[0].copy_from_slice(v);
    accelerations(u, v, params, &mut buf.ka[0]);
    // stage 2
    for i in 0..n {
        buf.tu[i] = u[i] + 0.5 * dt * buf.kv[0][i];
        buf.tv[i] = v[i] + 0.5 * dt * buf.ka[0][i];
    }
    buf.kv[1].copy_from_slice(&buf.tv);
    accelerations(&buf.tu, &buf.tv, params, &mut buf.ka[1]);
    // stage 3
    for i in 0..n {
        buf.tu[i] = u[i] + 0.5 * dt * buf.kv[1][i];
        buf.tv[i] = v[i] + 0.5 * dt * buf.ka[1][i];
    }
    buf.kv[2].copy_from_slice(&buf.tv);
    accelerations(&buf.tu, &buf.tv, params, &mut buf.ka[2]);
    // stage 4
    for i in 0..n {
        buf.tu[i] = u[i] + dt * buf.kv[2][i];
        buf.tv[i] = v[i] + dt * buf.ka[2][i];
    }
    buf.kv[3].copy_from_slice(&buf.tv);
    accelerations(&buf.tu, &buf.tv, params, &mut buf.ka[3]);

    let w = dt / 6.0;
    for i in 0..n {
        u[i] += w * (buf.kv[0][i] + 2.0 * buf.kv[1][i] + 2.0 * buf.kv[2][i] + buf.kv[3][i]);
        v[i] += w * (buf.ka[0][i] + 2.0 * buf.ka[1][i] + 2.0 * buf.ka[2][i] + buf.ka[3][i]);
    }
}

/// Reusable stepping context for streaming evolution (ensembles) without
/// trajectory storage.
pub struct Stepper {
    params: ModelParams,
    dt: f64,
    buf: Rk4Buffers,
}

impl Stepper {
    pub fn new(params: ModelParams, dt: f64, sites: usize) -> Self {
        Self { params, dt, buf: Rk4Buffers::new(sites) }
    }

    pub fn step(&mut self, u: &mut [f64], v: &mut [f64]) {
        rk4_step(u, v, &self.params, self.dt, &mut self.buf);
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }
}

/// Integrates the full boundary-damped dynamics and records the trajectory.
///
/// NaN/∞ in the state aborts with the last valid time.
pub fn evolve_full(
    state: &ChainState,
    params: &ModelParams,
    cfg: &IntegratorConfig,
) -> Result<Trajectory, DynamicsError> {
    let mut u = state.u.clone();
    let mut v = state.v.clone();
    let steps = cfg.steps();
    let mut buf = Rk4Buffers::new(u.len());

    let mut traj = Trajectory {
        dt: cfg.dt,
        stride: cfg.stride,
        times: vec![state.t],
        frames: vec![state.clone()],
        boundary: BoundaryTrace { dt: cfg.dt, q: vec![u[0]], p: vec![v[0]] },
    };

    for step in 1..=steps {
        rk4_step(&mut u, &mut v, params, cfg.dt, &mut buf);
        let t = state.t + cfg.dt * step as f64;
        if !u[0].is_finite() || !v[0].is_finite() {
            return Err(DynamicsError::Blowup { t, last_valid: t - cfg.dt });
        }
        traj.boundary.q.push(u[0]);
        traj.boundary.p.push(v[0]);
        if step % cfg.stride == 0 || step == steps {
            traj.times.push(t);
            traj.frames.push(ChainState { u: u.clone(), v: v.clone(), t });
        }
    }
    Ok(traj)
}

/// Evolve without recording intermediate frames; returns the final state.
pub fn evolve_to(
    state: &ChainState,
    params: &ModelParams,
    dt: f64,
    t_max: f64,
) -> ChainState {
    let mut u = state.u.clone();
    let mut v = state.v.clone();
    let steps = (t_max / dt).round() as usize;
    let mut buf = Rk4Buffers::new(u.len());
    for _ in 0..steps {
        rk4_step(&mut u, &mut v, params, dt, &mut buf);
    }
    ChainState { u, v, t: state.t + dt * steps as f64 }
}

/// Maximum over recorded snapshots of
/// `|H(Y(t)) + γ ∫₀ᵗ v(0,s)² ds − H(Y₀)|` with a trapezoidal dissipation
/// integral on the dense boundary grid.
pub fn energy_balance_residual(traj: &Trajectory, params: &ModelParams) -> f64 {
    let h0 = traj.frames[0].hamiltonian(params);
    let p = &traj.boundary.p;
    let dt = traj.boundary.dt;

    // running trapezoid of v(0,s)²
    let mut dissipated = vec![0.0; p.len()];
    for k in 1..p.len() {
        dissipated[k] = dissipated[k - 1] + 0.5 * dt * (p[k - 1] * p[k - 1] + p[k] * p[k]);
    }

    let mut worst: f64 = 0.0;
    for (j, frame) in traj.frames.iter().enumerate() {
        let step = ((traj.times[j] - traj.times[0]) / dt).round() as usize;
        let h = frame.hamiltonian(params);
        let residual = (h + params.gamma * dissipated[step.min(dissipated.len() - 1)] - h0).abs();
        worst = worst.max(residual);
    }
    worst
}
