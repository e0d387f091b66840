//! Ensemble execution with mergeable moment accumulators.
//!
//! Replicas evolve independently from per-replica seeded streams; moments
//! merge associatively over fixed index-chunked partitions, so results are
//! bitwise identical under any thread count.

use super::measure::{replica_rng, sample_initial, InitialMeasureSpec};
use crate::dynamics::integrator::Stepper;
use crate::dynamics::zerobc::ZeroBcPropagator;
use crate::dynamics::{DynamicsError, IntegratorConfig};
use crate::exec::{chunked_fold, ExecPolicy};
use crate::model::{ChainState, ModelParams, TestFunction};
use serde::Serialize;

/// Running power sums of one scalar observable.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ScalarMoments {
    pub count: u64,
    pub sum: f64,
    pub sum2: f64,
    pub sum3: f64,
    pub sum4: f64,
}

impl ScalarMoments {
    pub fn push(&mut self, z: f64) {
        self.count += 1;
        self.sum += z;
        let z2 = z * z;
        self.sum2 += z2;
        self.sum3 += z2 * z;
        self.sum4 += z2 * z2;
    }

    pub fn merge(&mut self, other: &Self) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum2 += other.sum2;
        self.sum3 += other.sum3;
        self.sum4 += other.sum4;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Raw second moment `E[z²]`.
    pub fn second_moment(&self) -> f64 {
        self.sum2 / self.count as f64
    }

    /// Unbiased variance.
    pub fn variance(&self) -> f64 {
        let n = self.count as f64;
        (self.sum2 - self.sum * self.sum / n) / (n - 1.0)
    }

    /// Standard error of the mean.
    pub fn se_mean(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    /// Standard error of the raw second-moment estimate:
    /// `sd(z²)/√n = √((E z⁴ − (E z²)²)/n)`.
    pub fn se_second_moment(&self) -> f64 {
        let n = self.count as f64;
        let m2 = self.second_moment();
        let m4 = self.sum4 / n;
        ((m4 - m2 * m2).max(0.0) / n).sqrt()
    }

    /// Excess kurtosis `m₄/m₂² − 3` with its Gaussian-approximation
    /// standard error `√(24/n)`.
    pub fn excess_kurtosis(&self) -> (f64, f64) {
        let n = self.count as f64;
        let mean = self.mean();
        // central moments from power sums
        let m2 = self.sum2 / n - mean * mean;
        let m3 = self.sum3 / n - 3.0 * mean * self.sum2 / n + 2.0 * mean.powi(3);
        let m4 = self.sum4 / n - 4.0 * mean * self.sum3 / n + 6.0 * mean * mean * self.sum2 / n
            - 3.0 * mean.powi(4);
        let _ = m3;
        ((m4 / (m2 * m2)) - 3.0, (24.0 / n).sqrt())
    }
}

/// Running sums for the empirical characteristic function at one `λ`.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CharMoments {
    pub count: u64,
    pub sum_cos: f64,
    pub sum_sin: f64,
    pub sum_cos2: f64,
    pub sum_sin2: f64,
}

impl CharMoments {
    pub fn push(&mut self, lambda_z: f64) {
        self.count += 1;
        let (s, c) = lambda_z.sin_cos();
        self.sum_cos += c;
        self.sum_sin += s;
        self.sum_cos2 += c * c;
        self.sum_sin2 += s * s;
    }

    pub fn merge(&mut self, other: &Self) {
        self.count += other.count;
        self.sum_cos += other.sum_cos;
        self.sum_sin += other.sum_sin;
        self.sum_cos2 += other.sum_cos2;
        self.sum_sin2 += other.sum_sin2;
    }

    /// `Re Ê e^{iλZ}` and its standard error.
    pub fn real_part(&self) -> (f64, f64) {
        let n = self.count as f64;
        let mean = self.sum_cos / n;
        let var = (self.sum_cos2 / n - mean * mean).max(0.0);
        (mean, (var / n).sqrt())
    }
}

/// Second-moment sums over a site window at the final recorded time.
#[derive(Debug, Clone, Serialize)]
pub struct CovWindow {
    pub window: usize,
    pub count: u64,
    /// `(w+1)²` row-major sums of `u(x)u(x′)`, `u(x)v(x′)`, `v(x)v(x′)`.
    pub suu: Vec<f64>,
    pub suv: Vec<f64>,
    pub svv: Vec<f64>,
    /// Power sums of the diagonal products for per-entry standard errors.
    pub suu2: Vec<f64>,
    pub svv2: Vec<f64>,
}

impl CovWindow {
    fn new(window: usize) -> Self {
        let n = (window + 1) * (window + 1);
        Self {
            window,
            count: 0,
            suu: vec![0.0; n],
            suv: vec![0.0; n],
            svv: vec![0.0; n],
            suu2: vec![0.0; n],
            svv2: vec![0.0; n],
        }
    }

    fn push(&mut self, state: &ChainState) {
        self.count += 1;
        let w = self.window;
        for x in 0..=w {
            for xp in 0..=w {
                let idx = x * (w + 1) + xp;
                let uu = state.u[x] * state.u[xp];
                let uv = state.u[x] * state.v[xp];
                let vv = state.v[x] * state.v[xp];
                self.suu[idx] += uu;
                self.suv[idx] += uv;
                self.svv[idx] += vv;
                self.suu2[idx] += uu * uu;
                self.svv2[idx] += vv * vv;
            }
        }
    }

    fn merge(&mut self, other: &Self) {
        self.count += other.count;
        for (a, b) in self.suu.iter_mut().zip(&other.suu) {
            *a += b;
        }
        for (a, b) in self.suv.iter_mut().zip(&other.suv) {
            *a += b;
        }
        for (a, b) in self.svv.iter_mut().zip(&other.svv) {
            *a += b;
        }
        for (a, b) in self.suu2.iter_mut().zip(&other.suu2) {
            *a += b;
        }
        for (a, b) in self.svv2.iter_mut().zip(&other.svv2) {
            *a += b;
        }
    }

    /// `Ê[Y^i(x) Y^j(x′)]` as a 2×2 matrix.
    pub fn second_moment(&self, x: usize, xp: usize) -> [[f64; 2]; 2] {
        let idx = x * (self.window + 1) + xp;
        let idx_t = xp * (self.window + 1) + x;
        let n = self.count as f64;
        [
            [self.suu[idx] / n, self.suv[idx] / n],
            [self.suv[idx_t] / n, self.svv[idx] / n],
        ]
    }

    /// Standard error of the `(i,i)` second-moment entry.
    pub fn se_diag(&self, i: usize, x: usize, xp: usize) -> f64 {
        let idx = x * (self.window + 1) + xp;
        let n = self.count as f64;
        let (s, s2) = if i == 0 {
            (self.suu[idx], self.suu2[idx])
        } else {
            (self.svv[idx], self.svv2[idx])
        };
        let mean = s / n;
        ((s2 / n - mean * mean).max(0.0) / n).sqrt()
    }
}

/// What to record during an ensemble run.
#[derive(Debug, Clone)]
pub struct ObservablePlan {
    /// Sites whose `u`, `v` moments are tracked at every recorded time.
    pub sites: Vec<usize>,
    /// Test functions whose pairings `⟨Y(t), Ψ⟩` are tracked.
    pub test_functions: Vec<TestFunction>,
    /// λ values for the empirical characteristic function of each pairing
    /// at the final time.
    pub lambdas: Vec<f64>,
    /// Weight exponent of the phase-space norm series `E‖Y(t)‖²_{α,+}`.
    pub norm_alpha: f64,
    /// Site window of the final-time covariance sums (`None` to skip).
    pub cov_window: Option<usize>,
}

impl ObservablePlan {
    pub fn max_site(&self) -> usize {
        let site_max = self.sites.iter().copied().max().unwrap_or(0);
        let psi_max = self.test_functions.iter().map(|f| f.max_site()).max().unwrap_or(0);
        let cov_max = self.cov_window.unwrap_or(0);
        site_max.max(psi_max).max(cov_max)
    }
}

/// Accumulated ensemble statistics.
#[derive(Debug, Clone, Serialize)]
pub struct EnsembleStats {
    pub m: u64,
    pub times: Vec<f64>,
    /// `[site][time]`
    pub site_u: Vec<Vec<ScalarMoments>>,
    pub site_v: Vec<Vec<ScalarMoments>>,
    /// `[psi][time]`
    pub pairings: Vec<Vec<ScalarMoments>>,
    /// `[psi][lambda]` at the final time
    pub char_fn: Vec<Vec<CharMoments>>,
    /// `‖Y(t)‖²_{α,+}` moments per time
    pub norm_sq: Vec<ScalarMoments>,
    pub cov_final: Option<CovWindow>,
}

impl EnsembleStats {
    fn new(times: &[f64], plan: &ObservablePlan) -> Self {
        let nt = times.len();
        Self {
            m: 0,
            times: times.to_vec(),
            site_u: vec![vec![ScalarMoments::default(); nt]; plan.sites.len()],
            site_v: vec![vec![ScalarMoments::default(); nt]; plan.sites.len()],
            pairings: vec![vec![ScalarMoments::default(); nt]; plan.test_functions.len()],
            char_fn: vec![
                vec![CharMoments::default(); plan.lambdas.len()];
                plan.test_functions.len()
            ],
            norm_sq: vec![ScalarMoments::default(); nt],
            cov_final: plan.cov_window.map(CovWindow::new),
        }
    }

    fn record(&mut self, plan: &ObservablePlan, time_idx: usize, state: &ChainState) {
        self.m += (time_idx == 0) as u64;
        for (s, &site) in plan.sites.iter().enumerate() {
            self.site_u[s][time_idx].push(state.u[site]);
            self.site_v[s][time_idx].push(state.v[site]);
        }
        for (p, psi) in plan.test_functions.iter().enumerate() {
            let z = state.pair(psi);
            self.pairings[p][time_idx].push(z);
            if time_idx + 1 == self.times.len() {
                for (li, &lambda) in plan.lambdas.iter().enumerate() {
                    self.char_fn[p][li].push(lambda * z);
                }
            }
        }
        let norm = state.weighted_norm(plan.norm_alpha);
        self.norm_sq[time_idx].push(norm * norm);
        if time_idx + 1 == self.times.len() {
            if let Some(cov) = self.cov_final.as_mut() {
                cov.push(state);
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.m += other.m;
        for (a, b) in self.site_u.iter_mut().zip(&other.site_u) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
        for (a, b) in self.site_v.iter_mut().zip(&other.site_v) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
        for (a, b) in self.pairings.iter_mut().zip(&other.pairings) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
        for (a, b) in self.char_fn.iter_mut().zip(&other.char_fn) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
        for (a, b) in self.norm_sq.iter_mut().zip(&other.norm_sq) {
            a.merge(b);
        }
        if let (Some(a), Some(b)) = (self.cov_final.as_mut(), other.cov_final.as_ref()) {
            a.merge(b);
        }
        self
    }
}

/// Runs `m` independent replicas of the full boundary-damped dynamics.
///
/// Recording times are `0, stride·dt, 2·stride·dt, …, t_max`.
pub fn run_ensemble(
    spec: &InitialMeasureSpec,
    params: &ModelParams,
    cfg: &IntegratorConfig,
    l: usize,
    m: u64,
    master_seed: u64,
    plan: &ObservablePlan,
    policy: ExecPolicy,
) -> Result<EnsembleStats, DynamicsError> {
    cfg.check_budget(l, plan.max_site())?;
    let steps = cfg.steps();
    let times: Vec<f64> = (0..=steps)
        .filter(|k| k % cfg.stride == 0 || *k == steps)
        .map(|k| cfg.dt * k as f64)
        .collect();

    let stats = chunked_fold(
        policy,
        m as usize,
        || EnsembleStats::new(&times, plan),
        |acc, replica| {
            let mut rng = replica_rng(master_seed, replica as u64);
            let state = sample_initial(spec, l, &mut rng);
            let mut u = state.u;
            let mut v = state.v;
            let mut stepper = Stepper::new(*params, cfg.dt, u.len());
            let mut time_idx = 0;
            let snapshot = ChainState { u: u.clone(), v: v.clone(), t: 0.0 };
            acc.record(plan, time_idx, &snapshot);
            for k in 1..=steps {
                stepper.step(&mut u, &mut v);
                if k % cfg.stride == 0 || k == steps {
                    time_idx += 1;
                    let snapshot =
                        ChainState { u: u.clone(), v: v.clone(), t: cfg.dt * k as f64 };
                    acc.record(plan, time_idx, &snapshot);
                }
            }
        },
        EnsembleStats::merge,
    );
    Ok(stats)
}

/// Runs `m` independent replicas of the zero boundary-condition dynamics
/// (exact in time) recorded at the given times.
pub fn run_ensemble_zero_bc(
    spec: &InitialMeasureSpec,
    model_m: f64,
    l: usize,
    times: &[f64],
    m: u64,
    master_seed: u64,
    plan: &ObservablePlan,
    policy: ExecPolicy,
) -> EnsembleStats {
    let props: Vec<ZeroBcPropagator> = times
        .iter()
        .map(|&t| ZeroBcPropagator::new(l, model_m, t))
        .collect();

    chunked_fold(
        policy,
        m as usize,
        || EnsembleStats::new(times, plan),
        |acc, replica| {
            let mut rng = replica_rng(master_seed, replica as u64);
            let state = sample_initial(spec, l, &mut rng);
            for (ti, prop) in props.iter().enumerate() {
                let evolved = prop.propagate(&state).expect("sampler pins the boundary to zero");
                acc.record(plan, ti, &evolved);
            }
        },
        EnsembleStats::merge,
    )
}
