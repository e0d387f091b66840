//! Interior reconstruction from the boundary trace and the `z + q`
//! decomposition of the full solution.
//!
//! For `x ≥ 1` both components of the boundary-driven part are
//! convolutions with the same scalar kernel:
//! `(q(x,t), q̇(x,t)) = ∫₀ᵗ K(x, t−s) (q(0,s), q̇(0,s)) ds`.

use super::integrator::Trajectory;
use super::{BoundaryTrace, DynamicsError};
use crate::model::ChainState;
use crate::spectral::kernel::kernel_table;

/// Discrete trapezoidal convolution of the trace with `K(x,·)`; returns
/// `(q(x,·), q̇(x,·))` on the trace grid.
pub fn reconstruct_interior(
    trace: &BoundaryTrace,
    x: usize,
    m: f64,
) -> Result<(Vec<f64>, Vec<f64>), DynamicsError> {
    assert!(x >= 1);
    let n = trace.len() - 1;
    let kernel = kernel_table(x, 0.0, trace.dt, n, m)
        .map_err(|e| DynamicsError::GridMismatch(format!("kernel tabulation failed: {e}")))?;

    let conv = |f: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        for (k, o) in out.iter_mut().enumerate() {
            // trapezoid; the s = t endpoint drops since K(x, 0) = 0
            let mut acc = 0.5 * kernel[k] * f[0];
            for j in 1..k {
                acc += kernel[k - j] * f[j];
            }
            *o = acc * trace.dt;
        }
        out
    };
    Ok((conv(&trace.q), conv(&trace.p)))
}

/// Pointwise difference of a full trajectory and the matching zero-BC
/// evolution, i.e. the boundary-driven component `q = u − z`.
///
/// `zero_frames` must sample the same times as `full.frames`. Asserts the
/// initial condition split: `q(x, 0) = 0` for `x ≥ 1`.
pub fn decompose(full: &Trajectory, zero_frames: &[ChainState]) -> Result<Vec<ChainState>, DynamicsError> {
    if zero_frames.len() != full.frames.len() {
        return Err(DynamicsError::GridMismatch(format!(
            "{} zero-BC frames vs {} full frames",
            zero_frames.len(),
            full.frames.len()
        )));
    }
    let mut out = Vec::with_capacity(full.frames.len());
    for (f, z) in full.frames.iter().zip(zero_frames) {
        if (f.t - z.t).abs() > 1e-9 {
            return Err(DynamicsError::GridMismatch(format!("t = {} vs {}", f.t, z.t)));
        }
        let l = f.last_site();
        let mut q = ChainState::zeros(l);
        q.t = f.t;
        for x in 0..=l {
            q.u[x] = f.u[x] - z.u[x];
            q.v[x] = f.v[x] - z.v[x];
        }
        out.push(q);
    }
    // (2.7): the boundary-driven part starts from rest away from the origin
    let q0 = &out[0];
    for x in 1..=q0.last_site() {
        assert!(
            q0.u[x].abs() < 1e-12 && q0.v[x].abs() < 1e-12,
            "q(x, 0) ≠ 0 at x = {x}"
        );
    }
    Ok(out)
}

/// The zero-BC initial state matching the decomposition convention:
/// the data restricted to `x ≥ 1`, zero at the origin.
pub fn zero_bc_initial(full_initial: &ChainState) -> ChainState {
    let mut z = full_initial.clone();
    z.u[0] = 0.0;
    z.v[0] = 0.0;
    z
}
