//! Dual-route resolvent oracle: the contour evaluation of `N(t)` against
//! the time-domain Volterra solution of the boundary equation, across the
//! stability classes.

use halfline::dynamics::volterra::VolterraProblem;
use halfline::model::ModelParams;
use halfline::spectral::resolvent::resolvent_n;

fn dual_route_max_gap(params: ModelParams, t_end: f64) -> f64 {
    let dt = 0.0025;
    let steps = (t_end / dt).round() as usize;
    let prob = VolterraProblem::new(params, dt, steps).unwrap();
    let time_domain = prob.resolvent();

    // compare on a coarser probe grid (contour evaluations are costlier)
    let mut worst: f64 = 0.0;
    let probe_stride = 80; // every 0.2 time units
    for k in (0..=steps).step_by(probe_stride) {
        let t = time_domain.time(k);
        let spectral = resolvent_n(t, &params, 0).unwrap().value;
        worst = worst.max((spectral - time_domain.q[k]).abs());
    }
    worst
}

#[test]
fn stable_damped() {
    let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn stable_undamped() {
    let p = ModelParams::new(1.0, 0.0, 1.0).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn band_edge_resonance() {
    let p = ModelParams::new(1.0, 0.0, 0.0).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn exterior_pole_resonance() {
    let p = ModelParams::new(0.0, 0.0, 3.0).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn zero_frequency_resonance() {
    let p = ModelParams::new(0.0, 1.0, 0.0).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn interior_band_resonance() {
    let p = ModelParams::new(0.0, 0.5, 1.5).unwrap();
    let gap = dual_route_max_gap(p, 50.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn stiff_damped_quarter_pole() {
    // κ large: the damped pole pair sits beyond the band edge, exercising
    // the ray-rotation residue bookkeeping
    let p = ModelParams::new(0.0, 0.5, 5.0).unwrap();
    let gap = dual_route_max_gap(p, 30.0);
    assert!(gap <= 1e-4, "max gap {gap:.2e}");
}

#[test]
fn derivative_routes_agree() {
    // q̇ from the Volterra system against the contour N′(t)
    let p = ModelParams::new(1.0, 0.5, 1.0).unwrap();
    let dt = 0.0025;
    let steps = 8000; // t ≤ 20
    let prob = VolterraProblem::new(p, dt, steps).unwrap();
    let trace = prob.resolvent();
    let mut worst: f64 = 0.0;
    for k in (0..=steps).step_by(200) {
        let t = trace.time(k);
        let spectral = resolvent_n(t, &p, 1).unwrap().value;
        worst = worst.max((spectral - trace.p[k]).abs());
    }
    assert!(worst <= 2e-4, "max gap {worst:.2e}");
}
