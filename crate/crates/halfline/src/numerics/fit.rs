//! Decay-law fits and spectral peak extraction for tabulated time series.

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Log-log slope of the oscillation envelope of `|f(t)|`.
///
/// The window `[t_lo, t_hi]` is split into geometrically spaced bins; the
/// envelope value of a bin is `max |f|` over `samples_per_bin` samples, and
/// the slope comes from a linear fit of `log env` against `log t` at the
/// bin centers (geometric mean).
pub fn envelope_loglog_slope<F: Fn(f64) -> f64>(
    f: F,
    t_lo: f64,
    t_hi: f64,
    bins: usize,
    samples_per_bin: usize,
) -> f64 {
    assert!(t_lo > 0.0 && t_hi > t_lo && bins >= 3);
    let ratio = (t_hi / t_lo).powf(1.0 / bins as f64);
    let mut xs = Vec::with_capacity(bins);
    let mut ys = Vec::with_capacity(bins);
    let mut a = t_lo;
    for _ in 0..bins {
        let b = a * ratio;
        let mut env: f64 = 0.0;
        for i in 0..samples_per_bin {
            let t = a + (b - a) * (i as f64 + 0.5) / samples_per_bin as f64;
            env = env.max(f(t).abs());
        }
        if env > 0.0 {
            xs.push((a * b).sqrt().ln());
            ys.push(env.ln());
        }
        a = b;
    }
    linear_fit(&xs, &ys).0
}

/// Dominant angular frequency of a uniformly sampled series by an FFT-free
/// periodogram scan with parabolic peak refinement.
///
/// Scans `ω ∈ [omega_lo, omega_hi]` on a grid fine enough to resolve the
/// series length, then interpolates the periodogram maximum quadratically.
pub fn dominant_frequency(samples: &[f64], dt: f64, omega_lo: f64, omega_hi: f64) -> f64 {
    assert!(samples.len() > 8);
    let t_total = dt * samples.len() as f64;
    // Rayleigh resolution 2π/T, oversampled 8×.
    let step = (2.0 * std::f64::consts::PI / t_total / 8.0).max(1e-6);
    let n = ((omega_hi - omega_lo) / step).ceil() as usize + 1;

    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let power = |omega: f64| -> f64 {
        let mut c = 0.0;
        let mut s = 0.0;
        for (i, &v) in samples.iter().enumerate() {
            let ph = omega * dt * i as f64;
            let x = v - mean;
            c += x * ph.cos();
            s += x * ph.sin();
        }
        c * c + s * s
    };

    let mut best_i = 0;
    let mut best_p = f64::MIN;
    let mut ps = vec![0.0; n];
    for (i, p) in ps.iter_mut().enumerate() {
        let omega = omega_lo + step * i as f64;
        *p = power(omega);
        if *p > best_p {
            best_p = *p;
            best_i = i;
        }
    }
    // parabolic refinement on the log-power
    if best_i == 0 || best_i == n - 1 {
        return omega_lo + step * best_i as f64;
    }
    let (pm, p0, pp) = (ps[best_i - 1].ln(), ps[best_i].ln(), ps[best_i + 1].ln());
    let denom = pm - 2.0 * p0 + pp;
    let delta = if denom.abs() > 1e-300 { 0.5 * (pm - pp) / denom } else { 0.0 };
    omega_lo + step * (best_i as f64 + delta.clamp(-0.5, 0.5))
}
