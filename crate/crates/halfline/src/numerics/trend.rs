//! Mann–Kendall trend test for monotone drift in a time series.

/// Result of a Mann–Kendall test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendTest {
    /// Normalized test statistic (≈ standard normal under no trend).
    pub z: f64,
    /// Raw S statistic, Σ_{i<j} sign(x_j − x_i).
    pub s: i64,
    /// True when the null (no trend) is rejected at the 5% two-sided level.
    pub reject_5pct: bool,
    /// True when the rejected trend is increasing.
    pub increasing: bool,
}

/// Two-sided Mann–Kendall test at the 5% level.
pub fn mann_kendall(xs: &[f64]) -> TrendTest {
    let n = xs.len();
    assert!(n >= 4, "trend test needs at least 4 points");
    let mut s: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += match xs[j].partial_cmp(&xs[i]).unwrap() {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }
    let nf = n as f64;
    let var = nf * (nf - 1.0) * (2.0 * nf + 5.0) / 18.0;
    let z = if s > 0 {
        (s as f64 - 1.0) / var.sqrt()
    } else if s < 0 {
        (s as f64 + 1.0) / var.sqrt()
    } else {
        0.0
    };
    TrendTest {
        z,
        s,
        reject_5pct: z.abs() > 1.959_963_985,
        increasing: s > 0,
    }
}
