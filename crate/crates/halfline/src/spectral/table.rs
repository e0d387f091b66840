//! Tabulated spectral data with grid metadata, exportable as CSV.

use serde::Serialize;

/// One tabulated quantity on a strictly increasing grid.
///
/// CSV layout: `grid,re,im,err` per row.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralTable {
    /// What the grid variable is (`"t"`, `"omega"`, `"theta"`, `"x"`).
    pub grid_name: String,
    /// What the tabulated quantity is (`"N"`, `"K(1,.)"`, `"Dtilde"`, ...).
    pub quantity: String,
    pub grid: Vec<f64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub err: Vec<f64>,
}

impl SpectralTable {
    pub fn new_real(grid_name: &str, quantity: &str, grid: Vec<f64>, values: Vec<f64>, err: Vec<f64>) -> Self {
        let n = values.len();
        assert_eq!(grid.len(), n);
        let err = if err.is_empty() { vec![0.0; n] } else { err };
        assert_eq!(err.len(), n);
        assert!(grid.windows(2).all(|w| w[0] < w[1]), "grid must be strictly increasing");
        assert!(values.iter().all(|v| v.is_finite()), "table values must be finite");
        Self {
            grid_name: grid_name.to_string(),
            quantity: quantity.to_string(),
            grid,
            re: values,
            im: vec![0.0; n],
            err,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{},re,im,err\n", self.grid_name));
        for i in 0..self.grid.len() {
            out.push_str(&format!("{:e},{:e},{:e},{:e}\n", self.grid[i], self.re[i], self.im[i], self.err[i]));
        }
        out
    }
}
