//! Shared numerical machinery: quadrature, curve fits, and rank statistics.

pub mod fit;
pub mod quad;
pub mod trend;
