//! Complex-analytic toolkit: the dispersion branch `θ(ω)`, the boundary
//! kernel `K(x,t)`, the boundary symbol `D̃(ω)` and resolvent `N(t)`, and
//! the resonance classifier.

pub mod branch;
pub mod kernel;
pub mod resolvent;
pub mod stability;
pub mod symbol;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("ω = {omega:?} is within 1e-14 of a band edge; evaluate a one-sided limit instead")]
    BandEdge { omega: num_complex::Complex64 },
    #[error("D̃(ω) vanishes at ω = {omega:?} (resonance); Ñ is undefined there")]
    Resonance { omega: num_complex::Complex64 },
    #[error("params are resonant ({kind}); the requested operation needs condition C")]
    ResonantParams { kind: &'static str },
    #[error(transparent)]
    Quadrature(#[from] crate::numerics::quad::QuadError),
}
