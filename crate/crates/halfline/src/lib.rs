//! Numerical laboratory for an infinite one-dimensional chain of harmonic
//! oscillators on the half-line with a damped, linearly forced boundary site.
//!
//! The crate is organized around five subsystems:
//!
//! * [`model`] — parameters, chain states, weighted norms, the energy
//!   functional, and the lattice dispersion relation.
//! * [`spectral`] — the complex-analytic toolkit: the dispersion branch
//!   `θ(ω)`, the boundary kernel `K(x,t)`, the boundary symbol `D̃(ω)`, the
//!   resolvent `N(t)` and its derivatives, and the resonance classifier.
//! * [`dynamics`] — deterministic time evolution: full dynamics, zero
//!   boundary-condition dynamics by odd extension, the boundary Volterra
//!   solver, and interior reconstruction from the boundary trace.
//! * [`stochastic`] — random initial data from finite-range moving averages,
//!   ensemble execution, and statistical estimators.
//! * [`equilibrium`] — closed-form and quadrature evaluation of the limit
//!   covariance, quadratic forms, asymptotic vectors, and the stationary
//!   boundary energy current.
//!
//! Heavy loops (ensembles, table construction) run data-parallel through
//! rayon when the `parallel` feature is enabled (the default); a sequential
//! fallback is always available through [`exec::ExecPolicy`].

pub mod dynamics;
pub mod equilibrium;
pub mod exec;
pub mod export;
pub mod model;
pub mod numerics;
pub mod spectral;
pub mod stochastic;

pub use model::{ChainState, ModelParams, TestFunction};
pub use spectral::stability::{classify_stability, StabilityReport};
