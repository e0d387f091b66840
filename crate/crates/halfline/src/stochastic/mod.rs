//! Random initial data satisfying the mixing hypotheses by construction,
//! ensemble execution, and statistical estimators.

pub mod ensemble;
pub mod gaussianity;
pub mod measure;

pub use ensemble::{run_ensemble, run_ensemble_zero_bc, EnsembleStats, ObservablePlan};
pub use gaussianity::{test_weak_convergence, WeakConvergenceReport};
pub use measure::{replica_rng, sample_initial, BoundaryMode, InitialMeasureSpec, Innovation};
