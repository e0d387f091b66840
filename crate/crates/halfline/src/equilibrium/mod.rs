//! Limit objects of the long-time statistics: spectral limit densities,
//! the limit covariance, quadratic forms, asymptotic vectors, and the
//! stationary boundary energy current.

pub mod asympt;
pub mod current;
pub mod forms;
pub mod spectral_density;

pub use asympt::{full_quadratic_form, g_vectors, pi_psi, AsymptoticVectors};
pub use current::boundary_variance_and_current;
pub use forms::{quadratic_form_qprime, quadratic_form_qprime_site};
pub use spectral_density::{limit_covariance_qinf, q_inf_spectral, Q0Hat, QInfHat, ThetaGrid};
