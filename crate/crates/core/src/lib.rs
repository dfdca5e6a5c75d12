//! Closed-form spectra, explicit eigenfunctions and independent numerical
//! eigensolvers for the N-dimensional non-central Kepler-Coulomb system.

pub mod audit;
pub mod compare;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod params;
pub mod quad;
pub mod special;
pub mod spectrum;
pub mod wavefunctions;

pub use compare::{compare_spectrum, CompareOptions, SpectrumLine, BADGE_TOL};
pub use error::{CoreError, Result};
pub use exec::Exec;
pub use params::Params;
pub use spectrum::*;
