//! Integrals of motion of the non-central Kepler–Coulomb system and exact
//! verification of the quadratic algebra they generate.

pub mod error;
pub mod observables;
pub mod verify;

pub use error::AlgebraError;
pub use observables::{
    build_classical, build_quantum, casimir_classical, casimir_classical_reduced, casimir_quantum,
    casimir_quantum_reduced, CasimirForm, ClassicalSet, Ctx, ModelParams, QuantumSet, RungeLenzForm,
};
pub use verify::*;
