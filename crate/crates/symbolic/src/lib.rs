//! Exact symbolic algebra on the phase space of an `N`-dimensional particle.
//!
//! Expressions live in the ring of polynomials in `x₁..x_N`, `p₁..p_N` and
//! `r = |x|`, localized at `r`, `r + x_N` and `r − x_N`, with coefficients that
//! are polynomials in the parameters `i, ħ, c0, c1, c2`. Every [`Expr`] is kept
//! in a canonical form, so equality is structural. Quantum observables are
//! [`DiffOp`]s whose coefficients are position-only expressions.

pub mod bracket;
pub mod cancel;
pub mod diffop;
pub mod error;
pub mod exec;
pub mod expr;
pub mod fit;
pub mod frac;
pub mod monomial;
pub mod param;
pub mod poly;
pub mod rational;
pub mod raw;

pub use bracket::{poisson_bracket, Convention};
pub use cancel::CancelToken;
pub use diffop::{anticommutator, commutator, compose, DiffOp};
pub use error::SymError;
pub use exec::Exec;
pub use expr::{CanonicalExpr, EvalPoint, ExactPoint, Expr, ExprAcc};
pub use fit::{fit_linear_combination, FitOptions, FitOutcome, Linear};
pub use frac::Frac;
pub use monomial::{MultiIndex, Var, MAX_DIM};
pub use param::{PMono, Param, ParamCoeff, ParamValues};
pub use poly::Poly;
pub use rational::Q;
pub use raw::{normalize, RawExpr};
