//! Exact rational polynomial algebra for the Abel equation's center
//! conditions and the polynomial moment problem.
//!
//! Everything algebraic here is computed over arbitrary-precision
//! rationals, so equalities asserted by the higher layers (moment
//! vanishing, composition certificates, coefficient eliminations) are
//! exact, not numerical. The only floating-point code lives in the
//! cross-check oracles: the fixed-step integrator in [`abel`] and the
//! angle-grid searches in [`verify`].
//!
//! Module map:
//!
//! - [`rat`] — the rational scalar type and its strict text grammar
//! - [`poly`] — dense univariate polynomials, linear maps, endpoints
//! - [`cheb`] — Chebyshev polynomials and basis conversion
//! - [`decompose`] — functional decomposition and shape detectors
//! - [`moment`] — moment functionals, witnesses, the solution classifier
//! - [`abel`] — the truncated return map of the Abel equation
//! - [`algebraic`] — small-degree factorization and algebraic-integer tests
//! - [`verify`] — executable checks of the coefficient and endpoint lemmas

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abel;
pub mod algebraic;
pub mod cheb;
pub mod decompose;
pub mod moment;
pub mod poly;
pub mod rat;
pub mod verify;

pub use poly::{Endpoints, LinearMap, Poly};
pub use rat::Rat;
