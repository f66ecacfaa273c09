//! Explicit relations among multiple zeta values coming from the three
//! associator equations (2-cycle, hexagon, pentagon).
//!
//! The crate is `no_std` and only needs `alloc`. Everything symbolic is exact
//! (arbitrary precision rationals); the numeric multiple zeta value oracle in
//! [`mzv`] works on big-integer fixed point numbers so it stays independent of
//! the platform float type.
//!
//! Layout:
//!
//! * [`word`], [`coeff`], [`series`]: words, the commutative coefficient ring and
//!   truncated non-commutative series with shuffle products.
//! * [`braid`]: normal forms in the enveloping algebra of the 5-strand sphere
//!   braid Lie algebra, in the basis `B4` of monomials `U·V` with
//!   `U ∈ {X24,X34,X45}*`, `V ∈ {X12,X23}*`.
//! * [`relations`]: the coefficient families `C2,W`, `C3,W`, `C5,W` and the
//!   emitted relations.
//! * [`mzv`]: shuffle regularization and the numeric oracle.
//! * [`bar`]: the bar construction on `M0,5` (forms, integrability, dual basis,
//!   iterated integrals along the pentagon loop, multiplicative generators).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bar;
pub mod braid;
pub mod coeff;
pub mod error;
pub mod linalg;
pub mod mzv;
pub mod relations;
pub mod series;
pub mod word;

pub use coeff::{CoeffExpr, Monomial, Rational, Symbol};
pub use error::{Error, Result};
pub use series::NCSeries;
pub use word::{Alphabet, Composition, Letter, Word};
