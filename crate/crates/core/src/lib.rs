//! Exact computations in the Ringel–Hall algebra of the cyclic quiver Δ(n).
//!
//! Nilpotent representations of Δ(n) are encoded by their matrix cores
//! ([`CyclicMatrix`]). On top of this the crate provides
//!
//! - exact Laurent/q-polynomial arithmetic and Gaussian polynomials ([`coeff`]),
//! - the multiplication of a semisimple generator with a basis element, both
//!   untwisted (coefficients in `q`) and twisted (coefficients in `v`) ([`hallmult`]),
//! - generic extensions and distinguished words ([`words`]),
//! - Hall polynomials by the recursive word formula ([`hallpoly`]),
//! - the canonical basis of the positive part of quantum affine gl_n ([`canonical`]),
//! - a brute-force finite-field oracle used to validate everything above ([`oracle`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canonical;
pub mod coeff;
mod error;
pub mod hallmult;
pub mod hallpoly;
pub mod matrix;
pub mod oracle;
pub mod words;

pub use canonical::{canonical_element, canonical_element_ic, CanonicalElement};
pub use coeff::{LaurentPoly, QPoly};
pub use error::{Error, Result};
pub use hallmult::{Basis, HallVector};
pub use matrix::{CyclicMatrix, DimVector, Segment};
pub use words::{Letter, Word};
