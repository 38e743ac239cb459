//! Gamma-function kernels, Wallis-type infinite products with rigorous tail
//! brackets, variational hydrogen-atom spectra in N dimensions, and the
//! correspondence-limit machinery connecting them.
//!
//! The crate is `no_std` (plus `alloc`); all transcendentals come from
//! [`libm`]. Every evaluator that truncates an infinite process reports a
//! defensible error bound alongside its value, so callers can assert
//! accuracy instead of trusting it.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod brouncker;
pub mod correspondence;
pub mod error;
pub mod gamma;
pub mod identities;
mod kahan;
pub mod products;
pub mod quadrature;
pub mod variational;

pub use error::{Error, Result};
pub use products::{Evaluation, Method};
