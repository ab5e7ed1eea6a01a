//! Hypergeometric Bernoulli numbers and polynomials over exact rationals,
//! together with a certification suite for their sums-of-products
//! identities, differential equations and recurrences.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod hb;
pub mod identities;

pub use error::{Error, Result};
