//! Exact computations with cluster categories of type A, twin cotorsion pairs,
//! their hearts, and localisations of those hearts at regular morphisms.
//!
//! Everything runs over exact scalars ([`scalar::Field::Rational`] or a prime
//! field). The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod cluster;
pub mod error;
pub mod localise;
pub mod matrix;
pub mod preab;
pub mod scalar;
pub mod torsion;

pub use error::{Error, Result};
