//! Finite relation algebra, quotients and dual (constructive / axiomatic)
//! enumerations, applied to clearing single-good second-price auctions and
//! combinatorial Vickrey auctions with exact rational arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod auction;
pub mod enumerate;
pub mod laws;
pub mod error;
pub mod quotient;
pub mod relation;
pub mod value;

pub use error::{Error, Result};
pub use relation::Relation;
pub use value::{FinSet, RawValue, Rational, Value};
