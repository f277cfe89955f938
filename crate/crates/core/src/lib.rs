//! Exact decision procedures for differential relations among solutions of
//! linear difference and q-difference equations over Q(x).

#![allow(clippy::needless_range_loop)]

pub mod criteria;
pub mod dispersion;
pub mod error;
pub mod num;
pub mod solver;
pub mod structure;
#[cfg(feature = "testing")]
pub mod testing;

pub use error::{Error, Result};
pub use num::{Poly, Rat, RatFun};
pub use structure::{ConstLinDiffOp, DiffStructure};
