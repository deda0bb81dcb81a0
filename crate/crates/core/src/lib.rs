//! Exact Yang-Baxter representations and characters of the infinite symmetric
//! group and of wreath products `T ≀ S∞` over cyclotomic fields.

pub mod cli;
pub mod construct;
pub mod corpus;
pub mod couple;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod hirai;
pub mod io;
pub mod matrix;
pub mod perm;
pub mod report;
pub mod rmatrix;
pub mod rng;
pub mod wreath;

pub use cyclo::{CycloScalar, Rational};
pub use error::{Error, Result};
