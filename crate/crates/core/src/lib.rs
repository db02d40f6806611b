//! Exact quantum Schubert calculus for partial flag varieties and their Plücker mirrors.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod mirror;
pub mod permutations;
pub mod qring;
pub mod symfunc;
pub mod theorems;

pub use error::{Error, Result};
