//! Exact, solver-backed verification that every red/blue colouring of the
//! plane without two red points at unit distance contains five blue collinear
//! points at unit spacing.

pub mod cli;
pub mod configuration;
pub mod error;
pub mod field;
pub mod geometry;
pub mod lemmata;
pub mod solver;
pub mod tilings;

pub use error::{Error, Result};
