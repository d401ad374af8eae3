//! Exact and numerical tools for eigenschemes of partially symmetric tensors.

pub mod algorithms;
pub mod error;
pub mod geometry;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod point;
pub mod poly;
pub mod sample;
pub mod solver;
mod system;
pub mod tensor;

pub use error::{Error, Result};
