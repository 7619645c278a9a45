//! Exact homological algebra over `k[t_1, ..., t_r]`: Koszul complexes,
//! chain maps, minimal free models, the `lambda` filtration on homology and
//! the lifting constructions built on top of it.

pub mod chainmap;
pub mod complex;
pub mod error;
pub mod filtration;
pub mod lift;
pub mod minimal;
pub mod ring;

pub use error::{Error, Result};
