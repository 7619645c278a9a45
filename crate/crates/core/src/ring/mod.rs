//! Coefficient fields, the graded polynomial ring `R = k[t_1, ..., t_r]`,
//! sparse polynomial matrices and their ranks.

mod extfield;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod random;
pub mod rank;
pub mod scalar;
pub mod sparse;

pub use linalg::{EchelonBasis, Mat};
pub use matrix::{zero_element, Element, PolyMatrix};
pub use parse::{format_combination, parse_combination, parse_polynomial};
pub use poly::{Monomial, Polynomial, RingSpec, WeightedDegree, MAX_VARS};
pub use rank::{bareiss_rank, rank_exact, rank_probabilistic};
pub use scalar::{is_prime, FieldSpec, Scalar};
pub use sparse::{ColumnSolver, SparseVec};
