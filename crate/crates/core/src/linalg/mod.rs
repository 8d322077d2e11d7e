//! Exact linear algebra over the rationals.

pub mod echelon;
pub mod matrix;
pub mod rat;
pub mod subspace;

pub use echelon::{kernel_basis, rank, rank_with, EliminationConfig, DEFAULT_DENSITY_THRESHOLD};
pub use matrix::RatMatrix;
pub use rat::{format_rat, parse_rat, rat, ratio, Rat};
pub use subspace::{Subquotient, Subspace};
