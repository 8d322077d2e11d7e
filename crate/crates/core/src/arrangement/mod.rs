//! Normal crossing configurations: the weight spectral sequence of the
//! complement, mixed Hodge numbers, Euler characteristics and the dual complex.

pub mod dual;
pub mod euler;
pub mod hodge;
pub mod model;
pub mod weight;

pub use dual::build_dual_complex;
pub use euler::{euler_characteristic, euler_l2};
pub use hodge::{check_mhs_table, mixed_hodge_numbers, mixed_hodge_numbers_from_e1, MHSTable};
pub use model::{Arrangement, ArrangementBuilder, Component, Parent, Subset};
pub use weight::{
    assemble_weight_e1, gr0_restriction_image, weight_graded_dims, BasisLabel, E1Cell, GysinData, GysinKey,
    WeightE1, WeightGraded,
};
