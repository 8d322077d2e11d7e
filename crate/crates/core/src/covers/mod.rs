//! Finite Galois covers: monodromy on strata and twisted cochain complexes.

pub mod local;
pub mod spec;

pub use local::{equivariant_cohomology, EquivariantDim, LocalSystemComplex, TwistedEntry};
pub use spec::{
    extend_action, induce_arrangement, induce_gysin, stratum_vn_dims, CoverSpec, LiftedComponent, StratumLift,
};
