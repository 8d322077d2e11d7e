//! Cochain complexes, filtered complexes and their spectral sequences.

pub mod bifiltered;
pub mod complex;
pub mod double;
pub mod filtered;

pub use bifiltered::{induced_filtrations, InducedCell, InducedReport};
pub use complex::{cohomology, cohomology_dims, CochainComplex, Cohomology, CohomologyDim};
pub use double::{froelicher, DoubleComplex, FroelicherReport};
pub use filtered::{
    abutment_check, check_page_recursion, degeneration_page, spectral_sequence, FilteredComplex, PageEntry, SSPage,
};
