//! Brute-force oracles, model inputs, seeded generators, file formats and
//! reports.

pub mod commands;
pub mod compare;
pub mod corpus;
pub mod format;
pub mod generate;
pub mod report;
pub mod simplicial;

pub use compare::{compare, degree_table, ComparisonReport, ComparisonRow};
pub use format::{ArrangementFile, ArrangementInput, InputFile, OracleModel};
pub use report::Report;
pub use simplicial::{complement_cohomology, complement_complex, gauge_transform, SimplicialComplex, SubcomplexSpec};
