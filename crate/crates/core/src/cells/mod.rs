//! Jones quotients, cell data, cell modules and their bilinear forms.

mod classify;
mod datum;
mod gram;
mod jones;
mod matrix;
mod module;

pub use classify::{classify_simples, Classification, SimpleFamily};
pub use datum::{verify_cellularity, CellDatum, CellularityReport, ConditionReport, DatumStratum};
pub use gram::{gram_matrix, GramMatrix};
pub use jones::{jones_basis, strata, BasisStratum, EvenBase, JonesQuotient, Window};
pub use matrix::Matrix;
pub use module::CellModule;
