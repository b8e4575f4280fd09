//! Exact-arithmetic toolkit for Alexander-type invariants and cohomology
//! jumping loci of finitely presented groups, toric complexes, and line
//! arrangements.

pub mod error;
pub mod fp;
pub mod intmat;
pub mod word;
pub mod laurent;
pub mod exactla;
pub mod presentations;

pub use error::{Error, Result};
pub mod alexinv;
pub mod jumploci;
pub mod toric;
pub mod tcone;
pub mod resonance;
pub mod arrangements;
