//! Symbolic computation in the free globularly generated double category of a
//! finite decorated bicategory.

pub mod adjunction;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod freegg;
pub mod functor;
pub mod presentation;
pub mod projection;
pub mod quotient;
pub mod report;
pub mod syntax;

pub use error::{Error, Result};
pub use freegg::{Boundary, CellExpr, Verdict};
pub use presentation::Presentation;
pub use quotient::QuotientSpec;
pub use report::ValidationReport;
