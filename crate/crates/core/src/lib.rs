pub mod closed_form;
pub mod constants;
pub mod decimal;
pub mod error;
pub mod harmonic;
pub mod precision;
pub mod quadrature;
pub mod real;
pub mod report;
pub mod series; pub mod suite;

pub use error::{Error, Result};
pub use precision::{make_context, BoundedValue, PrecisionContext, Rigor};
pub use real::Real;
