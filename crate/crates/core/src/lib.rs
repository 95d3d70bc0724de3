pub mod abelian;
pub mod action;
pub mod arith;
pub mod coeff_ring;
pub mod catalog;
pub mod char_theory;
pub mod error;
pub mod group_build;
pub mod isometry;
pub mod picard_report;
pub mod qci;
pub mod report;

pub use error::{WbError, WbResult};
