//! Exact verification of multiplier Hopf algebras and their partial
//! coactions and actions over the rationals and prime fields.

pub mod action;
pub mod algebra;
pub mod coaction;
pub mod duality;
pub mod error;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod morita;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod spec;

pub use error::{Error, Result};
