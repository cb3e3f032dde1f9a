//! Discreteness certificates, arithmetic invariants and simple-axis tests for
//! two-generator Kleinian groups generated by an elliptic of order 3..=7 and an
//! elliptic of order two.

pub mod certify;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod numeric;
pub mod numfield;
pub mod params;
pub mod polyalg;
pub mod quatalg;
pub mod volume;

pub use error::{Error, Result};
