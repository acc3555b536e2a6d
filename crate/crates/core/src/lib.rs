//! Casimir-Lifshitz free energy, pressure and entropy between plates of
//! low-carrier-density media (intrinsic semiconductors, dielectrics), with
//! Debye screening and carrier drift in the reflection amplitudes.
//!
//! Units are Gaussian CGS throughout the library; the [`cli`] module converts
//! practical units at its boundary.

pub mod cli;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod nonlocal;
pub mod phys;
pub mod quad;
pub mod reflection;
pub mod thermo;

pub use error::{Error, Result};
