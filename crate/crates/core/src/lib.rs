//! Calibrated representations of the extended two-boundary affine Hecke
//! algebra of type C, computed in exact Gaussian-rational arithmetic.
//!
//! Modules, bottom up: [`scalar`] (coefficients), [`weyl`] (signed
//! permutations), [`regions`] (local regions, box configurations and
//! fillings), [`hecke`] (module construction and relation checks) and
//! [`schurweyl`] (rectangle tensor products, Bratteli diagrams, paths).

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fixtures;
pub mod hecke;
pub mod par;
pub mod regions;
pub mod scalar;
pub mod schurweyl;
pub mod weyl;

pub use error::{Error, Result};
pub use regions::{BoxConfiguration, ContentVector, LocalRegion, StandardFilling};
pub use scalar::{ApproxScalar, Field, Scalar};
pub use weyl::{Root, SignedPermutation, WeightVector};
