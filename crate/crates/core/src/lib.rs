//! The ten-parameter extended Lorentz group in its 4×4 Dirac-matrix realization.
//!
//! Group elements are written M = W(ω)L(u)R(θ): a Dirac boost generated by
//! Γ^μ = γ^μ/2, a Lorentz boost generated by K and a rotation generated by J.
//! The crate provides closed-form exponentials and composition rules, W·L·R
//! factorization of arbitrary products, the O+ and Θ matrices, structure
//! constants and gauge-field utilities, each with a brute-force counterpart
//! used for verification.

pub mod algebra;
pub mod error;
pub mod extended;
pub mod factorize;
pub mod gauge;
pub mod lorentz;
pub mod sample;
pub mod structure;
mod special;

pub use algebra::{GeneratorIndex, Matrix4C, Tolerances, C64};
pub use error::{Error, Result};
pub use extended::{DiracParams, ExtendedParams};
pub use lorentz::{BoostParams, FourVector, LorentzParams, RotationParams};
