//! Multiport circuit model of multi-user holographic MIMO with dipole
//! mutual coupling.
//!
//! The physics is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the common double-precision case.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod scalar;

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod em;
pub mod link;
pub mod matching;
pub mod noise;
pub mod scenario;
pub mod scattering;
pub mod system;

pub use error::{Error, Result};
pub use scalar::{CMatrix, CVector, Real};

pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;
pub type DipoleParams64 = em::DipoleParams<f64>;
pub type ArrayGeometry64 = em::ArrayGeometry<f64>;
