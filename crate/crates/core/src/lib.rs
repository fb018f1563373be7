//! Degrees of flat complex subtori in hyperkähler tori.
//!
//! The core is generic over the scalar type (`f32` or `f64`); the aliases
//! below fix it to one of the two.

// `!(r <= tol)` is used on purpose so that NaN residuals fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exterior;
pub mod hk;
pub mod immersion;
pub mod matrix;
pub mod properties;
pub mod scalar;
pub mod scene;
pub mod subvariety;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type MatrixF64 = matrix::Matrix<f64>;
pub type MatrixF32 = matrix::Matrix<f32>;
pub type SkewMatrixF64 = exterior::SkewMatrix<f64>;
pub type SkewMatrixF32 = exterior::SkewMatrix<f32>;
pub type MultivectorF64 = exterior::Multivector<f64>;
pub type MultivectorF32 = exterior::Multivector<f32>;
pub type QuaternionicSpaceF64 = hk::QuaternionicSpace<f64>;
pub type QuaternionicSpaceF32 = hk::QuaternionicSpace<f32>;
pub type SubvarietyF64 = subvariety::Subvariety<f64>;
pub type SubvarietyF32 = subvariety::Subvariety<f32>;
pub type DegreeReportF64 = subvariety::DegreeReport<f64>;
pub type DegreeReportF32 = subvariety::DegreeReport<f32>;
pub type ChainReportF64 = immersion::ChainReport<f64>;
pub type ChainReportF32 = immersion::ChainReport<f32>;
pub type SceneF64 = scene::Scene<f64>;
pub type SceneF32 = scene::Scene<f32>;
pub type ReportF64 = scene::Report<f64>;
pub type ReportF32 = scene::Report<f32>;
