//! Constant forms on `ℝ^m`: skew matrices, the exterior algebra, wedge
//! powers and Pfaffians.

mod multivector;
mod pfaffian;
mod skew;

pub use multivector::{combinations, form_power, Multivector};
pub use pfaffian::{
    pfaffian, pfaffian_oracle, top_coefficient, top_coefficient_with, PfaffianKernel,
    PFAFFIAN_ORACLE_CUTOFF, WEDGE_ORACLE_CUTOFF,
};
pub use skew::{SkewMatrix, SKEW_REJECTION};
