//! Flat hyperkähler structures: quaternionic spaces, induced complex
//! structures, Kähler and holomorphic symplectic forms, structure rotation
//! and recovery of `(J, K)` from `(g, Ω, I)`.
//!
//! Basis convention: each quaternionic coordinate contributes the real
//! basis `(1, i, j, k)`, and `I, J, K` act by left multiplication by
//! `i, j, k`, so that `I∘J = K`.

mod forms;
mod space;

pub use forms::{ComplexTwoForm, FormLabel, TwoForm};
pub use space::{
    check_quaternionic, recover_structure, InducedStructure, QuaternionicSpace, Recovery,
    Structure, StructureViolation, CONSTRUCTED_TOL, RECOVERED_TOL, UNIT_TOL,
};
