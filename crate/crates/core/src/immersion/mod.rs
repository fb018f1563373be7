//! Holomorphic symplectic immersions between flat subtori, the linear
//! Calabi-Yau certificate and monotonicity of the Wirtinger number along
//! chains.

mod certificate;
mod chain;
mod generator;

pub use certificate::{
    is_symplectic_immersion, linear_calabi_yau, symplectic_strength, HkCertificate, ImmersionEdge,
    SYMPLECTIC_TOL,
};
pub use chain::{
    verify_chain, CertificateStatus, ChainElement, ChainLink, ChainReport, LinkStatus, Verdict,
    CHAIN_TOL,
};
pub use generator::{generate_chain_suite, ChainKind, GeneratedChain};
