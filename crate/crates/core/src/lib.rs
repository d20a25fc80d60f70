//! Exact construction and verification of the Lax operator and R-matrices of
//! the quantum superalgebra U_q[osp(m|n)].

pub mod error;
pub mod qring;
pub mod superroot;
pub mod gradedmat;
pub mod laxengine;
pub mod verifier;
pub mod spectral;
pub mod shell;

pub use error::{Error, Result};
