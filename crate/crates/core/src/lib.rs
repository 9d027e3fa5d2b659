//! Certifier for Jacobian non-vanishing of trace-polynomial families over
//! transitive permutation groups, and the number-field counting exponents
//! that follow from it.
//!
//! The pipeline is: build a group ([`permgroup`]), form the coset system and
//! the permutations `π_j`, generate trace polynomials `Tr_a` ([`tracefam`]),
//! choose `n` of them ([`boundsearch`]) and certify that their Jacobian
//! determinant is not identically zero ([`jaccert`]).

pub mod boundsearch;
pub mod error;
pub mod fixtures;
pub mod jaccert;
pub mod linalg;
pub mod permgroup;
pub mod pipeline;
pub mod polyring;
pub mod report;
pub mod tracefam;

pub use error::{Error, Result};
