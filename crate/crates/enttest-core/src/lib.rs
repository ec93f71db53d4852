//! Entanglement testers: norm-one contractions S₁ → ℓ₂ applied locally to
//! multipartite quantum states, with the projective norm of the output
//! certifying entanglement whenever it exceeds 1.
//!
//! The crate is `no_std` (with `alloc`) and fully deterministic: all
//! randomness flows through explicitly seeded generators, and the linear
//! algebra is self-contained Jacobi-type decompositions suited to the
//! small dense matrices this domain produces.
//!
//! Module map:
//! - [`linalg`]: complex matrices, tensors, reshaping, trace norms;
//! - [`testers`]: tester construction, test/Choi operators, classification;
//! - [`states`]: the state families and seeded randomness;
//! - [`closed_forms`]: analytic values and thresholds for those families;
//! - [`criteria`]: the detection engine and multipartite bounds.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod closed_forms;
pub mod criteria;
mod decomp;
pub mod error;
pub mod linalg;
pub mod states;
pub mod testers;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, MultiTensor, C64};
pub use states::DensityMatrix;
pub use testers::{Tester, TesterKind};
