//! Dense numerical engine for one-mode bosonic operator algebra in a
//! truncated Fock space.
//!
//! The crate constructs squeeze-type operators from closed-form
//! disentangling of quadratic exponents, solution states of a
//! positive-energy wave equation with internal oscillator variables,
//! and the even/odd metaplectic coherent-state families in the
//! Bargmann representation. Every construction is checked against an
//! independent dense-matrix oracle; [`verify`] packages those checks
//! into named suites selectable at run time.

pub mod bargmann;
pub mod error;
pub mod fock;
pub mod metaplectic;
pub mod report;
pub mod verify;
pub mod wave;

pub use error::{Error, Result};
pub use fock::TruncationConfig;
