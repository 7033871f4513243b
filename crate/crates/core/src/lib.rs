//! Exact symbolic engine for the quantum group U_q(sl3) and its Whittaker
//! modules.
//!
//! The crate is organized in layers:
//! - [`poly`] / [`scalar`]: exact arithmetic in Q(q, alpha);
//! - [`field`]: the coefficient-field abstraction (symbolic or evaluated);
//! - [`pbw`]: the algebra itself, with a confluent straightening system onto
//!   the PBW basis F3^a F2^b F1^c K1^m K2^n E3^d E2^e E1^f;
//! - [`whittaker`]: the universal Whittaker module M(eta), generator actions,
//!   the closed-form elements u(n,l,Q) and their companions;
//! - [`linalg`]: exact linear algebra over any coefficient field;
//! - [`structure`]: criticality, Whittaker-vector solving, submodule
//!   membership, composition series and the center checks;
//! - [`verify`]: the runnable identity suites behind `qsl3 verify`.

pub mod field;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod scalar;
pub mod structure;
pub mod verify;
pub mod whittaker;

pub use field::{CoeffField, Numeric};
pub use scalar::{q_binomial, q_factorial, q_integer, EvalPoint, Scalar, ScalarError};
