//! Exact computer algebra for blow-up algebras of linearly presented ideals.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`], [`ring`], [`monomial`], [`order`], [`poly`], [`parse`]:
//!   exact coefficient arithmetic (rationals and prime fields), polynomial
//!   rings with named variable blocks, monomial orders, and a small parser
//!   for polynomial input.
//! - [`groebner`]: Buchberger's algorithm with elimination orders, normal
//!   forms, ideal equality, Krull dimension, and initial degree.
//! - [`linmatrix`]: matrices of linear forms, minors, Jacobian duals,
//!   signed maximal minors, rank modulo an ideal, and the pivot canonical
//!   form used by the verification pipeline.
//! - [`blowup`]: the condition G_s, Rees and special-fiber ideals, symmetric
//!   algebra dimension, and analytic spread.
//! - [`theorem`]: end-to-end verification of the fiber-type structure
//!   theorems (birationality, inverse representatives, hyperplane
//!   specialization, determinant identities) and instance generation.
//! - [`report`]: deterministic structured-text reports.

pub mod blowup;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linmatrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod theorem;

pub use error::{Error, Result};
pub use field::{CoeffField, Scalar};
pub use groebner::{Budget, GroebnerBasis, IdealHandle};
pub use linmatrix::{LinearMatrix, ScalarConjugation, ScalarMatrix, SignedMinorVector};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::{BlockRole, Ring, RingRc, VariableBlock};
pub use theorem::{classify, verify, CaseKind, Flag, VerificationReport, VerifyOptions};

/// Version string echoed into reports.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
