//! Quaternionic Schur analysis.
//!
//! * [`quaternion`]: arithmetic, conjugacy classes, the complex split `a + b j`.
//! * [`qlinalg`]: quaternionic matrices, positivity through the complex
//!   embedding, the scalar Stein solver.
//! * [`series`]: power series, left/right evaluation, Toeplitz sections and
//!   Schur-class certification.
//! * [`pick`]: Pick matrices, two-point extension formulas, slice
//!   reconstruction and the three-point certification harness.
//! * [`cli`]: the `qschur` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod pick;
pub mod qlinalg;
pub mod quaternion;
pub mod report;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
pub use qlinalg::{ComplexMatrix, QMatrix};
pub use quaternion::Quaternion;
pub use report::{CertReport, Verdict, Witness, WitnessKind};
pub use series::{ComplexSeries, QPowerSeries};

/// Complex scalars, the `span{1, i}` slice of the quaternions.
pub type Complex = num_complex::Complex64;
