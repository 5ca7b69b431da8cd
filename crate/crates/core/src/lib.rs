//! Certification of the three-quadratic-form inequality.
//!
//! Given forms `T`, `A`, `B` on `Rⁿ` (or Hermitian forms on `Cⁿ`) with `A`,
//! `B` nonnegative and nonzero, the pointwise inequality
//!
//! ```text
//! T[x] >= 2 √(A[x] · B[x])   for all x
//! ```
//!
//! holds exactly when some `α > 0` splits it, `T ⪰ αA + α⁻¹B`. The
//! [`certify`](certify::certify) engine decides which side of that
//! dichotomy an instance is on and returns a checkable artifact either way:
//! the split value `α`, or a unit vector violating the inequality.
//!
//! Modules:
//!
//! * [`linalg`]: symmetric matrices and the Jacobi eigensolver.
//! * [`forms`]: validated instances, the pencil `T - sA - s⁻¹B`, `τ`, realification.
//! * [`certify`]: bracketing, golden-section maximization, witness extraction.
//! * [`corollaries`]: trace, Hilbert–Schmidt and averages consequences.
//! * [`oracle`]: brute-force scans and seeded instance generators.
//! * [`cli`]: instance files, reports and the `triform` command line.

pub mod certify;
pub mod cli;
pub mod corollaries;
pub mod forms;
pub mod linalg;
pub mod oracle;
pub mod rng;

pub use certify::{certify, Certificate, CertifyConfig, Refutation, Verdict, VerdictTag};
pub use forms::{validate_instance, HermitianInstance, HermitianMatrix, Instance};
pub use linalg::{Matrix, SymmetricMatrix};
