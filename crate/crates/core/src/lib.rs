//! Spectral toolkit for the planar Schrödinger operator with an attractive
//! Bessel–Macdonald potential `V(r) = -α K0(βr)`.
//!
//! * [`specfun`]: `K0`, `K1`.
//! * [`quadrature`]: double-exponential rules on `(0, ∞)`.
//! * [`model`]: units, the coupling `C`, effective potential, Kato constants.
//! * [`eigensolver`]: Numerov shooting, node counting and a finite-difference oracle.
//! * [`bounds`]: Setô-type bound-state bounds, integral identities, sampled Kato checks.
//! * [`sweep`]: parameter sweeps, CSV / plot-data output and the verification report.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod eigensolver;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod specfun;
pub mod sweep;
pub mod tridiag;

pub use error::{Error, Result};
