//! Spectral analysis of one-dimensional Schrödinger operators
//!
//! ```text
//! L y = -y'' + q(x) y,        q(x + 1) = q(x),
//! ```
//!
//! with a complex-valued, integrable, mean-zero potential `q`, with particular
//! support for the PT-symmetric class `conj(q(-x)) = q(x)` (equivalently: all
//! Fourier coefficients of `q` are real).  The spectrum of `L` on the line is
//! the union of the spectra of the Bloch restrictions `L_t` with boundary
//! condition `y(1) = exp(it) y(0)`, `t` in `[0, pi]`, and for PT potentials the
//! Hill discriminant is real on the real axis, which makes the classical
//! band/gap picture meaningful even though `L` is not self-adjoint.
//!
//! The crate provides two independent computational routes and the glue to
//! compare them:
//!
//! * [`floquet`] integrates the monodromy problem directly and evaluates the
//!   Hill discriminant `F(lambda) = theta(1) + phi'(1)`; membership in the
//!   spectrum is `F(lambda) in [-2, 2]`.
//! * [`spectrum`] discretizes `L_t` in the Fourier basis (a dense complex
//!   eigenproblem), numbers the Bloch eigenvalues by the asymptotic counting
//!   scheme, traces band curves, locates the periodic/antiperiodic (i.e.
//!   two-periodic) eigenvalues through contour counting on the discriminant,
//!   and assembles the real band intervals, the gaps between them and a
//!   horizon-bounded finite-zone verdict.
//! * [`criteria`] works purely on Fourier coefficients: the antiderivative
//!   series, the gap-sign indicators `P_n`, and the jump/decay tests that
//!   decide reality of high-index two-periodic eigenvalues without ever
//!   solving an eigenproblem.
//!
//! The two routes are deliberately kept algorithmically disjoint (shooting vs.
//! Galerkin, coefficients vs. spectra) so that each can serve as an oracle for
//! the other; the integration tests and the `acceptance` suite hold them to
//! that standard.
//!
//! [`potential`] owns the three potential representations (exact Fourier
//! series, piecewise polynomials, uniform samples) and the potential
//! definition file format used by the command line tool.

pub mod criteria;
pub mod error;
pub mod floquet;
pub mod potential;
pub mod spectrum;
pub mod tol;

pub use error::{Error, Result};
pub use potential::PeriodicPotential;
pub use tol::Tolerances;
