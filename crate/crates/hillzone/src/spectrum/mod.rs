//! Bloch spectra, band structure, and the spectral finite-zone verdict.
//!
//! The spectrum of the periodic problem is swept out by the family of
//! boundary conditions `y(1) = e^{it} y(0)`, `t` running over `[0, pi]`.
//! Two independent routes into that family live here. The truncated
//! Fourier basis ([`galerkin`]) turns each phase into a dense eigenvalue
//! problem and powers the band sweep ([`sweep`]), which follows every
//! band's eigenvalue across the phase interval, locates where pairs of
//! bands collide and leave the real axis, and reports each band's real
//! trace. The discriminant route ([`roots`]) instead finds the periodic
//! and antiperiodic eigenvalues as roots of `F(lambda) = +-2` by contour
//! counting and Newton refinement, and classifies each pair as split,
//! double, or a conjugate couple.
//!
//! [`gaps`] combines the two: band intervals and their holes from the
//! sweep, pair classifications from the root search, and from the
//! asymptotic tail of those classifications the verdict on whether only
//! finitely many gaps are open. Canonical indexing conventions shared by
//! everything above live in [`numbering`].

pub mod galerkin;
pub mod gaps;
pub mod numbering;
pub mod roots;
pub mod sweep;

pub use galerkin::{bloch_eigenvalues, bloch_matrix, conjugation_closure};
pub use gaps::{gap_report, BandInterval, Gap, GapReport, PairGap, Verdict};
pub use numbering::{canonical_index, estimate_threshold, number_eigenvalues, rank_of};
pub use roots::{two_periodic_roots, BoundaryCondition, Classification, TwoPeriodicEigenvalue};
pub use sweep::{trace_band, BandCurve, BandSweep, BlochSample, RealInterval};
