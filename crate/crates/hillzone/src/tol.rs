//! Numeric tolerances and fixed scheme constants.

/// Half-width of the boundary zones of the quasimomentum interval `[0, pi]`.
///
/// Bloch eigenvalues are localized one per disc for `t` in the middle zone
/// `[H, pi - H]` and two per disc (index pairs `{n, -n}` at the periodic end,
/// `{n, -n-1}` at the antiperiodic end) inside the boundary zones. The value
/// is part of the counting scheme, not a tunable.
pub const BLOCH_ZONE_H: f64 = 1.0 / (20.0 * std::f64::consts::PI);

/// Tolerance bundle used across the crate.
///
/// Every comparison against an analytic identity or a classification
/// threshold goes through one of these fields, so a caller can tighten or
/// relax the whole pipeline coherently. [`Tolerances::default`] gives the
/// documented defaults.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Residual mean allowed after normalization.
    pub mean: f64,
    /// Largest `|Im q_n|` compatible with the PT verdict.
    pub pt: f64,
    /// Slack for coefficient identities (`q_n = f_n + g_n` and friends).
    pub fourier: f64,
    /// Local error target per unit length for the monodromy integrator.
    pub ode: f64,
    /// Allowed defect of the Wronskian identity `theta phi' - theta' phi = 1`.
    pub wronskian: f64,
    /// Distance from `F(lambda)` to `[-2, 2]` still counted as membership.
    pub member: f64,
    /// Largest `|Im lambda|` still classified as a real eigenvalue.
    pub real: f64,
    /// Pair separation below which a two-periodic pair counts as one double
    /// eigenvalue.
    pub double: f64,
    /// Allowed defect of conjugation symmetry of a PT spectrum.
    pub conj: f64,
    /// Minimal width reported as a spectral gap.
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            mean: 1e-10,
            pt: 1e-10,
            fourier: 1e-10,
            ode: 1e-10,
            wronskian: 1e-8,
            member: 1e-7,
            real: 1e-7,
            double: 1e-6,
            conj: 1e-6,
            gap: 1e-6,
        }
    }
}

/// Floor below which a requested ODE tolerance is clamped; double precision
/// cannot honor tighter targets over a unit interval.
pub const ODE_TOL_FLOOR: f64 = 1e-13;
