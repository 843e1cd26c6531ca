//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants carry enough context
//! (offending index, abscissa, file location) to be actionable from the
//! command line without a backtrace.

use thiserror::Error;

/// Location-aware failure while reading a potential definition file.
#[derive(Debug, Clone)]
pub struct ConfigError {
    /// Human-readable description of what is wrong.
    pub message: String,
    /// Key path that failed validation, when attributable (`pieces[2].interval`).
    pub key: Option<String>,
    /// One-based line in the source file, when the parser can point at one.
    pub line: Option<usize>,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.key, self.line) {
            (Some(k), Some(l)) => write!(f, "line {l}, key `{k}`: {}", self.message),
            (Some(k), None) => write!(f, "key `{k}`: {}", self.message),
            (None, Some(l)) => write!(f, "line {l}: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Error)]
pub enum Error {
    /// The potential violates a structural precondition (empty pieces, bad
    /// interval cover, non-finite coefficient, failed PT validation where PT
    /// is required, ...).
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// A Fourier coefficient beyond the resolvable bandwidth of the
    /// representation was requested (sampled grids resolve `|n| <= len/4`).
    #[error("Fourier index {requested} exceeds the resolvable bandwidth {max}")]
    BandwidthExceeded { requested: i64, max: i64 },

    /// The adaptive integrator could not proceed: the step size collapsed or
    /// the step budget ran out.
    #[error("integration failed near x = {x:.9} (step {step:.3e})")]
    IntegrationFailure { x: f64, step: f64 },

    /// A numerical postcondition failed (lost invariant, non-convergence of a
    /// polish iteration, inconsistent reality pattern, ...).
    #[error("numerical failure: {0}")]
    NumericsError(String),

    /// An eigenvalue localization disc did not contain the expected count, so
    /// indices cannot be assigned reliably.
    #[error("numbering ambiguous at n = {n}, t = {t:.9}: localization disc holds {count} eigenvalues, expected {expected}")]
    NumberingAmbiguity {
        n: i32,
        t: f64,
        count: usize,
        expected: usize,
    },

    /// A band pair was nonreal at a boundary of `[0, pi]` but no real/nonreal
    /// transition could be bracketed inside the admissible window.
    #[error("no coalescence point found for band pair {n} in [{lo:.9}, {hi:.9}]")]
    CoalescenceNotFound { n: i32, lo: f64, hi: f64 },

    /// Winding-number accounting on a contour failed after retries (a root
    /// sits on the contour, or the phase refinement budget was exhausted).
    #[error("contour counting failed: {0}")]
    ContourFailure(String),

    /// A jump-based test was requested but the potential carries no usable
    /// jump declarations.
    #[error("jump declaration required: {0}")]
    JumpDeclarationRequired(String),

    /// Malformed potential definition file.
    #[error("potential file: {0}")]
    Config(#[from] ConfigError),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
