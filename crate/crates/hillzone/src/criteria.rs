//! Coefficient criteria (in progress).
