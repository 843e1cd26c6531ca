//! Fourier truncation of the Bloch family.
//!
//! In the basis `e^{i(2pi k + t)x}`, `k = -K..K`, multiplication by the
//! potential becomes the Toeplitz matrix `q_{k-m}` and the kinetic term the
//! diagonal `(2pi k + t)^2`. Eigenvalues of the truncated matrix approximate
//! the Bloch eigenvalues; accuracy degrades toward the edges of the basis,
//! so callers should only trust the central part of the sorted list (see
//! [`trusted_indices`]). This route is entirely linear-algebraic and shares
//! no code with the shooting integrator, which is what makes the two usable
//! as cross-checks.

use ndarray::Array2;
use ndarray_linalg::Eig;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::PeriodicPotential;

/// Smallest accepted truncation order.
pub const MIN_TRUNCATION: i64 = 8;

/// Largest index `|n|` whose eigenvalue the truncation resolves reliably.
///
/// Perturbation of the matrix edge decays like the distance to the edge, and
/// keeping the central two thirds of the basis is a comfortable margin for
/// the accuracy this crate promises.
pub fn trusted_indices(k: i64) -> i64 {
    2 * k / 3
}

fn check_inputs(t: f64, k: i64) -> Result<()> {
    if k < MIN_TRUNCATION {
        return Err(Error::NumericsError(format!(
            "truncation order {k} below minimum {MIN_TRUNCATION}"
        )));
    }
    if !t.is_finite() || !(0.0..=std::f64::consts::PI).contains(&t) {
        return Err(Error::NumericsError(format!(
            "Bloch phase t = {t} outside [0, pi]"
        )));
    }
    Ok(())
}

/// Truncated operator matrix at phase `t` with basis indices `-k..=k`.
pub fn bloch_matrix(q: &PeriodicPotential, t: f64, k: i64) -> Result<Array2<Complex64>> {
    check_inputs(t, k)?;
    let dim = (2 * k + 1) as usize;
    // One coefficient per diagonal; the matrix is Toeplitz apart from the
    // kinetic diagonal, so fetch the band once instead of per entry.
    let mut band = Vec::with_capacity(2 * dim - 1);
    for d in -(2 * k)..=(2 * k) {
        band.push(q.fourier_coefficient(d)?);
    }
    let mut m = Array2::<Complex64>::zeros((dim, dim));
    for row in 0..dim {
        let kr = row as i64 - k;
        for col in 0..dim {
            let kc = col as i64 - k;
            m[(row, col)] = band[(kr - kc + 2 * k) as usize];
        }
        let mu = 2.0 * std::f64::consts::PI * kr as f64 + t;
        m[(row, row)] += Complex64::new(mu * mu, 0.0);
    }
    Ok(m)
}

/// Eigenvalues of [`bloch_matrix`], sorted by real part (imaginary part as
/// tie-break). The list has length `2k + 1`; entries beyond the window of
/// [`trusted_indices`] are returned but carry truncation error.
pub fn bloch_eigenvalues(q: &PeriodicPotential, t: f64, k: i64) -> Result<Vec<Complex64>> {
    let m = bloch_matrix(q, t, k)?;
    let (vals, _) = m
        .eig()
        .map_err(|e| Error::NumericsError(format!("eigensolver failed at t = {t}: {e}")))?;
    let mut out: Vec<Complex64> = vals.iter().copied().collect();
    out.sort_unstable_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// How far the central eigenvalues are from being closed under conjugation.
///
/// For a PT-symmetric potential the truncated matrix has real entries up to
/// rounding in the coefficients, so its spectrum is conjugation-symmetric
/// and this defect is numerical noise. A defect well above noise level means
/// the potential is not PT-symmetric (or the coefficients were computed from
/// a representation that breaks the symmetry).
pub fn conjugation_closure(q: &PeriodicPotential, t: f64, k: i64) -> Result<f64> {
    let eigs = bloch_eigenvalues(q, t, k)?;
    let central = (2 * trusted_indices(k) + 1) as usize;
    let mut defect = 0.0f64;
    for lam in eigs.iter().take(central.min(eigs.len())) {
        let target = lam.conj();
        let nearest = eigs
            .iter()
            .map(|mu| (mu - target).norm())
            .fold(f64::INFINITY, f64::min);
        defect = defect.max(nearest);
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fourier(terms: &[(i64, f64, f64)]) -> PeriodicPotential {
        PeriodicPotential::from_fourier(
            terms.iter().map(|&(n, re, im)| (n, Complex64::new(re, im))),
        )
        .unwrap()
    }

    #[test]
    fn free_matrix_is_diagonal() {
        let q = fourier(&[]);
        let t = 0.7;
        let eigs = bloch_eigenvalues(&q, t, 8).unwrap();
        let mut expected: Vec<f64> = (-8..=8)
            .map(|n| (2.0 * PI * n as f64 + t).powi(2))
            .collect();
        expected.sort_by(f64::total_cmp);
        for (lam, want) in eigs.iter().zip(&expected) {
            assert!((lam.re - want).abs() < 1e-8, "{} vs {}", lam.re, want);
            assert!(lam.im.abs() < 1e-8);
        }
    }

    #[test]
    fn one_sided_exponential_leaves_eigenvalues_free() {
        // A single positive-frequency coefficient makes the matrix
        // triangular, so truncation changes nothing: the eigenvalues are the
        // diagonal exactly, for every truncation order.
        let q = fourier(&[(1, 0.4, 0.0)]);
        for &t in &[0.3, 1.5] {
            let eigs = bloch_eigenvalues(&q, t, 12).unwrap();
            let mut expected: Vec<f64> = (-12..=12)
                .map(|n| (2.0 * PI * n as f64 + t).powi(2))
                .collect();
            expected.sort_by(f64::total_cmp);
            for (lam, want) in eigs.iter().zip(&expected) {
                assert!((lam.re - want).abs() < 1e-7 * (1.0 + want.abs()));
                assert!(lam.im.abs() < 1e-7 * (1.0 + want.abs()));
            }
        }
    }

    #[test]
    fn conjugation_closure_is_noise_for_pt() {
        let mathieu = fourier(&[(1, 1.0, 0.0), (-1, 1.0, 0.0)]);
        let skewed = fourier(&[(1, 1.25, 0.0), (-1, 0.75, 0.0)]);
        for q in [&mathieu, &skewed] {
            for &t in &[0.0, 1.0, PI] {
                let d = conjugation_closure(q, t, 16).unwrap();
                assert!(d < 1e-8, "defect {d:.3e} at t = {t}");
            }
        }
    }

    #[test]
    fn complex_coefficients_break_closure() {
        // q_1 imaginary, q_{-1} real: the product q_1 q_{-1} driving the
        // second-order shifts is imaginary, so eigenvalues drift off the
        // axis without conjugate partners.
        let q = fourier(&[(1, 0.0, 1.0), (-1, 1.0, 0.0)]);
        let d = conjugation_closure(&q, 1.0, 16).unwrap();
        assert!(d > 1e-3, "defect {d:.3e} unexpectedly small");
    }

    #[test]
    fn rejects_bad_inputs() {
        let q = fourier(&[]);
        assert!(bloch_matrix(&q, 0.5, 4).is_err());
        assert!(bloch_matrix(&q, -0.1, 12).is_err());
        assert!(bloch_matrix(&q, 3.5, 12).is_err());
    }
}
