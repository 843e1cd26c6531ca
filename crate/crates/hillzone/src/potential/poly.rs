//! Exact integrals of polynomial pieces against Fourier phases.
//!
//! Everything a piecewise-polynomial potential needs reduces to
//!
//! ```text
//!   I(k, n; a, b) = ∫_a^b x^k exp(-2 pi i n x) dx
//! ```
//!
//! which has the closed-form antiderivative (c = -2 pi i n, n != 0)
//!
//! ```text
//!   ∫ x^k e^{cx} dx = e^{cx} * sum_{j=0..k} (-1)^j (k!/(k-j)!) x^{k-j} / c^{j+1}.
//! ```
//!
//! The alternating sum is mildly cancellative for large degree, which is why
//! piece degrees are capped at [`MAX_PIECE_DEGREE`]; within that cap the
//! results are accurate to a few ulps for every `n` the crate ever asks for.

use num_complex::Complex64;

/// Highest admissible degree of a polynomial piece.
pub const MAX_PIECE_DEGREE: usize = 12;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Antiderivative of `x^k e^{cx}` evaluated at `x`, for `c != 0`.
fn phase_antiderivative(k: usize, c: Complex64, x: f64) -> Complex64 {
    let mut falling = 1.0; // k! / (k - j)!
    let mut c_pow = c; // c^{j+1}
    let mut sign = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=k {
        sum += sign * falling * x.powi((k - j) as i32) / c_pow;
        falling *= (k - j) as f64;
        c_pow *= c;
        sign = -sign;
    }
    (c * x).exp() * sum
}

/// `∫_a^b x^k exp(-2 pi i n x) dx` for any integer `n`.
pub fn power_phase_integral(k: usize, n: i64, a: f64, b: f64) -> Complex64 {
    if n == 0 {
        let kk = (k + 1) as f64;
        return Complex64::new((b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / kk, 0.0);
    }
    let c = Complex64::new(0.0, -TAU * n as f64);
    phase_antiderivative(k, c, b) - phase_antiderivative(k, c, a)
}

/// `∫_a^b p(x) exp(-2 pi i n x) dx` for a real-coefficient polynomial
/// `p = coeffs[0] + coeffs[1] x + ...`.
pub fn poly_phase_integral(coeffs: &[f64], n: i64, a: f64, b: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            acc += c * power_phase_integral(k, n, a, b);
        }
    }
    acc
}

/// Plain `∫_a^b p(x) dx`.
pub fn poly_integral(coeffs: &[f64], a: f64, b: f64) -> f64 {
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            let kk = (k + 1) as f64;
            acc += c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / kk;
        }
    }
    acc
}

/// Horner evaluation of a real-coefficient polynomial.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients of the antiderivative of `p` with zero constant term.
pub fn poly_antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    for (k, &c) in coeffs.iter().enumerate() {
        out.push(c / (k + 1) as f64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson on [a, b]; enough digits to referee the closed forms.
    fn simpson_phase(k: usize, n: i64, a: f64, b: f64) -> Complex64 {
        let m = 20_000;
        let h = (b - a) / m as f64;
        let f = |x: f64| {
            let ph = Complex64::new(0.0, -TAU * n as f64 * x).exp();
            x.powi(k as i32) * ph
        };
        let mut acc = f(a) + f(b);
        for j in 1..m {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + j as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for &(k, n, a, b) in &[
            (0usize, 1i64, 0.0, 1.0),
            (1, 1, 0.0, 1.0),
            (2, -3, 0.25, 0.75),
            (5, 7, 0.0, 0.5),
            (3, -1, 0.1, 0.9),
            (4, 12, 0.0, 1.0),
        ] {
            let exact = power_phase_integral(k, n, a, b);
            let quad = simpson_phase(k, n, a, b);
            assert!(
                (exact - quad).norm() < 1e-12,
                "k={k} n={n}: {exact} vs {quad}"
            );
        }
    }

    #[test]
    fn zero_mode_is_plain_integral() {
        let i = power_phase_integral(3, 0, 0.0, 1.0);
        assert!((i.re - 0.25).abs() < 1e-15 && i.im == 0.0);
    }

    #[test]
    fn sawtooth_coefficient() {
        // q(x) = i (1/2 - x): q_n = 1/(2 pi n) for n != 0.
        for n in [1i64, 2, 5, -3, 64, 256] {
            let qn = Complex64::i() * poly_phase_integral(&[0.5, -1.0], n, 0.0, 1.0);
            let want = 1.0 / (TAU * n as f64);
            assert!(
                (qn - Complex64::new(want, 0.0)).norm() < 1e-14,
                "n={n}: {qn}"
            );
        }
    }

    #[test]
    fn antiderivative_and_eval_agree() {
        let p = [1.0, -2.0, 3.0, 0.5];
        let pp = poly_antiderivative(&p);
        let a = 0.2;
        let b = 0.8;
        let direct = poly_integral(&p, a, b);
        let via = poly_eval(&pp, b) - poly_eval(&pp, a);
        assert!((direct - via).abs() < 1e-15);
    }
}
