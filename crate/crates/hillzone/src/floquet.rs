//! Shooting route: monodromy matrices and the Hill discriminant.
//!
//! For a fixed spectral parameter `lambda` the fundamental system of
//!
//! ```text
//! -y'' + q(x) y = lambda y,    theta(0) = phi'(0) = 1, theta'(0) = phi(0) = 0,
//! ```
//!
//! is integrated across one period with an adaptive Dormand-Prince 5(4)
//! stepper. The discriminant is `F(lambda) = theta(1) + phi'(1)`; `lambda`
//! belongs to the spectrum of the full-line operator exactly when `F(lambda)`
//! lands in `[-2, 2]`, and the Bloch eigenvalues of `L_t` are the roots of
//! `F(lambda) = 2 cos t`.
//!
//! Deep in the left half-line (`lambda` near `-1e4`, say) the fundamental
//! solutions grow like `exp(sqrt(-lambda) x)`, which is representable but
//! ruins the Wronskian identity `theta phi' - theta' phi = 1` through
//! cancellation of enormous products. The integrator therefore carries the
//! fundamental matrix in factored form `Y = Z T`: whenever the integrated
//! factor `Z` grows past a threshold it is replaced by its orthonormal QR
//! factor and the triangular part is folded into `T`. The diagonal of `T` is
//! accumulated both directly and in log space, so the Wronskian defect
//! `|det Y(1) - 1|` is evaluated without forming the cancelling products.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::PeriodicPotential;
use crate::tol::ODE_TOL_FLOOR;

/// Column norm that triggers a QR renormalization of the running factor.
const RENORM_AT: f64 = 1e3;

/// Hard floor on the step size before the integration gives up.
const MIN_STEP: f64 = 1e-14;

/// Monodromy data at one value of the spectral parameter.
#[derive(Debug, Clone, Copy)]
pub struct MonodromyResult {
    pub lambda: Complex64,
    pub theta1: Complex64,
    pub theta1_prime: Complex64,
    pub phi1: Complex64,
    pub phi1_prime: Complex64,
    /// `theta(1) + phi'(1)`.
    pub discriminant: Complex64,
    /// `|theta(1) phi'(1) - theta'(1) phi(1) - 1|`, evaluated in factored
    /// form. A consistency measure: exactly zero for the true solution.
    pub wronskian_defect: f64,
    /// Accumulated local error estimate of the stepper (per unit step, so it
    /// is bounded by the requested tolerance when the controller succeeds).
    pub est_error: f64,
    /// Accepted steps across the period.
    pub steps: usize,
}

// Dormand-Prince 5(4) tableau.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
const C: [f64; 6] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0];
/// Difference between the fifth and embedded fourth order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// State: the two fundamental columns `(theta, theta', phi, phi')`.
type State = [Complex64; 4];

#[inline]
fn rhs(q_at: Complex64, lambda: Complex64, y: &State) -> State {
    let w = q_at - lambda;
    [y[1], w * y[0], y[3], w * y[2]]
}

fn add_scaled(y: &State, ks: &[State], h: f64, w: &[f64]) -> State {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(w) {
        if c != 0.0 {
            for i in 0..4 {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

/// 2x2 upper-triangular accumulator for the factored monodromy.
#[derive(Clone, Copy)]
struct Triangular {
    t00: f64,
    t01: Complex64,
    t11: f64,
    /// `ln(t00) + ln(t11)` accumulated term by term.
    log_det: f64,
}

impl Triangular {
    fn identity() -> Self {
        Self {
            t00: 1.0,
            t01: Complex64::new(0.0, 0.0),
            t11: 1.0,
            log_det: 0.0,
        }
    }

    /// Left-multiply by the QR factor `R = [[r00, r01], [0, r11]]`.
    fn fold(&mut self, r00: f64, r01: Complex64, r11: f64) {
        self.t01 = r00 * self.t01 + r01 * self.t11;
        self.t00 *= r00;
        self.t11 *= r11;
        self.log_det += r00.ln() + r11.ln();
    }
}

/// Replace `z` by its orthonormal QR factor, returning the triangular part.
fn renormalize(y: &mut State) -> (f64, Complex64, f64) {
    let u = [y[0], y[1]];
    let v = [y[2], y[3]];
    let r00 = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let q1 = [u[0] / r00, u[1] / r00];
    let r01 = q1[0].conj() * v[0] + q1[1].conj() * v[1];
    let w = [v[0] - r01 * q1[0], v[1] - r01 * q1[1]];
    let r11 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    *y = [q1[0], q1[1], w[0] / r11, w[1] / r11];
    (r00, r01, r11)
}

/// `exp(z) - 1` without cancellation for small `z`.
fn cexpm1(z: Complex64) -> Complex64 {
    let ex = z.re.exp();
    let re = z.re.exp_m1() - ex * 2.0 * (0.5 * z.im).sin().powi(2);
    Complex64::new(re, ex * z.im.sin())
}

/// Integrate the fundamental system across `[0, 1]`.
pub fn monodromy(q: &PeriodicPotential, lambda: Complex64, tol: f64) -> Result<MonodromyResult> {
    let tol = tol.max(ODE_TOL_FLOOR);
    let mut segments = vec![0.0];
    segments.extend(q.breakpoints());
    segments.push(1.0);

    let mut y: State = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    let mut tri = Triangular::identity();
    let mut est_error = 0.0f64;
    let mut steps = 0usize;

    for seg in segments.windows(2) {
        let (mut x, end) = (seg[0], seg[1]);
        // Within the segment the potential is smooth; at its right endpoint
        // the one-sided value applies, or a discontinuity there (the period
        // boundary, say) would leak into the last stage evaluations.
        let f = |x: f64, y: &State| {
            let qx = if x >= end { q.eval_left(end) } else { q.eval(x) };
            rhs(qx, lambda, y)
        };
        let mut h = (end - x).min(0.1 / (1.0 + lambda.norm().sqrt()));
        let mut k1 = f(x, &y);
        while x < end {
            if h < MIN_STEP {
                return Err(Error::IntegrationFailure { x, step: h });
            }
            // A step that covers the remainder lands on `end` exactly, so no
            // unsteppable sliver is ever left behind.
            let remaining = end - x;
            let (ht, landing) = if h >= remaining {
                (remaining, true)
            } else {
                (h, false)
            };
            let k2 = f(x + C[1] * ht, &add_scaled(&y, &[k1], ht, &A2));
            let k3 = f(x + C[2] * ht, &add_scaled(&y, &[k1, k2], ht, &A3));
            let k4 = f(x + C[3] * ht, &add_scaled(&y, &[k1, k2, k3], ht, &A4));
            let k5 = f(x + C[4] * ht, &add_scaled(&y, &[k1, k2, k3, k4], ht, &A5));
            let k6 = f(
                x + C[5] * ht,
                &add_scaled(&y, &[k1, k2, k3, k4, k5], ht, &A6),
            );
            let y_next = add_scaled(&y, &[k1, k2, k3, k4, k5, k6], ht, &B);
            let k7 = f(x + ht, &y_next);

            let ks = [k1, k2, k3, k4, k5, k6, k7];
            let mut err = 0.0f64;
            for i in 0..4 {
                let mut e = Complex64::new(0.0, 0.0);
                for (k, &c) in ks.iter().zip(&E) {
                    e += c * k[i];
                }
                err = err.max(ht * e.norm() / (1.0 + y_next[i].norm()));
            }

            // Error per unit step: the budget for this step is tol * ht.
            let ratio = err / (tol * ht);
            if ratio <= 1.0 {
                x = if landing { end } else { x + ht };
                y = y_next;
                k1 = k7;
                est_error += err;
                steps += 1;
                if y.iter().map(|z| z.norm()).fold(0.0, f64::max) > RENORM_AT {
                    let (r00, r01, r11) = renormalize(&mut y);
                    tri.fold(r00, r01, r11);
                    k1 = f(x, &y);
                }
            }
            let scale = if ratio > 0.0 {
                0.9 * ratio.powf(-0.2)
            } else {
                5.0
            };
            h = ht * scale.clamp(0.2, 5.0);
        }
    }

    // Undo the factored form: Y(1) = Z T.
    let theta1 = tri.t00 * y[0];
    let theta1_prime = tri.t00 * y[1];
    let phi1 = tri.t01 * y[0] + tri.t11 * y[2];
    let phi1_prime = tri.t01 * y[1] + tri.t11 * y[3];

    // det Y(1) = det Z * t00 * t11 with t00, t11 real positive; work with
    // logarithms so the defect survives det Z ~ 1 against t00 t11 ~ e^200.
    let det_z = y[0] * y[3] - y[1] * y[2];
    let log_w = Complex64::new(det_z.norm().ln() + tri.log_det, det_z.arg());
    let wronskian_defect = cexpm1(log_w).norm();

    Ok(MonodromyResult {
        lambda,
        theta1,
        theta1_prime,
        phi1,
        phi1_prime,
        discriminant: theta1 + phi1_prime,
        wronskian_defect,
        est_error,
        steps,
    })
}

/// The Hill discriminant `F(lambda)`.
pub fn discriminant(q: &PeriodicPotential, lambda: Complex64, tol: f64) -> Result<Complex64> {
    Ok(monodromy(q, lambda, tol)?.discriminant)
}

/// The free reference `2 cos(sqrt(lambda))`, which `F` approaches as
/// `lambda -> infinity` and equals exactly when `q = 0`.
pub fn asymptotic_reference(lambda: Complex64) -> Complex64 {
    2.0 * lambda.sqrt().cos()
}

/// Spectral membership for real `lambda`: `F(lambda)` must be real up to the
/// membership tolerance and inside `[-2 - tol_member, 2 + tol_member]`.
pub fn membership(
    q: &PeriodicPotential,
    lambda: f64,
    tol_ode: f64,
    tol_member: f64,
) -> Result<bool> {
    let f = discriminant(q, Complex64::new(lambda, 0.0), tol_ode)?;
    Ok(f.re.abs() <= 2.0 + tol_member && f.im.abs() <= tol_member)
}

/// Scan of `Im F` along a list of real spectral parameters.
#[derive(Debug, Clone, Copy)]
pub struct RealityReport {
    /// Largest `|Im F(lambda)|` over the grid.
    pub max_im: f64,
    pub worst_lambda: f64,
    /// `max_im <= tol` for the tolerance the scan was asked to certify.
    pub passes: bool,
}

/// Evaluate `F` on a real grid and record how far it strays from the real
/// axis. For PT-symmetric potentials the discriminant is real-valued on the
/// real axis, so `max_im` is pure numerical noise and the scan passes.
pub fn discriminant_real_check(
    q: &PeriodicPotential,
    lambda_grid: &[f64],
    tol: f64,
    tol_ode: f64,
) -> Result<RealityReport> {
    let mut worst = (0.0f64, f64::NAN);
    for &lam in lambda_grid {
        let f = discriminant(q, Complex64::new(lam, 0.0), tol_ode)?;
        if f.im.abs() >= worst.0 {
            worst = (f.im.abs(), lam);
        }
    }
    Ok(RealityReport {
        max_im: worst.0,
        worst_lambda: worst.1,
        passes: worst.0 <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{PeriodicPotential, Piece};

    fn free() -> PeriodicPotential {
        PeriodicPotential::from_fourier([]).unwrap()
    }

    fn mathieu() -> PeriodicPotential {
        PeriodicPotential::from_fourier([
            (1, Complex64::new(1.0, 0.0)),
            (-1, Complex64::new(1.0, 0.0)),
        ])
        .unwrap()
    }

    #[test]
    fn free_discriminant_is_two_cos_sqrt() {
        for lam in [
            Complex64::new(1.0, 0.0),
            Complex64::new(17.3, 0.0),
            Complex64::new(-40.0, 0.0),
            Complex64::new(3.0, 5.0),
            Complex64::new(900.0, 0.0),
        ] {
            let f = discriminant(&free(), lam, 1e-12).unwrap();
            let want = asymptotic_reference(lam);
            let scale = 1.0 + want.norm();
            assert!(
                (f - want).norm() / scale < 1e-10,
                "lambda {lam}: {f} vs {want}"
            );
        }
    }

    #[test]
    fn free_periodic_eigenvalue() {
        // F = 2 exactly at lambda = (2 pi)^2.
        let lam = Complex64::new(4.0 * std::f64::consts::PI.powi(2), 0.0);
        let f = discriminant(&free(), lam, 1e-12).unwrap();
        assert!((f.re - 2.0).abs() < 1e-9 && f.im.abs() < 1e-12);
    }

    #[test]
    fn wronskian_defect_stays_tiny_deep_left() {
        // Growth exp(2 sqrt(1e4)) = e^200 here; the factored form keeps the
        // defect at roundoff.
        let r = monodromy(&mathieu(), Complex64::new(-1e4, 0.0), 1e-12).unwrap();
        assert!(
            r.wronskian_defect < 1e-9,
            "defect {:.3e}",
            r.wronskian_defect
        );
        assert!(r.theta1.norm() > 1e40, "expected huge growth");
    }

    #[test]
    fn reality_on_the_real_axis_for_pt() {
        let grid: Vec<f64> = (0..40).map(|j| -5.0 + 65.0 * j as f64 / 39.0).collect();
        let rep = discriminant_real_check(&mathieu(), &grid, 1e-9, 1e-11).unwrap();
        assert!(rep.max_im < 1e-9, "max_im {:.3e}", rep.max_im);
        assert!(rep.passes);
        assert!(rep.worst_lambda.is_finite());
    }

    #[test]
    fn membership_matches_free_bands() {
        // q = 0: spectrum is [0, inf).
        assert!(membership(&free(), 3.0, 1e-10, 1e-7).unwrap());
        assert!(membership(&free(), 150.0, 1e-10, 1e-7).unwrap());
        assert!(!membership(&free(), -1.0, 1e-10, 1e-7).unwrap());
    }

    #[test]
    fn breakpoints_do_not_break_accuracy() {
        // Same potential written as one piece and as two pieces.
        let one = PeriodicPotential::from_pieces(vec![Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![0.0, 1.0],
            im: vec![],
        }])
        .unwrap();
        let two = PeriodicPotential::from_pieces(vec![
            Piece {
                lo: 0.0,
                hi: 0.37,
                re: vec![0.0, 1.0],
                im: vec![],
            },
            Piece {
                lo: 0.37,
                hi: 1.0,
                re: vec![0.0, 1.0],
                im: vec![],
            },
        ])
        .unwrap();
        let lam = Complex64::new(11.0, 0.0);
        let fa = discriminant(&one, lam, 1e-12).unwrap();
        let fb = discriminant(&two, lam, 1e-12).unwrap();
        assert!((fa - fb).norm() < 1e-10, "{fa} vs {fb}");
    }

    #[test]
    fn estimator_respects_budget() {
        let r = monodromy(&mathieu(), Complex64::new(25.0, 0.0), 1e-10).unwrap();
        assert!(r.est_error <= 1e-10 * 1.01);
        assert!(r.steps > 10);
    }
}
