//! Grid-sampled potentials: trigonometric coefficients via the FFT and a
//! periodic cubic spline for pointwise evaluation.
//!
//! A sample vector of power-of-two length `M` pins down Fourier coefficients
//! only up to aliasing, so the trustworthy window is conservatively taken to
//! be `|n| <= M/4`; requests outside it are refused rather than silently
//! aliased. Pointwise values between nodes come from the C2 periodic spline,
//! which is what the shooting integrator consumes.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 8;

/// Discrete Fourier coefficients `q_n = (1/M) sum_j v_j exp(-2 pi i n j / M)`,
/// stored in FFT bin order (`n` lives at index `n mod M`).
pub fn spectrum(values: &[Complex64]) -> Vec<Complex64> {
    let m = values.len();
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    for z in &mut buf {
        *z *= scale;
    }
    buf
}

/// Periodic cubic spline through `(j/M, v_j)`, period 1.
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    values: Vec<Complex64>,
    /// Second derivatives at the nodes.
    moments: Vec<Complex64>,
}

impl PeriodicSpline {
    pub fn new(values: &[Complex64]) -> Self {
        let m = values.len();
        let h = 1.0 / m as f64;
        // Uniform-grid moment equations M_{j-1} + 4 M_j + M_{j+1} = r_j,
        // r_j = 6 (v_{j+1} - 2 v_j + v_{j-1}) / h^2, indices mod M.
        let mut rhs = vec![Complex64::new(0.0, 0.0); m];
        for j in 0..m {
            let prev = values[(j + m - 1) % m];
            let next = values[(j + 1) % m];
            rhs[j] = 6.0 * (next - 2.0 * values[j] + prev) / (h * h);
        }
        let moments = solve_cyclic_141(&rhs);
        Self {
            values: values.to_vec(),
            moments,
        }
    }

    /// Spline value at `x` (taken mod 1).
    pub fn eval(&self, x: f64) -> Complex64 {
        let m = self.values.len();
        let h = 1.0 / m as f64;
        let xw = x - x.floor();
        let mut j = (xw * m as f64).floor() as usize;
        if j >= m {
            j = m - 1;
        }
        let x0 = j as f64 * h;
        let jn = (j + 1) % m;
        let dl = xw - x0; // distance to left node
        let dr = h - dl; // distance to right node
        let (mj, mn) = (self.moments[j], self.moments[jn]);
        let (vj, vn) = (self.values[j], self.values[jn]);
        mj * dr * dr * dr / (6.0 * h)
            + mn * dl * dl * dl / (6.0 * h)
            + (vj - mj * h * h / 6.0) * (dr / h)
            + (vn - mn * h * h / 6.0) * (dl / h)
    }
}

/// Solve the cyclic tridiagonal system with stencil (1, 4, 1).
///
/// Sherman-Morrison against the plain tridiagonal solver: the corner entries
/// are folded into a rank-one update `u w^T` with `u = (gamma, 0, .., 1)^T`,
/// `w = (1, 0, .., 1/gamma)^T`, `gamma = -4`.
fn solve_cyclic_141(rhs: &[Complex64]) -> Vec<Complex64> {
    let m = rhs.len();
    assert!(m >= 3);
    let gamma = -4.0;
    // Modified diagonal for the non-cyclic solve.
    let mut diag = vec![4.0; m];
    diag[0] -= gamma;
    diag[m - 1] -= 1.0 / gamma;

    let solve_tri = |d: &[f64], b: &[Complex64]| -> Vec<Complex64> {
        let n = b.len();
        let mut c = vec![0.0; n]; // scratch superdiagonal
        let mut x = b.to_vec();
        c[0] = 1.0 / d[0];
        x[0] /= d[0];
        for i in 1..n {
            let w = d[i] - c[i - 1];
            c[i] = 1.0 / w;
            x[i] = (x[i] - x[i - 1]) / w;
        }
        for i in (0..n - 1).rev() {
            let xi1 = x[i + 1];
            x[i] -= c[i] * xi1;
        }
        x
    };

    let y = solve_tri(&diag, rhs);
    let mut u = vec![Complex64::new(0.0, 0.0); m];
    u[0] = Complex64::new(gamma, 0.0);
    u[m - 1] = Complex64::new(1.0, 0.0);
    let z = solve_tri(&diag, &u);
    // w^T y / (1 + w^T z), w = (1, 0, .., 1/gamma).
    let wy = y[0] + y[m - 1] / gamma;
    let wz = z[0] + z[m - 1] / gamma;
    let factor = wy / (1.0 + wz);
    y.iter().zip(&z).map(|(yi, zi)| yi - factor * zi).collect()
}
