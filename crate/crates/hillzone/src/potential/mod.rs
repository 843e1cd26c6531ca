//! Complex 1-periodic potentials and their Fourier data.
//!
//! A potential enters in one of three representations: a finite set of
//! Fourier coefficients, polynomial pieces tiling `[0, 1)`, or equispaced
//! samples. All downstream consumers go through the same interface:
//! pointwise evaluation for the shooting integrator, single coefficients
//! `q_n`, and the paired coefficient data `(q_n, q_{-n}, f_n, g_n)` that the
//! algebraic route is built on.
//!
//! The class of interest is the PT-symmetric one, `conj(q(-x)) = q(x)`,
//! which in coefficient terms says every `q_n` is real. Nothing here
//! enforces that on construction; [`PeriodicPotential::validate_pt`] reports
//! how badly it fails and callers that require the symmetry check the report.

mod config;
pub mod poly;
pub mod sampled;

pub use config::{from_config_path, from_config_str};

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use poly::MAX_PIECE_DEGREE;
use sampled::{PeriodicSpline, MIN_SAMPLES};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// How many coefficients the PT scan inspects when the representation does
/// not bound the bandwidth by itself.
const PT_SCAN_BANDWIDTH: i64 = 128;

/// One polynomial piece of a piecewise potential. Coefficients are in the
/// global coordinate (ascending powers of `x`, not of `x - lo`).
#[derive(Debug, Clone)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl Piece {
    fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(poly::poly_eval(&self.re, x), poly::poly_eval(&self.im, x))
    }
}

/// Which component of the potential a declared jump lives in: `Re` is the
/// even part `f`, `Im` carries the odd part `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpComponent {
    Re,
    Im,
}

/// A declared discontinuity of some derivative of the potential.
///
/// `order` is the derivative that jumps (0 for the function itself) and
/// `size` its jump `w^(order)(a+) - w^(order)(a-)` at `location`. These are
/// declarations, not measurements: the structural finite-zone test consumes
/// them as given and cross-checks them against observed coefficient decay.
#[derive(Debug, Clone)]
pub struct JumpDeclaration {
    pub location: f64,
    pub component: JumpComponent,
    pub order: u32,
    pub size: f64,
}

#[derive(Debug, Clone)]
enum Representation {
    Fourier {
        coeffs: BTreeMap<i64, Complex64>,
    },
    Piecewise {
        pieces: Vec<Piece>,
    },
    Sampled {
        values: Vec<Complex64>,
        spectrum: Vec<Complex64>,
        spline: PeriodicSpline,
    },
}

/// The paired coefficient data of index `n >= 1`.
///
/// `f` and `g` are the even and odd real-part combinations
/// `(Re q_n +- Re q_{-n}) / 2`; for a PT-symmetric potential they satisfy
/// `q_n = f + g` and `q_{-n} = f - g` exactly.
#[derive(Debug, Clone, Copy)]
pub struct FourierTriple {
    pub q_plus: Complex64,
    pub q_minus: Complex64,
    pub f: f64,
    pub g: f64,
}

/// Outcome of the PT-symmetry scan.
#[derive(Debug, Clone, Copy)]
pub struct PtReport {
    pub is_pt: bool,
    /// Largest `|Im q_n|` seen over the scanned window.
    pub max_violation: f64,
    pub worst_n: i64,
}

/// A complex potential of period 1.
#[derive(Debug, Clone)]
pub struct PeriodicPotential {
    repr: Representation,
    smoothness_s: u32,
    jumps: Vec<JumpDeclaration>,
}

impl PeriodicPotential {
    /// Build from explicit Fourier coefficients `(n, q_n)`.
    pub fn from_fourier(coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidPotential(format!(
                    "coefficient q_{n} is not finite"
                )));
            }
            if n.unsigned_abs() > 1 << 20 {
                return Err(Error::InvalidPotential(format!(
                    "coefficient index {n} is out of range"
                )));
            }
            if map.insert(n, c).is_some() {
                return Err(Error::InvalidPotential(format!(
                    "coefficient q_{n} given twice"
                )));
            }
        }
        Ok(Self {
            repr: Representation::Fourier { coeffs: map },
            smoothness_s: 0,
            jumps: Vec::new(),
        })
    }

    /// Build from polynomial pieces. The pieces must tile `[0, 1)` in order,
    /// with degrees at most [`MAX_PIECE_DEGREE`].
    pub fn from_pieces(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidPotential("no pieces given".into()));
        }
        const SNAP: f64 = 1e-12;
        for p in &pieces {
            if !(p.lo.is_finite() && p.hi.is_finite()) || p.lo >= p.hi {
                return Err(Error::InvalidPotential(format!(
                    "piece interval [{}, {}] is empty or not finite",
                    p.lo, p.hi
                )));
            }
            for c in p.re.iter().chain(&p.im) {
                if !c.is_finite() {
                    return Err(Error::InvalidPotential(
                        "piece has a non-finite coefficient".into(),
                    ));
                }
            }
            if p.re.len().max(p.im.len()) > MAX_PIECE_DEGREE + 1 {
                return Err(Error::InvalidPotential(format!(
                    "piece degree exceeds {MAX_PIECE_DEGREE}"
                )));
            }
        }
        if pieces[0].lo.abs() > SNAP {
            return Err(Error::InvalidPotential(format!(
                "first piece starts at {}, expected 0",
                pieces[0].lo
            )));
        }
        pieces[0].lo = 0.0;
        let last = pieces.len() - 1;
        if (pieces[last].hi - 1.0).abs() > SNAP {
            return Err(Error::InvalidPotential(format!(
                "last piece ends at {}, expected 1",
                pieces[last].hi
            )));
        }
        pieces[last].hi = 1.0;
        for j in 1..pieces.len() {
            if (pieces[j].lo - pieces[j - 1].hi).abs() > SNAP {
                return Err(Error::InvalidPotential(format!(
                    "gap between pieces at x = {}",
                    pieces[j - 1].hi
                )));
            }
            let boundary = pieces[j].lo;
            pieces[j - 1].hi = boundary;
        }
        Ok(Self {
            repr: Representation::Piecewise { pieces },
            smoothness_s: 0,
            jumps: Vec::new(),
        })
    }

    /// Build from equispaced samples `v_j = q(j / M)`. `M` must be a power
    /// of two, at least [`MIN_SAMPLES`].
    pub fn from_samples(values: Vec<Complex64>) -> Result<Self> {
        let m = values.len();
        if m < MIN_SAMPLES || !m.is_power_of_two() {
            return Err(Error::InvalidPotential(format!(
                "sample count {m} is not a power of two >= {MIN_SAMPLES}"
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidPotential("non-finite sample".into()));
        }
        let spectrum = sampled::spectrum(&values);
        let spline = PeriodicSpline::new(&values);
        Ok(Self {
            repr: Representation::Sampled {
                values,
                spectrum,
                spline,
            },
            smoothness_s: 0,
            jumps: Vec::new(),
        })
    }

    /// Attach the declared smoothness class: derivatives up to `s - 1` are
    /// continuous, the `s`-th may jump. Zero means no declaration.
    pub fn with_smoothness(mut self, s: u32) -> Self {
        self.smoothness_s = s;
        self
    }

    /// Attach declared derivative jumps.
    pub fn with_jumps(mut self, jumps: Vec<JumpDeclaration>) -> Result<Self> {
        for j in &jumps {
            if !(0.0..1.0).contains(&j.location) {
                return Err(Error::InvalidPotential(format!(
                    "jump location {} outside [0, 1)",
                    j.location
                )));
            }
            if !j.size.is_finite() || j.size == 0.0 {
                return Err(Error::InvalidPotential(format!(
                    "jump at {} has size {}, expected finite and nonzero",
                    j.location, j.size
                )));
            }
        }
        self.jumps = jumps;
        Ok(self)
    }

    pub fn smoothness(&self) -> u32 {
        self.smoothness_s
    }

    pub fn jumps(&self) -> &[JumpDeclaration] {
        &self.jumps
    }

    /// Representation name for report headers.
    pub fn kind(&self) -> &'static str {
        match &self.repr {
            Representation::Fourier { .. } => "fourier",
            Representation::Piecewise { .. } => "piecewise",
            Representation::Sampled { .. } => "sampled",
        }
    }

    /// The mean `q_0 = int_0^1 q`.
    pub fn mean(&self) -> Complex64 {
        match &self.repr {
            Representation::Fourier { coeffs } => {
                coeffs.get(&0).copied().unwrap_or(Complex64::new(0.0, 0.0))
            }
            Representation::Piecewise { pieces } => pieces
                .iter()
                .map(|p| {
                    Complex64::new(
                        poly::poly_integral(&p.re, p.lo, p.hi),
                        poly::poly_integral(&p.im, p.lo, p.hi),
                    )
                })
                .sum(),
            Representation::Sampled { spectrum, .. } => spectrum[0],
        }
    }

    /// The same potential with its mean removed.
    pub fn normalize(&self) -> Self {
        let mu = self.mean();
        let mut out = self.clone();
        match &mut out.repr {
            Representation::Fourier { coeffs } => {
                coeffs.remove(&0);
            }
            Representation::Piecewise { pieces } => {
                for p in pieces {
                    if p.re.is_empty() {
                        p.re.push(0.0);
                    }
                    if p.im.is_empty() {
                        p.im.push(0.0);
                    }
                    p.re[0] -= mu.re;
                    p.im[0] -= mu.im;
                }
            }
            Representation::Sampled {
                values,
                spectrum,
                spline,
            } => {
                for v in values.iter_mut() {
                    *v -= mu;
                }
                *spectrum = sampled::spectrum(values);
                *spline = PeriodicSpline::new(values);
            }
        }
        out
    }

    /// Pointwise value `q(x)`, with `x` taken mod 1.
    pub fn eval(&self, x: f64) -> Complex64 {
        let xw = x - x.floor();
        match &self.repr {
            Representation::Fourier { coeffs } => coeffs
                .iter()
                .map(|(&n, &c)| c * Complex64::new(0.0, TAU * n as f64 * xw).exp())
                .sum(),
            Representation::Piecewise { pieces } => {
                let idx = pieces
                    .partition_point(|p| p.hi <= xw)
                    .min(pieces.len() - 1);
                pieces[idx].eval(xw)
            }
            Representation::Sampled { spline, .. } => spline.eval(xw),
        }
    }

    /// One-sided value: like [`eval`](Self::eval), but where the potential
    /// jumps the limit from the left is taken, with `q(0-) = q(1-)` by
    /// periodicity. The shooting integrator needs this when a step lands
    /// exactly on a piece boundary.
    pub fn eval_left(&self, x: f64) -> Complex64 {
        match &self.repr {
            Representation::Piecewise { pieces } => {
                let mut xw = x - x.floor();
                if xw == 0.0 {
                    xw = 1.0;
                }
                let idx = pieces
                    .partition_point(|p| p.hi < xw)
                    .min(pieces.len() - 1);
                pieces[idx].eval(xw)
            }
            _ => self.eval(x),
        }
    }

    /// Interior points of `(0, 1)` where the potential may lose smoothness;
    /// the shooting integrator restarts its stepper there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.repr {
            Representation::Piecewise { pieces } => {
                pieces.iter().skip(1).map(|p| p.lo).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Largest `|n|` for which `q_n` can be requested, if the representation
    /// bounds it.
    pub fn max_bandwidth(&self) -> Option<i64> {
        match &self.repr {
            Representation::Fourier { .. } | Representation::Piecewise { .. } => None,
            Representation::Sampled { values, .. } => Some(values.len() as i64 / 4),
        }
    }

    /// The coefficient `q_n`.
    ///
    /// Exact for the Fourier representation (absent indices are zero) and
    /// closed-form for polynomial pieces. For samples it is the DFT value,
    /// refused outside the anti-aliasing window `|n| <= M/4`.
    pub fn fourier_coefficient(&self, n: i64) -> Result<Complex64> {
        match &self.repr {
            Representation::Fourier { coeffs } => {
                Ok(coeffs.get(&n).copied().unwrap_or(Complex64::new(0.0, 0.0)))
            }
            Representation::Piecewise { pieces } => Ok(pieces
                .iter()
                .map(|p| {
                    poly::poly_phase_integral(&p.re, n, p.lo, p.hi)
                        + Complex64::i() * poly::poly_phase_integral(&p.im, n, p.lo, p.hi)
                })
                .sum()),
            Representation::Sampled { values, spectrum, .. } => {
                let m = values.len() as i64;
                if n.abs() > m / 4 {
                    return Err(Error::BandwidthExceeded {
                        requested: n,
                        max: m / 4,
                    });
                }
                Ok(spectrum[n.rem_euclid(m) as usize])
            }
        }
    }

    /// Paired coefficient data for `n >= 1`. See [`FourierTriple`].
    pub fn fourier_triple(&self, n: i64) -> Result<FourierTriple> {
        if n < 1 {
            return Err(Error::InvalidPotential(format!(
                "triple index {n} must be >= 1"
            )));
        }
        let q_plus = self.fourier_coefficient(n)?;
        let q_minus = self.fourier_coefficient(-n)?;
        Ok(FourierTriple {
            q_plus,
            q_minus,
            f: 0.5 * (q_plus.re + q_minus.re),
            g: 0.5 * (q_plus.re - q_minus.re),
        })
    }

    /// Scan the coefficient window for imaginary parts. PT symmetry is
    /// equivalent to every `q_n` being real, so `max_violation <= tol`
    /// certifies the symmetry up to the scanned bandwidth.
    pub fn validate_pt(&self, tol: f64) -> PtReport {
        let band = match &self.repr {
            Representation::Fourier { coeffs } => coeffs
                .keys()
                .map(|n| n.abs())
                .max()
                .unwrap_or(0),
            Representation::Piecewise { .. } => PT_SCAN_BANDWIDTH,
            Representation::Sampled { values, .. } => values.len() as i64 / 4,
        };
        let mut worst = (0.0f64, 0i64);
        for n in -band..=band {
            let c = self
                .fourier_coefficient(n)
                .expect("scan stays inside the admissible bandwidth");
            if c.im.abs() > worst.0 {
                worst = (c.im.abs(), n);
            }
        }
        PtReport {
            is_pt: worst.0 <= tol,
            max_violation: worst.0,
            worst_n: worst.1,
        }
    }

    /// Mean of the antiderivative `Q(x) = int_0^x q` over one period.
    ///
    /// Meaningful for mean-zero potentials (otherwise `Q` is not periodic);
    /// callers normalize first. Exact for Fourier and piecewise data, a
    /// bandwidth-limited sum for samples.
    pub fn antiderivative_mean(&self) -> Complex64 {
        match &self.repr {
            Representation::Fourier { coeffs } => -coeffs
                .iter()
                .filter(|(&n, _)| n != 0)
                .map(|(&n, &c)| c / Complex64::new(0.0, TAU * n as f64))
                .sum::<Complex64>(),
            Representation::Piecewise { pieces } => {
                let mut at_lo = Complex64::new(0.0, 0.0); // Q at the piece start
                let mut acc = Complex64::new(0.0, 0.0);
                for p in pieces {
                    let pre = poly::poly_antiderivative(&p.re);
                    let pim = poly::poly_antiderivative(&p.im);
                    let prim = |x: f64| {
                        Complex64::new(poly::poly_eval(&pre, x), poly::poly_eval(&pim, x))
                    };
                    acc += (at_lo - prim(p.lo)) * (p.hi - p.lo)
                        + Complex64::new(
                            poly::poly_integral(&pre, p.lo, p.hi),
                            poly::poly_integral(&pim, p.lo, p.hi),
                        );
                    at_lo += prim(p.hi) - prim(p.lo);
                }
                acc
            }
            Representation::Sampled { values, spectrum, .. } => {
                let m = values.len() as i64;
                let mut acc = Complex64::new(0.0, 0.0);
                for n in 1..=(m / 4) {
                    let plus = spectrum[n.rem_euclid(m) as usize];
                    let minus = spectrum[(-n).rem_euclid(m) as usize];
                    acc -= (plus - minus) / Complex64::new(0.0, TAU * n as f64);
                }
                acc
            }
        }
    }

    /// Crude upper estimate of `sup |q|`, used to size search boxes.
    pub fn sup_estimate(&self) -> f64 {
        let mut sup = 0.0f64;
        for j in 0..2048 {
            sup = sup.max(self.eval((j as f64 + 0.5) / 2048.0).norm());
        }
        if let Representation::Piecewise { pieces } = &self.repr {
            for p in pieces {
                sup = sup.max(p.eval(p.lo).norm()).max(p.eval(p.hi).norm());
            }
        }
        sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// q(x) = i (1/2 - x) on [0, 1): the model odd jump potential.
    fn sawtooth() -> PeriodicPotential {
        PeriodicPotential::from_pieces(vec![Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![],
            im: vec![0.5, -1.0],
        }])
        .unwrap()
    }

    #[test]
    fn sawtooth_triples() {
        let q = sawtooth();
        assert_abs_diff_eq!(q.mean().norm(), 0.0, epsilon = 1e-15);
        for n in [1i64, 3, 64] {
            let t = q.fourier_triple(n).unwrap();
            let want = 1.0 / (TAU * n as f64);
            assert_abs_diff_eq!(t.g, want, epsilon = 1e-14);
            assert_abs_diff_eq!(t.f, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(t.q_plus.im, 0.0, epsilon = 1e-14);
        }
        // Q(x) = (i/2) x (1 - x), whose mean is i/12.
        let q0 = q.antiderivative_mean();
        assert_abs_diff_eq!(q0.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q0.im, 1.0 / 12.0, epsilon = 1e-15);
        let pt = q.validate_pt(1e-10);
        assert!(pt.is_pt, "violation {:.3e} at {}", pt.max_violation, pt.worst_n);
    }

    #[test]
    fn fourier_representation_roundtrip() {
        // 2 cos(2 pi x) + 0.5 i sin(2 pi x): q_1 = 1.25, q_{-1} = 0.75.
        let q = PeriodicPotential::from_fourier([(1, c(1.25, 0.0)), (-1, c(0.75, 0.0))]).unwrap();
        let t = q.fourier_triple(1).unwrap();
        assert_abs_diff_eq!(t.f, 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(t.g, 0.25, epsilon = 0.0);
        let x = 0.3127;
        let want = c(2.0 * (TAU * x).cos(), 0.5 * (TAU * x).sin());
        assert!((q.eval(x) - want).norm() < 1e-14);
        assert!((q.eval(x + 3.0) - want).norm() < 1e-13);
        assert!(q.validate_pt(1e-12).is_pt);
    }

    #[test]
    fn sampled_agrees_with_fourier_source() {
        let m = 128;
        let f = |x: f64| c((TAU * x).cos() * 2.0, 0.0) + c(0.0, 0.5) * (TAU * x).sin();
        let v: Vec<_> = (0..m).map(|j| f(j as f64 / m as f64)).collect();
        let q = PeriodicPotential::from_samples(v).unwrap();
        assert!((q.fourier_coefficient(1).unwrap() - c(1.25, 0.0)).norm() < 1e-13);
        assert!((q.fourier_coefficient(-1).unwrap() - c(0.75, 0.0)).norm() < 1e-13);
        assert!(q.fourier_coefficient(40).is_err(), "beyond M/4 must refuse");
        assert_eq!(q.max_bandwidth(), Some(32));
        // Sampled sawtooth-free field is smooth, so the spline is accurate.
        assert!((q.eval(0.618) - f(0.618)).norm() < 1e-8);
    }

    #[test]
    fn normalize_removes_mean_everywhere() {
        let q = PeriodicPotential::from_pieces(vec![Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![3.0, 1.0],
            im: vec![-0.25],
        }])
        .unwrap();
        let n = q.normalize();
        assert!(n.mean().norm() < 1e-15);
        // Pointwise the shift is exactly the old mean.
        let mu = q.mean();
        for x in [0.0, 0.2, 0.77] {
            assert!((q.eval(x) - n.eval(x) - mu).norm() < 1e-15);
        }
    }

    #[test]
    fn piecewise_tiling_is_validated() {
        let bad = PeriodicPotential::from_pieces(vec![
            Piece {
                lo: 0.0,
                hi: 0.4,
                re: vec![1.0],
                im: vec![],
            },
            Piece {
                lo: 0.5,
                hi: 1.0,
                re: vec![2.0],
                im: vec![],
            },
        ]);
        assert!(matches!(bad, Err(Error::InvalidPotential(_))));
        let bad = PeriodicPotential::from_pieces(vec![Piece {
            lo: 0.0,
            hi: 0.9,
            re: vec![1.0],
            im: vec![],
        }]);
        assert!(bad.is_err());
    }

    #[test]
    fn sample_count_must_be_power_of_two() {
        let v = vec![c(0.0, 0.0); 24];
        assert!(PeriodicPotential::from_samples(v).is_err());
    }

    #[test]
    fn non_pt_potential_is_flagged() {
        let q = PeriodicPotential::from_fourier([(2, c(1.0, 0.3))]).unwrap();
        let rep = q.validate_pt(1e-10);
        assert!(!rep.is_pt);
        assert_eq!(rep.worst_n, 2);
        assert_abs_diff_eq!(rep.max_violation, 0.3, epsilon = 0.0);
    }

    #[test]
    fn one_sided_values_at_jumps() {
        let q = sawtooth();
        // q(1-) = i (1/2 - 1) = -i/2, while periodic wrap gives q(1) = q(0).
        assert!((q.eval_left(1.0) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((q.eval(1.0) - c(0.0, 0.5)).norm() < 1e-15);
        assert!((q.eval_left(0.25) - q.eval(0.25)).norm() < 1e-15);
    }

    #[test]
    fn breakpoints_list_interior_boundaries() {
        let q = PeriodicPotential::from_pieces(vec![
            Piece {
                lo: 0.0,
                hi: 0.5,
                re: vec![0.0, 0.0, 6.0],
                im: vec![],
            },
            Piece {
                lo: 0.5,
                hi: 1.0,
                re: vec![1.0],
                im: vec![],
            },
        ])
        .unwrap();
        assert_eq!(q.breakpoints(), vec![0.5]);
        assert!(sawtooth().breakpoints().is_empty());
    }
}
