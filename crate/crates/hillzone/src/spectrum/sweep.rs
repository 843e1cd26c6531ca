//! Band curves followed across the phase interval.
//!
//! A sweep solves the truncated problem on a phase grid, labels every
//! eigenvalue with its canonical index, and then inspects each band for the
//! interval of phases on which it is real. Where a band leaves or enters
//! the real axis, two bands collide; the collision parameter is located by
//! a root find on the pair's squared half-difference
//!
//! ```text
//! s(t) = Re( ((lambda_n(t) - lambda_p(t)) / 2)^2 )
//! ```
//!
//! which is positive while the pair is real and separated, negative while
//! it is a conjugate couple, and crosses zero exactly at the collision.
//! Unlike either eigenvalue alone, `s` and the pair mean are smooth through
//! the collision, so the refined phase and the band-edge value carry the
//! root finder's full accuracy instead of the square-root blowup an
//! eigenvalue-wise bisection would see. Both members of a pair refine the
//! same scalar over the same bracket, so the shared band edge comes out
//! identical on the two curves, not merely close.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::potential::PeriodicPotential;
use crate::spectrum::{galerkin, numbering};
use crate::tol::{Tolerances, BLOCH_ZONE_H};

/// One band's eigenvalue at one phase.
#[derive(Debug, Clone, Copy)]
pub struct BlochSample {
    pub t: f64,
    pub lambda: Complex64,
}

/// Set of real values a band attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealInterval {
    Empty,
    Point(f64),
    Interval(f64, f64),
}

impl RealInterval {
    /// Endpoints `(low, high)`; `None` for an empty trace.
    pub fn endpoints(&self) -> Option<(f64, f64)> {
        match *self {
            RealInterval::Empty => None,
            RealInterval::Point(x) => Some((x, x)),
            RealInterval::Interval(lo, hi) => Some((lo, hi)),
        }
    }
}

/// A single band across the phase interval.
///
/// `real_from`/`real_to` bound the phases where the band is real (a band
/// that leaves and re-enters the axis is summarized by the hull of its real
/// portion). A boundary strictly inside the interval is a collision with
/// the partner band and is also recorded as a coalescence parameter.
#[derive(Debug, Clone)]
pub struct BandCurve {
    pub n: i32,
    pub samples: Vec<BlochSample>,
    pub endpoint_zero: Complex64,
    pub endpoint_pi: Complex64,
    pub real_from: Option<f64>,
    pub real_to: Option<f64>,
    pub left_coalescence: Option<f64>,
    pub right_coalescence: Option<f64>,
    pub real_interval: RealInterval,
}

/// All bands of one potential in a window of indices.
#[derive(Debug, Clone)]
pub struct BandSweep {
    pub k: i64,
    /// Index from which counting certified the numbering (see
    /// [`numbering::estimate_threshold`]).
    pub threshold: i32,
    pub t_grid: Vec<f64>,
    pub curves: BTreeMap<i32, BandCurve>,
}

fn solve_numbered(
    q: &PeriodicPotential,
    t: f64,
    k: i64,
    threshold: i32,
    tol_real: f64,
) -> Result<BTreeMap<i32, Complex64>> {
    let raw = galerkin::bloch_eigenvalues(q, t, k)?;
    numbering::number_eigenvalues(&raw, t, threshold, tol_real)
}

impl BandSweep {
    /// Sweep bands `-n_window..=n_window` on a grid of `grid_size` cells.
    pub fn compute(
        q: &PeriodicPotential,
        k: i64,
        n_window: i32,
        grid_size: usize,
        tol: &Tolerances,
    ) -> Result<Self> {
        if n_window < 1 {
            return Err(Error::NumericsError("band window must be positive".into()));
        }
        if (n_window as i64 + 1) > galerkin::trusted_indices(k) {
            return Err(Error::NumericsError(format!(
                "band window {n_window} exceeds the trusted range of truncation {k}"
            )));
        }
        if grid_size < 16 {
            return Err(Error::NumericsError(format!(
                "phase grid of {grid_size} cells is too coarse to bracket collisions"
            )));
        }
        let threshold = numbering::estimate_threshold(q, k)?;

        let mut grid: Vec<f64> = (0..=grid_size)
            .map(|j| PI * j as f64 / grid_size as f64)
            .collect();
        // The zone boundaries take part in downstream checks; pin them.
        grid.push(BLOCH_ZONE_H);
        grid.push(PI - BLOCH_ZONE_H);
        grid.sort_by(f64::total_cmp);
        grid.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

        let maps: Vec<BTreeMap<i32, Complex64>> = grid
            .par_iter()
            .map(|&t| solve_numbered(q, t, k, threshold, tol.real))
            .collect::<Result<Vec<_>>>()?;

        let mut curves = BTreeMap::new();
        for n in -n_window..=n_window {
            curves.insert(n, build_curve(q, n, k, threshold, &grid, &maps, tol)?);
        }
        Ok(BandSweep {
            k,
            threshold,
            t_grid: grid,
            curves,
        })
    }
}

/// Convenience wrapper: sweep just wide enough to resolve band `n` and the
/// partners it can collide with, and return that one curve.
pub fn trace_band(
    q: &PeriodicPotential,
    n: i32,
    k: i64,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<BandCurve> {
    let window = n.unsigned_abs().max(1) as i32 + 1;
    let mut sweep = BandSweep::compute(q, k, window, grid_size, tol)?;
    Ok(sweep.curves.remove(&n).expect("band inside window"))
}

fn build_curve(
    q: &PeriodicPotential,
    n: i32,
    k: i64,
    threshold: i32,
    grid: &[f64],
    maps: &[BTreeMap<i32, Complex64>],
    tol: &Tolerances,
) -> Result<BandCurve> {
    let samples: Vec<BlochSample> = grid
        .iter()
        .zip(maps)
        .map(|(&t, m)| BlochSample { t, lambda: m[&n] })
        .collect();
    let mask: Vec<bool> = samples
        .iter()
        .map(|s| s.lambda.im.abs() <= tol.real)
        .collect();
    let endpoint_zero = samples.first().unwrap().lambda;
    let endpoint_pi = samples.last().unwrap().lambda;

    let Some(first) = mask.iter().position(|&m| m) else {
        return Ok(BandCurve {
            n,
            samples,
            endpoint_zero,
            endpoint_pi,
            real_from: None,
            real_to: None,
            left_coalescence: None,
            right_coalescence: None,
            real_interval: RealInterval::Empty,
        });
    };
    let last = mask.iter().rposition(|&m| m).unwrap();

    let mut pool: Vec<f64> = samples
        .iter()
        .zip(&mask)
        .filter(|&(_, &m)| m)
        .map(|(s, _)| s.lambda.re)
        .collect();

    let (real_from, left_coalescence) = if first == 0 {
        (0.0, None)
    } else {
        let (ts, value) = refine_boundary(q, n, k, threshold, grid, maps, first - 1, tol)?;
        pool.push(value);
        (ts, Some(ts))
    };
    let (real_to, right_coalescence) = if last == grid.len() - 1 {
        (PI, None)
    } else {
        let (ts, value) = refine_boundary(q, n, k, threshold, grid, maps, last, tol)?;
        pool.push(value);
        (ts, Some(ts))
    };

    let lo = pool.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = pool.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let real_interval = if lo < hi {
        RealInterval::Interval(lo, hi)
    } else {
        RealInterval::Point(lo)
    };

    Ok(BandCurve {
        n,
        samples,
        endpoint_zero,
        endpoint_pi,
        real_from: Some(real_from),
        real_to: Some(real_to),
        left_coalescence,
        right_coalescence,
        real_interval,
    })
}

/// Band `n`'s collision partner for a boundary bracketed in `[t_lo, t_hi]`.
///
/// Collisions live near the ends of the phase interval, so the bracket is
/// classified by which end it touches; a bracket strictly in the interior
/// has no designated partner and falls back to the generic search.
fn pair_partner(n: i32, t_lo: f64, t_hi: f64) -> Option<i32> {
    if t_lo <= 1.5 * BLOCH_ZONE_H {
        (n != 0).then_some(-n)
    } else if t_hi >= PI - 1.5 * BLOCH_ZONE_H {
        Some(-n - 1)
    } else {
        None
    }
}

/// Locate the reality boundary of band `n` inside grid cell `j..j+1` and
/// return `(t, band edge value)`.
fn refine_boundary(
    q: &PeriodicPotential,
    n: i32,
    k: i64,
    threshold: i32,
    grid: &[f64],
    maps: &[BTreeMap<i32, Complex64>],
    j: usize,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    let (t_lo, t_hi) = (grid[j], grid[j + 1]);
    let partner = pair_partner(n, t_lo, t_hi).filter(|p| p.unsigned_abs() as i64 <= k);

    if let Some(p) = partner {
        let s_of = |m: &BTreeMap<i32, Complex64>| {
            let d = (m[&n] - m[&p]) * 0.5;
            (d * d).re
        };
        let (s_lo, s_hi) = (s_of(&maps[j]), s_of(&maps[j + 1]));
        if s_lo == 0.0 || s_hi == 0.0 || s_lo * s_hi < 0.0 {
            let f = |t: f64| -> Result<f64> {
                Ok(s_of(&solve_numbered(q, t, k, threshold, tol.real)?))
            };
            let ts = brent(f, t_lo, t_hi, s_lo, s_hi, 1e-12, 120, n)?;
            let m = solve_numbered(q, ts, k, threshold, tol.real)?;
            let mean = (m[&n] + m[&p]) * 0.5;
            return Ok((ts, mean.re));
        }
        // The pair scalar did not bracket: the boundary in this cell is not
        // a clean two-band collision. Fall through to the generic search.
    }

    let g_of = |lam: Complex64| lam.im.abs() - tol.real;
    let (g_lo, g_hi) = (g_of(maps[j][&n]), g_of(maps[j + 1][&n]));
    let f = |t: f64| -> Result<f64> {
        Ok(g_of(solve_numbered(q, t, k, threshold, tol.real)?[&n]))
    };
    let ts = brent(f, t_lo, t_hi, g_lo, g_hi, 1e-12, 120, n)?;
    let lam = solve_numbered(q, ts, k, threshold, tol.real)?[&n];
    Ok((ts, lam.re))
}

/// Brent's method on a bracketing interval, with the function allowed to
/// fail (eigenvalue solves happen inside).
fn brent<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a0: f64,
    b0: f64,
    fa0: f64,
    fb0: f64,
    xtol: f64,
    max_iter: usize,
    n: i32,
) -> Result<f64> {
    if fa0 == 0.0 {
        return Ok(a0);
    }
    if fb0 == 0.0 {
        return Ok(b0);
    }
    if fa0 * fb0 > 0.0 {
        return Err(Error::CoalescenceNotFound {
            n,
            lo: a0,
            hi: b0,
        });
    }
    let (mut a, mut b, mut c) = (a0, b0, b0);
    let (mut fa, mut fb, mut fc) = (fa0, fb0, fb0);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..max_iter {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let (r0, r1) = (fa / fc, fb / fc);
                (
                    s * (2.0 * xm * r0 * (r0 - r1) - (b - a) * (r1 - 1.0)),
                    (r0 - 1.0) * (r1 - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * xm.signum() };
        fb = f(b)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free() -> PeriodicPotential {
        PeriodicPotential::from_fourier(vec![]).unwrap()
    }

    fn ramp() -> PeriodicPotential {
        // Purely imaginary with odd real spectrum of coefficients: every
        // band pair turns conjugate near both ends of the phase interval.
        PeriodicPotential::from_pieces(vec![crate::potential::Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![],
            im: vec![0.5, -1.0],
        }])
        .unwrap()
    }

    #[test]
    fn free_bands_are_real_with_exact_intervals() {
        let sweep = BandSweep::compute(&free(), 12, 2, 32, &Tolerances::default()).unwrap();
        for (n, curve) in &sweep.curves {
            assert_eq!(curve.real_from, Some(0.0));
            assert_eq!(curve.real_to, Some(PI));
            assert!(curve.left_coalescence.is_none());
            assert!(curve.right_coalescence.is_none());
            let (lo, hi) = curve.real_interval.endpoints().unwrap();
            let at = |t: f64| (2.0 * PI * *n as f64 + t).powi(2);
            let (want_lo, want_hi) = if *n >= 0 {
                (at(0.0), at(PI))
            } else {
                (at(PI), at(0.0))
            };
            assert!((lo - want_lo).abs() < 1e-6, "band {n}: {lo} vs {want_lo}");
            assert!((hi - want_hi).abs() < 1e-6, "band {n}: {hi} vs {want_hi}");
        }
    }

    #[test]
    fn imaginary_ramp_pairs_collide_near_both_ends() {
        let sweep = BandSweep::compute(&ramp(), 20, 2, 32, &Tolerances::default()).unwrap();
        let b1 = &sweep.curves[&1];
        let eps = b1.left_coalescence.expect("band 1 leaves the axis near 0");
        assert!(eps > 0.0 && eps < BLOCH_ZONE_H, "eps = {eps}");
        assert_eq!(b1.real_from, Some(eps));

        // Both members of the colliding pair see the same boundary.
        let bm1 = &sweep.curves[&-1];
        assert_eq!(bm1.left_coalescence, Some(eps));
        let (a1, _) = b1.real_interval.endpoints().unwrap();
        let (_, bm1_hi) = bm1.real_interval.endpoints().unwrap();
        assert!(
            (a1 - bm1_hi).abs() < 1e-9,
            "shared band edge: {a1} vs {bm1_hi}"
        );

        // Near pi the partner of band -1 is band 0.
        let delta = bm1.right_coalescence.expect("band -1 leaves the axis near pi");
        assert!(delta > PI - BLOCH_ZONE_H && delta < PI);
        assert_eq!(sweep.curves[&0].right_coalescence, Some(delta));
    }

    #[test]
    fn trace_band_matches_sweep() {
        let tol = Tolerances::default();
        let sweep = BandSweep::compute(&ramp(), 20, 2, 32, &tol).unwrap();
        let solo = trace_band(&ramp(), 1, 20, 32, &tol).unwrap();
        assert_eq!(solo.left_coalescence, sweep.curves[&1].left_coalescence);
        assert_eq!(solo.real_interval, sweep.curves[&1].real_interval);
    }

    #[test]
    fn brent_finds_simple_roots() {
        let f = |x: f64| -> Result<f64> { Ok(x * x - 2.0) };
        let r = brent(f, 0.0, 2.0, -2.0, 2.0, 1e-14, 100, 0).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
        let g = |x: f64| -> Result<f64> { Ok((x - 0.3).powi(3)) };
        let r = brent(g, 0.0, 1.0, -0.027, 0.343, 1e-14, 200, 0).unwrap();
        assert!((r - 0.3).abs() < 1e-7);
    }
}
