//! Periodic and antiperiodic eigenvalues from the discriminant.
//!
//! Periodic eigenvalues solve `F(lambda) = 2` and antiperiodic ones
//! `F(lambda) = -2`. Both kinds come in pairs that sit near double points
//! of the free problem, and the whole point of computing them is to decide,
//! pair by pair, whether the pair is split on the real axis (an open gap),
//! collapsed to a double eigenvalue (a closed gap), or off the real axis as
//! a conjugate couple. That decision is numerically delicate exactly when
//! it matters, so the pipeline is built around counting first and refining
//! second:
//!
//! 1. every candidate region is a rectangle in the complex plane, and the
//!    number of roots inside is established by the argument principle with
//!    adaptive phase tracking along the boundary;
//! 2. a cluster of two roots is resolved through the critical point of
//!    `G = F -+ 2` between them: Newton on `G'` lands on the critical
//!    point, and the local quadratic model `G(mu + d) = G(mu) + c2 d^2`
//!    splits the pair as `d = sqrt(-G(mu)/c2)`;
//! 3. widely split pairs are then re-polished root by root, while a value
//!    of `G(mu)` at the integrator's noise level is reported as a genuine
//!    double eigenvalue rather than split into fiction.
//!
//! The counts additionally have to add up: the total over one family's big
//! rectangle must equal the sum over its clusters, which catches roots that
//! drifted out of every localization rectangle. As a final guard the roots
//! are compared against an independently computed truncated-basis spectrum
//! and a gross mismatch is an error, not a warning.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::floquet;
use crate::potential::PeriodicPotential;
use crate::spectrum::galerkin;
use crate::tol::Tolerances;

/// Boundary condition selecting one of the two root families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum BoundaryCondition {
    Periodic,
    Antiperiodic,
}

/// How an eigenvalue sits relative to the real axis and its pair partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    /// Simple and real: its pair is split, the gap between them is open.
    SimpleReal,
    /// Double eigenvalue: the pair has collapsed, the gap is closed.
    Double,
    /// Member of a complex-conjugate couple off the real axis.
    Nonreal,
}

/// One periodic or antiperiodic eigenvalue.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct TwoPeriodicEigenvalue {
    /// Canonical index: the pair `{n, -n}` meets at periodic eigenvalues,
    /// `{n, -n-1}` at antiperiodic ones; a double eigenvalue carries the
    /// non-negative index of its pair.
    pub n: i32,
    pub boundary: BoundaryCondition,
    pub lambda: Complex64,
    pub multiplicity: u8,
    pub classification: Classification,
}

/// ODE tolerance for boundary counting, where only the phase matters.
const TOL_COUNT: f64 = 1e-9;
/// ODE tolerance for Newton refinement and the final function values.
const TOL_POLISH: f64 = 1e-13;
/// `|G|` below this is indistinguishable from zero at `TOL_POLISH`; the
/// quadratic split of such a value would be noise dressed up as a gap.
const NOISE_FLOOR: f64 = 2e-12;
/// A boundary node with `|G|` below this means the contour grazes a root.
const CONTOUR_FLOOR: f64 = 1e-7;
/// Pairs split wider than this get an independent per-root Newton polish.
const POLISH_SPLIT: f64 = 1e-3;
const MAX_RETRIES: usize = 5;

/// All periodic and antiperiodic eigenvalues with real part up to
/// `lambda_max` (clusters are included while their reference double point
/// is below the cap), sorted by real part.
pub fn two_periodic_roots(
    q: &PeriodicPotential,
    lambda_max: f64,
    tol: &Tolerances,
) -> Result<Vec<TwoPeriodicEigenvalue>> {
    if !lambda_max.is_finite() || lambda_max <= 0.0 {
        return Err(Error::NumericsError(format!(
            "lambda_max = {lambda_max} leaves no spectrum to search"
        )));
    }
    let pt = q.validate_pt(tol.pt);
    if !pt.is_pt {
        return Err(Error::InvalidPotential(format!(
            "pair classification assumes PT symmetry, but coefficient {} has \
             imaginary part {:.3e}",
            pt.worst_n, pt.max_violation
        )));
    }

    let sup = q.sup_estimate();
    let mut out = family_roots(q, BoundaryCondition::Periodic, lambda_max, sup, tol)?;
    out.extend(family_roots(
        q,
        BoundaryCondition::Antiperiodic,
        lambda_max,
        sup,
        tol,
    )?);
    out.sort_by(|a, b| {
        a.lambda
            .re
            .total_cmp(&b.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
    });
    cross_check(q, &out)?;
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    re_lo: f64,
    re_hi: f64,
    im: f64,
}

impl Rect {
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, -self.im),
            Complex64::new(self.re_hi, -self.im),
            Complex64::new(self.re_hi, self.im),
            Complex64::new(self.re_lo, self.im),
        ]
    }

    fn grow(&self, factor: f64, re_cap: (f64, f64)) -> Rect {
        let mid = 0.5 * (self.re_lo + self.re_hi);
        let half = 0.5 * (self.re_hi - self.re_lo) * factor;
        Rect {
            re_lo: (mid - half).max(re_cap.0),
            re_hi: (mid + half).min(re_cap.1),
            im: self.im * factor,
        }
    }
}

struct Cluster {
    rect: Rect,
    expected: usize,
    /// Non-negative pair index, `None` for the low cluster.
    pair: Option<i32>,
    /// Growth cap keeping the rectangle away from neighboring clusters.
    re_cap: (f64, f64),
}

fn family_roots(
    q: &PeriodicPotential,
    boundary: BoundaryCondition,
    lambda_max: f64,
    sup: f64,
    tol: &Tolerances,
) -> Result<Vec<TwoPeriodicEigenvalue>> {
    let pi = std::f64::consts::PI;
    let offset = match boundary {
        BoundaryCondition::Periodic => -2.0,
        BoundaryCondition::Antiperiodic => 2.0,
    };
    let g = |lambda: Complex64, tol_ode: f64| -> Result<Complex64> {
        Ok(floquet::discriminant(q, lambda, tol_ode)? + offset)
    };

    let floor = -(sup + 5.0);
    let im_cap = (sup + 1.0).max(2.0);
    let center = |m: i32| -> f64 {
        match boundary {
            BoundaryCondition::Periodic => (2.0 * pi * m as f64).powi(2),
            BoundaryCondition::Antiperiodic => ((2 * m + 1) as f64 * pi).powi(2),
        }
    };
    // Reference width of pair m's localization disc.
    let width = |m: i32| -> f64 {
        match boundary {
            BoundaryCondition::Periodic => m as f64,
            BoundaryCondition::Antiperiodic => (m + 1) as f64,
        }
    };

    let (base_hi, base_expected) = match boundary {
        BoundaryCondition::Periodic => (pi * pi, 1),
        BoundaryCondition::Antiperiodic => (4.0 * pi * pi, 2),
    };

    let mut clusters = vec![Cluster {
        rect: Rect {
            re_lo: floor,
            re_hi: base_hi,
            im: im_cap,
        },
        expected: base_expected,
        pair: None,
        re_cap: (
            floor - 40.0 * (sup + 1.0),
            0.5 * (base_hi + center(1) - 3.0 * width(1)),
        ),
    }];
    let mut m = 1;
    while center(m) <= lambda_max {
        let c = center(m);
        let w = width(m);
        let gap_lo = 0.5 * (c + center(m - 1).max(base_hi));
        let gap_hi = 0.5 * (c + center(m + 1));
        clusters.push(Cluster {
            rect: Rect {
                re_lo: c - 3.0 * w,
                re_hi: c + 3.0 * w,
                im: w,
            },
            expected: 2,
            pair: Some(m),
            re_cap: (gap_lo, gap_hi),
        });
        m += 1;
    }

    // Argument-principle counts, retried on a grown rectangle when the
    // count comes out wrong or the contour grazes a root.
    let mut counts = Vec::with_capacity(clusters.len());
    for cl in &mut clusters {
        let mut attempt = 0;
        let count = loop {
            match winding_count(&g, &cl.rect)? {
                Ok(n) if n == cl.expected => break n,
                Ok(_) | Err(_) if attempt < MAX_RETRIES => {
                    attempt += 1;
                    cl.rect = cl.rect.grow(1.35, cl.re_cap);
                }
                Ok(n) => {
                    return Err(Error::ContourFailure(format!(
                        "{boundary:?} cluster over [{:.3}, {:.3}] holds {n} roots, \
                         expected {} (after {MAX_RETRIES} retries)",
                        cl.rect.re_lo, cl.rect.re_hi, cl.expected
                    )));
                }
                Err(node) => {
                    return Err(Error::ContourFailure(format!(
                        "{boundary:?} contour over [{:.3}, {:.3}] grazes a root near \
                         {:.6} + {:.6}i (after {MAX_RETRIES} retries)",
                        cl.rect.re_lo, cl.rect.re_hi, node.re, node.im
                    )));
                }
            }
        };
        counts.push(count);
    }

    // The clusters must jointly account for every root of the family in
    // the searched strip; a shortfall means a root escaped localization.
    let tallest = clusters
        .iter()
        .map(|c| c.rect.im)
        .fold(0.0f64, f64::max);
    let big = Rect {
        re_lo: clusters.iter().map(|c| c.rect.re_lo).fold(floor, f64::min),
        re_hi: clusters.last().unwrap().rect.re_hi,
        im: im_cap.max(tallest + 1.0),
    };
    let total = winding_count(&g, &big)?.map_err(|node| {
        Error::ContourFailure(format!(
            "{boundary:?} family contour grazes a root near {:.6} + {:.6}i",
            node.re, node.im
        ))
    })?;
    let in_clusters: usize = counts.iter().sum();
    if total != in_clusters {
        return Err(Error::ContourFailure(format!(
            "{boundary:?} family holds {total} roots below {:.1} but only \
             {in_clusters} were localized in clusters",
            big.re_hi
        )));
    }

    let mut out = Vec::new();
    for cl in &clusters {
        match cl.expected {
            1 => {
                let lambda = single_real_root(&g, cl.rect.re_lo, cl.rect.re_hi)?;
                out.push(TwoPeriodicEigenvalue {
                    n: 0,
                    boundary,
                    lambda: Complex64::new(lambda, 0.0),
                    multiplicity: 1,
                    classification: Classification::SimpleReal,
                });
            }
            _ => out.extend(resolve_pair(&g, cl, boundary, tol)?),
        }
    }
    Ok(out)
}

/// Count roots inside a rectangle by tracking the phase of `G` along its
/// boundary. `Ok(Err(node))` reports a node too close to a root.
#[allow(clippy::type_complexity)]
fn winding_count(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    rect: &Rect,
) -> Result<std::result::Result<usize, Complex64>> {
    let corners = rect.corners();
    let mut total_phase = 0.0f64;
    for side in 0..4 {
        let z1 = corners[side];
        let z2 = corners[(side + 1) % 4];
        let g1 = g(z1, TOL_COUNT)?;
        let g2 = g(z2, TOL_COUNT)?;
        if g1.norm() < CONTOUR_FLOOR {
            return Ok(Err(z1));
        }
        // Roots sit at least about one rectangle height away from the
        // boundary, which bounds the phase velocity along it; segments no
        // longer than the height cannot hide a full extra turn, and the
        // quarter-turn acceptance below then measures the rest honestly.
        let len = (z2 - z1).norm();
        let min_depth = ((len / rect.im).log2().ceil() as i64 + 1).clamp(2, 16) as usize;
        match segment_phase(g, z1, g1, z2, g2, 0, min_depth)? {
            Some(dphi) => total_phase += dphi,
            None => return Ok(Err(0.5 * (z1 + z2))),
        }
    }
    let winding = total_phase / (2.0 * std::f64::consts::PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.1 || rounded < 0.0 {
        return Err(Error::ContourFailure(format!(
            "phase tracking failed to close (winding {winding:.4}) over \
             [{:.3}, {:.3}] x [-{:.3}, {:.3}]",
            rect.re_lo, rect.re_hi, rect.im, rect.im
        )));
    }
    Ok(Ok(rounded as usize))
}

/// Phase increment of `G` along one segment, subdividing at least to
/// `min_depth` and from there until each piece turns by at most a quarter
/// turn. `None` flags a graze.
fn segment_phase(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    z1: Complex64,
    g1: Complex64,
    z2: Complex64,
    g2: Complex64,
    depth: usize,
    min_depth: usize,
) -> Result<Option<f64>> {
    if g2.norm() < CONTOUR_FLOOR {
        return Ok(None);
    }
    let dphi = (g2 / g1).arg();
    if depth >= min_depth && dphi.abs() <= std::f64::consts::FRAC_PI_2 {
        return Ok(Some(dphi));
    }
    if depth >= 52 {
        return Ok(None);
    }
    let zm = 0.5 * (z1 + z2);
    let gm = g(zm, TOL_COUNT)?;
    if gm.norm() < CONTOUR_FLOOR {
        return Ok(None);
    }
    let left = segment_phase(g, z1, g1, zm, gm, depth + 1, min_depth)?;
    let right = segment_phase(g, zm, gm, z2, g2, depth + 1, min_depth)?;
    Ok(match (left, right) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    })
}

/// The low cluster holds one root, and one real root of a function that is
/// real on the real axis: scan for the sign change and bisect it down.
fn single_real_root(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    const SCAN: usize = 96;
    let at = |x: f64| -> Result<f64> { Ok(g(Complex64::new(x, 0.0), TOL_POLISH)?.re) };
    let mut prev_x = lo;
    let mut prev_v = at(lo)?;
    for j in 1..=SCAN {
        let x = lo + (hi - lo) * j as f64 / SCAN as f64;
        let v = at(x)?;
        if prev_v == 0.0 {
            return Ok(prev_x);
        }
        if prev_v * v <= 0.0 {
            // Plain bisection; the surrounding machinery already paid for
            // the bracket and this runs once per family.
            let (mut a, mut b, mut fa) = (prev_x, x, prev_v);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = at(mid)?;
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            return Ok(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    Err(Error::ContourFailure(format!(
        "no sign change for the low root in [{lo:.3}, {hi:.3}] despite a count of 1"
    )))
}

/// Resolve a verified two-root cluster through its critical point.
fn resolve_pair(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    cl: &Cluster,
    boundary: BoundaryCondition,
    tol: &Tolerances,
) -> Result<Vec<TwoPeriodicEigenvalue>> {
    let rect = &cl.rect;

    // Seed from the real-axis minimum of |G|: between a split real pair, or
    // under a conjugate couple, that is near the critical point either way.
    const SCAN: usize = 48;
    let mut seed = rect.re_lo;
    let mut best = f64::INFINITY;
    for j in 0..=SCAN {
        let x = rect.re_lo + (rect.re_hi - rect.re_lo) * j as f64 / SCAN as f64;
        let v = g(Complex64::new(x, 0.0), TOL_COUNT)?.norm();
        if v < best {
            best = v;
            seed = x;
        }
    }

    let fd = 0.02 * (1.0 + seed.abs()).sqrt();
    let mut mu = Complex64::new(seed, 0.0);
    for _ in 0..30 {
        let (d1, d2) = derivatives(g, mu, fd)?;
        if d2.norm() == 0.0 {
            break;
        }
        let step = d1 / d2;
        mu -= step;
        if step.norm() <= 1e-10 * (1.0 + mu.norm()) {
            break;
        }
    }
    if !(rect.re_lo..=rect.re_hi).contains(&mu.re) || mu.im.abs() > rect.im + 1.0 {
        return Err(Error::ContourFailure(format!(
            "critical-point search left its cluster (reached {:.6} + {:.6}i \
             from [{:.3}, {:.3}])",
            mu.re, mu.im, rect.re_lo, rect.re_hi
        )));
    }

    let g0 = g(mu, TOL_POLISH)?;
    let (_, d2) = derivatives(g, mu, fd)?;
    let c2 = 0.5 * d2;
    let pair_n = cl.pair.unwrap_or(0);

    let double = |lambda: Complex64| TwoPeriodicEigenvalue {
        n: pair_n,
        boundary,
        lambda,
        multiplicity: 2,
        classification: Classification::Double,
    };

    if g0.norm() <= NOISE_FLOOR || c2.norm() == 0.0 {
        return Ok(vec![double(mu)]);
    }

    let d = (-g0 / c2).sqrt();
    if 2.0 * d.norm() <= tol.double {
        return Ok(vec![double(mu)]);
    }

    let mut lam_plus = mu + d;
    let mut lam_minus = mu - d;
    if 2.0 * d.norm() > POLISH_SPLIT {
        lam_plus = newton_root(g, lam_plus, 0.05 * d.norm())?;
        lam_minus = newton_root(g, lam_minus, 0.05 * d.norm())?;
        if (lam_plus - lam_minus).norm() <= tol.double {
            return Ok(vec![double(0.5 * (lam_plus + lam_minus))]);
        }
    }

    let nonreal = lam_plus.im.abs().max(lam_minus.im.abs()) > tol.real;
    // Indexing inside the pair: the positive-imaginary member takes the
    // non-negative index; a split real pair hands its larger value to +n
    // at periodic points and to the negative index at antiperiodic ones.
    let (n_hi, n_lo) = match boundary {
        BoundaryCondition::Periodic => (pair_n, -pair_n),
        BoundaryCondition::Antiperiodic => (-pair_n - 1, pair_n),
    };
    let entry = |n, lambda| TwoPeriodicEigenvalue {
        n,
        boundary,
        lambda,
        multiplicity: 1,
        classification: if nonreal {
            Classification::Nonreal
        } else {
            Classification::SimpleReal
        },
    };
    let out = if nonreal {
        let (up, down) = if lam_plus.im >= lam_minus.im {
            (lam_plus, lam_minus)
        } else {
            (lam_minus, lam_plus)
        };
        vec![entry(pair_n, up), entry(other_index(boundary, pair_n), down)]
    } else {
        let (hi, lo) = if lam_plus.re >= lam_minus.re {
            (lam_plus, lam_minus)
        } else {
            (lam_minus, lam_plus)
        };
        vec![entry(n_lo, lo), entry(n_hi, hi)]
    };
    Ok(out)
}

fn other_index(boundary: BoundaryCondition, pair_n: i32) -> i32 {
    match boundary {
        BoundaryCondition::Periodic => -pair_n,
        BoundaryCondition::Antiperiodic => -pair_n - 1,
    }
}

/// First and second derivative by central differences with step `fd`.
fn derivatives(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    z: Complex64,
    fd: f64,
) -> Result<(Complex64, Complex64)> {
    let gp = g(z + fd, TOL_POLISH)?;
    let gm = g(z - fd, TOL_POLISH)?;
    let g0 = g(z, TOL_POLISH)?;
    let d1 = (gp - gm) / (2.0 * fd);
    let d2 = (gp - 2.0 * g0 + gm) / (fd * fd);
    Ok((d1, d2))
}

/// Newton on `G` itself, for roots far enough from their partner that the
/// derivative at the root is healthy.
fn newton_root(
    g: &dyn Fn(Complex64, f64) -> Result<Complex64>,
    start: Complex64,
    fd: f64,
) -> Result<Complex64> {
    let fd = fd.max(1e-7);
    let mut z = start;
    for _ in 0..30 {
        let g0 = g(z, TOL_POLISH)?;
        let gp = g(z + fd, TOL_POLISH)?;
        let gm = g(z - fd, TOL_POLISH)?;
        let d1 = (gp - gm) / (2.0 * fd);
        if d1.norm() == 0.0 {
            break;
        }
        let step = g0 / d1;
        z -= step;
        if step.norm() <= 1e-12 * (1.0 + z.norm()) {
            break;
        }
        if (z - start).norm() > 1.0 + 0.5 * start.norm() {
            // Diverging; the quadratic-model value is better than garbage.
            return Ok(start);
        }
    }
    Ok(z)
}

/// Independent sanity check: every root must appear in the truncated-basis
/// spectrum of the matching phase, up to that method's own accuracy.
fn cross_check(q: &PeriodicPotential, roots: &[TwoPeriodicEigenvalue]) -> Result<()> {
    if roots.is_empty() {
        return Ok(());
    }
    let max_re = roots
        .iter()
        .map(|r| r.lambda.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let k = ((1.5 * max_re.max(1.0).sqrt() / (2.0 * std::f64::consts::PI)).ceil() as i64 + 10)
        .max(24);
    let periodic = galerkin::bloch_eigenvalues(q, 0.0, k)?;
    let antiperiodic = galerkin::bloch_eigenvalues(q, std::f64::consts::PI, k)?;
    for r in roots {
        let eigs = match r.boundary {
            BoundaryCondition::Periodic => &periodic,
            BoundaryCondition::Antiperiodic => &antiperiodic,
        };
        let dist = eigs
            .iter()
            .map(|e| (e - r.lambda).norm())
            .fold(f64::INFINITY, f64::min);
        let guard = 5e-3 * (1.0 + 1e-3 * r.lambda.re.abs());
        if dist > guard {
            return Err(Error::NumericsError(format!(
                "{:?} root {:.6} + {:.6}i (index {}) is {dist:.2e} away from the \
                 nearest truncated-basis eigenvalue (guard {guard:.2e})",
                r.boundary, r.lambda.re, r.lambda.im, r.n
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn free() -> PeriodicPotential {
        PeriodicPotential::from_fourier(vec![]).unwrap()
    }

    fn cosine() -> PeriodicPotential {
        PeriodicPotential::from_fourier(vec![
            (1, Complex64::new(1.0, 0.0)),
            (-1, Complex64::new(1.0, 0.0)),
        ])
        .unwrap()
    }

    fn ramp() -> PeriodicPotential {
        PeriodicPotential::from_pieces(vec![crate::potential::Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![],
            im: vec![0.5, -1.0],
        }])
        .unwrap()
    }

    fn by_family(
        roots: &[TwoPeriodicEigenvalue],
        boundary: BoundaryCondition,
    ) -> Vec<TwoPeriodicEigenvalue> {
        roots
            .iter()
            .copied()
            .filter(|r| r.boundary == boundary)
            .collect()
    }

    #[test]
    fn free_potential_collapses_every_pair() {
        let roots = two_periodic_roots(&free(), 250.0, &Tolerances::default()).unwrap();
        let per = by_family(&roots, BoundaryCondition::Periodic);
        assert_eq!(per.len(), 3);
        assert!(per[0].lambda.norm() < 1e-8);
        assert_eq!(per[0].classification, Classification::SimpleReal);
        for (m, r) in per[1..].iter().enumerate() {
            let c = (2.0 * PI * (m + 1) as f64).powi(2);
            assert_eq!(r.classification, Classification::Double);
            assert_eq!(r.multiplicity, 2);
            assert_eq!(r.n, m as i32 + 1);
            assert!((r.lambda.re - c).abs() < 1e-7, "{} vs {c}", r.lambda.re);
        }
        let anti = by_family(&roots, BoundaryCondition::Antiperiodic);
        assert_eq!(anti.len(), 3);
        for (m, r) in anti.iter().enumerate() {
            let c = ((2 * m + 1) as f64 * PI).powi(2);
            assert_eq!(r.classification, Classification::Double);
            assert!((r.lambda.re - c).abs() < 1e-7, "{} vs {c}", r.lambda.re);
        }
    }

    #[test]
    fn cosine_splits_low_pairs_on_the_real_axis() {
        let roots = two_periodic_roots(&cosine(), 50.0, &Tolerances::default()).unwrap();
        let per = by_family(&roots, BoundaryCondition::Periodic);
        // Ground eigenvalue plus the split pair {1, -1}.
        assert_eq!(per.len(), 3);
        assert_eq!(per[1].classification, Classification::SimpleReal);
        assert_eq!(per[2].classification, Classification::SimpleReal);
        assert_eq!(per[1].n, -1);
        assert_eq!(per[2].n, 1);
        let split = per[2].lambda.re - per[1].lambda.re;
        assert!(split > 0.1 && split < 4.0, "split {split}");

        let anti = by_family(&roots, BoundaryCondition::Antiperiodic);
        assert_eq!(anti.len(), 2);
        assert_eq!(anti[0].n, 0);
        assert_eq!(anti[1].n, -1);
        assert!(anti[1].lambda.re > anti[0].lambda.re);
    }

    #[test]
    fn imaginary_ramp_sends_pairs_off_axis() {
        let roots = two_periodic_roots(&ramp(), 50.0, &Tolerances::default()).unwrap();
        let anti = by_family(&roots, BoundaryCondition::Antiperiodic);
        assert_eq!(anti.len(), 2);
        for r in &anti {
            assert_eq!(r.classification, Classification::Nonreal);
        }
        let up = anti.iter().find(|r| r.n == 0).unwrap();
        let down = anti.iter().find(|r| r.n == -1).unwrap();
        assert!(up.lambda.im > 1e-4);
        assert!((up.lambda - down.lambda.conj()).norm() < 1e-8);

        let per = by_family(&roots, BoundaryCondition::Periodic);
        let pair: Vec<_> = per.iter().filter(|r| r.n != 0).collect();
        assert_eq!(pair.len(), 2);
        assert!(pair.iter().all(|r| r.classification == Classification::Nonreal));
    }

    #[test]
    fn non_pt_potentials_are_rejected() {
        let q = PeriodicPotential::from_fourier(vec![
            (1, Complex64::new(0.0, 1.0)),
            (-1, Complex64::new(0.0, 1.0)),
        ])
        .unwrap();
        let err = two_periodic_roots(&q, 50.0, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidPotential(_)));
    }
}
