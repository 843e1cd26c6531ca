//! Band intervals, spectral gaps, and the finite-zone verdict.
//!
//! The real spectrum is the union of the bands' real traces. Listing those
//! intervals in canonical band order `0, -1, 1, -2, 2, ...` makes the
//! possible holes explicit: between consecutive intervals sits at most one
//! gap, the odd-numbered ones anchored at the antiperiodic pairs and the
//! even-numbered ones at the periodic pairs. Whether a given gap is open,
//! closed, or replaced by a conjugate excursion off the real axis is
//! decided by the corresponding pair of two-periodic eigenvalues, and the
//! verdict about finitely many open gaps is read off the asymptotic tail
//! of those pair classifications.
//!
//! The two ingredients come from independent machinery (band intervals
//! from the truncated-basis sweep, pair classifications from the
//! discriminant root search), so agreement between them is evidence, not
//! tautology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::PeriodicPotential;
use crate::spectrum::numbering::canonical_index;
use crate::spectrum::roots::{self, BoundaryCondition, Classification, TwoPeriodicEigenvalue};
use crate::spectrum::sweep::BandSweep;
use crate::tol::Tolerances;

/// Outcome of the spectral route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    FiniteZone,
    InfiniteZone,
    Undetermined(String),
}

/// Real trace of one band.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BandInterval {
    pub n: i32,
    pub lo: f64,
    pub hi: f64,
}

/// An open gap between two consecutive band intervals.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Gap {
    pub index: usize,
    pub left: f64,
    pub right: f64,
    pub width: f64,
    /// Band below and band above the hole.
    pub below: i32,
    pub above: i32,
}

/// Status of the hole at one pair, open or not.
///
/// `width` is `None` when a neighboring band has no real trace at all, so
/// there is no real interval to measure against.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairGap {
    pub index: usize,
    pub width: Option<f64>,
    pub classification: Classification,
}

/// Band structure of one potential up to a pair horizon.
#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    /// Largest pair index resolved on each family.
    pub horizon: i32,
    /// Index from which numbering and localization were certified.
    pub threshold: i32,
    pub intervals: Vec<BandInterval>,
    pub gaps: Vec<Gap>,
    pub pair_gaps: Vec<PairGap>,
    pub two_periodic: Vec<TwoPeriodicEigenvalue>,
    pub verdict: Verdict,
}

/// Merged gap index of a pair: antiperiodic pairs take the odd slots.
fn merged_index(boundary: BoundaryCondition, pair: i32) -> usize {
    match boundary {
        BoundaryCondition::Periodic => 2 * pair as usize,
        BoundaryCondition::Antiperiodic => 2 * pair as usize + 1,
    }
}

fn pair_of(root: &TwoPeriodicEigenvalue) -> i32 {
    match root.boundary {
        BoundaryCondition::Periodic => root.n.abs(),
        BoundaryCondition::Antiperiodic => {
            if root.n >= 0 {
                root.n
            } else {
                -root.n - 1
            }
        }
    }
}

/// Compute the band/gap structure and the finite-zone verdict.
///
/// `horizon` is the largest pair index examined per family; `k` and
/// `grid_size` control the band sweep underneath.
pub fn gap_report(
    q: &PeriodicPotential,
    horizon: i32,
    k: i64,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<GapReport> {
    if horizon < 2 {
        return Err(Error::NumericsError(format!(
            "a pair horizon of {horizon} cannot support an asymptotic verdict"
        )));
    }
    let pi = std::f64::consts::PI;
    let sweep = BandSweep::compute(q, k, horizon + 1, grid_size, tol)?;
    let lambda_max = ((2 * horizon + 1) as f64 * pi).powi(2) + 1.0;
    let two_periodic = roots::two_periodic_roots(q, lambda_max, tol)?;

    // Intervals in canonical band order; the slot between positions j-1
    // and j is the j-th gap.
    let slots = 2 * horizon as usize + 2;
    let hulls: Vec<(i32, Option<(f64, f64)>)> = (0..slots)
        .map(|rank| {
            let n = canonical_index(rank);
            (n, sweep.curves[&n].real_interval.endpoints())
        })
        .collect();
    let intervals: Vec<BandInterval> = hulls
        .iter()
        .filter_map(|&(n, e)| e.map(|(lo, hi)| BandInterval { n, lo, hi }))
        .collect();

    // Pair classifications by merged gap index.
    let top = 2 * horizon as usize + 1;
    let mut class: Vec<Option<Classification>> = vec![None; top + 1];
    for r in &two_periodic {
        let j = merged_index(r.boundary, pair_of(r));
        if j == 0 || j > top {
            continue;
        }
        match class[j] {
            None => class[j] = Some(r.classification),
            Some(c) if c == r.classification => {}
            Some(c) => {
                return Err(Error::NumericsError(format!(
                    "pair at gap {j} classified both {c:?} and {:?}",
                    r.classification
                )));
            }
        }
    }

    let mut pair_gaps = Vec::with_capacity(top);
    let mut gaps = Vec::new();
    for j in 1..=top {
        let classification = class[j].ok_or_else(|| {
            Error::NumericsError(format!("no two-periodic pair resolved for gap {j}"))
        })?;
        let width = match (hulls[j - 1].1, hulls[j].1) {
            (Some((_, hi)), Some((lo, _))) => Some((lo - hi).max(0.0)),
            _ => None,
        };
        pair_gaps.push(PairGap {
            index: j,
            width,
            classification,
        });
        if let Some(w) = width {
            if w > tol.gap {
                gaps.push(Gap {
                    index: j,
                    left: hulls[j - 1].1.unwrap().1,
                    right: hulls[j].1.unwrap().0,
                    width: w,
                    below: hulls[j - 1].0,
                    above: hulls[j].0,
                });
            }
        }
    }

    let verdict = decide(&pair_gaps, &gaps, &two_periodic, sweep.threshold, top);

    Ok(GapReport {
        horizon,
        threshold: sweep.threshold,
        intervals,
        gaps,
        pair_gaps,
        two_periodic,
        verdict,
    })
}

/// The verdict looks at the top third of the resolved pairs (clamped to
/// start inside the certified regime). Split pairs persisting there mean
/// gaps keep opening; conjugate pairs there mean the real-interval chain
/// has terminated. An asymptotic tail of exact double eigenvalues decides
/// by what happens below it: a spectrum with no open gap at all is a
/// single ray, while open low gaps under a collapsed tail is the classical
/// real picture with infinitely many gaps shrinking below resolution.
fn decide(
    pair_gaps: &[PairGap],
    gaps: &[Gap],
    two_periodic: &[TwoPeriodicEigenvalue],
    threshold: i32,
    top: usize,
) -> Verdict {
    let lo = (top + 1 - (top + 1) / 3).max(2 * threshold as usize);
    if lo > top {
        return Verdict::Undetermined(format!(
            "asymptotic window starts at gap {lo}, beyond the resolved horizon {top}"
        ));
    }
    let high: Vec<Classification> = pair_gaps
        .iter()
        .filter(|p| p.index >= lo)
        .map(|p| p.classification)
        .collect();
    let has = |c: Classification| high.iter().any(|&x| x == c);

    match (has(Classification::SimpleReal), has(Classification::Nonreal)) {
        (true, true) => Verdict::Undetermined(
            "asymptotic window mixes split real pairs with conjugate pairs".into(),
        ),
        (true, false) => Verdict::InfiniteZone,
        (false, true) => Verdict::FiniteZone,
        (false, false) => {
            // Every asymptotic pair is double at tolerance.
            if gaps.is_empty() {
                Verdict::FiniteZone
            } else if two_periodic
                .iter()
                .all(|r| r.classification != Classification::Nonreal)
            {
                Verdict::InfiniteZone
            } else {
                Verdict::Undetermined(
                    "asymptotic pairs collapsed at tolerance while lower pairs left \
                     the real axis"
                        .into(),
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn free_spectrum_is_one_ray() {
        let q = PeriodicPotential::from_fourier(vec![]).unwrap();
        let report = gap_report(&q, 4, 16, 32, &Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::FiniteZone);
        assert!(report.gaps.is_empty());
        for pg in &report.pair_gaps {
            let w = pg.width.expect("free bands are real");
            assert!(w < 1e-9, "gap {} has width {w:.3e}", pg.index);
            assert_eq!(pg.classification, Classification::Double);
        }
        // The interval chain starts at the ground eigenvalue.
        assert!(report.intervals[0].lo.abs() < 1e-6);
    }

    #[test]
    fn cosine_keeps_opening_gaps() {
        let q = PeriodicPotential::from_fourier(vec![
            (1, Complex64::new(1.0, 0.0)),
            (-1, Complex64::new(1.0, 0.0)),
        ])
        .unwrap();
        let report = gap_report(&q, 4, 16, 32, &Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::InfiniteZone);
        assert!(!report.gaps.is_empty());
        let first = &report.gaps[0];
        assert_eq!(first.index, 1);
        assert!(first.width > 0.5 && first.width < 4.0, "width {}", first.width);
        // No conjugate pair anywhere for a real even potential.
        assert!(report
            .two_periodic
            .iter()
            .all(|r| r.classification != Classification::Nonreal));
    }

    #[test]
    fn imaginary_ramp_terminates_the_gap_chain() {
        let q = PeriodicPotential::from_pieces(vec![crate::potential::Piece {
            lo: 0.0,
            hi: 1.0,
            re: vec![],
            im: vec![0.5, -1.0],
        }])
        .unwrap();
        let report = gap_report(&q, 4, 20, 32, &Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::FiniteZone);
        // High pairs are conjugate couples and the holes they would have
        // opened are sealed by the shared band edge.
        let high: Vec<_> = report
            .pair_gaps
            .iter()
            .filter(|p| p.index >= 6)
            .collect();
        assert!(!high.is_empty());
        for pg in &high {
            assert_eq!(pg.classification, Classification::Nonreal);
            if let Some(w) = pg.width {
                assert!(w <= 1e-6, "gap {} width {w:.3e}", pg.index);
            }
        }
    }
}
