//! Canonical indexing of Bloch eigenvalues.
//!
//! Sorted by real part, the eigenvalues of the phase-`t` problem are labeled
//!
//! ```text
//! n:    0, -1, 1, -2, 2, -3, 3, ...
//! ```
//!
//! so that `lambda_n` tracks the unperturbed value `(2 pi n + t)^2`. Away
//! from the phase interval's ends each index sits alone near its reference
//! value; near `t = 0` the indices `{n, -n}` approach each other and near
//! `t = pi` the indices `{n, -n-1}` do, and a pair may leave the real axis
//! as a conjugate couple. Numbering inside such a pair follows fixed rules
//! (larger real part keeps the index that is larger in the real ordering;
//! positive imaginary part takes the non-negative-trending index) so that
//! band curves come out continuous in `t`.
//!
//! Everything here is validated by counting: each index above a threshold
//! must have the expected number of eigenvalues in a localization disc
//! around its reference value. A failed count raises
//! [`Error::NumberingAmbiguity`] instead of silently mislabeling a band.
//! [`estimate_threshold`] probes a fixed set of phases and reports the
//! smallest index from which counting succeeds everywhere, which is also
//! the index from which the asymptotic laws used elsewhere in the crate are
//! trusted.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::potential::PeriodicPotential;
use crate::spectrum::galerkin;
use crate::tol::BLOCH_ZONE_H;

/// Index carried by the eigenvalue of sorted rank `rank`.
pub fn canonical_index(rank: usize) -> i32 {
    if rank % 2 == 0 {
        (rank / 2) as i32
    } else {
        -(((rank + 1) / 2) as i32)
    }
}

/// Sorted rank at which index `n` lives. Inverse of [`canonical_index`].
pub fn rank_of(n: i32) -> usize {
    if n >= 0 {
        2 * n as usize
    } else {
        2 * (-n) as usize - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Zone {
    Left,
    Middle,
    Right,
}

fn zone(t: f64) -> Zone {
    if t <= BLOCH_ZONE_H {
        Zone::Left
    } else if t >= PI - BLOCH_ZONE_H {
        Zone::Right
    } else {
        Zone::Middle
    }
}

fn count_in_disc(eigs: &[Complex64], center: f64, radius: f64) -> usize {
    eigs.iter()
        .filter(|lam| (*lam - Complex64::new(center, 0.0)).norm() <= radius)
        .count()
}

/// Reference value the index-`n` eigenvalue tracks.
fn reference(n: i32, t: f64) -> f64 {
    let mu = 2.0 * PI * n as f64 + t;
    mu * mu
}

/// Disc for the pair `{n, -n}` near `t = 0`: centered between the two
/// reference values, wide enough to hold both plus the perturbation the
/// asymptotic regime allows.
fn left_pair_count(eigs: &[Complex64], n: i32, t: f64) -> usize {
    let center = (2.0 * PI * n as f64).powi(2) + t * t;
    count_in_disc(eigs, center, n as f64)
}

/// Disc for the pair `{n, -n-1}` near `t = pi`.
fn right_pair_count(eigs: &[Complex64], n: i32, t: f64) -> usize {
    let s = PI - t;
    let center = ((2 * n + 1) as f64 * PI).powi(2) + s * s;
    count_in_disc(eigs, center, (n + 1) as f64)
}

/// In the interior of the phase interval every index is simple, and the
/// decisive question is whether exactly one eigenvalue lies closer to
/// `(2 pi n + t)^2` than to any neighboring reference value. The disc of
/// half the distance to the nearest neighbor captures that.
fn middle_half_distance(n: i32, t: f64) -> (f64, f64) {
    let c = reference(n, t);
    let (below, above) = if n > 0 {
        (reference(-n, t), reference(-n - 1, t))
    } else {
        (reference(-n - 1, t), reference(-n, t))
    };
    let rho = 0.5 * (c - below).min(above - c);
    (c, rho)
}

fn middle_count(eigs: &[Complex64], n: i32, t: f64) -> usize {
    let (c, rho) = middle_half_distance(n, t);
    count_in_disc(eigs, c, rho)
}

/// Label sorted eigenvalues with canonical indices and resolve in-pair order.
///
/// `raw` is the full eigenvalue list of one truncated problem (any order,
/// odd length `2K + 1`). Counting is enforced for `threshold <= |n| <= 2K/3`
/// and an inconsistent count raises [`Error::NumberingAmbiguity`]; indices
/// below `threshold` are labeled by sorted position without a guarantee.
pub fn number_eigenvalues(
    raw: &[Complex64],
    t: f64,
    threshold: i32,
    tol_real: f64,
) -> Result<BTreeMap<i32, Complex64>> {
    if raw.len() % 2 == 0 || raw.len() < 17 {
        return Err(Error::NumericsError(format!(
            "eigenvalue list of length {} cannot be indexed (need odd length, at least 17)",
            raw.len()
        )));
    }
    let k = ((raw.len() - 1) / 2) as i64;
    let trusted = galerkin::trusted_indices(k) as i32;
    let mut sorted = raw.to_vec();
    sorted.sort_unstable_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let mut map = BTreeMap::new();
    for (rank, lam) in sorted.iter().enumerate() {
        map.insert(canonical_index(rank), *lam);
    }

    let zone = zone(t);
    let lo = threshold.max(1);

    // Counting first, so a mislabeled region is reported rather than used.
    match zone {
        Zone::Left => {
            for n in lo..=trusted {
                let count = left_pair_count(&sorted, n, t);
                if count != 2 {
                    return Err(Error::NumberingAmbiguity {
                        n,
                        t,
                        count,
                        expected: 2,
                    });
                }
            }
        }
        Zone::Right => {
            for n in lo..trusted {
                let count = right_pair_count(&sorted, n, t);
                if count != 2 {
                    return Err(Error::NumberingAmbiguity {
                        n,
                        t,
                        count,
                        expected: 2,
                    });
                }
            }
        }
        Zone::Middle => {
            for m in lo..=trusted {
                for n in [m, -m] {
                    let count = middle_count(&sorted, n, t);
                    if count != 1 {
                        return Err(Error::NumberingAmbiguity {
                            n,
                            t,
                            count,
                            expected: 1,
                        });
                    }
                }
            }
        }
    }

    // In-pair order. The real-ordering rule is what the ascending sort
    // already produced; a conjugate couple additionally wants the positive
    // imaginary member on the index listed first below, which the sort only
    // delivers when the two real parts agree to the last bit.
    match zone {
        Zone::Left => {
            for n in 1..=(k as i32) {
                fix_pair(&mut map, n, -n, tol_real);
            }
        }
        Zone::Right => {
            for n in 0..(k as i32) {
                fix_pair(&mut map, n, -n - 1, tol_real);
            }
        }
        Zone::Middle => {}
    }

    Ok(map)
}

/// `plus` takes the positive-imaginary member when the pair is nonreal.
fn fix_pair(map: &mut BTreeMap<i32, Complex64>, plus: i32, minus: i32, tol_real: f64) {
    let (Some(&a), Some(&b)) = (map.get(&plus), map.get(&minus)) else {
        return;
    };
    let nonreal = a.im.abs() > tol_real || b.im.abs() > tol_real;
    if nonreal && a.im < b.im {
        map.insert(plus, b);
        map.insert(minus, a);
    }
}

/// Smallest index from which disc counting succeeds at a battery of probe
/// phases, so that numbering, pairing, and the localization-based root
/// search can be trusted from that index on.
///
/// The probes cover both pairing regions, the interior, and the interior's
/// approaches to the pairing regions, where localization is weakest. Deep
/// interior probes use the tight disc `|n|^{-1/2}` that the asymptotic law
/// promises; elsewhere the zone-appropriate counting discs are used.
pub fn estimate_threshold(q: &PeriodicPotential, k: i64) -> Result<i32> {
    let h = BLOCH_ZONE_H;
    let trusted = galerkin::trusted_indices(k) as i32;
    let mut worst_fail = 0i32;

    let probes: Vec<f64> = vec![
        0.0,
        0.5 * h,
        h,
        1.5 * h,
        2.5 * h,
        0.25 * PI,
        0.5 * PI,
        0.75 * PI,
        PI - 2.5 * h,
        PI - 1.5 * h,
        PI - h,
        PI - 0.5 * h,
        PI,
    ];

    for &t in &probes {
        let eigs = galerkin::bloch_eigenvalues(q, t, k)?;
        let deep = (0.2 * PI..=0.8 * PI).contains(&t);
        for n in 1..=trusted {
            let ok = match zone(t) {
                Zone::Left => left_pair_count(&eigs, n, t) == 2,
                Zone::Right => n >= trusted || right_pair_count(&eigs, n, t) == 2,
                Zone::Middle => {
                    let counted =
                        middle_count(&eigs, n, t) == 1 && middle_count(&eigs, -n, t) == 1;
                    if deep {
                        let tight = (n as f64).powf(-0.5);
                        counted
                            && count_in_disc(&eigs, reference(n, t), tight) == 1
                            && count_in_disc(&eigs, reference(-n, t), tight) == 1
                    } else {
                        counted
                    }
                }
            };
            if !ok {
                worst_fail = worst_fail.max(n);
            }
        }
    }

    if worst_fail >= trusted {
        return Err(Error::NumericsError(format!(
            "no asymptotic numbering threshold below the trusted window \
             (counting still fails at index {worst_fail} with truncation {k}); increase K"
        )));
    }
    Ok(worst_fail + 1)
}
