//! The partial disk: points of `B(0, rho)` covered by no other lattice disk.
//!
//! For `r_pack <= rho <= r_cover` the disk around the origin meets at most the
//! three neighbour pairs `±a, ±b, ±c`. The neighbour at distance `len` cuts
//! an arc of angle `phi = 2 arccos(len / (2 rho))` off the bounding circle, so
//! the circle keeps a convex (uncovered) boundary of total angle
//! `Phi = 2 pi - 2 (phi1 + phi2 + phi3)`. Growing the radius adds area along
//! the convex boundary and removes area along the concave one, which gives
//! `A'(rho) = 2 rho (Phi - pi)` and a unique maximiser where `Phi = pi`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::geometry::{det_lattice, radii, RadiiProfile, ReducedBasis};
use crate::math::{asin, sin, sqrt};
use crate::{Error, Result, REL_TOL};

/// Cut-arc angles at radius `rho`, ordered `phi1 >= phi2 >= phi3 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcAngles {
    pub rho: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

impl ArcAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.phi1, self.phi2, self.phi3]
    }

    pub fn sum(&self) -> f64 {
        self.phi1 + self.phi2 + self.phi3
    }

    /// Number of neighbour pairs that actually cut the circle.
    pub fn active_pairs(&self) -> u8 {
        self.as_array().iter().filter(|p| **p > 0.0).count() as u8
    }
}

/// The maximiser of the exactly-one area for one lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumSolution {
    pub rho_eq: f64,
    pub arcs: ArcAngles,
    /// 1, 2 or 3: how many neighbour pairs cut the circle at `rho_eq`.
    pub case_index: u8,
    pub area: f64,
    pub probability: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfilePoint {
    pub rho: f64,
    pub area: f64,
    pub probability: f64,
}

fn checked_radii(rb: &ReducedBasis, rho: f64) -> Result<RadiiProfile> {
    let r = radii(rb);
    if !rho.is_finite() || rho < r.r_pack * (1.0 - REL_TOL) || rho > r.r_cover * (1.0 + REL_TOL) {
        return Err(Error::RadiusOutOfRange {
            rho,
            r_pack: r.r_pack,
            r_cover: r.r_cover,
        });
    }
    Ok(r)
}

/// `2 arccos(len / 2rho)`, written as `4 arcsin(sqrt((2rho - len) / 4rho))`
/// so that it stays accurate just past the kink where `len / 2rho` is near 1.
#[inline]
fn cut_angle(len: f64, rho: f64) -> f64 {
    let gap = 2.0 * rho - len;
    if gap > 0.0 {
        4.0 * asin(sqrt((gap / (4.0 * rho)).min(0.5)))
    } else {
        0.0
    }
}

fn arcs_unchecked(rb: &ReducedBasis, rho: f64) -> ArcAngles {
    let mut phi = rb.edge_lengths().map(|len| cut_angle(len, rho));
    // lengths tied within rounding may come out a ulp out of order
    phi.sort_by(|p, q| q.total_cmp(p));
    ArcAngles {
        rho,
        phi1: phi[0],
        phi2: phi[1],
        phi3: phi[2],
    }
}

pub fn arc_angles(rb: &ReducedBasis, rho: f64) -> Result<ArcAngles> {
    checked_radii(rb, rho)?;
    Ok(arcs_unchecked(rb, rho))
}

/// Total angle of the convex boundary, `2 pi - 2 sum(phi)`.
pub fn convex_total(arcs: &ArcAngles) -> f64 {
    TAU - 2.0 * arcs.sum()
}

fn area_unchecked(rb: &ReducedBasis, rho: f64) -> f64 {
    let arcs = arcs_unchecked(rb, rho);
    debug_assert!(
        cut_arcs_disjoint(rb, rho),
        "cut segments overlap at rho = {rho}"
    );
    let segments: f64 = arcs.as_array().iter().map(|p| p - sin(*p)).sum();
    rho * rho * (PI - 2.0 * segments)
}

/// Area of the exactly-one region of the origin's disk.
///
/// Six disk segments (three symmetric pairs) lie outside the Voronoi cell; each
/// removed segment is matched by a mirror-image segment inside the cell that
/// the neighbour covers, so the area is `pi rho^2 - 2 A_out`.
pub fn area_exactly_one(rb: &ReducedBasis, rho: f64) -> Result<f64> {
    checked_radii(rb, rho)?;
    Ok(area_unchecked(rb, rho))
}

pub fn area_derivative(rb: &ReducedBasis, rho: f64) -> Result<f64> {
    let arcs = arc_angles(rb, rho)?;
    Ok(2.0 * rho * (convex_total(&arcs) - PI))
}

/// Whether the six cut arcs on the circle of radius `rho` are pairwise disjoint.
///
/// Each neighbour `n` removes the arc centred on the direction of `n` with
/// half-angle `phi / 2`; consecutive neighbours must leave room for both halves.
pub fn cut_arcs_disjoint(rb: &ReducedBasis, rho: f64) -> bool {
    let n = rb.delaunay_neighbors();
    (0..6).all(|k| {
        let (p, q) = (n[k], n[(k + 1) % 6]);
        let mut gap = q.angle() - p.angle();
        if gap < 0.0 {
            gap += TAU;
        }
        let need = (cut_angle(p.norm(), rho) + cut_angle(q.norm(), rho)) / 2.0;
        gap >= need - 1e-9
    })
}

/// Radius in `(r_pack, r_cover)` where `phi1 + phi2 + phi3 = pi/2`.
///
/// `g(rho) = sum(phi) - pi/2` is continuous and strictly increasing but has
/// square-root kinks at `rho = len_i / 2`, so plain bisection is used, run
/// until the bracket is two adjacent floats.
pub fn equilibrium_radius(rb: &ReducedBasis) -> Result<f64> {
    let r = radii(rb);
    let g = |rho: f64| arcs_unchecked(rb, rho).sum() - FRAC_PI_2;
    let (mut lo, mut hi) = (r.r_pack, r.r_cover);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(Error::NoBracket { g_lo, g_hi });
    }
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut rho = if g(lo).abs() <= g(hi).abs() { lo } else { hi };

    // A root sitting on a kink len/2 is assigned to the lower case: the closed
    // case intervals put rho = len/2 on the side where that pair does not cut.
    for len in [rb.len_b(), rb.len_c()] {
        let kink = len / 2.0;
        if kink > r.r_pack && kink < r.r_cover && (rho - kink).abs() <= REL_TOL * kink {
            let gk = g(kink);
            if gk.abs() <= 1e-13 {
                rho = kink;
            }
        }
    }

    // Next to a kink g changes by more than 1e-12 between adjacent floats;
    // the jump across the final bracket is then the best attainable residual.
    let residual = g(rho);
    let step = (g(hi) - g(lo)).abs();
    if residual.abs() > 1e-12 && residual.abs() > step {
        return Err(Error::Inconsistent {
            what: "equilibrium residual",
            lhs: residual,
            rhs: 0.0,
        });
    }
    Ok(rho)
}

pub fn equilibrium_probability(rb: &ReducedBasis) -> Result<EquilibriumSolution> {
    let rho = equilibrium_radius(rb)?;
    let arcs = arcs_unchecked(rb, rho);
    let det = det_lattice(rb);
    let area = area_unchecked(rb, rho);
    let probability = area / det;
    // A = 2 rho^2 (sum sin(phi) - g) with g = sum(phi) - pi/2, which is zero
    // at the root up to the bracket resolution.
    let sines: f64 = arcs.as_array().iter().map(|p| sin(*p)).sum();
    let sine_form = 2.0 * rho * rho * (sines - (arcs.sum() - FRAC_PI_2)) / det;
    if (sine_form - probability).abs() > 1e-12 {
        return Err(Error::Inconsistent {
            what: "equilibrium probability (sine sum vs segment area)",
            lhs: sine_form,
            rhs: probability,
        });
    }
    Ok(EquilibriumSolution {
        rho_eq: rho,
        arcs,
        case_index: arcs.active_pairs(),
        area,
        probability,
    })
}

/// `n_points` samples of the area curve at evenly spaced radii in `[r_pack, r_cover]`.
pub fn area_profile(rb: &ReducedBasis, n_points: usize) -> Result<Vec<ProfilePoint>> {
    if n_points < 2 {
        return Err(Error::Domain {
            what: "n_points",
            value: n_points as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let r = radii(rb);
    let det = det_lattice(rb);
    let step = (r.r_cover - r.r_pack) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|k| {
            let rho = if k == n_points - 1 {
                r.r_cover
            } else {
                r.r_pack + step * k as f64
            };
            let area = area_unchecked(rb, rho);
            ProfilePoint {
                rho,
                area,
                probability: area / det,
            }
        })
        .collect())
}
