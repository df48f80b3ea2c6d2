//! Search over lattice shapes.
//!
//! Shapes are parameterised by `t = |a| / |b|` and the angle `gamma` with
//! `|b| = 1`. The reduced domain is `0 < t <= 1`,
//! `arccos(t/2) <= gamma <= pi/2`; sweeps start at [`T_MIN`] because the
//! probability vanishes for thin lattices. A domain is mapped onto the unit
//! square `(u, v)` with `t` linear in `u` and `gamma` linear in `v` between
//! its lower and upper bound for that `t`, so box-constrained refinement
//! reaches the corners of the domain exactly.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::closed_forms::{case2_gamma_min, case3_probability};
use crate::geometry::lattice_from_params;
use crate::math::{acos, cos, sin, sqrt};
use crate::partial_disk::equilibrium_probability;
use crate::{Error, Result, REL_TOL};

/// Smallest `t` visited by sweeps and refinement.
pub const T_MIN: f64 = 0.05;

/// One evaluated shape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub t: f64,
    pub gamma: f64,
    pub rho_eq: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub case_index: u8,
    pub area: f64,
    pub probability: f64,
}

/// Equilibrium record for the shape `(t, gamma)`.
pub fn evaluate(t: f64, gamma: f64) -> Result<SweepRecord> {
    let rb = lattice_from_params(t, gamma)?;
    let s = equilibrium_probability(&rb)?;
    Ok(SweepRecord {
        t,
        gamma,
        rho_eq: s.rho_eq,
        phi1: s.arcs.phi1,
        phi2: s.arcs.phi2,
        phi3: s.arcs.phi3,
        case_index: s.case_index,
        area: s.area,
        probability: s.probability,
    })
}

/// Sub-domains of the shape space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// All reduced shapes with `t >= T_MIN`.
    Full,
    /// Two-arc closure: `t <= 1/sqrt2`.
    Case1,
    /// Four-arc closure: `t >= 1/sqrt2`, `gamma >= case2_gamma_min(t)`.
    Case2,
    /// Six-arc closure: `t >= 1/sqrt2`, `gamma <= case2_gamma_min(t)`.
    Case3,
    /// Rectangular lattices, `gamma = pi/2`.
    Rectangular,
}

impl Domain {
    pub fn t_range(&self) -> (f64, f64) {
        match self {
            Domain::Full | Domain::Rectangular => (T_MIN, 1.0),
            Domain::Case1 => (T_MIN, FRAC_1_SQRT_2),
            Domain::Case2 | Domain::Case3 => (FRAC_1_SQRT_2, 1.0),
        }
    }

    pub fn gamma_range(&self, t: f64) -> (f64, f64) {
        let lo = acos(t / 2.0);
        match self {
            Domain::Full | Domain::Case1 => (lo, FRAC_PI_2),
            Domain::Rectangular => (FRAC_PI_2, FRAC_PI_2),
            Domain::Case2 => (gamma_min_clamped(t), FRAC_PI_2),
            Domain::Case3 => (lo, gamma_min_clamped(t)),
        }
    }

    /// Whether the `v` coordinate carries information.
    pub fn is_one_dimensional(&self) -> bool {
        matches!(self, Domain::Rectangular)
    }

    /// Unit-square coordinates to `(t, gamma)`; endpoints map exactly.
    pub fn map(&self, u: f64, v: f64) -> (f64, f64) {
        let (t0, t1) = self.t_range();
        let t = lerp(t0, t1, u);
        let (g0, g1) = self.gamma_range(t);
        (t, lerp(g0, g1, v))
    }
}

fn gamma_min_clamped(t: f64) -> f64 {
    let lo = acos(t / 2.0);
    case2_gamma_min(t).map_or(lo, |g| g.max(lo))
}

#[inline]
fn lerp(lo: f64, hi: f64, s: f64) -> f64 {
    if s <= 0.0 {
        lo
    } else if s >= 1.0 {
        hi
    } else {
        lo + (hi - lo) * s
    }
}

fn check_steps(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Domain {
            what,
            value: n as f64,
            lo: min as f64,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// Grid node `(i, j)` of an `nt x ng` sweep.
pub fn grid_point(domain: Domain, i: usize, j: usize, nt: usize, ng: usize) -> (f64, f64) {
    let u = i as f64 / (nt - 1) as f64;
    let v = j as f64 / (ng - 1).max(1) as f64;
    domain.map(u, v)
}

/// One `t` column of a sweep, `gamma` ascending. Infeasible nodes are skipped.
pub fn sweep_column(domain: Domain, i: usize, nt: usize, ng: usize) -> Vec<SweepRecord> {
    let ng = if domain.is_one_dimensional() { 1 } else { ng };
    (0..ng)
        .filter_map(|j| {
            let (t, g) = grid_point(domain, i, j, nt, ng);
            evaluate(t, g).ok()
        })
        .collect()
}

/// Equilibrium probability over the full shape domain, ordered by `(t, gamma)`.
pub fn sweep(t_steps: usize, gamma_steps: usize) -> Result<Vec<SweepRecord>> {
    sweep_domain(Domain::Full, t_steps, gamma_steps)
}

pub fn sweep_domain(
    domain: Domain,
    t_steps: usize,
    gamma_steps: usize,
) -> Result<Vec<SweepRecord>> {
    check_steps("t_steps", t_steps, 2)?;
    check_steps("gamma_steps", gamma_steps, 2)?;
    Ok((0..t_steps)
        .flat_map(|i| sweep_column(domain, i, t_steps, gamma_steps))
        .collect())
}

/// Arc regime predicted from the closed forms: two arcs iff `t <= 1/sqrt2`,
/// otherwise four arcs iff `gamma >= case2_gamma_min(t)`.
pub fn predicted_case(t: f64, gamma: f64) -> u8 {
    if t <= FRAC_1_SQRT_2 * (1.0 + REL_TOL) {
        1
    } else if gamma >= gamma_min_clamped(t) * (1.0 - REL_TOL) {
        2
    } else {
        3
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseSpan {
    pub case_index: u8,
    pub gamma_lo: f64,
    pub gamma_hi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnRegions {
    pub t: f64,
    /// Maximal runs of equal case index, ascending in `gamma`.
    pub spans: Vec<CaseSpan>,
    /// Midpoint between the last six-arc and first four-arc node, if both occur.
    pub observed_boundary: Option<f64>,
    /// `case2_gamma_min(t)` for `t >= 1/sqrt2`.
    pub predicted_boundary: Option<f64>,
    /// Spacing of the column's `gamma` nodes.
    pub gamma_step: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseRegions {
    pub columns: Vec<ColumnRegions>,
    /// Records whose case differs from [`predicted_case`] by more than one grid cell.
    pub mismatches: Vec<SweepRecord>,
    /// Records that differ from the prediction but lie within a cell of a boundary.
    pub tolerated: usize,
}

impl CaseRegions {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
            && self
                .columns
                .iter()
                .all(|c| match (c.observed_boundary, c.predicted_boundary) {
                    (Some(o), Some(p)) => (o - p).abs() <= c.gamma_step,
                    _ => true,
                })
    }
}

/// Splits a `(t, gamma)`-ordered sweep into per-column case spans and checks them.
pub fn case_regions(records: &[SweepRecord]) -> CaseRegions {
    let mut columns: Vec<ColumnRegions> = Vec::new();
    let mut mismatches = Vec::new();
    let mut tolerated = 0;

    let mut starts = Vec::new();
    for (k, r) in records.iter().enumerate() {
        if k == 0 || r.t != records[k - 1].t {
            starts.push(k);
        }
    }
    starts.push(records.len());
    let t_step = if starts.len() > 2 {
        records[starts[1]].t - records[0].t
    } else {
        f64::INFINITY
    };

    for w in starts.windows(2) {
        let col = &records[w[0]..w[1]];
        let t = col[0].t;
        let gamma_step = if col.len() > 1 {
            col[1].gamma - col[0].gamma
        } else {
            0.0
        };
        let mut spans: Vec<CaseSpan> = Vec::new();
        for r in col {
            match spans.last_mut() {
                Some(s) if s.case_index == r.case_index => s.gamma_hi = r.gamma,
                _ => spans.push(CaseSpan {
                    case_index: r.case_index,
                    gamma_lo: r.gamma,
                    gamma_hi: r.gamma,
                }),
            }
        }
        let observed_boundary = col
            .windows(2)
            .find(|p| p[0].case_index == 3 && p[1].case_index == 2)
            .map(|p| (p[0].gamma + p[1].gamma) / 2.0);
        let predicted_boundary = (t > FRAC_1_SQRT_2).then(|| gamma_min_clamped(t));

        for r in col {
            let want = predicted_case(r.t, r.gamma);
            if want == r.case_index {
                continue;
            }
            let near_t = (r.t - FRAC_1_SQRT_2).abs() <= t_step;
            let near_g = predicted_boundary.is_some_and(|g| (r.gamma - g).abs() <= gamma_step);
            if near_t || near_g {
                tolerated += 1;
            } else {
                mismatches.push(*r);
            }
        }
        columns.push(ColumnRegions {
            t,
            spans,
            observed_boundary,
            predicted_boundary,
            gamma_step,
        });
    }
    CaseRegions {
        columns,
        mismatches,
        tolerated,
    }
}

/// Best shape found by sweep plus refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    pub record: SweepRecord,
    pub refined: bool,
    /// Improvement of the refined optimum over the best coarse grid node.
    pub objective_gap_bound: f64,
    /// Best probability over the coarse grid.
    pub coarse_best: f64,
}

pub fn global_optimize(coarse: usize, refine_tol: f64) -> Result<Optimum> {
    global_optimize_in(Domain::Full, coarse, refine_tol)
}

/// Coarse grid over the domain followed by a box-constrained compass search
/// in the unit-square coordinates. The search is derivative-free; the
/// objective has kinks where the equilibrium radius crosses `|b|/2` or `|c|/2`.
pub fn global_optimize_in(domain: Domain, coarse: usize, refine_tol: f64) -> Result<Optimum> {
    check_steps("coarse", coarse, 32)?;
    if !(refine_tol > 0.0) {
        return Err(Error::Domain {
            what: "refine_tol",
            value: refine_tol,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let one_d = domain.is_one_dimensional();
    let f = |u: f64, v: f64| {
        let (t, g) = domain.map(u, v);
        evaluate(t, g).ok()
    };

    let nv = if one_d { 1 } else { coarse };
    let mut best: Option<(f64, f64, SweepRecord)> = None;
    for i in 0..coarse {
        for j in 0..nv {
            let u = i as f64 / (coarse - 1) as f64;
            let v = if one_d {
                0.0
            } else {
                j as f64 / (coarse - 1) as f64
            };
            if let Some(r) = f(u, v) {
                if best.is_none_or(|b| r.probability > b.2.probability) {
                    best = Some((u, v, r));
                }
            }
        }
    }
    let (mut u, mut v, mut rec) = best.ok_or(Error::Inconsistent {
        what: "coarse sweep produced no feasible shape",
        lhs: 0.0,
        rhs: 0.0,
    })?;
    let coarse_best = rec.probability;

    let mut step = 1.0 / (coarse - 1) as f64;
    let dirs: &[(f64, f64)] = if one_d {
        &[(1.0, 0.0), (-1.0, 0.0)]
    } else {
        &[(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
    };
    let mut iters = 0;
    while step >= refine_tol {
        iters += 1;
        if iters > 100_000 {
            return Err(Error::RefinementStall {
                step,
                tol: refine_tol,
            });
        }
        let mut moved = false;
        let mut cand = (u, v, rec);
        for &(du, dv) in dirs {
            let (nu, nv) = (
                (u + du * step).clamp(0.0, 1.0),
                (v + dv * step).clamp(0.0, 1.0),
            );
            if (nu, nv) == (u, v) {
                continue;
            }
            if let Some(r) = f(nu, nv) {
                if r.probability > cand.2.probability {
                    cand = (nu, nv, r);
                    moved = true;
                }
            }
        }
        if moved {
            (u, v, rec) = cand;
        } else {
            step /= 2.0;
        }
    }
    Ok(Optimum {
        record: rec,
        refined: true,
        objective_gap_bound: rec.probability - coarse_best,
        coarse_best,
    })
}

// ---------------------------------------------------------------------------
// Six-arc quadrangle

/// Largest covering radius over the four-arc boundary at shape `t`:
/// `|c| / (2 sin gamma_max)` with `gamma_max = case2_gamma_min(t)`.
pub fn quadrangle_upper_curve(t: f64) -> f64 {
    let g = gamma_min_clamped(t);
    let c = sqrt(t * t + 1.0 - 2.0 * t * cos(g));
    c / (2.0 * sin(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
    Saddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadLocation {
    /// Corner index 0..4: (1/sqrt2, 1/2), (1, 1/2), (1, top), (1/sqrt2, top).
    Corner(u8),
    Bottom,
    Right,
    Top,
    Left,
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub t: f64,
    pub rho: f64,
    pub probability: f64,
    pub kind: Extremum,
    pub location: QuadLocation,
}

/// Objective on the upper edge evaluated on the straight line and on the curve it replaces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperEdgeSample {
    pub t: f64,
    pub rho_line: f64,
    pub p_line: Option<f64>,
    pub rho_curve: f64,
    pub p_curve: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadrangleScan {
    pub corners: [(f64, f64); 4],
    pub boundary: Vec<CriticalPoint>,
    pub interior: Vec<CriticalPoint>,
    pub upper_edge: Vec<UpperEdgeSample>,
}

impl QuadrangleScan {
    pub fn maxima(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.boundary.iter().filter(|c| c.kind == Extremum::Max)
    }
    pub fn minima(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.boundary.iter().filter(|c| c.kind == Extremum::Min)
    }
    pub fn best(&self) -> Option<&CriticalPoint> {
        self.boundary
            .iter()
            .chain(self.interior.iter())
            .filter(|c| c.kind == Extremum::Max)
            .max_by(|a, b| a.probability.total_cmp(&b.probability))
    }
}

fn quad_corners() -> [(f64, f64); 4] {
    [
        (FRAC_1_SQRT_2, 0.5),
        (1.0, 0.5),
        (1.0, quadrangle_upper_curve(1.0)),
        (FRAC_1_SQRT_2, quadrangle_upper_curve(FRAC_1_SQRT_2)),
    ]
}

fn edge_point(c: &[(f64, f64); 4], k: usize, s: f64) -> (f64, f64) {
    let (p, q) = (c[k], c[(k + 1) % 4]);
    (lerp(p.0, q.0, s), lerp(p.1, q.1, s))
}

fn golden_extremum(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    let sign = if maximize { 1.0 } else { -1.0 };
    let k = (sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - k * (hi - lo);
    let mut x2 = lo + k * (hi - lo);
    let (mut f1, mut f2) = (sign * f(x1), sign * f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + k * (hi - lo);
            f2 = sign * f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - k * (hi - lo);
            f1 = sign * f(x1);
        }
    }
    (lo + hi) / 2.0
}

/// Locates the extrema of the six-arc objective `P(t, rho)` on the boundary
/// of the quadrangle `1/sqrt2 <= t <= 1`, `1/2 <= rho <= upper line`, where
/// the upper line joins the end points of [`quadrangle_upper_curve`].
///
/// The boundary is sampled with `n` points per edge; discrete local extrema
/// of the closed loop are refined by golden-section search along their edge.
/// Interior stationary points are searched with Newton iterations on a
/// central-difference gradient.
pub fn quadrangle_scan(n: usize) -> Result<QuadrangleScan> {
    check_steps("n", n, 100)?;
    let corners = quad_corners();
    let p = |t: f64, rho: f64| case3_probability(t, rho).unwrap_or(f64::NAN);

    let mut loop_pts = Vec::with_capacity(4 * n);
    for k in 0..4 {
        for i in 0..n {
            let s = i as f64 / n as f64;
            let (t, r) = edge_point(&corners, k, s);
            loop_pts.push((k, s, t, r, p(t, r)));
        }
    }
    let m = loop_pts.len();
    let mut boundary = Vec::new();
    for i in 0..m {
        let prev = loop_pts[(i + m - 1) % m].4;
        let (k, s, t, r, cur) = loop_pts[i];
        let next = loop_pts[(i + 1) % m].4;
        let kind = if cur > prev && cur > next {
            Extremum::Max
        } else if cur < prev && cur < next {
            Extremum::Min
        } else {
            continue;
        };
        if s == 0.0 {
            boundary.push(CriticalPoint {
                t,
                rho: r,
                probability: cur,
                kind,
                location: QuadLocation::Corner(k as u8),
            });
            continue;
        }
        let ds = 1.0 / n as f64;
        let along = |x: f64| {
            let (tt, rr) = edge_point(&corners, k, x);
            p(tt, rr)
        };
        let s_best = golden_extremum(along, s - ds, (s + ds).min(1.0), kind == Extremum::Max);
        let (t, r) = edge_point(&corners, k, s_best);
        boundary.push(CriticalPoint {
            t,
            rho: r,
            probability: p(t, r),
            kind,
            location: match k {
                0 => QuadLocation::Bottom,
                1 => QuadLocation::Right,
                2 => QuadLocation::Top,
                _ => QuadLocation::Left,
            },
        });
    }

    let interior = interior_stationary_points(&corners, &p);

    let upper_edge = (0..=n)
        .map(|i| {
            let s = i as f64 / n as f64;
            let (t, rho_line) = edge_point(&corners, 2, 1.0 - s);
            let rho_curve = quadrangle_upper_curve(t);
            let ok = |x: f64| x.is_finite().then_some(x);
            UpperEdgeSample {
                t,
                rho_line,
                p_line: ok(p(t, rho_line)),
                rho_curve,
                p_curve: ok(p(t, rho_curve)),
            }
        })
        .collect();

    Ok(QuadrangleScan {
        corners,
        boundary,
        interior,
        upper_edge,
    })
}

fn interior_stationary_points(
    corners: &[(f64, f64); 4],
    p: &impl Fn(f64, f64) -> f64,
) -> Vec<CriticalPoint> {
    const H: f64 = 1e-6;
    const GRAD_TOL: f64 = 1e-8;
    let (t0, t1) = (corners[0].0, corners[1].0);
    let top = |t: f64| lerp(corners[3].1, corners[2].1, (t - t0) / (t1 - t0));
    let inside =
        |t: f64, r: f64| t > t0 + 1e-6 && t < t1 - 1e-6 && r > 0.5 + 1e-6 && r < top(t) - 1e-6;
    let grad = |t: f64, r: f64| {
        (
            (p(t + H, r) - p(t - H, r)) / (2.0 * H),
            (p(t, r + H) - p(t, r - H)) / (2.0 * H),
        )
    };

    let mut found: Vec<CriticalPoint> = Vec::new();
    let seeds = 16;
    for i in 1..seeds {
        for j in 1..seeds {
            let mut t = lerp(t0, t1, i as f64 / seeds as f64);
            let mut r = lerp(0.5, top(t), j as f64 / seeds as f64);
            let mut converged = false;
            for _ in 0..60 {
                if !inside(t, r) {
                    break;
                }
                let (gt, gr) = grad(t, r);
                if !(gt.is_finite() && gr.is_finite()) {
                    break;
                }
                if sqrt(gt * gt + gr * gr) < GRAD_TOL {
                    converged = true;
                    break;
                }
                let hs = 1e-4;
                let (gtp, grp) = grad(t + hs, r);
                let (gtm, grm) = grad(t - hs, r);
                let (gtq, grq) = grad(t, r + hs);
                let (gtn, grn) = grad(t, r - hs);
                let htt = (gtp - gtm) / (2.0 * hs);
                let hrr = (grq - grn) / (2.0 * hs);
                let htr = 0.5 * ((grp - grm) + (gtq - gtn)) / (2.0 * hs);
                let det = htt * hrr - htr * htr;
                if !(det.abs() > 1e-300) {
                    break;
                }
                t -= (hrr * gt - htr * gr) / det;
                r -= (htt * gr - htr * gt) / det;
            }
            if !converged
                || found
                    .iter()
                    .any(|c| (c.t - t).abs() < 1e-6 && (c.rho - r).abs() < 1e-6)
            {
                continue;
            }
            let hs = 1e-4;
            let htt = (p(t + hs, r) - 2.0 * p(t, r) + p(t - hs, r)) / (hs * hs);
            let hrr = (p(t, r + hs) - 2.0 * p(t, r) + p(t, r - hs)) / (hs * hs);
            let htr = (p(t + hs, r + hs) - p(t + hs, r - hs) - p(t - hs, r + hs)
                + p(t - hs, r - hs))
                / (4.0 * hs * hs);
            let det = htt * hrr - htr * htr;
            let kind = if det < 0.0 {
                Extremum::Saddle
            } else if htt < 0.0 {
                Extremum::Max
            } else {
                Extremum::Min
            };
            found.push(CriticalPoint {
                t,
                rho: r,
                probability: p(t, r),
                kind,
                location: QuadLocation::Interior,
            });
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{case1_optimum, case2_optimum, case3_critical_roots};
    use core::f64::consts::{PI, SQRT_2};

    const P_HEX: f64 = 0.9282032302755088;

    #[test]
    fn domain_maps_corners_exactly() {
        assert_eq!(Domain::Full.map(1.0, 0.0), (1.0, acos(0.5)));
        assert_eq!(Domain::Full.map(0.0, 1.0), (T_MIN, FRAC_PI_2));
        let (t, g) = Domain::Case2.map(1.0, 0.0);
        assert_eq!((t, g), (1.0, case2_gamma_min(1.0).unwrap()));
        assert_eq!(Domain::Rectangular.map(0.3, 0.0).1, FRAC_PI_2);
    }

    #[test]
    fn t_one_row_decreases_from_hexagonal_to_square() {
        let col = sweep_column(Domain::Full, 100, 101, 101);
        assert_eq!(col.len(), 101);
        assert!((col[0].gamma - PI / 3.0).abs() < 1e-15);
        assert!((col[0].probability - P_HEX).abs() < 1e-12);
        assert!((col[100].probability - (2.0 * SQRT_2 - 2.0)).abs() < 1e-12);
        for w in col.windows(2) {
            assert!(w[1].probability < w[0].probability);
        }
    }

    #[test]
    fn two_arc_optimum_record() {
        let r = evaluate(FRAC_1_SQRT_2, acos(1.0 / (2.0 * SQRT_2))).unwrap();
        assert!((r.probability - 0.7559289460184544).abs() < 1e-12);
        assert_eq!(r.case_index, 1);
    }

    #[test]
    fn small_sweep_has_the_square_corner() {
        let s = sweep(2, 2).unwrap();
        assert_eq!(s.len(), 4);
        let last = s.last().unwrap();
        assert_eq!((last.t, last.gamma), (1.0, FRAC_PI_2));
        assert!((last.probability - 0.8284271247461903).abs() < 1e-12);
        assert!(sweep(1, 5).is_err());
    }

    #[test]
    fn full_sweep_peaks_at_hexagonal_corner() {
        let s = sweep(101, 101).unwrap();
        assert_eq!(s.len(), 101 * 101);
        let best = s
            .iter()
            .max_by(|a, b| a.probability.total_cmp(&b.probability))
            .unwrap();
        assert_eq!(best.t, 1.0);
        assert!((best.gamma - PI / 3.0).abs() < 1e-15);
        for w in s.windows(2) {
            assert!(w[0].t < w[1].t || (w[0].t == w[1].t && w[0].gamma < w[1].gamma));
        }
    }

    #[test]
    fn monotone_in_gamma_on_selected_columns() {
        for t in [FRAC_1_SQRT_2, 0.85, 1.0] {
            let (g0, g1) = Domain::Full.gamma_range(t);
            let mut prev = f64::INFINITY;
            for k in 0..=400 {
                let r = evaluate(t, lerp(g0, g1, k as f64 / 400.0)).unwrap();
                assert!(r.probability < prev, "t = {t}, k = {k}");
                prev = r.probability;
            }
        }
    }

    #[test]
    fn case_regions_match_predictions() {
        let s = sweep(41, 41).unwrap();
        let regions = case_regions(&s);
        assert!(regions.is_consistent(), "{:?}", regions.mismatches);
        let col = |t: f64| {
            regions
                .columns
                .iter()
                .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
                .unwrap()
        };
        let c = col(0.5);
        assert_eq!(c.spans.len(), 1);
        assert_eq!(c.spans[0].case_index, 1);
        let c = col(1.0);
        assert_eq!(
            c.spans.iter().map(|s| s.case_index).collect::<Vec<_>>(),
            [3, 2]
        );
        let g = case2_gamma_min(1.0).unwrap();
        assert!(c.spans[0].gamma_hi < g && c.spans[1].gamma_lo >= g);

        let narrow = sweep_column(Domain::Full, 0, 2, 41);
        assert!(narrow.iter().all(|r| r.case_index == 1));
        let col72: Vec<_> = (0..81)
            .map(|k| {
                let (g0, g1) = Domain::Full.gamma_range(0.72);
                evaluate(0.72, lerp(g0, g1, k as f64 / 80.0)).unwrap()
            })
            .collect();
        assert!(col72.iter().any(|r| r.case_index == 2));
        assert!(col72.iter().any(|r| r.case_index == 3));
        assert!(col72
            .iter()
            .all(|r| r.case_index == predicted_case(r.t, r.gamma)
                || (r.gamma - case2_gamma_min(0.72).unwrap()).abs() < 1e-3));
    }

    #[test]
    fn refinement_finds_hexagonal_lattice() {
        let o = global_optimize(64, 1e-10).unwrap();
        assert!(o.refined);
        assert!((o.record.t - 1.0).abs() < 1e-6);
        assert!((o.record.gamma - PI / 3.0).abs() < 1e-6);
        assert!((o.record.probability - P_HEX).abs() < 1e-9);
        assert!(o.objective_gap_bound >= 0.0);
        let s = sweep(33, 33).unwrap();
        assert!(s.iter().all(|r| r.probability <= o.record.probability));
        let o2 = global_optimize(128, 1e-10).unwrap();
        assert!((o2.record.probability - o.record.probability).abs() < 1e-9);
    }

    #[test]
    fn restricted_refinements() {
        let o = global_optimize_in(Domain::Case1, 64, 1e-10).unwrap();
        let c1 = case1_optimum();
        assert!((o.record.probability - c1.probability).abs() < 1e-9);
        assert!((o.record.t - c1.t_opt).abs() < 1e-6);
        assert!((o.record.gamma - c1.gamma_opt).abs() < 1e-6);

        let o = global_optimize_in(Domain::Case2, 64, 1e-10).unwrap();
        assert!((o.record.probability - case2_optimum().probability).abs() < 1e-9);

        let o = global_optimize_in(Domain::Rectangular, 64, 1e-10).unwrap();
        assert!((o.record.t - 1.0).abs() < 1e-6);
        assert!((o.record.probability - (2.0 * SQRT_2 - 2.0)).abs() < 1e-9);

        let o = global_optimize_in(Domain::Case3, 64, 1e-10).unwrap();
        assert!((o.record.probability - P_HEX).abs() < 1e-9);

        assert!(global_optimize(16, 1e-10).is_err());
        assert!(global_optimize(64, 0.0).is_err());
    }

    #[test]
    fn quadrangle_boundary_structure() {
        let q = quadrangle_scan(400).unwrap();
        assert_eq!(q.maxima().count(), 3, "{:?}", q.boundary);
        assert_eq!(q.minima().count(), 3, "{:?}", q.boundary);
        let roots = case3_critical_roots();
        let right_max = q
            .maxima()
            .find(|c| c.location == QuadLocation::Right)
            .unwrap();
        assert!((right_max.rho - roots.rho_1).abs() < 1e-6);
        let right_min = q
            .minima()
            .find(|c| c.location == QuadLocation::Right)
            .unwrap();
        assert!((right_min.rho - roots.rho_2).abs() < 1e-6);
        let best = q.best().unwrap();
        assert!((best.probability - P_HEX).abs() < 1e-9);
        assert!((best.t - 1.0).abs() < 1e-12);
        assert_eq!(q.upper_edge.len(), 401);
        let (first, last) = (q.upper_edge[0], q.upper_edge[400]);
        assert_eq!((first.t, last.t), (FRAC_1_SQRT_2, 1.0));
        assert_eq!(first.rho_line, first.rho_curve);
        assert_eq!(last.rho_line, last.rho_curve);
        let mid = q.upper_edge[200];
        assert!(mid.rho_curve < mid.rho_line, "{mid:?}");
        assert!(quadrangle_scan(50).is_err());
    }
}
