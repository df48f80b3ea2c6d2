//! Lattice geometry in the plane.
//!
//! A lattice is stored in its reduced form: generators `a`, `b` with
//! `|a| <= |b| <= |c|` for `c = a - b` and a non-obtuse angle `gamma` between
//! `a` and `b`. In that form the six vectors `±a, ±b, ±c` are the Delaunay
//! neighbours of the origin and the Voronoi cell is the hexagon (or, for
//! `gamma = pi/2`, the rectangle) cut out by their bisectors.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{acos, atan2, cos, floor, hypot, round, sin};
use crate::{Error, Result, REL_TOL};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        hypot(self.x, self.y)
    }

    /// Polar angle in `[0, 2pi)`.
    pub fn angle(self) -> f64 {
        let t = atan2(self.y, self.x);
        if t < 0.0 {
            // t + TAU can round up to TAU for tiny negative t
            let w = t + TAU;
            if w >= TAU {
                0.0
            } else {
                w
            }
        } else {
            t
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Two linearly independent generators of `L(a, b) = { i a + j b }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeBasis {
    pub a: Vec2,
    pub b: Vec2,
}

impl LatticeBasis {
    pub fn new(a: Vec2, b: Vec2) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite("generator a"));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite("generator b"));
        }
        let det = a.cross(b);
        let scale = a.norm() * b.norm();
        if !(det.abs() > REL_TOL * scale) {
            return Err(Error::DegenerateBasis { det, scale });
        }
        Ok(Self { a, b })
    }
}

/// Generators in non-obtuse canonical form.
///
/// Fields are read-only; values are produced by [`reduce_basis`] or
/// [`lattice_from_params`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedBasis {
    a: Vec2,
    b: Vec2,
    c: Vec2,
    len_a: f64,
    len_b: f64,
    len_c: f64,
    gamma: f64,
}

impl ReducedBasis {
    fn from_generators(a: Vec2, b: Vec2) -> Self {
        let c = a - b;
        let gamma = atan2(a.cross(b).abs(), a.dot(b)).min(FRAC_PI_2);
        Self {
            a,
            b,
            c,
            len_a: a.norm(),
            len_b: b.norm(),
            len_c: c.norm(),
            gamma,
        }
    }

    pub fn a(&self) -> Vec2 {
        self.a
    }
    pub fn b(&self) -> Vec2 {
        self.b
    }
    pub fn c(&self) -> Vec2 {
        self.c
    }
    pub fn len_a(&self) -> f64 {
        self.len_a
    }
    pub fn len_b(&self) -> f64 {
        self.len_b
    }
    pub fn len_c(&self) -> f64 {
        self.len_c
    }
    /// Angle between `a` and `b` in radians, in `(0, pi/2]`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `|a| / |b|`, the shape parameter used by the sweeps.
    pub fn aspect(&self) -> f64 {
        self.len_a / self.len_b
    }

    pub fn edge_lengths(&self) -> [f64; 3] {
        [self.len_a, self.len_b, self.len_c]
    }

    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis {
            a: self.a,
            b: self.b,
        }
    }

    /// The same lattice scaled by `s > 0`. Canonical choice and `gamma` are preserved.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_generators(self.a * s, self.b * s)
    }

    /// `true` for the rectangular (non-primitive) limit `gamma = pi/2`.
    pub fn is_rectangular(&self) -> bool {
        self.a.dot(self.b).abs() <= REL_TOL * self.len_a * self.len_b
    }

    /// The six Delaunay neighbours `±a, ±b, ±c` of the origin, sorted by polar angle.
    pub fn delaunay_neighbors(&self) -> [Vec2; 6] {
        let mut n = [self.a, self.b, self.c, -self.a, -self.b, -self.c];
        n.sort_by(|p, q| p.angle().total_cmp(&q.angle()));
        n
    }
}

/// Lagrange-Gauss reduction followed by canonicalisation.
///
/// The output generates the same lattice, has `|a| <= |b| <= |c|` and
/// `<a, b> >= 0` (both up to [`REL_TOL`]). Among equally short choices the
/// vector with the smallest polar angle in `[0, 2pi)` wins, first for `a` and
/// then for `b`, so the result is a function of the lattice alone.
pub fn reduce_basis(basis: &LatticeBasis) -> Result<ReducedBasis> {
    let LatticeBasis { a, b } = LatticeBasis::new(basis.a, basis.b)?;
    let (mut u, mut v) = if b.norm_sq() < a.norm_sq() {
        (b, a)
    } else {
        (a, b)
    };
    let mut steps = 0;
    // Only shorten strictly; ties within REL_TOL are left alone so that a
    // reduced input passes through bit-for-bit.
    while 2.0 * u.dot(v).abs() > u.norm_sq() * (1.0 + REL_TOL) {
        let k = round(u.dot(v) / u.norm_sq());
        v = v - u * k;
        if v.norm_sq() < u.norm_sq() {
            core::mem::swap(&mut u, &mut v);
        }
        steps += 1;
        if steps > 10_000 {
            return Err(Error::DegenerateBasis {
                det: a.cross(b),
                scale: a.norm() * b.norm(),
            });
        }
    }
    if u.dot(v) < 0.0 {
        v = -v;
    }

    let mut pairs = [u, v, u - v];
    pairs.sort_by(|p, q| p.norm_sq().total_cmp(&q.norm_sq()));
    let l1 = pairs[0].norm();
    let l2 = pairs[1].norm();
    let candidates = [u, -u, v, -v, u - v, v - u];

    let mut best_a: Option<Vec2> = None;
    for &p in &candidates {
        if p.norm() <= l1 * (1.0 + REL_TOL) && best_a.is_none_or(|q| p.angle() < q.angle()) {
            best_a = Some(p);
        }
    }
    let ra = best_a.expect("candidate list contains the shortest vector");

    let mut best_b: Option<Vec2> = None;
    for &p in &candidates {
        let len = p.norm();
        if len > l2 * (1.0 + REL_TOL) {
            continue;
        }
        if ra.cross(p).abs() <= REL_TOL * l1 * len {
            continue;
        }
        if ra.dot(p) < -REL_TOL * l1 * len {
            continue;
        }
        if best_b.is_none_or(|q| p.angle() < q.angle()) {
            best_b = Some(p);
        }
    }
    let rb = best_b.expect("a reduced basis always has a non-obtuse partner");
    Ok(ReducedBasis::from_generators(ra, rb))
}

/// Lattice with `|b| = 1`, `|a| = t` and angle `gamma` between them.
///
/// Domain: `0 < t <= 1` and `arccos(t/2) <= gamma <= pi/2`, which is exactly
/// the set of reduced shapes up to similarity.
pub fn lattice_from_params(t: f64, gamma: f64) -> Result<ReducedBasis> {
    if !t.is_finite() {
        return Err(Error::NonFinite("t"));
    }
    if !gamma.is_finite() {
        return Err(Error::NonFinite("gamma"));
    }
    if !(t > 0.0 && t <= 1.0 + REL_TOL) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let t = t.min(1.0);
    let lo = acos(t / 2.0);
    if gamma < lo - REL_TOL || gamma > FRAC_PI_2 + REL_TOL {
        return Err(Error::Domain {
            what: "gamma",
            value: gamma,
            lo,
            hi: FRAC_PI_2,
        });
    }
    let gamma = gamma.clamp(lo, FRAC_PI_2);
    // cos(FRAC_PI_2) is 6e-17, not 0
    let b = if gamma == FRAC_PI_2 {
        Vec2::new(0.0, 1.0)
    } else {
        Vec2::new(cos(gamma), sin(gamma))
    };
    Ok(ReducedBasis::from_generators(Vec2::new(t, 0.0), b))
}

/// Area of the fundamental domain, `|a||b| sin(gamma)`.
pub fn det_lattice(rb: &ReducedBasis) -> f64 {
    rb.len_a * rb.len_b * sin(rb.gamma)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiiProfile {
    /// Largest radius whose disk fits in the Voronoi cell.
    pub r_pack: f64,
    /// Smallest radius whose disk contains the Voronoi cell.
    pub r_cover: f64,
}

pub fn radii(rb: &ReducedBasis) -> RadiiProfile {
    // circumradius = product of sides / (4 * triangle area), triangle area = det / 2
    RadiiProfile {
        r_pack: rb.len_a / 2.0,
        r_cover: rb.len_a * rb.len_b * rb.len_c / (2.0 * det_lattice(rb)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiCell {
    /// Counter-clockwise vertices; 6 for a hexagonal cell, 4 for a rectangle.
    pub vertices: Vec<Vec2>,
}

impl VoronoiCell {
    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let mut s = 0.0;
        for k in 0..n {
            s += self.vertices[k].cross(self.vertices[(k + 1) % n]);
        }
        s / 2.0
    }

    /// Whether `p` lies in the closed cell.
    pub fn contains(&self, p: Vec2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|k| {
            let e = self.vertices[(k + 1) % n] - self.vertices[k];
            e.cross(p - self.vertices[k]) >= -1e-12 * e.norm_sq()
        })
    }
}

fn circumcenter_with_origin(u: Vec2, v: Vec2) -> Vec2 {
    let d = 2.0 * u.cross(v);
    let (uu, vv) = (u.norm_sq(), v.norm_sq());
    Vec2::new((v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d)
}

/// Voronoi cell of the origin.
///
/// Hexagonal case: circumcentres of the six Delaunay triangles around `0`.
/// Rectangular case: the corners `±a/2 ± b/2`.
pub fn voronoi_cell(rb: &ReducedBasis) -> VoronoiCell {
    let mut vertices = if rb.is_rectangular() {
        let (ha, hb) = (rb.a * 0.5, rb.b * 0.5);
        alloc::vec![ha + hb, hb - ha, -ha - hb, ha - hb]
    } else {
        let n = rb.delaunay_neighbors();
        (0..6)
            .map(|k| circumcenter_with_origin(n[k], n[(k + 1) % 6]))
            .collect()
    };
    vertices.sort_by(|p, q| p.angle().total_cmp(&q.angle()));
    VoronoiCell { vertices }
}

/// All nonzero lattice points with `|p| <= dist`, sorted by (norm, angle).
///
/// Index bounds come from the dual basis: the coefficient of `a` in `p` is
/// `<p, a*>` with `|a*| = |b| / det`, so `|i| <= dist |b| / det`.
pub fn neighbors_within(rb: &ReducedBasis, dist: f64) -> Vec<Vec2> {
    let mut out = Vec::new();
    if !(dist >= 0.0) {
        return out;
    }
    let det = rb.a.cross(rb.b).abs();
    let reach = dist * (1.0 + REL_TOL);
    let imax = floor(reach * rb.len_b / det) as i64 + 1;
    let jmax = floor(reach * rb.len_a / det) as i64 + 1;
    for i in -imax..=imax {
        for j in -jmax..=jmax {
            if i == 0 && j == 0 {
                continue;
            }
            let p = rb.a * i as f64 + rb.b * j as f64;
            if p.norm() <= reach {
                out.push(p);
            }
        }
    }
    out.sort_by(|p, q| {
        p.norm_sq()
            .total_cmp(&q.norm_sq())
            .then(p.angle().total_cmp(&q.angle()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
    use proptest::prelude::*;

    fn basis(ax: f64, ay: f64, bx: f64, by: f64) -> LatticeBasis {
        LatticeBasis::new(Vec2::new(ax, ay), Vec2::new(bx, by)).unwrap()
    }

    /// Brute force: the two shortest independent vectors among i a + j b, |i|,|j| <= 10,
    /// and the shorter of their difference and sum.
    fn brute_force_lengths(b: &LatticeBasis) -> (f64, f64, f64) {
        let mut pts = Vec::new();
        for i in -10i32..=10 {
            for j in -10i32..=10 {
                if (i, j) != (0, 0) {
                    pts.push(b.a * i as f64 + b.b * j as f64);
                }
            }
        }
        pts.sort_by(|p, q| p.norm_sq().total_cmp(&q.norm_sq()));
        let first = pts[0];
        let second = *pts
            .iter()
            .find(|p| first.cross(**p).abs() > 1e-9 * first.norm() * p.norm())
            .unwrap();
        let third = (first - second).norm().min((first + second).norm());
        (first.norm(), second.norm(), third)
    }

    fn assert_reduced(rb: &ReducedBasis) {
        assert!(rb.len_a() <= rb.len_b() * (1.0 + 1e-12));
        assert!(rb.len_b() <= rb.len_c() * (1.0 + 1e-12));
        assert!((rb.c() - (rb.a() - rb.b())).norm() == 0.0);
        assert!(rb.a().dot(rb.b()) >= -1e-12 * rb.len_a() * rb.len_b());
        assert!(rb.gamma() > 0.0 && rb.gamma() <= FRAC_PI_2);
        assert!(rb.gamma() >= acos(rb.len_a() / (2.0 * rb.len_b())) - 1e-9);
    }

    #[test]
    fn already_reduced_input_is_kept() {
        let rb = reduce_basis(&basis(1.0, 0.0, 0.3, 1.0)).unwrap();
        assert_eq!(rb.a(), Vec2::new(1.0, 0.0));
        assert_eq!(rb.b(), Vec2::new(0.3, 1.0));
        assert!((rb.len_b() - 1.044030650891055).abs() < 1e-12);
        assert!((rb.len_c() - 1.2206555615733703).abs() < 1e-12);
    }

    #[test]
    fn skewed_square_reduces_to_unit_square() {
        let input = basis(1.0, 0.0, 5.0, 1.0);
        let (l1, l2, _) = brute_force_lengths(&input);
        let rb = reduce_basis(&input).unwrap();
        assert_eq!(rb.a(), Vec2::new(1.0, 0.0));
        assert_eq!(rb.b(), Vec2::new(0.0, 1.0));
        assert!((rb.len_a() - l1).abs() < 1e-12 && (rb.len_b() - l2).abs() < 1e-12);
        assert_eq!(rb.gamma(), FRAC_PI_2);
        assert!(rb.is_rectangular());
    }

    #[test]
    fn hexagonal_basis_from_obtuse_generators() {
        let input = basis(1.0, 0.0, -0.5, 3f64.sqrt() / 2.0);
        let (l1, l2, l3) = brute_force_lengths(&input);
        let rb = reduce_basis(&input).unwrap();
        assert_reduced(&rb);
        for (got, want) in rb.edge_lengths().into_iter().zip([l1, l2, l3]) {
            assert!((got - want).abs() < 1e-12);
            assert!((got - 1.0).abs() < 1e-12);
        }
        assert!((rb.gamma() - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_non_finite_inputs_are_rejected() {
        let e = LatticeBasis::new(Vec2::new(1.0, 2.0), Vec2::new(2.0, 4.0));
        assert!(matches!(e, Err(Error::DegenerateBasis { .. })));
        let e = LatticeBasis::new(Vec2::new(f64::NAN, 0.0), Vec2::new(0.0, 1.0));
        assert!(matches!(e, Err(Error::NonFinite(_))));
        let e = reduce_basis(&LatticeBasis {
            a: Vec2::new(1.0, 0.0),
            b: Vec2::new(3.0, 1e-14),
        });
        assert!(matches!(e, Err(Error::DegenerateBasis { .. })));
    }

    #[test]
    fn params_examples() {
        let hex = lattice_from_params(1.0, PI / 3.0).unwrap();
        assert!((hex.len_c() - 1.0).abs() < 1e-15);
        let sq = lattice_from_params(1.0, FRAC_PI_2).unwrap();
        assert!((sq.len_c() - SQRT_2).abs() < 1e-15);
        let two_arcs = lattice_from_params(FRAC_1_SQRT_2, acos(1.0 / (2.0 * SQRT_2))).unwrap();
        assert!((two_arcs.len_c() - 1.0).abs() < 1e-15);
        assert!((two_arcs.len_a() - FRAC_1_SQRT_2).abs() < 1e-16);
        assert!(lattice_from_params(1.0, 1.0).is_err());
        assert!(lattice_from_params(0.0, 1.5).is_err());
        assert!(lattice_from_params(1.2, 1.5).is_err());
        assert!(lattice_from_params(0.5, 1.6).is_err());
    }

    #[test]
    fn determinant_examples() {
        let hex = lattice_from_params(1.0, PI / 3.0).unwrap();
        assert!((det_lattice(&hex) - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let sq = lattice_from_params(1.0, FRAC_PI_2).unwrap();
        assert!((det_lattice(&sq) - 1.0).abs() < 1e-15);
        let four = lattice_from_params(1.0, acos(SQRT_2 - 1.0)).unwrap();
        // sqrt(1 - (sqrt2 - 1)^2)
        let want = (1.0 - (SQRT_2 - 1.0) * (SQRT_2 - 1.0)).sqrt();
        assert!((det_lattice(&four) - want).abs() < 1e-15);
        assert!((want - 0.9101797211244548).abs() < 1e-15);
    }

    #[test]
    fn radii_examples() {
        let hex = radii(&lattice_from_params(1.0, PI / 3.0).unwrap());
        assert_eq!(hex.r_pack, 0.5);
        assert!((hex.r_cover - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let sq = radii(&lattice_from_params(1.0, FRAC_PI_2).unwrap());
        assert!((sq.r_cover - SQRT_2 / 2.0).abs() < 1e-15);
        let rb = lattice_from_params(FRAC_1_SQRT_2, acos(1.0 / (2.0 * SQRT_2))).unwrap();
        let r = radii(&rb);
        assert!((r.r_pack - 0.3535533905932738).abs() < 1e-15);
        // sides (1/sqrt2, 1, 1): area by Heron, circumradius = abc / (4 area)
        let (x, y, z) = (FRAC_1_SQRT_2, 1.0, 1.0);
        let s = (x + y + z) / 2.0;
        let heron = (s * (s - x) * (s - y) * (s - z)).sqrt();
        assert!((r.r_cover - x * y * z / (4.0 * heron)).abs() < 1e-14);
    }

    #[test]
    fn voronoi_examples() {
        let sq = lattice_from_params(1.0, FRAC_PI_2).unwrap();
        let cell = voronoi_cell(&sq);
        assert_eq!(cell.vertices.len(), 4);
        for v in &cell.vertices {
            assert!((v.x.abs() - 0.5).abs() < 1e-15 && (v.y.abs() - 0.5).abs() < 1e-15);
        }
        let hex = lattice_from_params(1.0, PI / 3.0).unwrap();
        let cell = voronoi_cell(&hex);
        assert_eq!(cell.vertices.len(), 6);
        for v in &cell.vertices {
            assert!((v.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert!((cell.area() - det_lattice(&hex)).abs() < 1e-15);
        assert!(cell.contains(Vec2::ZERO));
        assert!(!cell.contains(Vec2::new(0.6, 0.0)));
    }

    #[test]
    fn neighbor_examples() {
        let hex = lattice_from_params(1.0, PI / 3.0).unwrap();
        let n = neighbors_within(&hex, 1.0);
        assert_eq!(n.len(), 6);
        assert!(n.iter().all(|p| (p.norm() - 1.0).abs() < 1e-15));

        let sq = lattice_from_params(1.0, FRAC_PI_2).unwrap();
        let n = neighbors_within(&sq, 1.5);
        assert_eq!(n.len(), 8);
        assert_eq!(
            n.iter().filter(|p| (p.norm() - 1.0).abs() < 1e-12).count(),
            4
        );

        // brute force over |i|,|j| <= 4
        let d = 3f64.sqrt() + 1e-9;
        let mut brute = 0;
        for i in -4i32..=4 {
            for j in -4i32..=4 {
                let p = hex.a() * i as f64 + hex.b() * j as f64;
                if (i, j) != (0, 0) && p.norm() <= d {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 12);
        assert_eq!(neighbors_within(&hex, d).len(), 12);
        assert!(neighbors_within(&hex, 0.5).is_empty());
    }

    #[test]
    fn thin_lattice_enumeration_is_complete() {
        let rb = lattice_from_params(0.05, 1.55).unwrap();
        let dist = 2.33;
        let n = neighbors_within(&rb, dist);
        let mut brute = 0;
        for i in -120i32..=120 {
            for j in -5i32..=5 {
                let p = rb.a() * i as f64 + rb.b() * j as f64;
                if (i, j) != (0, 0) && p.norm() <= dist {
                    brute += 1;
                }
            }
        }
        assert_eq!(n.len(), brute);
    }

    fn shape() -> impl Strategy<Value = (f64, f64)> {
        (0.05f64..=1.0, 0.0f64..=1.0).prop_map(|(t, s)| {
            let lo = acos(t / 2.0);
            (t, lo + s * (FRAC_PI_2 - lo))
        })
    }

    fn unimodular() -> impl Strategy<Value = [i64; 4]> {
        (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
            .prop_filter("det = ±1", |(p, q, r, s)| (p * s - q * r).abs() == 1)
            .prop_map(|(p, q, r, s)| [p, q, r, s])
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent((t, g) in shape(), rot in 0.0f64..TAU, m in unimodular()) {
            let rb = lattice_from_params(t, g).unwrap();
            let (cr, sr) = (cos(rot), sin(rot));
            let r = |v: Vec2| Vec2::new(cr * v.x - sr * v.y, sr * v.x + cr * v.y);
            let (a, b) = (r(rb.a()), r(rb.b()));
            let input = LatticeBasis::new(a * m[0] as f64 + b * m[1] as f64, a * m[2] as f64 + b * m[3] as f64).unwrap();
            let once = reduce_basis(&input).unwrap();
            let twice = reduce_basis(&once.basis()).unwrap();
            prop_assert_eq!(once, twice);
            assert_reduced(&once);
        }

        #[test]
        fn unimodular_invariance((t, g) in shape(), m in unimodular()) {
            let rb = lattice_from_params(t, g).unwrap();
            let (a, b) = (rb.a(), rb.b());
            let input = LatticeBasis::new(a * m[0] as f64 + b * m[1] as f64, a * m[2] as f64 + b * m[3] as f64).unwrap();
            let red = reduce_basis(&input).unwrap();
            prop_assert!((red.len_a() - rb.len_a()).abs() < 1e-12);
            prop_assert!((red.len_b() - rb.len_b()).abs() < 1e-12);
            prop_assert!((red.len_c() - rb.len_c()).abs() < 1e-12);
            prop_assert!((red.gamma() - rb.gamma()).abs() < 1e-12);
        }

        #[test]
        fn scale_equivariance((t, g) in shape(), m in unimodular()) {
            let rb = lattice_from_params(t, g).unwrap();
            let (a, b) = (rb.a(), rb.b());
            let input = LatticeBasis::new(a * m[0] as f64 + b * m[1] as f64, a * m[2] as f64 + b * m[3] as f64).unwrap();
            let base = reduce_basis(&input).unwrap();
            for s in [0.5, 2.0, 7.3] {
                let scaled = reduce_basis(&LatticeBasis::new(input.a * s, input.b * s).unwrap()).unwrap();
                prop_assert!((scaled.len_a() - s * base.len_a()).abs() < 1e-12 * s);
                prop_assert!((scaled.len_b() - s * base.len_b()).abs() < 1e-12 * s);
                prop_assert!((scaled.len_c() - s * base.len_c()).abs() < 1e-12 * s);
                prop_assert!((scaled.gamma() - base.gamma()).abs() < 1e-12);
            }
        }

        #[test]
        fn voronoi_cell_invariants((t, g) in shape()) {
            let rb = lattice_from_params(t, g).unwrap();
            let cell = voronoi_cell(&rb);
            let r = radii(&rb);
            let n = cell.vertices.len();
            prop_assert!(n == 4 || n == 6);
            for k in 0..n {
                let v = cell.vertices[k];
                prop_assert!(((v.norm() - r.r_cover) / r.r_cover).abs() < 1e-10);
                let w = cell.vertices[(k + n / 2) % n];
                prop_assert!((v + w).norm() < 1e-12 * r.r_cover);
                let e0 = cell.vertices[(k + 1) % n] - v;
                let e1 = cell.vertices[(k + 2) % n] - cell.vertices[(k + 1) % n];
                prop_assert!(e0.cross(e1) >= -1e-12);
            }
            prop_assert!(cell.contains(Vec2::ZERO));
            let det = det_lattice(&rb);
            prop_assert!(((cell.area() - det) / det).abs() < 1e-12);
            prop_assert!(r.r_pack < r.r_cover);
        }
    }
}
