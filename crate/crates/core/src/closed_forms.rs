//! Closed-form expressions for the three arc regimes, normalised to `|b| = 1`.
//!
//! With `t = |a| / |b|`:
//!
//! - two arcs (`t <= 1/sqrt2`): `rho = t / sqrt2` and `P = t / sin(gamma)`;
//! - four arcs: `rho^2 = (t^2 + 1 - sqrt2 t) / 2` and
//!   `P = (2 sqrt2 t - t^2 - 1) / (t sin(gamma))`, valid while
//!   `cos(gamma) <= sqrt2 - (t^2 + 1) / (2t)`;
//! - six arcs: no single expression; `(t, rho)` determines `gamma` through
//!   [`case3_cos_gamma`] and the sines of the arcs through [`case3_sin_phis`].
//!
//! These are cross-checks for the numeric pipeline in
//! [`partial_disk`](crate::partial_disk), which stays authoritative.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};

use crate::math::{acos, cbrt, cos, sin, sqrt};
use crate::{Error, Result, REL_TOL};

/// Optimal parameters within one arc regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseOptimum {
    pub case_index: u8,
    pub t_opt: f64,
    pub gamma_opt: f64,
    pub rho_opt: f64,
    pub probability: f64,
}

/// Radii at which both partial derivatives of the six-arc probability vanish for `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalRoots {
    pub rho_1: f64,
    pub rho_2: f64,
    /// Exceeds every covering radius of the `t = 1` family; not a feasible equilibrium.
    pub rho_3: f64,
    /// `3 + 2 sqrt2`.
    pub c_const: f64,
}

impl CriticalRoots {
    /// Largest covering radius over `|a| = |b| = 1`, reached by the square lattice.
    pub const MAX_COVER_UNIT_RHOMBUS: f64 = FRAC_1_SQRT_2;

    pub fn rho_3_excluded(&self) -> bool {
        self.rho_3 > Self::MAX_COVER_UNIT_RHOMBUS
    }
}

fn domain(what: &'static str, value: f64, lo: f64, hi: f64) -> Error {
    Error::Domain {
        what,
        value,
        lo,
        hi,
    }
}

fn check_gamma(t: f64, gamma: f64, lo: f64) -> Result<()> {
    if !(gamma >= lo - REL_TOL && gamma <= FRAC_PI_2 + REL_TOL) {
        return Err(domain("gamma", gamma, lo, FRAC_PI_2));
    }
    if !(t > 0.0) {
        return Err(domain("t", t, 0.0, 1.0));
    }
    Ok(())
}

/// Two-arc equilibrium probability `t / sin(gamma)`.
pub fn case1_probability(t: f64, gamma: f64) -> Result<f64> {
    if !(t > 0.0 && t <= FRAC_1_SQRT_2 * (1.0 + REL_TOL)) {
        return Err(domain("t", t, 0.0, FRAC_1_SQRT_2));
    }
    check_gamma(t, gamma, acos(t / 2.0))?;
    Ok(t / sin(gamma))
}

pub fn case1_optimum() -> CaseOptimum {
    let t = FRAC_1_SQRT_2;
    let gamma = acos(1.0 / (2.0 * SQRT_2));
    CaseOptimum {
        case_index: 1,
        t_opt: t,
        gamma_opt: gamma,
        rho_opt: 0.5,
        probability: t / sin(gamma),
    }
}

fn check_case2_t(t: f64) -> Result<()> {
    if !(t > FRAC_1_SQRT_2 && t <= 1.0 + REL_TOL) {
        return Err(domain("t", t, FRAC_1_SQRT_2, 1.0));
    }
    Ok(())
}

/// Four-arc equilibrium radius; depends on `t` only.
pub fn case2_radius(t: f64) -> Result<f64> {
    check_case2_t(t)?;
    Ok(sqrt(0.5 * (t * t + 1.0 - SQRT_2 * t)))
}

/// Smallest angle for which the four-arc regime holds at shape `t`; below it
/// the third pair starts to cut. Defined on the closed range `[1/sqrt2, 1]`.
pub fn case2_gamma_min(t: f64) -> Result<f64> {
    if !(FRAC_1_SQRT_2 * (1.0 - REL_TOL)..=1.0 + REL_TOL).contains(&t) {
        return Err(domain("t", t, FRAC_1_SQRT_2, 1.0));
    }
    Ok(acos((SQRT_2 - (t * t + 1.0) / (2.0 * t)).clamp(-1.0, 1.0)))
}

pub fn case2_probability(t: f64, gamma: f64) -> Result<f64> {
    check_case2_t(t)?;
    check_gamma(t, gamma, case2_gamma_min(t)?)?;
    Ok((2.0 * SQRT_2 * t - t * t - 1.0) / (t * sin(gamma)))
}

pub fn case2_optimum() -> CaseOptimum {
    let gamma = acos(SQRT_2 - 1.0);
    CaseOptimum {
        case_index: 2,
        t_opt: 1.0,
        gamma_opt: gamma,
        rho_opt: sqrt(1.0 - FRAC_1_SQRT_2),
        probability: (2.0 * SQRT_2 - 2.0) / sin(gamma),
    }
}

fn check_case3(t: f64, rho: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0 + REL_TOL) {
        return Err(domain("t", t, 0.0, 1.0));
    }
    if !(2.0 * rho >= 1.0) || !rho.is_finite() {
        return Err(domain("rho", rho, 0.5, f64::INFINITY));
    }
    Ok(())
}

/// `(sin phi1, sin phi2, sin phi3)` at an equilibrium radius `rho` where all
/// three pairs cut, with `|b| = 1`. The third sine uses the equilibrium
/// condition `phi3 = pi/2 - phi1 - phi2`.
pub fn case3_sin_phis(t: f64, rho: f64) -> Result<(f64, f64, f64)> {
    check_case3(t, rho)?;
    let r2 = rho * rho;
    let root_a = sqrt(4.0 * r2 - t * t);
    let root_b = sqrt(4.0 * r2 - 1.0);
    let s1 = t * root_a / (2.0 * r2);
    let s2 = root_b / (2.0 * r2);
    let mix = t * root_b + root_a;
    let s3 = 1.0 - mix * mix / (8.0 * r2 * r2);
    Ok((s1, s2, s3))
}

/// `cos(gamma)` of the lattice with `|a| = t`, `|b| = 1` whose six-arc
/// equilibrium radius is `rho`.
///
/// Obtained from `cos(phi3/2) = |c| / (2 rho)`, the equilibrium condition and
/// the law of cosines for `|c|`:
///
/// `cos(gamma) = (t^2 + 1 - 2 rho^2) / (2t)
///             - (1 - 2 rho^2) sqrt(4 rho^2 - t^2) / (4 rho^2)
///             - (t^2 - 2 rho^2) sqrt(4 rho^2 - 1) / (4 rho^2 t)`.
pub fn case3_cos_gamma(t: f64, rho: f64) -> Result<f64> {
    check_case3(t, rho)?;
    let r2 = rho * rho;
    let ra = 4.0 * r2 - t * t;
    let rb = 4.0 * r2 - 1.0;
    if ra < 0.0 || rb < 0.0 {
        return Err(domain("rho", rho, t.max(1.0) / 2.0, f64::INFINITY));
    }
    Ok((t * t + 1.0 - 2.0 * r2) / (2.0 * t)
        - (1.0 - 2.0 * r2) / (4.0 * r2) * sqrt(ra)
        - (t * t - 2.0 * r2) / (4.0 * r2 * t) * sqrt(rb))
}

/// Six-arc equilibrium probability as a function of `(t, rho)`, with `gamma`
/// eliminated through [`case3_cos_gamma`]:
/// `P = 2 rho^2 (sin phi1 + sin phi2 + sin phi3) / (t sin gamma)`.
pub fn case3_probability(t: f64, rho: f64) -> Result<f64> {
    let cg = case3_cos_gamma(t, rho)?;
    if !(cg.abs() < 1.0) {
        return Err(domain("cos(gamma)", cg, -1.0, 1.0));
    }
    let (s1, s2, s3) = case3_sin_phis(t, rho)?;
    Ok(2.0 * rho * rho * (s1 + s2 + s3) / (t * sqrt(1.0 - cg * cg)))
}

pub fn case3_critical_roots() -> CriticalRoots {
    let c = 3.0 + 2.0 * SQRT_2;
    let cr = cbrt(c);
    CriticalRoots {
        rho_1: (sqrt(6.0) - SQRT_2) / 2.0,
        rho_2: 0.5 * sqrt(cr - 1.0 + 1.0 / cr),
        rho_3: (sqrt(6.0) + SQRT_2) / 2.0,
        c_const: c,
    }
}

pub fn case3_optimum() -> CaseOptimum {
    let rho = 1.0 / (2.0 * cos(PI / 12.0));
    let gamma = PI / 3.0;
    CaseOptimum {
        case_index: 3,
        t_opt: 1.0,
        gamma_opt: gamma,
        rho_opt: rho,
        // 2 rho^2 * 3 sin(pi/6) / sin(pi/3)
        probability: 3.0 * rho * rho / sin(gamma),
    }
}
