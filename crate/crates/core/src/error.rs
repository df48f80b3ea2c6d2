use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A coordinate or parameter was NaN or infinite.
    NonFinite(&'static str),
    /// The two generators are (numerically) linearly dependent.
    DegenerateBasis { det: f64, scale: f64 },
    /// A parameter lies outside the domain of the operation.
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    /// A radius outside `[r_pack, r_cover]` was passed to the partial disk routines.
    RadiusOutOfRange { rho: f64, r_pack: f64, r_cover: f64 },
    /// The equilibrium function did not change sign over `[r_pack, r_cover]`.
    NoBracket { g_lo: f64, g_hi: f64 },
    /// Two evaluation routes that must agree did not.
    Inconsistent {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },
    /// Local refinement ran out of iterations before reaching its tolerance.
    RefinementStall { step: f64, tol: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "{what} must be finite"),
            Error::DegenerateBasis { det, scale } => write!(
                f,
                "degenerate basis: |det| = {det:e} is below 1e-12 * |a||b| = {:e}",
                1e-12 * scale
            ),
            Error::Domain {
                what,
                value,
                lo,
                hi,
            } => {
                write!(f, "{what} = {value} outside its domain [{lo}, {hi}]")
            }
            Error::RadiusOutOfRange {
                rho,
                r_pack,
                r_cover,
            } => write!(
                f,
                "radius {rho} outside [r_pack, r_cover] = [{r_pack}, {r_cover}]"
            ),
            Error::NoBracket { g_lo, g_hi } => write!(
                f,
                "equilibrium function does not bracket a root (g(lo) = {g_lo}, g(hi) = {g_hi})"
            ),
            Error::Inconsistent { what, lhs, rhs } => {
                write!(f, "inconsistent {what}: {lhs} vs {rhs}")
            }
            Error::RefinementStall { step, tol } => {
                write!(
                    f,
                    "refinement stalled with step {step:e} above tolerance {tol:e}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
