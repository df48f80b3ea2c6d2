//! Number formatting and record writers.
//!
//! CSV numbers use nine significant digits in the style of C's `%.9g`, so
//! output is byte-stable for a fixed configuration. JSON keeps full
//! round-trip precision.

use std::io::{self, Write};

use disklattice_core::optimizer::SweepRecord;
use disklattice_core::partial_disk::ProfilePoint;
use serde::Serialize;

/// `%.9g`: nine significant digits, trailing zeros removed, exponent form
/// below `1e-4` and from `1e9` on.
pub fn g9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (8 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const SWEEP_HEADER: &str = "t,gamma_rad,rho_eq,phi1,phi2,phi3,case,area,probability";
pub const PROFILE_HEADER: &str = "rho,area,probability";

pub fn sweep_row(r: &SweepRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        g9(r.t),
        g9(r.gamma),
        g9(r.rho_eq),
        g9(r.phi1),
        g9(r.phi2),
        g9(r.phi3),
        r.case_index,
        g9(r.area),
        g9(r.probability)
    )
}

pub fn write_sweep_csv(w: &mut (impl Write + ?Sized), records: &[SweepRecord]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in records {
        writeln!(w, "{}", sweep_row(r))?;
    }
    Ok(())
}

/// JSON mirror of [`SweepRecord`].
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SweepJson {
    pub t: f64,
    pub gamma_rad: f64,
    pub rho_eq: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub case: u8,
    pub area: f64,
    pub probability: f64,
}

impl From<&SweepRecord> for SweepJson {
    fn from(r: &SweepRecord) -> Self {
        SweepJson {
            t: r.t,
            gamma_rad: r.gamma,
            rho_eq: r.rho_eq,
            phi1: r.phi1,
            phi2: r.phi2,
            phi3: r.phi3,
            case: r.case_index,
            area: r.area,
            probability: r.probability,
        }
    }
}

pub fn write_sweep_json(w: &mut (impl Write + ?Sized), records: &[SweepRecord]) -> io::Result<()> {
    let rows: Vec<SweepJson> = records.iter().map(SweepJson::from).collect();
    serde_json::to_writer_pretty(&mut *w, &rows)?;
    writeln!(w)
}

pub fn write_profile_csv(w: &mut (impl Write + ?Sized), points: &[ProfilePoint]) -> io::Result<()> {
    writeln!(w, "{PROFILE_HEADER}")?;
    for p in points {
        writeln!(w, "{},{},{}", g9(p.rho), g9(p.area), g9(p.probability))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ProfileJson {
    rho: f64,
    area: f64,
    probability: f64,
}

pub fn write_profile_json(
    w: &mut (impl Write + ?Sized),
    points: &[ProfilePoint],
) -> io::Result<()> {
    let rows: Vec<ProfileJson> = points
        .iter()
        .map(|p| ProfileJson {
            rho: p.rho,
            area: p.area,
            probability: p.probability,
        })
        .collect();
    serde_json::to_writer_pretty(&mut *w, &rows)?;
    writeln!(w)
}
