//! Subcommands. Each writes its report to `out` and returns the exit status.

use std::f64::consts::PI;
use std::io::{self, Write};

use disklattice_core::closed_forms::{case1_optimum, case2_optimum, case3_optimum, CaseOptimum};
use disklattice_core::geometry::{det_lattice, radii, voronoi_cell, ReducedBasis};
use disklattice_core::optimizer::{global_optimize_in, Optimum};
use disklattice_core::oracle::grid_error_bound;
use disklattice_core::partial_disk::{area_exactly_one, area_profile, equilibrium_probability};
use disklattice_core::REL_TOL;
use serde::{Deserialize, Serialize};

use crate::config::{Command, Format, RunConfig};
use crate::format::{g9, write_profile_csv, write_profile_json, write_sweep_csv, write_sweep_json};
use crate::{parallel, AppError, ExitStatus};

/// Refinement step tolerance used by `optimize`.
pub const REFINE_TOL: f64 = 1e-10;

/// `write!` failures on the output sink become exit code 3.
pub type Sink<'a> = &'a mut dyn Write;

pub fn run(cfg: &RunConfig, out: Sink) -> Result<ExitStatus, AppError> {
    let io_err = |source: io::Error| AppError::Io {
        path: cfg
            .out_path
            .as_ref()
            .map_or_else(|| "<stdout>".to_string(), |p| p.display().to_string()),
        source,
    };
    match cfg.command {
        Command::Analyze => {
            let report = analyze(&cfg.reduced_lattice()?)?;
            write_analyze(out, &report, cfg.format).map_err(io_err)?;
            Ok(ExitStatus::Success)
        }
        Command::Sweep => {
            let records = parallel::sweep(cfg.restrict.domain(), cfg.grid, cfg.grid);
            match cfg.format {
                Format::Csv => write_sweep_csv(out, &records),
                Format::Json => write_sweep_json(out, &records),
            }
            .map_err(io_err)?;
            Ok(ExitStatus::Success)
        }
        Command::Optimize => {
            let report = optimize(cfg)?;
            write_optimize(out, &report, cfg.format).map_err(io_err)?;
            Ok(ExitStatus::Success)
        }
        Command::Verify => {
            let report = verify(cfg)?;
            write_verify(out, &report, cfg.format).map_err(io_err)?;
            Ok(if report.pass {
                ExitStatus::Success
            } else {
                ExitStatus::VerifyFailed
            })
        }
        Command::Profile => {
            let points = area_profile(&cfg.reduced_lattice()?, cfg.grid)?;
            match cfg.format {
                Format::Csv => write_profile_csv(out, &points),
                Format::Json => write_profile_json(out, &points),
            }
            .map_err(io_err)?;
            Ok(ExitStatus::Success)
        }
    }
}

// ---------------------------------------------------------------------------
// analyze

/// Flat record describing one lattice and its equilibrium.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub a_x: f64,
    pub a_y: f64,
    pub b_x: f64,
    pub b_y: f64,
    pub len_a: f64,
    pub len_b: f64,
    pub len_c: f64,
    pub gamma_rad: f64,
    pub det: f64,
    pub r_pack: f64,
    pub r_cover: f64,
    pub voronoi_vertices: Vec<[f64; 2]>,
    pub rho_eq: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub case: u8,
    pub area: f64,
    pub probability: f64,
}

pub fn analyze(rb: &ReducedBasis) -> Result<AnalyzeReport, AppError> {
    let eq = equilibrium_probability(rb)?;
    let r = radii(rb);
    Ok(AnalyzeReport {
        a_x: rb.a().x,
        a_y: rb.a().y,
        b_x: rb.b().x,
        b_y: rb.b().y,
        len_a: rb.len_a(),
        len_b: rb.len_b(),
        len_c: rb.len_c(),
        gamma_rad: rb.gamma(),
        det: det_lattice(rb),
        r_pack: r.r_pack,
        r_cover: r.r_cover,
        voronoi_vertices: voronoi_cell(rb)
            .vertices
            .iter()
            .map(|v| [v.x, v.y])
            .collect(),
        rho_eq: eq.rho_eq,
        phi1: eq.arcs.phi1,
        phi2: eq.arcs.phi2,
        phi3: eq.arcs.phi3,
        case: eq.case_index,
        area: eq.area,
        probability: eq.probability,
    })
}

pub const ANALYZE_HEADER: &str = "a_x,a_y,b_x,b_y,len_a,len_b,len_c,gamma_rad,det,r_pack,r_cover,\
voronoi_vertices,rho_eq,phi1,phi2,phi3,case,area,probability";

fn write_analyze(out: Sink, r: &AnalyzeReport, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, r)?;
            writeln!(out)
        }
        Format::Csv => {
            let verts = r
                .voronoi_vertices
                .iter()
                .map(|[x, y]| format!("{} {}", g9(*x), g9(*y)))
                .collect::<Vec<_>>()
                .join(";");
            let head = [
                r.a_x,
                r.a_y,
                r.b_x,
                r.b_y,
                r.len_a,
                r.len_b,
                r.len_c,
                r.gamma_rad,
                r.det,
                r.r_pack,
                r.r_cover,
            ]
            .map(g9)
            .join(",");
            let tail = [r.rho_eq, r.phi1, r.phi2, r.phi3].map(g9).join(",");
            writeln!(out, "{ANALYZE_HEADER}")?;
            writeln!(
                out,
                "{head},{verts},{tail},{},{},{}",
                r.case,
                g9(r.area),
                g9(r.probability)
            )
        }
    }
}

// ---------------------------------------------------------------------------
// optimize

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeSummary {
    pub label: String,
    pub t: f64,
    pub gamma_deg: f64,
    pub rho: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizeReport {
    pub domain: String,
    pub coarse: usize,
    pub optimum: ShapeSummary,
    pub coarse_best: f64,
    pub refinement_gain: f64,
    pub case_optima: Vec<ShapeSummary>,
}

pub fn optimize(cfg: &RunConfig) -> Result<OptimizeReport, AppError> {
    let coarse = cfg.grid.max(32);
    let Optimum {
        record,
        objective_gap_bound,
        coarse_best,
        ..
    } = global_optimize_in(cfg.restrict.domain(), coarse, REFINE_TOL)?;
    let case = |label: &str, o: CaseOptimum| ShapeSummary {
        label: label.to_string(),
        t: o.t_opt,
        gamma_deg: o.gamma_opt.to_degrees(),
        rho: o.rho_opt,
        probability: o.probability,
    };
    Ok(OptimizeReport {
        domain: format!("{:?}", cfg.restrict).to_lowercase(),
        coarse,
        optimum: ShapeSummary {
            label: "optimum".into(),
            t: record.t,
            gamma_deg: record.gamma.to_degrees(),
            rho: record.rho_eq,
            probability: record.probability,
        },
        coarse_best,
        refinement_gain: objective_gap_bound,
        case_optima: vec![
            case("case1", case1_optimum()),
            case("case2", case2_optimum()),
            case("case3", case3_optimum()),
        ],
    })
}

fn write_shape(out: Sink, s: &ShapeSummary) -> io::Result<()> {
    writeln!(
        out,
        "{:<8} t={:.6} gamma={:.6} deg rho={:.6} P={:.6}",
        s.label, s.t, s.gamma_deg, s.rho, s.probability
    )
}

fn write_optimize(out: Sink, r: &OptimizeReport, format: Format) -> io::Result<()> {
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *out, r)?;
        return writeln!(out);
    }
    writeln!(
        out,
        "domain {} ({}x{} coarse grid)",
        r.domain, r.coarse, r.coarse
    )?;
    write_shape(out, &r.optimum)?;
    writeln!(
        out,
        "coarse best P={:.9} refinement gain={:.3e}",
        r.coarse_best, r.refinement_gain
    )?;
    writeln!(out, "closed-form optima per case:")?;
    for s in &r.case_optima {
        write_shape(out, s)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub rho: f64,
    pub det: f64,
    pub analytic_area: f64,
    pub analytic_probability: f64,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub mc_samples: u64,
    pub seed: u64,
    pub mc_pass: bool,
    pub grid_resolution: u32,
    pub grid_area: f64,
    pub grid_bound: f64,
    pub grid_pass: bool,
    pub pass: bool,
}

/// Analytic exactly-one area: `pi rho^2` while the disks are disjoint, the
/// three-pair formula up to the covering radius.
pub fn analytic_area(rb: &ReducedBasis, rho: f64) -> Result<f64, AppError> {
    let r = radii(rb);
    if rho < r.r_pack * (1.0 - REL_TOL) {
        Ok(PI * rho * rho)
    } else if rho <= r.r_cover * (1.0 + REL_TOL) {
        Ok(area_exactly_one(rb, rho)?)
    } else {
        Err(AppError::invalid(format!(
            "--rho {rho} exceeds the covering radius {}; no analytic value beyond it",
            r.r_cover
        )))
    }
}

pub fn verify(cfg: &RunConfig) -> Result<VerifyReport, AppError> {
    let rb = cfg.reduced_lattice()?;
    let rho = match cfg.rho {
        Some(r) => r,
        None => equilibrium_probability(&rb)?.rho_eq,
    };
    let det = det_lattice(&rb);
    let area = analytic_area(&rb, rho)?;
    let p = area / det;
    let mc = parallel::mc_exactly_one(&rb, rho, cfg.samples, cfg.seed)?;
    let grid_area = parallel::grid_area_exactly_one(&rb, rho, cfg.resolution)?;
    let grid_bound = grid_error_bound(radii(&rb).r_cover, cfg.resolution);
    let mc_pass = (mc.mean - p).abs() <= 4.0 * mc.std_error;
    let grid_pass = (grid_area - area).abs() <= grid_bound;
    Ok(VerifyReport {
        rho,
        det,
        analytic_area: area,
        analytic_probability: p,
        mc_mean: mc.mean,
        mc_std_error: mc.std_error,
        mc_samples: mc.n_samples,
        seed: mc.seed,
        mc_pass,
        grid_resolution: cfg.resolution,
        grid_area,
        grid_bound,
        grid_pass,
        pass: mc_pass && grid_pass,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_verify(out: Sink, r: &VerifyReport, format: Format) -> io::Result<()> {
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *out, r)?;
        return writeln!(out);
    }
    writeln!(out, "rho                 {}", g9(r.rho))?;
    writeln!(out, "analytic P          {}", g9(r.analytic_probability))?;
    writeln!(
        out,
        "monte carlo P       {} +- {} (n={}, seed={:#x}) {}",
        g9(r.mc_mean),
        g9(r.mc_std_error),
        r.mc_samples,
        r.seed,
        verdict(r.mc_pass)
    )?;
    writeln!(
        out,
        "grid area           {} vs {} (resolution {}, bound {}) {}",
        g9(r.grid_area),
        g9(r.analytic_area),
        r.grid_resolution,
        g9(r.grid_bound),
        verdict(r.grid_pass)
    )?;
    writeln!(out, "{}", verdict(r.pass))
}
