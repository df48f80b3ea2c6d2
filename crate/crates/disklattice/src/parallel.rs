//! Rayon drivers. Work is split into fixed blocks that do not depend on the
//! thread count, and tallies are integers, so results are identical for any
//! pool size.

use disklattice_core::geometry::ReducedBasis;
use disklattice_core::optimizer::{sweep_column, Domain, SweepRecord};
use disklattice_core::oracle::{
    check_resolution, grid_area_from_tally, CounterRng, CoverageCounter, McEstimate, Tally,
};
use disklattice_core::Result;
use rayon::prelude::*;

/// Monte Carlo samples per work item.
pub const SAMPLE_BLOCK: u64 = 1 << 15;
/// Grid rows per work item.
pub const ROW_BLOCK: u32 = 8;

pub fn sample_tally(counter: &CoverageCounter, seed: u64, n: u64) -> Tally {
    let rng = CounterRng::new(seed);
    (0..n.div_ceil(SAMPLE_BLOCK))
        .into_par_iter()
        .map(|k| counter.sample_tally(rng, k * SAMPLE_BLOCK..((k + 1) * SAMPLE_BLOCK).min(n)))
        .reduce(Tally::default, Tally::merge)
}

pub fn grid_tally(counter: &CoverageCounter, resolution: u32) -> Tally {
    (0..resolution.div_ceil(ROW_BLOCK))
        .into_par_iter()
        .map(|k| {
            counter.grid_tally(
                resolution,
                k * ROW_BLOCK..((k + 1) * ROW_BLOCK).min(resolution),
            )
        })
        .reduce(Tally::default, Tally::merge)
}

/// Parallel counterpart of `oracle::mc_exactly_one`; bit-identical result.
pub fn mc_exactly_one(rb: &ReducedBasis, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let counter = CoverageCounter::new(rb, rho)?;
    Ok(sample_tally(&counter, seed, n).exactly_one_estimate(seed))
}

/// Parallel counterpart of `oracle::mc_cover_count`; bit-identical result.
pub fn mc_cover_count(rb: &ReducedBasis, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let counter = CoverageCounter::new(rb, rho)?;
    Ok(sample_tally(&counter, seed, n).cover_estimate(seed))
}

/// Parallel counterpart of `oracle::grid_area_exactly_one`; bit-identical result.
pub fn grid_area_exactly_one(rb: &ReducedBasis, rho: f64, resolution: u32) -> Result<f64> {
    check_resolution(resolution)?;
    let counter = CoverageCounter::new(rb, rho)?;
    Ok(grid_area_from_tally(rb, &grid_tally(&counter, resolution)))
}

fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        return Err(disklattice_core::Error::Domain {
            what: "samples",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// `sweep_domain` with columns evaluated concurrently; same ordering.
pub fn sweep(domain: Domain, t_steps: usize, gamma_steps: usize) -> Vec<SweepRecord> {
    (0..t_steps)
        .into_par_iter()
        .map(|i| sweep_column(domain, i, t_steps, gamma_steps))
        .collect::<Vec<_>>()
        .concat()
}
