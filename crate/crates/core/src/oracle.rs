//! Sampling and quadrature estimates of coverage statistics.
//!
//! Nothing here uses arc angles or segment areas. Points are drawn in the
//! fundamental parallelogram `{ u a + v b : 0 <= u, v < 1 }` and the disks
//! covering each point are counted directly against every lattice point that
//! could reach it, so these estimates check the analytic path independently.
//!
//! # Random numbers
//!
//! Samples come from a counter-based SplitMix64 stream: word `k` of the stream
//! for seed `s` is `mix64(s + (k + 1) * 0x9E3779B97F4A7C15)` (wrapping), where
//! `mix64` is the SplitMix64 finaliser
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! A word maps to `[0, 1)` as `(w >> 11) * 2^-53`. Sample `i` uses words `2i`
//! (coefficient of `a`) and `2i + 1` (coefficient of `b`). Any sample can be
//! generated without the ones before it, so work can be split across threads
//! in any way and integer tallies merged without changing the result.

use alloc::vec::Vec;
use core::ops::Range;

use crate::geometry::{det_lattice, neighbors_within, ReducedBasis, Vec2};
use crate::math::sqrt;
use crate::{Error, Result};

pub const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random access SplitMix64 stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterRng {
    pub seed: u64,
}

impl CounterRng {
    pub const fn new(seed: u64) -> Self {
        Self { seed }
    }

    #[inline]
    pub fn word(&self, counter: u64) -> u64 {
        mix64(
            self.seed
                .wrapping_add(counter.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA)),
        )
    }

    #[inline]
    pub fn unit(&self, counter: u64) -> f64 {
        (self.word(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Parallelogram coordinates of sample `i`.
    #[inline]
    pub fn sample(&self, i: u64) -> (f64, f64) {
        (self.unit(2 * i), self.unit(2 * i + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Integer tallies over a batch of points. Merging is exact and order-free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub points: u64,
    pub exactly_one: u64,
    pub cover_sum: u64,
    pub cover_sum_sq: u64,
}

impl Tally {
    #[inline]
    fn record(&mut self, count: u32) {
        let c = count as u64;
        self.points += 1;
        self.exactly_one += (count == 1) as u64;
        self.cover_sum += c;
        self.cover_sum_sq += c * c;
    }

    pub fn merge(self, o: Tally) -> Tally {
        Tally {
            points: self.points + o.points,
            exactly_one: self.exactly_one + o.exactly_one,
            cover_sum: self.cover_sum + o.cover_sum,
            cover_sum_sq: self.cover_sum_sq + o.cover_sum_sq,
        }
    }

    /// Binomial estimate of the exactly-one probability.
    pub fn exactly_one_estimate(&self, seed: u64) -> McEstimate {
        let n = self.points as f64;
        let mean = self.exactly_one as f64 / n;
        McEstimate {
            mean,
            std_error: sqrt(mean * (1.0 - mean) / n),
            n_samples: self.points,
            seed,
        }
    }

    /// Mean cover count with the standard error from the sample variance.
    pub fn cover_estimate(&self, seed: u64) -> McEstimate {
        let n = self.points as f64;
        let mean = self.cover_sum as f64 / n;
        let var = if self.points > 1 {
            ((self.cover_sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        McEstimate {
            mean,
            std_error: sqrt(var / n),
            n_samples: self.points,
            seed,
        }
    }
}

/// Counts closed disks of radius `rho` covering points of the fundamental domain.
#[derive(Clone, Debug)]
pub struct CoverageCounter {
    a: Vec2,
    b: Vec2,
    rho_sq: f64,
    rho: f64,
    /// Origin and every lattice point within `max corner + rho`, by increasing norm.
    centres: Vec<(f64, Vec2)>,
}

impl CoverageCounter {
    pub fn new(rb: &ReducedBasis, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Domain {
                what: "rho",
                value: rho,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let (a, b) = (rb.a(), rb.b());
        let reach = a.norm().max(b.norm()).max((a + b).norm()) + rho;
        let mut centres = alloc::vec![(0.0, Vec2::ZERO)];
        centres.extend(
            neighbors_within(rb, reach)
                .into_iter()
                .map(|p| (p.norm(), p)),
        );
        Ok(Self {
            a,
            b,
            rho_sq: rho * rho,
            rho,
            centres,
        })
    }

    #[inline]
    pub fn point(&self, u: f64, v: f64) -> Vec2 {
        self.a * u + self.b * v
    }

    /// Number of lattice disks containing `x`; `x` must lie in the fundamental domain.
    #[inline]
    pub fn count(&self, x: Vec2) -> u32 {
        // |x - p| <= rho implies |p| <= |x| + rho
        let limit = sqrt(x.norm_sq()) + self.rho + 1e-12;
        let mut n = 0;
        for &(norm, p) in &self.centres {
            if norm > limit {
                break;
            }
            let (dx, dy) = (x.x - p.x, x.y - p.y);
            if dx * dx + dy * dy <= self.rho_sq {
                n += 1;
            }
        }
        n
    }

    /// Tally of Monte Carlo samples with indices in `range`.
    pub fn sample_tally(&self, rng: CounterRng, range: Range<u64>) -> Tally {
        let mut t = Tally::default();
        for i in range {
            let (u, v) = rng.sample(i);
            t.record(self.count(self.point(u, v)));
        }
        t
    }

    /// Tally of the midpoint grid rows `rows` at `resolution x resolution`.
    pub fn grid_tally(&self, resolution: u32, rows: Range<u32>) -> Tally {
        let h = 1.0 / resolution as f64;
        let mut t = Tally::default();
        for i in rows {
            let u = (i as f64 + 0.5) * h;
            for j in 0..resolution {
                let v = (j as f64 + 0.5) * h;
                t.record(self.count(self.point(u, v)));
            }
        }
        t
    }
}

fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            what: "samples",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

pub fn check_resolution(resolution: u32) -> Result<()> {
    if resolution < 16 {
        return Err(Error::Domain {
            what: "resolution",
            value: resolution as f64,
            lo: 16.0,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// Fraction of `n` uniform points covered by exactly one disk; estimates `A(rho) / det`.
pub fn mc_exactly_one(rb: &ReducedBasis, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let counter = CoverageCounter::new(rb, rho)?;
    Ok(counter
        .sample_tally(CounterRng::new(seed), 0..n)
        .exactly_one_estimate(seed))
}

/// Mean number of disks covering a uniform point; estimates `pi rho^2 / det`.
pub fn mc_cover_count(rb: &ReducedBasis, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let counter = CoverageCounter::new(rb, rho)?;
    Ok(counter
        .sample_tally(CounterRng::new(seed), 0..n)
        .cover_estimate(seed))
}

/// Converts a grid tally into an area estimate.
pub fn grid_area_from_tally(rb: &ReducedBasis, tally: &Tally) -> f64 {
    tally.exactly_one as f64 / tally.points as f64 * det_lattice(rb)
}

/// Midpoint-rule estimate of the exactly-one AREA per lattice point.
pub fn grid_area_exactly_one(rb: &ReducedBasis, rho: f64, resolution: u32) -> Result<f64> {
    check_resolution(resolution)?;
    let counter = CoverageCounter::new(rb, rho)?;
    let tally = counter.grid_tally(resolution, 0..resolution);
    Ok(grid_area_from_tally(rb, &tally))
}

/// Error allowance for [`grid_area_exactly_one`]: a boundary-cell bound scaled
/// by the covering radius, `5 (4 r_cover / resolution) r_cover`.
pub fn grid_error_bound(r_cover: f64, resolution: u32) -> f64 {
    5.0 * (r_cover * 4.0 / resolution as f64) * r_cover
}
