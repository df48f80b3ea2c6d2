//! Exactly-one coverage of planar lattice disk configurations.
//!
//! Equal closed disks of radius `rho` are centred on the points of a planar
//! lattice. This crate computes, for any lattice, the radius that maximises
//! the probability that a uniformly random point of the plane lies in exactly
//! one disk, together with that probability, and provides the tools to check
//! the answer independently and to search the space of lattices for the best
//! configuration (the regular hexagonal grid whose disks overlap each of their
//! six neighbours in 30 degree arcs).
//!
//! The crate is `no_std` and only needs `alloc`. Transcendental functions come
//! from [`libm`], so results do not depend on the platform's C library.
//!
//! Module map:
//!
//! - [`geometry`]: vectors, lattice bases, reduction to non-obtuse generators,
//!   packing/covering radii, the Voronoi cell and neighbour enumeration.
//! - [`partial_disk`]: cut-arc angles, area of the exactly-one region and its
//!   derivative, equilibrium radius and probability.
//! - [`closed_forms`]: closed-form expressions for the two-, four- and six-arc
//!   regimes and their optima.
//! - [`oracle`]: Monte Carlo and grid quadrature estimates that share no code
//!   with the analytic path.
//! - [`optimizer`]: sweeps over the lattice parameter domain, case regions,
//!   global refinement and the boundary scan of the six-arc quadrangle.
#![cfg_attr(not(test), no_std)]
// `!(x > lo)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod closed_forms;
mod error;
pub mod geometry;
mod math;
pub mod optimizer;
pub mod oracle;
pub mod partial_disk;

pub use error::{Error, Result};

/// Relative tolerance used for equality-style comparisons of reals.
pub const REL_TOL: f64 = 1e-12;
