//! Exact combinatorics of lattice Voronoi parallelohedra.
//!
//! Given a positive-definite rational quadratic form on `Z^d`, this crate
//! builds the Voronoi cell of the origin, its faces down to codimension 3,
//! the dual cells of those faces, and from them the Venkov complex and the
//! red/blue Venkov graphs. Three sufficient conditions for the cell to be
//! affinely Voronoi can then be decided exactly:
//!
//! * triviality of the first cohomology of the Venkov complex,
//! * generation of the red graph's cycle space by half-belt and trivially
//!   contractible cycles,
//! * 3-irreducibility (no prism or cube among the dual 3-cells).
//!
//! All arithmetic is exact over big rationals. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]

extern crate alloc;

pub mod brute;
pub mod dual;
mod error;
pub mod forms;
pub mod lattice;
pub mod linalg;
pub mod pipeline;
pub mod venkov;
pub mod voronoi;

pub use error::{Error, Result};
pub use lattice::{LatticeVector, ParityClass, QuadraticForm};
pub use linalg::{RationalMatrix, RationalVector};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;
