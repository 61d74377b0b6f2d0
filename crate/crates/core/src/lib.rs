//! High-precision computation of extremal constants of the Riemann zeta
//! function, lattice searches for near-extremal heights, and the geometry of
//! the curves on which ζ is real.

pub mod cli;
pub mod constants;
pub mod curves;
pub mod error;
pub mod height_search;
pub mod numerics;
pub mod zeta;

pub use error::{Error, Result};
