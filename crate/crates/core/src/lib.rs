//! Exact-arithmetic toolkit for the combinatorics of algebraic points on
//! integer hypersurfaces: Newton polytopes and their index, the exponent
//! governing field counts, constructible degree sets, polynomial
//! specialization with Hensel lifting, descent on quadrics and cubics, and
//! the experiment harness that drives field-counting runs.

pub mod algebra;
pub mod apps;
pub mod factor;
pub mod harness;
pub mod degrees;
pub mod exp;
pub mod polytope;
pub mod specialize;

pub use algebra::{Int, Rat, UniPoly};
