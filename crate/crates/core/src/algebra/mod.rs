//! Exact integer/rational arithmetic and polynomial types shared by every
//! other module: dense univariate polynomials, sparse multivariate forms,
//! rational vectors and the small exact linear-algebra kernels.

mod matrix;
mod multipoly;
mod numutil;
mod parse;
mod unipoly;

pub use matrix::{bareiss_det, charpoly, nullspace_dim1, rat_gauss_rank};
pub use multipoly::{MultiPoly, MultiPolyT};
pub use numutil::{
    factor_u64, gcd_slice_u64, gcd_u64, int_nth_root_floor, int_sqrt_floor, is_perfect_square,
    mix_seed, pow_ceil_rational, radical_u64,
};
pub use parse::{parse_multipoly, parse_multipoly_json, parse_unipoly, ParseError};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Vector of exact rationals; used for directions r, e, u and for degree
/// vectors in dot products.
pub type RatVec = Vec<Rat>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable index {0} out of range 1..={1}")]
    BadVariable(usize, usize),
    #[error("degree must be at least 1")]
    ConstantPolynomial,
}

pub fn rat_from_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Dot product of an exponent vector with a rational vector.
pub fn dot_exp_rat(h: &[u32], v: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (hi, vi) in h.iter().zip(v.iter()) {
        acc += Rat::from_integer(Int::from(*hi)) * vi;
    }
    acc
}

/// Dot product of two exponent-sized integer vectors.
pub fn dot_exp_int(h: &[u32], v: &[Int]) -> Int {
    let mut acc = Int::zero();
    for (hi, vi) in h.iter().zip(v.iter()) {
        acc += Int::from(*hi) * vi;
    }
    acc
}

pub fn dot_u64(a: &[u32], b: &[u64]) -> u64 {
    a.iter().zip(b.iter()).map(|(x, y)| *x as u64 * *y).sum()
}
