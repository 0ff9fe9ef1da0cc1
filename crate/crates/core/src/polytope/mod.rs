//! The Newton polytope of a homogeneous form: support, corner detection by
//! exact rational LP, per-corner gcds, the combinatorial index G(H), and
//! coordinate restrictions H_J.

mod simplex;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Int, MultiPoly, Rat};
use simplex::simplex_max;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("form is not homogeneous: exponent sums {0} and {1} both occur")]
    NotHomogeneous(u32, u32),
    #[error("empty support")]
    EmptySupport,
    #[error("exponent vectors have mixed lengths")]
    MixedLengths,
}

/// Corner set of a homogeneous support, with cached per-corner data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polytope {
    /// Number of variables.
    pub m: usize,
    /// Common coordinate sum of every stored vector.
    pub d: u32,
    /// The corners, sorted.
    pub corners: Vec<Vec<u32>>,
    /// g(h) = gcd of the coordinates of each corner.
    pub gcds: BTreeMap<Vec<u32>, u64>,
    /// An integer witness v >= 0 with h.v > i.v for all other support
    /// vectors i, per corner.
    pub witnesses: BTreeMap<Vec<u32>, Vec<u64>>,
}

/// The support I_f of a nonzero homogeneous form: exactly the exponent
/// vectors carrying a nonzero coefficient.
pub fn support(f: &MultiPoly) -> Result<BTreeSet<Vec<u32>>, PolytopeError> {
    if f.is_zero() {
        return Err(PolytopeError::EmptySupport);
    }
    let mut sums = f.terms().map(|(e, _)| e.iter().sum::<u32>());
    let first = sums.next().unwrap();
    for s in sums {
        if s != first {
            return Err(PolytopeError::NotHomogeneous(first, s));
        }
    }
    Ok(f.terms().map(|(e, _)| e.clone()).collect())
}

fn coordinate_gcd(h: &[u32]) -> u64 {
    h.iter().fold(0u64, |acc, &x| acc.gcd(&(x as u64)))
}

/// Decide whether `h` is a corner of `support`: solve the exact LP
/// maximizing the minimum slack delta subject to h.v >= i.v + delta for all
/// other i, v >= 0, sum v <= 1, delta <= 1. `h` is a corner iff the optimum
/// is strictly positive; the optimal v scales to an integer witness.
fn corner_witness(h: &[u32], support: &[Vec<u32>]) -> Option<Vec<u64>> {
    let m = h.len();
    let others: Vec<&Vec<u32>> = support.iter().filter(|i| i.as_slice() != h).collect();
    if others.is_empty() {
        return Some(vec![1; m]); // singleton support: any v works
    }
    // Variables: v_1..v_m, delta. Constraints:
    //   (i - h).v + delta <= 0   for each other i
    //   sum_j v_j <= 1
    //   delta <= 1
    let n = m + 1;
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for i in &others {
        let mut row = vec![Rat::zero(); n];
        for j in 0..m {
            row[j] = Rat::from_integer(Int::from(i[j] as i64 - h[j] as i64));
        }
        row[m] = Rat::from_integer(Int::from(1));
        a.push(row);
        b.push(Rat::zero());
    }
    let mut sum_row = vec![Rat::from_integer(Int::from(1)); m];
    sum_row.push(Rat::zero());
    a.push(sum_row);
    b.push(Rat::from_integer(Int::from(1)));
    let mut delta_row = vec![Rat::zero(); n];
    delta_row[m] = Rat::from_integer(Int::from(1));
    a.push(delta_row);
    b.push(Rat::from_integer(Int::from(1)));

    let mut c = vec![Rat::zero(); n];
    c[m] = Rat::from_integer(Int::from(1));
    let res = simplex_max(&a, &b, &c).expect("corner LP is bounded");
    if !res.value.is_positive() {
        return None;
    }
    // Scale the rational v to integers.
    let v = &res.solution[..m];
    let mut lcm = Int::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let witness: Vec<u64> = v
        .iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(lcm.clone());
            let (_, digits) = scaled.numer().to_u64_digits();
            digits.first().copied().unwrap_or(0)
        })
        .collect();
    // Re-verify strict domination by direct dot products.
    let hv: u64 = h.iter().zip(&witness).map(|(&a, &b)| a as u64 * b).sum();
    for i in &others {
        let iv: u64 = i.iter().zip(&witness).map(|(&a, &b)| a as u64 * b).sum();
        debug_assert!(hv > iv, "LP witness failed verification");
        if hv <= iv {
            return None;
        }
    }
    Some(witness)
}

/// The corner subset of a nonempty equal-sum set of exponent vectors,
/// decided exactly corner by corner.
pub fn corners(support: &BTreeSet<Vec<u32>>) -> Result<Polytope, PolytopeError> {
    if support.is_empty() {
        return Err(PolytopeError::EmptySupport);
    }
    let vecs: Vec<Vec<u32>> = support.iter().cloned().collect();
    let m = vecs[0].len();
    let mut d = None;
    for v in &vecs {
        if v.len() != m {
            return Err(PolytopeError::MixedLengths);
        }
        let s = v.iter().sum::<u32>();
        match d {
            None => d = Some(s),
            Some(prev) if prev != s => return Err(PolytopeError::NotHomogeneous(prev, s)),
            _ => {}
        }
    }
    let d = d.unwrap();
    let mut corners_vec = Vec::new();
    let mut gcds = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for h in &vecs {
        if let Some(w) = corner_witness(h, &vecs) {
            corners_vec.push(h.clone());
            gcds.insert(h.clone(), coordinate_gcd(h));
            witnesses.insert(h.clone(), w);
        }
    }
    Ok(Polytope {
        m,
        d,
        corners: corners_vec,
        gcds,
        witnesses,
    })
}

/// Newton polytope of a nonzero homogeneous form.
pub fn newton_polytope(f: &MultiPoly) -> Result<Polytope, PolytopeError> {
    corners(&support(f)?)
}

/// Corner subset of an arbitrary (possibly mixed-degree) set of exponent
/// vectors, without the equal-sum bookkeeping of `corners`; used for the
/// quotient form, whose support mixes degrees.
pub fn corner_subset(vectors: &BTreeSet<Vec<u32>>) -> Vec<Vec<u32>> {
    let vecs: Vec<Vec<u32>> = vectors.iter().cloned().collect();
    vecs.iter()
        .filter(|h| corner_witness(h, &vecs).is_some())
        .cloned()
        .collect()
}

impl Polytope {
    pub fn from_corner_list(list: &[Vec<u32>]) -> Result<Polytope, PolytopeError> {
        corners(&list.iter().cloned().collect())
    }

    /// G(H): the gcd of all coordinates of all corners.
    pub fn index_g(&self) -> u64 {
        self.gcds.values().fold(0u64, |acc, &g| acc.gcd(&g))
    }

    /// g(h) for a corner.
    pub fn corner_gcd(&self, h: &[u32]) -> Option<u64> {
        self.gcds.get(h).copied()
    }

    /// The validity condition on H: for each coordinate j there are
    /// h, i in H with h_j = 0 < i_j.
    pub fn is_valid(&self) -> bool {
        (0..self.m).all(|j| {
            self.corners.iter().any(|h| h[j] == 0) && self.corners.iter().any(|h| h[j] > 0)
        })
    }

    /// Coordinate restriction: project every corner to the coordinates in
    /// `j_set` (0-based indices), merging duplicates; also returns
    /// deg H_J = max coordinate sum of the projections.
    pub fn restrict(&self, j_set: &[usize]) -> (BTreeSet<Vec<u32>>, u32) {
        assert!(!j_set.is_empty(), "J must be nonempty");
        let mut out = BTreeSet::new();
        let mut deg = 0u32;
        for h in &self.corners {
            let proj: Vec<u32> = j_set.iter().map(|&j| h[j]).collect();
            deg = deg.max(proj.iter().sum());
            out.insert(proj);
        }
        (out, deg)
    }

    /// Max of h_j over the corners (the combinatorial stand-in for
    /// deg_{x_j} f).
    pub fn degree_in(&self, j: usize) -> u32 {
        self.corners.iter().map(|h| h[j]).max().unwrap_or(0)
    }
}
