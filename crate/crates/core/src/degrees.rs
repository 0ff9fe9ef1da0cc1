//! Constructive degree arithmetic: Jacobsthal's function, coprime splittings
//! of a target degree along a direction, Frobenius semigroup windows, the
//! S_h(n) sets and the fixed-point iteration producing the degree window
//! D(H)^inf with its exception candidates E(H).

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{dot_exp_rat, dot_u64, gcd_slice_u64, radical_u64, Int, Rat};
use crate::exp::region_contains;
use crate::polytope::Polytope;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DegreesError {
    #[error("no valid positive coprime pair exists in the sieve window (D too small)")]
    DTooSmall,
    #[error("gcd of the weights does not divide the target degree")]
    DivisibilityViolated,
    #[error("constructed degree vector fails strict corner domination (D too small)")]
    RegionViolated,
    #[error("window bound {0} too small (need at least {1})")]
    WindowTooSmall(usize, usize),
    #[error("bad input: {0}")]
    BadInput(String),
}

/// Exact Jacobsthal function J(D): the minimal length such that every
/// interval of that length contains an integer coprime to D. Computed by
/// scanning one period rad(D) of the coprimality pattern.
pub fn jacobsthal(d: u64) -> u64 {
    assert!(d >= 1);
    if d == 1 {
        return 1;
    }
    let r = radical_u64(d);
    // Coprime positions in [1, 2r]; the pattern has period r and 1 is
    // always coprime, so consecutive-coprime gaps inside one period are all
    // seen between 1 and r + 1.
    let mut prev = 1u64;
    let mut max_gap = 0u64;
    for k in 2..=(r + 1) {
        if k.gcd(&r) == 1 {
            max_gap = max_gap.max(k - prev);
            prev = k;
        }
    }
    max_gap.max(1)
}

fn rat_u64(x: u64) -> Rat {
    Rat::from_integer(Int::from(x))
}

/// Nearest integer to `target` congruent to `rho` mod `q` (q >= 1).
fn nearest_in_class(target: &Rat, rho: u64, q: u64) -> i64 {
    let shifted = (target - rat_u64(rho)) / rat_u64(q);
    let k = shifted.round().to_integer().to_i64().expect("desk scale");
    rho as i64 + k * q as i64
}

/// Split D = i1*d1 + i2*d2 with coprime weights, d1, d2 >= 1, gcd(d1,d2)=1
/// and each d_l within i_{3-l} * J(D) of the target r_l D / (i1 r1 + i2 r2).
/// Follows the sieve construction: center on the congruence class
/// N = D/i2 mod i1 nearest the target, then scan k = 0, 1, -1, 2, -2, ...
pub fn euclid2(
    i1: u64,
    i2: u64,
    r1: &Rat,
    r2: &Rat,
    d_target: u64,
) -> Result<(u64, u64), DegreesError> {
    if i1 == 0 || i2 == 0 || !r1.is_positive() || !r2.is_positive() {
        return Err(DegreesError::BadInput("weights and ratios must be positive".into()));
    }
    if i1.gcd(&i2) != 1 {
        return Err(DegreesError::BadInput("weights must be coprime".into()));
    }
    let s = rat_u64(i1) * r1 + rat_u64(i2) * r2;
    let tau1 = r1 * rat_u64(d_target) / &s;
    let tau2 = r2 * rat_u64(d_target) / &s;
    // D * i2^{-1} mod i1.
    let rho = if i1 == 1 {
        0
    } else {
        let inv = Int::from(i2).extended_gcd(&Int::from(i1)).x;
        let v = (Int::from(d_target) * inv).mod_floor(&Int::from(i1));
        v.to_u64().expect("residue fits")
    };
    let n0 = nearest_in_class(&tau2, rho, i1);
    // M = (D - i2 N)/i1 is integral by the congruence.
    let m0 = (d_target as i64 - i2 as i64 * n0) / i1 as i64;
    debug_assert_eq!(i1 as i64 * m0 + i2 as i64 * n0, d_target as i64);

    let j = jacobsthal(d_target);
    let mut ks: Vec<i64> = vec![0];
    for a in 1..=(j as i64) {
        ks.push(a);
        ks.push(-a);
    }
    for k in ks {
        let m = m0 - k * i2 as i64;
        let n = n0 + k * i1 as i64;
        if m < 1 || n < 1 {
            continue;
        }
        let (m, n) = (m as u64, n as u64);
        if m.gcd(&n) != 1 {
            continue;
        }
        // Proximity per the construction; the first valid k has minimal |k|,
        // so failure here means no valid k satisfies the bound.
        let b1 = rat_u64(i2 * j);
        let b2 = rat_u64(i1 * j);
        let ok1 = (rat_u64(m) - &tau1).abs() <= b1;
        let ok2 = (rat_u64(n) - &tau2).abs() <= b2;
        if !(ok1 && ok2) {
            return Err(DegreesError::DTooSmall);
        }
        debug_assert_eq!(i1 * m + i2 * n, d_target);
        return Ok((m, n));
    }
    Err(DegreesError::DTooSmall)
}

/// The proximity bound of the splitting lemma for coordinate `l` (0-based):
/// (i1 + i2) J(D) when l <= 1, plus sum_{j >= 2} i_j in all cases.
pub fn euclid_bound(i: &[u64], l: usize, d_target: u64) -> Rat {
    let j = jacobsthal(d_target);
    let tail: u64 = i.iter().skip(1).sum();
    let head = if l <= 1 { (i[0] + i[1]) * j } else { 0 };
    rat_u64(head + tail)
}

/// Multiway splitting D = sum_j i_j d_j with gcd(d)=1, every d_j >= 1 and
/// each d_l near r_l D / (i.r): peel the last coordinate onto the nearest
/// admissible value, recurse, and verify the lemma's bounds exactly.
pub fn euclid_m(i: &[u64], r: &[Rat], d_target: u64) -> Result<Vec<u64>, DegreesError> {
    if i.len() < 2 || i.len() != r.len() {
        return Err(DegreesError::BadInput("need m >= 2 weights with ratios".into()));
    }
    if i.iter().any(|&x| x == 0) || r.iter().any(|x| !x.is_positive()) {
        return Err(DegreesError::BadInput("weights and ratios must be positive".into()));
    }
    let g = gcd_slice_u64(i);
    if d_target % g != 0 {
        return Err(DegreesError::DivisibilityViolated);
    }
    let i_red: Vec<u64> = i.iter().map(|&x| x / g).collect();
    let d_red = d_target / g;
    let out = euclid_m_coprime(&i_red, r, d_red)?;
    // Verify the linear identity and gcd on the original data.
    let total: u64 = i.iter().zip(&out).map(|(&a, &b)| a * b).sum();
    if total != d_target || gcd_slice_u64(&out) != 1 {
        return Err(DegreesError::DTooSmall);
    }
    // Verify the stated proximity bounds.
    let s: Rat = i
        .iter()
        .zip(r.iter())
        .map(|(&a, b)| rat_u64(a) * b)
        .fold(Rat::zero(), |a, b| a + b);
    for l in 0..i.len() {
        let target = &r[l] * rat_u64(d_target) / &s;
        if (rat_u64(out[l]) - target).abs() > euclid_bound(i, l, d_target) {
            return Err(DegreesError::DTooSmall);
        }
    }
    Ok(out)
}

fn euclid_m_coprime(i: &[u64], r: &[Rat], d_target: u64) -> Result<Vec<u64>, DegreesError> {
    let m = i.len();
    debug_assert_eq!(gcd_slice_u64(i), 1);
    if m == 2 {
        let (d1, d2) = euclid2(i[0], i[1], &r[0], &r[1], d_target)?;
        return Ok(vec![d1, d2]);
    }
    let head = &i[..m - 1];
    let g_head = gcd_slice_u64(head);
    let s: Rat = i
        .iter()
        .zip(r.iter())
        .map(|(&a, b)| rat_u64(a) * b)
        .fold(Rat::zero(), |a, b| a + b);
    let tau = &r[m - 1] * rat_u64(d_target) / &s;
    // d_m must satisfy i_m d_m = D (mod g_head) so the peeled remainder stays
    // divisible by gcd(head); gcd(i_m, g_head) = 1 since the full gcd is 1.
    let rho = if g_head == 1 {
        0
    } else {
        let inv = Int::from(i[m - 1]).extended_gcd(&Int::from(g_head)).x;
        (Int::from(d_target) * inv)
            .mod_floor(&Int::from(g_head))
            .to_u64()
            .expect("residue fits")
    };
    let mut dm = nearest_in_class(&tau, rho, g_head);
    if dm < 1 {
        dm = rho.max(1) as i64;
        while (dm as u64).wrapping_sub(rho) % g_head != 0 {
            dm += 1;
        }
    }
    let dm = dm as u64;
    let used = i[m - 1]
        .checked_mul(dm)
        .ok_or(DegreesError::DTooSmall)?;
    if used >= d_target {
        return Err(DegreesError::DTooSmall);
    }
    let d_rest = d_target - used;
    let head_red: Vec<u64> = head.iter().map(|&x| x / g_head).collect();
    if d_rest % g_head != 0 {
        return Err(DegreesError::DTooSmall);
    }
    let mut out = euclid_m_coprime(&head_red, &r[..m - 1], d_rest / g_head)?;
    out.push(dm);
    Ok(out)
}

/// Degree vector for a corner: gcd 1, h.d = D, and D > h'.d for every other
/// corner, staying close to the direction r (which must lie strictly inside
/// the corner region R(h)).
pub fn prop_euclid(
    h_set: &Polytope,
    h: &[u32],
    r: &[Rat],
    d_target: u64,
) -> Result<Vec<u64>, DegreesError> {
    if !h_set.corners.iter().any(|c| c.as_slice() == h) {
        return Err(DegreesError::BadInput("h is not a corner of H".into()));
    }
    if r.len() != h_set.m {
        return Err(DegreesError::BadInput("direction length mismatch".into()));
    }
    if !region_contains(h_set, h, r, false) {
        return Err(DegreesError::RegionViolated);
    }
    let gh = h_set.corner_gcd(h).expect("corner present");
    if gh == 0 || d_target % gh != 0 {
        return Err(DegreesError::DivisibilityViolated);
    }
    let rh = dot_exp_rat(h, r);
    let positive: Vec<usize> = (0..h_set.m).filter(|&j| h[j] > 0).collect();
    let zero: Vec<usize> = (0..h_set.m).filter(|&j| h[j] == 0).collect();

    let mut d = vec![0u64; h_set.m];
    if positive.len() == 1 {
        let j = positive[0];
        d[j] = d_target / h[j] as u64;
        if d[j] == 0 {
            return Err(DegreesError::DTooSmall);
        }
    } else {
        let iw: Vec<u64> = positive.iter().map(|&j| h[j] as u64).collect();
        let rw: Vec<Rat> = positive.iter().map(|&j| r[j].clone()).collect();
        let dd = euclid_m(&iw, &rw, d_target)?;
        for (k, &j) in positive.iter().enumerate() {
            d[j] = dd[k];
        }
    }
    for &j in &zero {
        let target = &r[j] * rat_u64(d_target) / &rh;
        let v = target.round().to_integer().to_u64().unwrap_or(1);
        d[j] = v.max(1);
    }
    // Fix the overall gcd using a free coordinate when needed (only possible
    // when the positive part is a single coordinate).
    if gcd_slice_u64(&d) != 1 {
        let mut fixed = false;
        for &j in &zero {
            let others_gcd = {
                let mut g = 0u64;
                for (k, &v) in d.iter().enumerate() {
                    if k != j {
                        g = g.gcd(&v);
                    }
                }
                g
            };
            for delta in 1..=others_gcd.min(64) {
                for cand in [d[j].saturating_add(delta), d[j].saturating_sub(delta)] {
                    if cand >= 1 && cand.gcd(&others_gcd) == 1 {
                        d[j] = cand;
                        fixed = true;
                        break;
                    }
                }
                if fixed {
                    break;
                }
            }
            if fixed {
                break;
            }
        }
        if gcd_slice_u64(&d) != 1 {
            return Err(DegreesError::DTooSmall);
        }
    }
    // Verify the defining properties by direct dot products.
    if dot_u64(h, &d) != d_target {
        return Err(DegreesError::DTooSmall);
    }
    for c in &h_set.corners {
        if c.as_slice() != h && dot_u64(c, &d) >= d_target {
            return Err(DegreesError::RegionViolated);
        }
    }
    Ok(d)
}

/// Frobenius numerical semigroup restricted to the window [0, B]:
/// exact membership by dynamic programming, with one witness generator per
/// member for representation reconstruction.
#[derive(Debug, Clone, Serialize)]
pub struct SemigroupWindow {
    pub generators: Vec<u64>,
    pub bound: usize,
    pub membership: Vec<bool>,
    /// Smallest c such that [c, B] is entirely inside the semigroup, when
    /// gcd(generators) = 1 and the window is comfortably larger than the
    /// classical conductor bound.
    pub conductor: Option<u64>,
    #[serde(skip)]
    witness: Vec<Option<usize>>,
}

pub fn frobenius_window(generators: &[u64], bound: usize) -> SemigroupWindow {
    assert!(!generators.is_empty(), "need at least one generator");
    assert!(generators.iter().all(|&g| g >= 1), "generators must be positive");
    let max_gen = *generators.iter().max().unwrap() as usize;
    assert!(bound >= max_gen, "window must reach the largest generator");
    let mut membership = vec![false; bound + 1];
    let mut witness: Vec<Option<usize>> = vec![None; bound + 1];
    membership[0] = true;
    for v in 1..=bound {
        for (gi, &g) in generators.iter().enumerate() {
            let g = g as usize;
            if v >= g && membership[v - g] {
                membership[v] = true;
                witness[v] = Some(gi);
                break;
            }
        }
    }
    let gcd_all = gcd_slice_u64(generators);
    let conductor = if gcd_all == 1 && bound >= 2 * max_gen * max_gen {
        let mut c = bound + 1;
        while c > 0 && membership[c - 1] {
            c -= 1;
        }
        Some(c as u64)
    } else {
        None
    };
    SemigroupWindow {
        generators: generators.to_vec(),
        bound,
        membership,
        conductor,
        witness,
    }
}

impl SemigroupWindow {
    pub fn is_member(&self, v: u64) -> bool {
        (v as usize) <= self.bound && self.membership[v as usize]
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.membership
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(v, _)| v as u64)
    }

    /// Largest non-member inside the window, if any.
    pub fn largest_nonmember(&self) -> Option<u64> {
        (0..=self.bound).rev().find(|&v| !self.membership[v]).map(|v| v as u64)
    }

    /// One representation of `v` as generator multiplicities.
    pub fn representation(&self, v: u64) -> Option<Vec<u32>> {
        if !self.is_member(v) {
            return None;
        }
        let mut counts = vec![0u32; self.generators.len()];
        let mut cur = v as usize;
        while cur > 0 {
            let gi = self.witness[cur]?;
            counts[gi] += 1;
            cur -= self.generators[gi] as usize;
        }
        Some(counts)
    }
}

/// S_h(n) within [0, B]: all values h.d - n realizable by d with every
/// coordinate >= n, gcd(d) = 1, d_j >= n + degx_j for at least one j, and
/// h.d >= i.d for every corner i. Bounded coordinate enumeration with
/// partial-sum pruning.
pub fn s_h(
    h_set: &Polytope,
    h: &[u32],
    n: u64,
    degx: &[u64],
    bound: u64,
) -> BTreeSet<u64> {
    let m = h_set.m;
    let cap = bound + n;
    // Per-coordinate upper bounds: h_j > 0 gives h_j d_j <= cap; otherwise
    // domination against any corner with a positive j-th coordinate.
    let mut ub = vec![0u64; m];
    for j in 0..m {
        let w = if h[j] > 0 {
            h[j] as u64
        } else {
            h_set
                .corners
                .iter()
                .filter(|c| c[j] > 0)
                .map(|c| c[j] as u64)
                .min()
                .unwrap_or(0)
        };
        ub[j] = if w == 0 { n + 2 } else { cap / w };
    }
    let mut out = BTreeSet::new();
    let mut d = vec![0u64; m];
    // Remaining minimal contribution to h.d from coordinates >= j.
    let mut min_tail = vec![0u64; m + 1];
    for j in (0..m).rev() {
        min_tail[j] = min_tail[j + 1] + h[j] as u64 * n;
    }
    fn rec(
        j: usize,
        partial: u64,
        d: &mut Vec<u64>,
        h: &[u32],
        h_set: &Polytope,
        n: u64,
        degx: &[u64],
        cap: u64,
        ub: &[u64],
        min_tail: &[u64],
        out: &mut BTreeSet<u64>,
    ) {
        let m = d.len();
        if j == m {
            let hd = partial;
            if hd < n {
                return;
            }
            for c in &h_set.corners {
                if dot_u64(c, d) > hd {
                    return;
                }
            }
            if gcd_slice_u64(d) != 1 {
                return;
            }
            if !(0..m).any(|l| d[l] >= n + degx[l]) {
                return;
            }
            out.insert(hd - n);
            return;
        }
        let start = n.max(1);
        for v in start..=ub[j].max(start) {
            let contrib = h[j] as u64 * v;
            if partial + contrib + min_tail[j + 1] > cap {
                break;
            }
            d[j] = v;
            rec(j + 1, partial + contrib, d, h, h_set, n, degx, cap, ub, min_tail, out);
        }
        d[j] = 0;
    }
    rec(0, 0, &mut d, h, h_set, n, degx, cap, &ub, &min_tail, &mut out);
    out
}

/// Result of the D(H)^inf window iteration.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeWindow {
    /// The index used for the exception candidates (G(H), or the augmented
    /// gcd for the D(C) variant).
    pub index: u64,
    pub bound: usize,
    pub membership: Vec<bool>,
    /// Multiples of the index in [1, B] that are not members.
    pub exception_candidates: Vec<u64>,
    /// Two consecutive iterations agreed inside the window.
    pub fixed_point_reached: bool,
    pub iterations: u32,
}

impl DegreeWindow {
    pub fn is_member(&self, v: u64) -> bool {
        (v as usize) <= self.bound && self.membership[v as usize]
    }

    /// Run-length encoding of the membership window as (start, len) runs of
    /// members.
    pub fn member_runs(&self) -> Vec<(u64, u64)> {
        let mut runs = Vec::new();
        let mut i = 0usize;
        while i <= self.bound {
            if self.membership[i] {
                let start = i;
                while i <= self.bound && self.membership[i] {
                    i += 1;
                }
                runs.push((start as u64, (i - start) as u64));
            } else {
                i += 1;
            }
        }
        runs
    }
}

/// Per-variable degree bounds: taken from `f` when supplied, else the
/// per-coordinate maxima over the corners.
fn degx_defaults(h_set: &Polytope, degx: Option<&[u64]>) -> Vec<u64> {
    match degx {
        Some(v) => v.to_vec(),
        None => (0..h_set.m).map(|j| h_set.degree_in(j) as u64).collect(),
    }
}

fn iterate_window(
    h_set: &Polytope,
    degx: Option<&[u64]>,
    bound: usize,
    seed: &[u64],
    index: u64,
) -> Result<DegreeWindow, DegreesError> {
    let d = h_set.d as usize;
    let need = 4 * d * d;
    if bound < need {
        return Err(DegreesError::WindowTooSmall(bound, need));
    }
    let degx = degx_defaults(h_set, degx);
    let n_cap = if d >= 2 { bound / (d - 1) + 1 } else { bound };

    let mut membership = vec![false; bound + 1];
    for &s in seed {
        if (s as usize) <= bound {
            membership[s as usize] = true;
        }
    }
    // Iteration 0: union of S_h(0).
    let base: Vec<BTreeSet<u64>> = h_set
        .corners
        .par_iter()
        .map(|h| s_h(h_set, h, 0, &degx, bound as u64))
        .collect();
    for set in &base {
        for &v in set {
            membership[v as usize] = true;
        }
    }

    let mut cache: std::collections::HashMap<(usize, u64), BTreeSet<u64>> =
        std::collections::HashMap::new();
    let mut fixed_point = false;
    let mut iters = 0u32;
    // Monotone and bounded: a fixed point arrives within bound + 2 rounds.
    let max_iters = bound as u32 + 2;
    while iters < max_iters {
        iters += 1;
        // Frobenius closure of the current members, up to n_cap.
        let members: Vec<u64> = membership
            .iter()
            .enumerate()
            .filter(|(v, &m)| m && *v >= 1)
            .map(|(v, _)| v as u64)
            .collect();
        let mut next = membership.clone();
        if !members.is_empty() {
            let frob_bound = n_cap.max(*members.iter().max().unwrap() as usize);
            let frob = frobenius_window(&members, frob_bound);
            let ns: Vec<u64> = frob.members().filter(|&n| n as usize <= n_cap).collect();
            let mut pending: Vec<(usize, u64)> = Vec::new();
            for hi in 0..h_set.corners.len() {
                for &n in &ns {
                    if !cache.contains_key(&(hi, n)) {
                        pending.push((hi, n));
                    }
                }
            }
            let computed: Vec<((usize, u64), BTreeSet<u64>)> = pending
                .par_iter()
                .map(|&(hi, n)| {
                    (
                        (hi, n),
                        s_h(h_set, &h_set.corners[hi], n, &degx, bound as u64),
                    )
                })
                .collect();
            for (k, v) in computed {
                cache.insert(k, v);
            }
            for hi in 0..h_set.corners.len() {
                for &n in &ns {
                    if let Some(set) = cache.get(&(hi, n)) {
                        for &v in set {
                            next[v as usize] = true;
                        }
                    }
                }
            }
        }
        if next == membership {
            fixed_point = true;
            break;
        }
        membership = next;
    }

    let exception_candidates: Vec<u64> = if index >= 1 {
        (1..=(bound as u64 / index))
            .map(|k| k * index)
            .filter(|&v| !membership[v as usize])
            .collect()
    } else {
        Vec::new()
    };
    Ok(DegreeWindow {
        index,
        bound,
        membership,
        exception_candidates,
        fixed_point_reached: fixed_point,
        iterations: iters,
    })
}

/// The D(H)^inf window: iterate D_{k+1} = union over corners h and
/// n in Frob(D_k) of S_h(n) until the window stabilizes.
pub fn dh_inf(
    h_set: &Polytope,
    degx: Option<&[u64]>,
    bound: usize,
) -> Result<DegreeWindow, DegreesError> {
    iterate_window(h_set, degx, bound, &[], h_set.index_g())
}

/// The D(C)^inf window: the same iteration seeded with the extra known
/// degrees; the reported index is gcd(G(H), extras).
pub fn dc_inf_augment(
    h_set: &Polytope,
    degx: Option<&[u64]>,
    bound: usize,
    extra_degrees: &[u64],
) -> Result<DegreeWindow, DegreesError> {
    if extra_degrees.iter().any(|&x| x == 0) {
        return Err(DegreesError::BadInput("extra degrees must be positive".into()));
    }
    let mut g = h_set.index_g();
    for &x in extra_degrees {
        g = g.gcd(&x);
    }
    iterate_window(h_set, degx, bound, extra_degrees, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_from_int};
    use crate::exp::superelliptic_polytope;

    #[test]
    fn jacobsthal_values() {
        assert_eq!(jacobsthal(1), 1);
        assert_eq!(jacobsthal(2), 2);
        assert_eq!(jacobsthal(30), 6);
        assert_eq!(jacobsthal(100), 4); // rad 10, coprimes 1,3,7,9
        assert_eq!(jacobsthal(210), 10);
    }

    #[test]
    fn euclid2_spec_examples() {
        let one = rat_from_int(1);
        // (2,3), r=(1,1), D=100 -> (17, 22)
        assert_eq!(euclid2(2, 3, &one, &one, 100).unwrap(), (17, 22));
        // (1,1), D=7 -> coprime split near 3.5
        let (a, b) = euclid2(1, 1, &one, &one, 7).unwrap();
        assert_eq!(a + b, 7);
        assert!(a.gcd(&b) == 1 && a >= 3 && b >= 3);
        // (2,3), D=5 -> (1,1)
        assert_eq!(euclid2(2, 3, &one, &one, 5).unwrap(), (1, 1));
    }

    #[test]
    fn euclid2_randomized_properties() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..300 {
            let i1 = rng.gen_range(1..12u64);
            let mut i2 = rng.gen_range(1..12u64);
            while i1.gcd(&i2) != 1 {
                i2 = rng.gen_range(1..12u64);
            }
            let r1 = rat(rng.gen_range(1..8), rng.gen_range(1..4));
            let r2 = rat(rng.gen_range(1..8), rng.gen_range(1..4));
            let d = rng.gen_range(500..5000u64);
            let (d1, d2) = euclid2(i1, i2, &r1, &r2, d).unwrap();
            assert_eq!(i1 * d1 + i2 * d2, d);
            assert_eq!(d1.gcd(&d2), 1);
        }
    }

    #[test]
    fn euclid_m_divisibility_and_bounds() {
        let one = rat_from_int(1);
        // gcd(4,6) = 2 does not divide odd D.
        assert_eq!(
            euclid_m(&[4, 6], &[one.clone(), one.clone()], 101).unwrap_err(),
            DegreesError::DivisibilityViolated
        );
        // i=(2,3,5), D=1000: verify the identity, gcd and proximity.
        let r = vec![one.clone(), one.clone(), one.clone()];
        let d = euclid_m(&[2, 3, 5], &r, 1000).unwrap();
        assert_eq!(2 * d[0] + 3 * d[1] + 5 * d[2], 1000);
        assert_eq!(gcd_slice_u64(&d), 1);
        for l in 0..3 {
            let target = rat_from_int(100); // r_l D / (i.r) = 1000/10
            let diff = (rat_u64(d[l]) - target).abs();
            assert!(diff <= euclid_bound(&[2, 3, 5], l, 1000));
        }
        // m = 2 delegates to euclid2.
        let d = euclid_m(&[2, 3], &[one.clone(), one.clone()], 100).unwrap();
        assert_eq!(d, vec![17, 22]);
    }

    #[test]
    fn prop_euclid_examples() {
        // Hyperelliptic-style H, h = (6,0,0), interior direction, D = 60.
        let h_set = superelliptic_polytope(2, 6);
        let r = vec![rat_from_int(1), rat(1, 100), rat(1, 100)];
        let d = prop_euclid(&h_set, &[6, 0, 0], &r, 60).unwrap();
        assert_eq!(6 * d[0], 60);
        assert_eq!(gcd_slice_u64(&d), 1);
        for c in &h_set.corners {
            if c.as_slice() != [6, 0, 0] {
                assert!(dot_u64(c, &d) < 60);
            }
        }
        // Divisibility: g(h) = 6 does not divide 61.
        assert_eq!(
            prop_euclid(&h_set, &[6, 0, 0], &r, 61).unwrap_err(),
            DegreesError::DivisibilityViolated
        );
        // Diagonal m=2 d=2, h=(2,0), r=(2,1) interior, D=40.
        let diag = crate::exp::diagonal_polytope(2, 2);
        let r = vec![rat_from_int(2), rat_from_int(1)];
        let d = prop_euclid(&diag, &[2, 0], &r, 40).unwrap();
        assert_eq!(2 * d[0], 40);
        assert!(d[0] > d[1]);
        assert_eq!(d[0].gcd(&d[1]), 1);
    }

    #[test]
    fn frobenius_gaps() {
        // Frob(2,3): only non-member is 1 = 3^2 - 3*3 + 1.
        let w = frobenius_window(&[2, 3], 50);
        assert_eq!(w.largest_nonmember(), Some(1));
        // Frob(3,4): largest gap 5 = 4^2 - 12 + 1.
        let w = frobenius_window(&[3, 4], 60);
        assert_eq!(w.largest_nonmember(), Some(5));
        // Classical formula for d = 3..8.
        for d in 3..=8u64 {
            let w = frobenius_window(&[d - 1, d], (2 * d * d) as usize + 10);
            assert_eq!(w.largest_nonmember(), Some(d * d - 3 * d + 1));
            assert_eq!(w.conductor, Some(d * d - 3 * d + 2));
        }
    }

    #[test]
    fn frobenius_matches_naive_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let k = rng.gen_range(1..4);
            let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(2..15u64)).collect();
            let b = 120usize;
            let w = frobenius_window(&gens, b);
            // Independent oracle: saturate by repeated addition.
            let mut naive = vec![false; b + 1];
            naive[0] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for v in 0..=b {
                    if naive[v] {
                        for &g in &gens {
                            let nv = v + g as usize;
                            if nv <= b && !naive[nv] {
                                naive[nv] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            assert_eq!(w.membership, naive, "gens {:?}", gens);
            // Representations re-verify.
            for v in w.members() {
                let rep = w.representation(v).unwrap();
                let total: u64 = rep
                    .iter()
                    .zip(&gens)
                    .map(|(&c, &g)| c as u64 * g)
                    .sum();
                assert_eq!(total, v);
            }
        }
    }

    #[test]
    fn s_h_divisibility_and_oracle() {
        let h_set = superelliptic_polytope(2, 6);
        let degx = degx_defaults(&h_set, None);
        // g(h) = 2 for h = (0,2,4): S_h(0) only even values.
        let s = s_h(&h_set, &[0, 2, 4], 0, &degx, 60);
        assert!(s.iter().all(|v| v % 2 == 0));
        // h = (6,0,0): multiples of 6 from some threshold.
        let s6 = s_h(&h_set, &[6, 0, 0], 0, &degx, 60);
        assert!(s6.iter().all(|v| v % 6 == 0));
        assert!(s6.contains(&36)); // d = (6,1,1) dominates and has gcd 1
        // Brute-force oracle on a small window.
        let b = 40u64;
        let mut oracle = BTreeSet::new();
        let h = [6u32, 0, 0];
        for d1 in 1..=b {
            for d2 in 1..=b {
                for d3 in 1..=b {
                    let d = [d1, d2, d3];
                    let hd = 6 * d1;
                    if hd > b {
                        continue;
                    }
                    let dominated = h_set.corners.iter().all(|c| dot_u64(c, &d) <= hd);
                    if !dominated || gcd_slice_u64(&d) != 1 {
                        continue;
                    }
                    if !(0..3).any(|l| d[l] >= degx[l]) {
                        continue;
                    }
                    oracle.insert(hd);
                }
            }
        }
        let fast = s_h(&h_set, &h, 0, &degx, b);
        assert_eq!(fast, oracle);
    }

    #[test]
    fn s_h_empty_when_n_exceeds_window() {
        let h_set = superelliptic_polytope(2, 6);
        let degx = degx_defaults(&h_set, None);
        // Every value is at least n(d-1) > B, so nothing fits the window.
        let s = s_h(&h_set, &[6, 0, 0], 50, &degx, 40);
        assert!(s.is_empty());
    }

    #[test]
    fn dh_inf_hyperelliptic_window() {
        let h_set = superelliptic_polytope(2, 6);
        let w = dh_inf(&h_set, None, 200).unwrap();
        assert_eq!(w.index, 2);
        assert!(w.fixed_point_reached);
        // Members all even.
        for v in 0..=200u64 {
            if w.is_member(v) {
                assert_eq!(v % 2, 0, "odd member {v}");
            }
        }
        // Evens are all members from some threshold on.
        let last_missing_even = (1..=100).map(|k| 2 * k).filter(|&v| !w.is_member(v)).max();
        if let Some(t) = last_missing_even {
            assert!(t < 180, "even numbers stay missing too far out: {t}");
        }
    }

    #[test]
    fn dh_inf_monotone_and_divisible() {
        let h_set = crate::exp::diagonal_polytope(3, 3);
        let w = dh_inf(&h_set, None, 160).unwrap();
        assert_eq!(w.index, 3);
        for v in 0..=160u64 {
            if w.is_member(v) {
                assert_eq!(v % 3, 0);
            }
        }
    }

    #[test]
    fn dc_augment() {
        let h_set = superelliptic_polytope(2, 6);
        // Extras = {} is identical to dh_inf.
        let a = dh_inf(&h_set, None, 200).unwrap();
        let b = dc_inf_augment(&h_set, None, 200, &[]).unwrap();
        assert_eq!(a.membership, b.membership);
        // An odd extra degree drops the index to 1.
        let c = dc_inf_augment(&h_set, None, 200, &[5]).unwrap();
        assert_eq!(c.index, 1);
        assert!(c.is_member(5));
        // Extras = {1}: everything eventually member.
        let d = dc_inf_augment(&h_set, None, 200, &[1]).unwrap();
        assert_eq!(d.index, 1);
        let tail_missing = (150..=200u64).filter(|&v| !d.is_member(v)).count();
        assert_eq!(tail_missing, 0);
    }

    #[test]
    fn window_too_small() {
        let h_set = superelliptic_polytope(2, 6);
        assert!(matches!(
            dh_inf(&h_set, None, 100),
            Err(DegreesError::WindowTooSmall(100, 144))
        ));
    }
}
