//! The exponent Exp_J(H) attached to a Newton polytope: computed exactly for
//! the full coordinate set by enumerating null directions of corner-region
//! boundary subsets, and as certified rational lower bounds for general J by
//! exact evaluation of the objective at explicit directions.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{dot_exp_rat, nullspace_dim1, rat, Int, Rat, RatVec};
use crate::polytope::Polytope;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpError {
    #[error("no feasible direction satisfies the sign conditions")]
    InfeasibleH,
    #[error("J must be a nonempty subset of the coordinates")]
    BadSubset,
    #[error("direction must be nonzero and nonnegative")]
    BadDirection,
    #[error("witness e must be supported on J")]
    WitnessOffSupport,
    #[error("objective undefined: a direction has zero dot with every corner")]
    DegenerateObjective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpMode {
    /// Exact optimum over the full coordinate set.
    ExactFullJ,
    /// Certified lower bound from exact evaluation at explicit directions.
    CertifiedLowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpResult {
    pub mode: ExpMode,
    /// Exp (exact) or a lower bound on Exp_J.
    pub value: Rat,
    /// (u.h)^2 / ||u||^2 at the optimum, when exact.
    pub min_dot_squared: Option<Rat>,
    /// Corner attaining the optimum / the maxima at the witness directions.
    pub corner: Vec<u32>,
    pub corner_r: Option<Vec<u32>>,
    /// The optimal direction u (exact case) or the e-direction (bound case),
    /// unnormalized; the objective is degree-0 homogeneous so scaling is
    /// irrelevant.
    pub direction_e: RatVec,
    pub direction_r: Option<RatVec>,
}

/// Strategies for certified Exp_J lower bounds.
#[derive(Debug, Clone)]
pub enum LowerStrategy {
    /// Best single-axis direction in J: 1/(deg_{x_j})^2.
    Axis,
    /// e = r = indicator of J.
    Uniform,
    /// Explicit directions, evaluated exactly.
    Witness { e: RatVec, r: RatVec },
    /// Float multistart ascent, re-certified exactly at a rationalized point.
    Numeric { seed: u64, starts: usize },
}

/// Membership of a direction in the corner region R(h) (open) or its
/// closure: sign of every coordinate and domination of `h` over all other
/// corners. Normalization of `e` is irrelevant to the inequalities.
pub fn region_contains(h_set: &Polytope, h: &[u32], e: &[Rat], closed: bool) -> bool {
    if e.iter().all(|x| x.is_zero()) {
        return false;
    }
    let pos_ok = if closed {
        e.iter().all(|x| !x.is_negative())
    } else {
        e.iter().all(|x| x.is_positive())
    };
    if !pos_ok {
        return false;
    }
    let eh = dot_exp_rat(h, e);
    h_set.corners.iter().filter(|i| i.as_slice() != h).all(|i| {
        let ei = dot_exp_rat(i, e);
        if closed {
            eh >= ei
        } else {
            eh > ei
        }
    })
}

/// Max of v.h over the corners, together with an attaining corner.
fn max_dot(h_set: &Polytope, v: &[Rat]) -> (Rat, Vec<u32>) {
    let mut best: Option<(Rat, Vec<u32>)> = None;
    for h in &h_set.corners {
        let d = dot_exp_rat(h, v);
        match &best {
            None => best = Some((d, h.clone())),
            Some((b, _)) if d > *b => best = Some((d, h.clone())),
            _ => {}
        }
    }
    best.expect("nonempty corner set")
}

/// Exact evaluation of the Exp objective
/// `(e.r) / ((max_h e.h)(max_h r.h))` at rational directions; this is a
/// certified lower bound on Exp_J for any nonnegative e supported on J and
/// any nonnegative r.
pub fn exp_objective(h_set: &Polytope, e: &[Rat], r: &[Rat]) -> Result<(Rat, Vec<u32>, Vec<u32>), ExpError> {
    if e.iter().all(|x| x.is_zero()) || r.iter().all(|x| x.is_zero()) {
        return Err(ExpError::BadDirection);
    }
    if e.iter().any(|x| x.is_negative()) || r.iter().any(|x| x.is_negative()) {
        return Err(ExpError::BadDirection);
    }
    let (me, he) = max_dot(h_set, e);
    let (mr, hr) = max_dot(h_set, r);
    if me.is_zero() || mr.is_zero() {
        return Err(ExpError::DegenerateObjective);
    }
    let num: Rat = e
        .iter()
        .zip(r.iter())
        .map(|(a, b)| a * b)
        .fold(Rat::zero(), |a, b| a + b);
    Ok((num / (me * mr), he, hr))
}

fn norm_sq(v: &[Rat]) -> Rat {
    v.iter().map(|x| x * x).fold(Rat::zero(), |a, b| a + b)
}

/// Exact Exp over the full coordinate set by the finite enumeration: for
/// each corner h1, the minimizing unit direction u in the closure of R(h1)
/// spans the null space of some rank-(m-1) subset of the boundary forms
/// {(h1 - h).x} u {e_j.x}; enumerate those subsets, keep sign-feasible null
/// directions and take the best value of ||u||^2/(u.h1)^2.
pub fn exp_full(h_set: &Polytope) -> Result<ExpResult, ExpError> {
    let m = h_set.m;
    let mut best: Option<(Rat, Vec<u32>, RatVec)> = None; // (u.h1)^2/||u||^2, h1, u

    for h1 in &h_set.corners {
        // Boundary linear forms.
        let mut forms: Vec<Vec<Rat>> = Vec::new();
        for h in &h_set.corners {
            if h == h1 {
                continue;
            }
            forms.push(
                (0..m)
                    .map(|j| Rat::from_integer(Int::from(h1[j] as i64 - h[j] as i64)))
                    .collect(),
            );
        }
        for j in 0..m {
            let mut e = vec![Rat::zero(); m];
            e[j] = Rat::from_integer(Int::from(1));
            forms.push(e);
        }
        let n_forms = forms.len();
        let k = m - 1;
        // Enumerate k-subsets.
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let subset: Vec<Vec<Rat>> = idx.iter().map(|&i| forms[i].clone()).collect();
            if let Some(u0) = nullspace_dim1(&subset, m) {
                for sign in [1i64, -1] {
                    let u: RatVec = u0
                        .iter()
                        .map(|x| x * Rat::from_integer(Int::from(sign)))
                        .collect();
                    if u.iter().any(|x| x.is_negative()) {
                        continue;
                    }
                    let uh1 = dot_exp_rat(h1, &u);
                    if !uh1.is_positive() {
                        continue;
                    }
                    // Feasibility: u.h1 >= u.h for every corner.
                    let dominated = h_set
                        .corners
                        .iter()
                        .all(|h| dot_exp_rat(h, &u) <= uh1);
                    if !dominated {
                        continue;
                    }
                    let value = &uh1 * &uh1 / norm_sq(&u);
                    let better = match &best {
                        None => true,
                        Some((b, _, _)) => value < *b,
                    };
                    if better {
                        best = Some((value, h1.clone(), u));
                    }
                    break; // at most one sign can be nonnegative for u != 0
                }
            }
            // Next combination.
            if k == 0 {
                break;
            }
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] != i + n_forms - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }

    let (min_sq, h1, u) = best.ok_or(ExpError::InfeasibleH)?;
    Ok(ExpResult {
        mode: ExpMode::ExactFullJ,
        value: Rat::from_integer(Int::from(1)) / &min_sq,
        min_dot_squared: Some(min_sq),
        corner: h1,
        corner_r: None,
        direction_e: u,
        direction_r: None,
    })
}

fn indicator(m: usize, j_set: &[usize]) -> RatVec {
    let mut v = vec![Rat::zero(); m];
    for &j in j_set {
        v[j] = Rat::from_integer(Int::from(1));
    }
    v
}

fn bound_result(h_set: &Polytope, e: RatVec, r: RatVec) -> Result<ExpResult, ExpError> {
    let (value, he, hr) = exp_objective(h_set, &e, &r)?;
    Ok(ExpResult {
        mode: ExpMode::CertifiedLowerBound,
        value,
        min_dot_squared: None,
        corner: he,
        corner_r: Some(hr),
        direction_e: e,
        direction_r: Some(r),
    })
}

/// Certified rational lower bound on Exp_J(H). `j_set` holds 0-based
/// coordinate indices. Every returned value is the exact evaluation of the
/// objective at explicit rational directions; floating point only steers the
/// `Numeric` search and never reaches the reported number.
pub fn exp_j_lower(
    h_set: &Polytope,
    j_set: &[usize],
    strategy: &LowerStrategy,
) -> Result<ExpResult, ExpError> {
    if j_set.is_empty() || j_set.iter().any(|&j| j >= h_set.m) {
        return Err(ExpError::BadSubset);
    }
    match strategy {
        LowerStrategy::Axis => {
            let mut best: Option<ExpResult> = None;
            for &j in j_set {
                let e = indicator(h_set.m, &[j]);
                if let Ok(res) = bound_result(h_set, e.clone(), e) {
                    if best.as_ref().map_or(true, |b| res.value > b.value) {
                        best = Some(res);
                    }
                }
            }
            best.ok_or(ExpError::DegenerateObjective)
        }
        LowerStrategy::Uniform => {
            let e = indicator(h_set.m, j_set);
            bound_result(h_set, e.clone(), e)
        }
        LowerStrategy::Witness { e, r } => {
            if e.len() != h_set.m || r.len() != h_set.m {
                return Err(ExpError::BadDirection);
            }
            for (j, x) in e.iter().enumerate() {
                if !x.is_zero() && !j_set.contains(&j) {
                    return Err(ExpError::WitnessOffSupport);
                }
            }
            bound_result(h_set, e.clone(), r.clone())
        }
        LowerStrategy::Numeric { seed, starts } => {
            exp_j_numeric(h_set, j_set, *seed, (*starts).max(1))
        }
    }
}

/// Multistart projected coordinate ascent in floats, then exact
/// re-certification of the rationalized best point. The axis and uniform
/// evaluations are always included, so the numeric bound dominates them.
fn exp_j_numeric(
    h_set: &Polytope,
    j_set: &[usize],
    seed: u64,
    starts: usize,
) -> Result<ExpResult, ExpError> {
    let m = h_set.m;
    let corners_f: Vec<Vec<f64>> = h_set
        .corners
        .iter()
        .map(|h| h.iter().map(|&x| x as f64).collect())
        .collect();
    let objective = |e: &[f64], r: &[f64]| -> f64 {
        let max_e = corners_f
            .iter()
            .map(|h| h.iter().zip(e).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::MIN, f64::max);
        let max_r = corners_f
            .iter()
            .map(|h| h.iter().zip(r).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::MIN, f64::max);
        if max_e <= 0.0 || max_r <= 0.0 {
            return f64::MIN;
        }
        let num: f64 = e.iter().zip(r).map(|(a, b)| a * b).sum();
        num / (max_e * max_r)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_f: Option<(f64, Vec<f64>, Vec<f64>)> = None;
    for s in 0..starts {
        let mut e = vec![0.0f64; m];
        let mut r = vec![0.0f64; m];
        if s == 0 {
            for &j in j_set {
                e[j] = 1.0;
            }
            r = e.clone();
        } else {
            for &j in j_set {
                e[j] = rng.gen_range(0.05..1.0);
            }
            for x in r.iter_mut() {
                *x = rng.gen_range(0.05..1.0);
            }
        }
        let mut val = objective(&e, &r);
        let mut step = 0.5f64;
        while step > 1e-4 {
            let mut improved = false;
            for &j in j_set {
                for dir in [1.0 + step, 1.0 / (1.0 + step)] {
                    let old = e[j];
                    e[j] = (old * dir).max(1e-9);
                    let v = objective(&e, &r);
                    if v > val {
                        val = v;
                        improved = true;
                    } else {
                        e[j] = old;
                    }
                }
            }
            for j in 0..m {
                for dir in [1.0 + step, 1.0 / (1.0 + step)] {
                    let old = r[j];
                    r[j] = (old * dir).max(0.0);
                    let v = objective(&e, &r);
                    if v > val {
                        val = v;
                        improved = true;
                    } else {
                        r[j] = old;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if best_f.as_ref().map_or(true, |(b, _, _)| val > *b) {
            best_f = Some((val, e, r));
        }
    }

    // Exact candidates: rationalized numeric point, uniform, axis.
    let mut candidates: Vec<(RatVec, RatVec)> = Vec::new();
    if let Some((_, e, r)) = best_f {
        let rationalize = |v: &[f64]| -> RatVec {
            v.iter()
                .map(|&x| {
                    let scaled = (x * 3600.0).round() as i64;
                    rat(scaled.max(0), 3600)
                })
                .collect()
        };
        candidates.push((rationalize(&e), rationalize(&r)));
    }
    let uni = indicator(m, j_set);
    candidates.push((uni.clone(), uni));
    for &j in j_set {
        let e = indicator(m, &[j]);
        candidates.push((e.clone(), e));
    }

    let mut best: Option<ExpResult> = None;
    for (e, r) in candidates {
        if e.iter().all(|x| x.is_zero()) || r.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Ok(res) = bound_result(h_set, e, r) {
            if best.as_ref().map_or(true, |b| res.value > b.value) {
                best = Some(res);
            }
        }
    }
    best.ok_or(ExpError::DegenerateObjective)
}

/// Diagonal polytope {d e_j : 1 <= j <= m}; Exp(H) = m/d^2.
pub fn diagonal_polytope(m: usize, d: u32) -> Polytope {
    let mut corners = Vec::new();
    for j in 0..m {
        let mut v = vec![0u32; m];
        v[j] = d;
        corners.push(v);
    }
    Polytope::from_corner_list(&corners).expect("diagonal corners are corners")
}

/// Superelliptic polytope {(d,0,0), (0,0,d), (0,q,d-q)} for q < d.
pub fn superelliptic_polytope(q: u32, d: u32) -> Polytope {
    Polytope::from_corner_list(&[vec![d, 0, 0], vec![0, 0, d], vec![0, q, d - q]])
        .expect("superelliptic corners")
}

/// Symmetric polytope {(a,b,0), (0,a,b), (b,0,a)} for a > b >= 1.
pub fn symmetric_polytope(a: u32, b: u32) -> Polytope {
    Polytope::from_corner_list(&[vec![a, b, 0], vec![0, a, b], vec![b, 0, a]])
        .expect("symmetric corners")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_int;

    #[test]
    fn region_membership() {
        let h = diagonal_polytope(2, 2);
        let e10 = vec![rat_from_int(1), rat_from_int(0)];
        assert!(region_contains(&h, &[2, 0], &e10, true));
        let e11 = vec![rat_from_int(1), rat_from_int(1)];
        assert!(region_contains(&h, &[2, 0], &e11, true));
        assert!(!region_contains(&h, &[2, 0], &e11, false));
        // Hyperelliptic: e = (0,1,0) leaves (6,0,0) dominated by (0,2,4).
        let hh = superelliptic_polytope(2, 6);
        let e = vec![rat_from_int(0), rat_from_int(1), rat_from_int(0)];
        assert!(!region_contains(&hh, &[6, 0, 0], &e, true));
    }

    #[test]
    fn exp_full_diagonal() {
        for (m, d) in [(3usize, 3u32), (2, 2), (4, 5)] {
            let h = diagonal_polytope(m, d);
            let res = exp_full(&h).unwrap();
            assert_eq!(res.value, rat(m as i64, (d as i64) * (d as i64)));
        }
        // Witness direction for the m=3, d=3 case is proportional to 1.
        let res = exp_full(&diagonal_polytope(3, 3)).unwrap();
        let u = &res.direction_e;
        assert!(u.iter().all(|x| x == &u[0]));
    }

    #[test]
    fn exp_full_singleton() {
        let h = Polytope::from_corner_list(&[vec![4]]).unwrap();
        let res = exp_full(&h).unwrap();
        assert_eq!(res.value, rat(1, 16));
    }

    #[test]
    fn exp_full_witness_conditions() {
        let h = superelliptic_polytope(2, 6);
        let res = exp_full(&h).unwrap();
        let u = &res.direction_e;
        assert!(u.iter().all(|x| !x.is_negative()));
        let uh1 = dot_exp_rat(&res.corner, u);
        for c in &h.corners {
            assert!(dot_exp_rat(c, u) <= uh1);
        }
        let min_sq = res.min_dot_squared.unwrap();
        assert_eq!(&uh1 * &uh1 / norm_sq(u), min_sq);
    }

    #[test]
    fn lower_bounds_superelliptic() {
        let h = superelliptic_polytope(2, 6);
        // Axis on J={2} (0-based index 1): 1/q^2.
        let axis = exp_j_lower(&h, &[1], &LowerStrategy::Axis).unwrap();
        assert_eq!(axis.value, rat(1, 4));
        // Witness (q,d,0) on J={1,2}: 1/q^2 + 1/d^2.
        let e = vec![rat_from_int(2), rat_from_int(6), rat_from_int(0)];
        let w = exp_j_lower(
            &h,
            &[0, 1],
            &LowerStrategy::Witness {
                e: e.clone(),
                r: e.clone(),
            },
        )
        .unwrap();
        assert_eq!(w.value, rat(1, 4) + rat(1, 36));
    }

    #[test]
    fn lower_bound_symmetric() {
        let (a, b) = (2i64, 1i64);
        let h = symmetric_polytope(a as u32, b as u32);
        let v = vec![rat_from_int(a), rat_from_int(a + b), rat_from_int(b)];
        let res = exp_j_lower(
            &h,
            &[0, 1, 2],
            &LowerStrategy::Witness {
                e: v.clone(),
                r: v.clone(),
            },
        )
        .unwrap();
        assert_eq!(res.value, rat(2, a * a + a * b + b * b));
    }

    #[test]
    fn objective_scale_invariance() {
        let h = superelliptic_polytope(2, 6);
        let e = vec![rat_from_int(2), rat_from_int(6), rat_from_int(1)];
        let r = vec![rat_from_int(1), rat_from_int(3), rat_from_int(2)];
        let (v1, _, _) = exp_objective(&h, &e, &r).unwrap();
        let e2: RatVec = e.iter().map(|x| x * rat(3, 2)).collect();
        let r2: RatVec = r.iter().map(|x| x * rat_from_int(7)).collect();
        let (v2, _, _) = exp_objective(&h, &e2, &r2).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn exact_dominates_lower_bounds() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..25 {
            let m = rng.gen_range(2..=3);
            let d = rng.gen_range(2..=6u32);
            let mut set = std::collections::BTreeSet::new();
            for _ in 0..rng.gen_range(2..6) {
                let mut v = vec![0u32; m];
                let mut rest = d;
                for j in 0..m - 1 {
                    let x = rng.gen_range(0..=rest);
                    v[j] = x;
                    rest -= x;
                }
                v[m - 1] = rest;
                set.insert(v);
            }
            let p = crate::polytope::corners(&set).unwrap();
            if !p.is_valid() {
                continue;
            }
            let full: Vec<usize> = (0..m).collect();
            let exact = exp_full(&p).unwrap();
            for strat in [
                LowerStrategy::Axis,
                LowerStrategy::Uniform,
                LowerStrategy::Numeric { seed: 1, starts: 4 },
            ] {
                let lb = exp_j_lower(&p, &full, &strat).unwrap();
                assert!(
                    lb.value <= exact.value,
                    "lower bound {} exceeds exact {} on {:?}",
                    lb.value,
                    exact.value,
                    p.corners
                );
            }
        }
    }

    #[test]
    fn sampled_directions_never_beat_exact() {
        // Exp equals 1 / min over unit u >= 0 of (max_h u.h)^2, so every
        // rational direction yields an exact lower bound; none may exceed
        // the enumerated optimum, and the optimum's witness attains it.
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cases = vec![
            diagonal_polytope(3, 4),
            superelliptic_polytope(2, 6),
            superelliptic_polytope(3, 9),
            symmetric_polytope(3, 2),
        ];
        for h in cases {
            let exact = exp_full(&h).unwrap();
            for _ in 0..2000 {
                let u: RatVec = (0..h.m)
                    .map(|_| rat(rng.gen_range(0..40), rng.gen_range(1..8)))
                    .collect();
                if u.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let (max_uh, _) = super::max_dot(&h, &u);
                if max_uh.is_zero() {
                    continue;
                }
                let value = norm_sq(&u) / (&max_uh * &max_uh);
                assert!(
                    value <= exact.value,
                    "sampled direction beats the optimum on {:?}",
                    h.corners
                );
            }
            let w = &exact.direction_e;
            let (max_wh, _) = super::max_dot(&h, w);
            assert_eq!(norm_sq(w) / (&max_wh * &max_wh), exact.value);
        }
    }

    #[test]
    fn numeric_close_to_exact_on_diagonal() {
        let h = diagonal_polytope(3, 4);
        let full = [0usize, 1, 2];
        let res = exp_j_lower(&h, &full, &LowerStrategy::Numeric { seed: 9, starts: 6 }).unwrap();
        let exact = exp_full(&h).unwrap();
        assert!(res.value <= exact.value);
        // The uniform start already attains m/d^2 here.
        assert_eq!(res.value, exact.value);
    }
}
