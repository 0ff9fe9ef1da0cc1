//! Descent to rational points: on a quadric, divide F(x(t)) by the point's
//! minimal polynomial and recurse on an odd-degree factor until degree 1;
//! on a cubic, a degree-2 point forces the quotient to be linear. The
//! ascend directions manufacture points of prescribed degree from a
//! rational one.

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Int, MultiPoly, Rat, UniPoly};
use crate::factor::{factor_over_z, is_irreducible_q};

use super::{AppError, PointRep};

const RERANDOMIZE_BUDGET: usize = 32;

fn random_small_poly(rng: &mut ChaCha8Rng, deg: usize) -> UniPoly {
    let lo = Int::from(-4);
    let hi = Int::from(5);
    let mut coeffs: Vec<Rat> = (0..=deg)
        .map(|_| Rat::from_integer(rng.gen_bigint_range(&lo, &hi)))
        .collect();
    if coeffs[deg].is_zero() {
        coeffs[deg] = Rat::one();
    }
    UniPoly::from_rats(coeffs)
}

fn eval_coords(coords: &[UniPoly], at: &Rat) -> Vec<Rat> {
    coords.iter().map(|c| c.eval(at)).collect()
}

/// Extract a rational point from coordinates once the minimal polynomial is
/// linear, or from a polynomial identity F(coords) = 0 by specialization.
fn rational_from_linear(
    f: &MultiPoly,
    coords: &[UniPoly],
    minpoly: &UniPoly,
) -> Result<PointRep, AppError> {
    let root = -minpoly.coeff(0) / minpoly.coeff(1);
    let pt = eval_coords(coords, &root);
    if pt.iter().all(|c| c.is_zero()) {
        return Err(AppError::DegreeDropAnomaly);
    }
    if !f.eval_rats(&pt).is_zero() {
        return Err(AppError::NotOnCurve);
    }
    Ok(PointRep::rational(pt))
}

/// Springer descent: from an odd-degree point on a homogeneous quadric to a
/// rational point. Each round reduces the coordinates modulo the minimal
/// polynomial g, factors h = F(coords)/g, and recurses on the odd-degree
/// irreducible factor of least degree (ties broken by the lexicographically
/// least coefficient sequence).
pub fn springer_descent(f: &MultiPoly, point: &PointRep) -> Result<PointRep, AppError> {
    if f.total_degree() != 2 || !f.is_homogeneous() {
        return Err(AppError::BadInput("F must be a homogeneous quadratic".into()));
    }
    if point.degree() % 2 == 0 {
        return Err(AppError::EvenDegreeInput);
    }
    if !point.verify(f) {
        return Err(AppError::NotOnCurve);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddc0de);
    let mut g = point.minpoly.clone();
    let mut coords = point.coords.clone();
    let mut rounds = 0usize;
    let max_rounds = point.degree() + RERANDOMIZE_BUDGET;
    loop {
        rounds += 1;
        if rounds > max_rounds {
            return Err(AppError::DegreeDropAnomaly);
        }
        if g.deg0() == 1 {
            return rational_from_linear(f, &coords, &g);
        }
        let reduced: Vec<UniPoly> = coords.iter().map(|c| c.rem(&g)).collect();
        let fx = f.evaluate_composition(&reduced);
        if fx.is_zero() {
            // Degenerate representative: shift by multiples of g and retry.
            coords = reduced
                .iter()
                .map(|c| c + &(&g * &random_small_poly(&mut rng, 0)))
                .collect();
            continue;
        }
        let h = fx.divide_exact(&g)?;
        if h.deg0() == 0 {
            coords = reduced
                .iter()
                .map(|c| c + &(&g * &random_small_poly(&mut rng, 0)))
                .collect();
            continue;
        }
        let factorization = factor_over_z(&h).map_err(|e| AppError::BadInput(e.to_string()))?;
        let mut odd: Vec<UniPoly> = factorization
            .factors
            .iter()
            .filter(|(q, _)| q.deg0() % 2 == 1)
            .map(|(q, _)| q.clone())
            .collect();
        if odd.is_empty() {
            coords = reduced
                .iter()
                .map(|c| c + &(&g * &random_small_poly(&mut rng, 0)))
                .collect();
            continue;
        }
        odd.sort_by(|a, b| a.deg0().cmp(&b.deg0()).then_with(|| a.cmp(b)));
        let next = odd[0].clone();
        coords = reduced.iter().map(|c| c.rem(&next)).collect();
        g = next;
    }
}

/// From a rational point Q on a quadric to a degree 2k+1 point: draw degree
/// k coordinate polynomials, divide F(t*x(t) + Q) by t and keep irreducible
/// outcomes.
pub fn springer_ascend(
    f: &MultiPoly,
    q: &[Rat],
    k: usize,
    seed: u64,
) -> Result<PointRep, AppError> {
    if f.total_degree() != 2 || !f.is_homogeneous() {
        return Err(AppError::BadInput("F must be a homogeneous quadratic".into()));
    }
    if q.len() != f.num_vars() || q.iter().all(|c| c.is_zero()) {
        return Err(AppError::BadInput("Q must be a nonzero point".into()));
    }
    if !f.eval_rats(q).is_zero() {
        return Err(AppError::NotOnCurve);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let lines: Vec<UniPoly> = (0..f.num_vars())
            .map(|j| {
                let poly = random_small_poly(&mut rng, k);
                &(&poly * &UniPoly::t()) + &UniPoly::constant(q[j].clone())
            })
            .collect();
        let image = f.evaluate_composition(&lines);
        let Ok(g) = image.divide_exact(&UniPoly::t()) else {
            continue;
        };
        if g.degree() != Some(2 * k + 1) {
            continue;
        }
        let g = g.primitive();
        let verdict = is_irreducible_q(&g);
        if !verdict.is_irreducible() {
            continue;
        }
        let coords: Vec<UniPoly> = lines.iter().map(|c| c.rem(&g)).collect();
        let point = PointRep {
            minpoly: g,
            coords,
            verdict,
        };
        debug_assert!(point.verify(f));
        return Ok(point);
    }
    Err(AppError::BudgetExhausted)
}

/// From a rational point on a cubic to a degree-2 point: F(a t + Q)/t is a
/// quadratic, generically irreducible.
pub fn coray_ascend(f: &MultiPoly, q: &[Rat], seed: u64) -> Result<PointRep, AppError> {
    if f.total_degree() != 3 || !f.is_homogeneous() {
        return Err(AppError::BadInput("F must be a homogeneous cubic".into()));
    }
    if !f.eval_rats(q).is_zero() {
        return Err(AppError::NotOnCurve);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let lines: Vec<UniPoly> = (0..f.num_vars())
            .map(|j| {
                let a = Rat::from_integer(rng.gen_bigint_range(&Int::from(-6), &Int::from(7)));
                UniPoly::from_rats(vec![q[j].clone(), a])
            })
            .collect();
        let image = f.evaluate_composition(&lines);
        let Ok(g) = image.divide_exact(&UniPoly::t()) else {
            continue;
        };
        if g.degree() != Some(2) {
            continue;
        }
        let g = g.primitive();
        let verdict = is_irreducible_q(&g);
        if !verdict.is_irreducible() {
            continue;
        }
        let coords: Vec<UniPoly> = lines.iter().map(|c| c.rem(&g)).collect();
        let point = PointRep {
            minpoly: g,
            coords,
            verdict,
        };
        debug_assert!(point.verify(f));
        return Ok(point);
    }
    Err(AppError::BudgetExhausted)
}

/// Cubic descent: a degree-2 point on a homogeneous cubic yields a rational
/// point, since h = F(coords)/g is linear for a non-degenerate
/// representative. Degenerate representatives are re-randomized by unit
/// multiplication modulo g, which preserves the coordinate degrees.
pub fn coray_descent(f: &MultiPoly, point: &PointRep) -> Result<PointRep, AppError> {
    if f.total_degree() != 3 || !f.is_homogeneous() {
        return Err(AppError::BadInput("F must be a homogeneous cubic".into()));
    }
    if point.degree() != 2 {
        return Err(AppError::BadInput("point must have degree 2".into()));
    }
    if !point.verify(f) {
        return Err(AppError::NotOnCurve);
    }
    let g = point.minpoly.clone();
    let mut coords: Vec<UniPoly> = point.coords.iter().map(|c| c.rem(&g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc02a1);
    for _ in 0..RERANDOMIZE_BUDGET {
        let fx = f.evaluate_composition(&coords);
        if fx.is_zero() {
            // Identically zero image: any specialization with a nonzero
            // coordinate vector is already a rational point.
            for t0 in 0..8i64 {
                let at = Rat::from_integer(Int::from(t0));
                let pt = eval_coords(&coords, &at);
                if !pt.iter().all(|c| c.is_zero()) {
                    return Ok(PointRep::rational(pt));
                }
            }
            return Err(AppError::DegreeDropAnomaly);
        }
        let h = fx.divide_exact(&g)?;
        if h.deg0() == 1 {
            let root = -h.coeff(0) / h.coeff(1);
            let pt = eval_coords(&coords, &root);
            if pt.iter().all(|c| c.is_zero()) {
                return Err(AppError::DegreeDropAnomaly);
            }
            if !f.eval_rats(&pt).is_zero() {
                return Err(AppError::NotOnCurve);
            }
            return Ok(PointRep::rational(pt));
        }
        // h constant: multiply the representative by a unit mod g.
        let unit = loop {
            let cand = random_small_poly(&mut rng, 1);
            if cand.gcd(&g).deg0() == 0 && !cand.is_zero() {
                break cand;
            }
        };
        coords = coords.iter().map(|c| (c * &unit).rem(&g)).collect();
    }
    Err(AppError::DegenerateH)
}
