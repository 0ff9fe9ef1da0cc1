//! Point factory from known non-singular points: lift each point's minimal
//! polynomial to a prime power, combine by CRT into a modulus G, pass to
//! the quotient form and specialize with degrees d_i = n + k to realize
//! target degrees (d-1) n + d k.

use num_bigint::RandBigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Int, MultiPoly, Rat, UniPoly};
use crate::degrees::frobenius_window;
use crate::factor::is_irreducible_q;
use crate::specialize::{
    check_nonsingular, crt_combine, hensel_lift, pick_n, quotient_form, reduce_min,
};

use super::{AppError, PointRep};

const RETRY_BUDGET: usize = 48;

/// Realize each target degree by a point built from the known ones. The
/// `j` index (0-based) selects the variable whose degree absorbs
/// deg_{x_j} f; reachable targets are (d-1) n + d k with n in the Frobenius
/// set of the known degrees and k >= deg_{x_j} f.
pub fn frob_subset_points(
    f: &MultiPoly,
    known: &[PointRep],
    j: usize,
    targets: &[u64],
    seed: u64,
) -> Result<Vec<PointRep>, AppError> {
    if known.is_empty() {
        return Err(AppError::BadInput("need at least one known point".into()));
    }
    let m = f.num_vars();
    if j >= m {
        return Err(AppError::BadInput("variable index out of range".into()));
    }
    if !f.is_homogeneous() || f.total_degree() < 1 {
        return Err(AppError::BadInput("f must be homogeneous".into()));
    }
    let d = f.total_degree() as u64;
    let degx_j = f.degree_in(j) as u64;
    // Non-singularity of every known point, checked up front.
    for p in known {
        if !p.verify(f) {
            return Err(AppError::NotOnCurve);
        }
        if check_nonsingular(f, &p.coords, &p.minpoly)?.is_none() {
            return Err(AppError::BadInput("known point is singular".into()));
        }
    }
    let degrees: Vec<u64> = known.iter().map(|p| p.degree() as u64).collect();
    let max_target = targets.iter().copied().max().unwrap_or(0);
    let window_bound = (max_target as usize / (d as usize - 1).max(1) + 2)
        .max(*degrees.iter().max().unwrap() as usize + 1);
    let window = frobenius_window(&degrees, window_bound);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(targets.len());
    for &target in targets {
        // target = (d-1) n + d k with n in Frob(degrees), k >= degx_j.
        let mut plan = None;
        for n in window.members() {
            if (d - 1) * n > target {
                break;
            }
            let rest = target - (d - 1) * n;
            if rest % d == 0 && rest / d >= degx_j {
                plan = Some((n, rest / d));
                break;
            }
        }
        let Some((n, k)) = plan else {
            return Err(AppError::TargetUnreachable(target));
        };
        // Build G of degree n and a reduced solution u mod G.
        let (big_g, u) = if n == 0 {
            (UniPoly::one(), vec![UniPoly::zero(); m])
        } else {
            let rep = window.representation(n).expect("member has representation");
            let mut parts = Vec::new();
            for (i, &count) in rep.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let lifted = hensel_lift(f, &known[i].minpoly, &known[i].coords, count)?;
                parts.push(lifted);
            }
            let combined = crt_combine(f, &parts)?;
            let u = reduce_min(f, &combined.coords, &combined.modulus)?;
            (combined.modulus, u)
        };
        // The quotient form must keep the corner structure of f.
        if n > 0 {
            let _ = quotient_form(f, &big_g, &u)?;
        }
        // Specialize x_i = y_i G + u_i with deg y_i = k and leading
        // coefficients from pick_n(f) (all degrees are equal, so the full
        // form is its own leading form).
        let leads = pick_n(f);
        let mut made = None;
        for _ in 0..RETRY_BUDGET {
            let ys: Vec<UniPoly> = (0..m)
                .map(|i| {
                    let mut coeffs: Vec<Rat> = (0..k as usize)
                        .map(|_| {
                            Rat::from_integer(
                                rng.gen_bigint_range(&Int::from(-8), &Int::from(9)),
                            )
                        })
                        .collect();
                    coeffs.push(Rat::from_integer(leads[i].clone()));
                    UniPoly::from_rats(coeffs)
                })
                .collect();
            let xs: Vec<UniPoly> = ys
                .iter()
                .zip(&u)
                .map(|(y, ui)| &(y * &big_g) + ui)
                .collect();
            let image = f.evaluate_composition(&xs);
            let Ok(candidate) = image.divide_exact(&big_g) else {
                return Err(AppError::Spec(crate::specialize::SpecError::NotASolution));
            };
            if candidate.degree() != Some(target as usize) {
                continue;
            }
            let minpoly = candidate.primitive();
            let verdict = is_irreducible_q(&minpoly);
            if !verdict.is_irreducible() {
                continue;
            }
            let point = PointRep {
                coords: xs.iter().map(|x| x.rem(&minpoly)).collect(),
                minpoly,
                verdict,
            };
            debug_assert!(point.verify(f));
            made = Some(point);
            break;
        }
        match made {
            Some(p) => out.push(p),
            None => return Err(AppError::BudgetExhausted),
        }
    }
    Ok(out)
}
