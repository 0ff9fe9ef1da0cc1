//! Degree constructions on hyperelliptic curves y^2 = f(x) (and their
//! superelliptic relatives a y^q = g(x)): from a rational point, realize
//! every degree in [g+1, 2g+1] and every odd degree beyond; from an odd
//! degree point, odd degrees down to 2g+2-m; from a rational point on a
//! superelliptic curve, the Frobenius set Frob(d-1, q).

use num_bigint::RandBigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_perfect_square, Int, Rat, UniPoly};
use crate::degrees::frobenius_window;
use crate::factor::is_irreducible_q;

use super::{superelliptic_form, AppError, PointRep};

const RETRY_BUDGET: usize = 64;

/// A known point on y^2 = f(x).
#[derive(Debug, Clone)]
pub enum HyperPoint {
    Rational { x0: Rat, y0: Rat },
    /// Odd degree m > 1: x-coordinate alpha with minimal polynomial
    /// `minpoly`, y-coordinate h(alpha).
    Odd { minpoly: UniPoly, h: UniPoly },
}

fn check_square_leading(f: &UniPoly) -> Result<(), AppError> {
    let lead = f.leading();
    if !lead.is_integer() {
        return Err(AppError::BadInput("curve polynomial must be integral".into()));
    }
    // A monic curve is allowed: the only cancellation risk is a +-1 leading
    // draw, which the degree checks reject and the retry loop re-draws.
    if lead.numer() == &Int::from(1) {
        return Ok(());
    }
    if !lead.numer().is_negative() && is_perfect_square(lead.numer()) {
        return Err(AppError::SquareLeadingCoeff);
    }
    Ok(())
}

fn point_from_curve_data(
    f: &UniPoly,
    minpoly: UniPoly,
    x_coord: UniPoly,
    y_coord: UniPoly,
) -> PointRep {
    let verdict = is_irreducible_q(&minpoly);
    let point = PointRep {
        coords: vec![x_coord.rem(&minpoly), y_coord.rem(&minpoly)],
        minpoly,
        verdict,
    };
    debug_assert!({
        let ambient = superelliptic_form(&Int::one(), 2, f);
        point.verify(&ambient)
    });
    point
}

/// Rational-point branch with y0 != 0, after translating the point to
/// x = 0: targets n in [g+1, 2g+1] via the triangular system, odd targets
/// > 2g+1 via y = y0 + t w(t).
fn rational_branch(
    f_shifted: &UniPoly,
    x0: &Rat,
    y0: &Rat,
    genus: u64,
    target: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(UniPoly, UniPoly, UniPoly), AppError> {
    // Returns (minpoly in t, x(t), y(t)) in the original x coordinate.
    let g = genus;
    let x_of_t = UniPoly::from_rats(vec![x0.clone(), Rat::one()]); // x = t + x0
    if (g + 1..=2 * g + 1).contains(&target) {
        let mm = (2 * g + 1 - target) as usize;
        // y = y0 + y1 t + ... + y_mm t^mm + u t^{mm+1} with the coefficient
        // of t^j in y^2 matching f for j <= mm.
        let mut ys: Vec<Rat> = vec![y0.clone()];
        for j in 1..=mm {
            let mut conv = Rat::zero();
            for i in 1..j {
                conv += &ys[i] * &ys[j - i];
            }
            let cj = f_shifted.coeff(j);
            ys.push((cj - conv) / (Rat::from_integer(Int::from(2)) * y0));
        }
        for _ in 0..RETRY_BUDGET {
            let u = Rat::from_integer(rng.gen_bigint_range(&Int::from(1), &Int::from(50)));
            let mut coeffs = ys.clone();
            coeffs.push(u);
            let y_of_t = UniPoly::from_rats(coeffs);
            let diff = f_shifted - &(&y_of_t * &y_of_t);
            let tm = UniPoly::monomial(Rat::one(), mm + 1);
            let Ok(candidate) = diff.divide_exact(&tm) else {
                continue;
            };
            if candidate.degree() != Some(target as usize) {
                continue;
            }
            let minpoly = candidate.primitive();
            if is_irreducible_q(&minpoly).is_irreducible() {
                return Ok((minpoly, x_of_t, y_of_t));
            }
        }
        return Err(AppError::BudgetExhausted);
    }
    if target > 2 * g + 1 && target % 2 == 1 {
        let ell = ((target - 1) / 2) as usize;
        for _ in 0..RETRY_BUDGET {
            let mut w: Vec<Rat> = (0..=ell)
                .map(|_| Rat::from_integer(rng.gen_bigint_range(&Int::from(-9), &Int::from(10))))
                .collect();
            if w[ell].is_zero() {
                w[ell] = Rat::one();
            }
            let w_poly = UniPoly::from_rats(w);
            let y_of_t = &UniPoly::constant(y0.clone()) + &(&UniPoly::t() * &w_poly);
            let diff = &(&y_of_t * &y_of_t) - f_shifted;
            let Ok(candidate) = diff.divide_exact(&UniPoly::t()) else {
                continue;
            };
            if candidate.degree() != Some(target as usize) {
                continue;
            }
            let minpoly = candidate.primitive();
            if is_irreducible_q(&minpoly).is_irreducible() {
                return Ok((minpoly, x_of_t, y_of_t));
            }
        }
        return Err(AppError::BudgetExhausted);
    }
    Err(AppError::TargetUnreachable(target))
}

/// Odd-degree branch: H = h + a G for random a of degree r = (target-m)/2;
/// the cofactor R = (H^2 - f)/G of degree 2r+m is the new minimal
/// polynomial when irreducible.
fn odd_branch(
    f: &UniPoly,
    minpoly_g: &UniPoly,
    h: &UniPoly,
    genus: u64,
    target: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(UniPoly, UniPoly, UniPoly), AppError> {
    let m = minpoly_g.deg0() as u64;
    if target % 2 != m % 2 || target < 2 * genus + 2 - m {
        return Err(AppError::TargetUnreachable(target));
    }
    if target < m {
        return Err(AppError::TargetUnreachable(target));
    }
    let r = ((target - m) / 2) as usize;
    for _ in 0..RETRY_BUDGET {
        let mut a: Vec<Rat> = (0..=r)
            .map(|_| Rat::from_integer(rng.gen_bigint_range(&Int::from(-9), &Int::from(10))))
            .collect();
        if a[r].is_zero() {
            a[r] = Rat::one();
        }
        let a_poly = UniPoly::from_rats(a);
        let big_h = h + &(&a_poly * minpoly_g);
        let num = &(&big_h * &big_h) - f;
        let Ok(candidate) = num.divide_exact(minpoly_g) else {
            return Err(AppError::NotOnCurve);
        };
        if candidate.degree() != Some(target as usize) {
            continue;
        }
        let minpoly = candidate.primitive();
        if is_irreducible_q(&minpoly).is_irreducible() {
            return Ok((minpoly, UniPoly::t(), big_h));
        }
    }
    Err(AppError::BudgetExhausted)
}

/// Realize the target degrees by points on y^2 = f(x); every returned point
/// carries an irreducibility verdict and satisfies minpoly | y^2 - f(x).
pub fn hyperelliptic_degrees(
    f: &UniPoly,
    point: &HyperPoint,
    targets: &[u64],
    seed: u64,
) -> Result<Vec<PointRep>, AppError> {
    let deg = f.degree().ok_or_else(|| AppError::BadInput("zero curve".into()))?;
    if deg < 4 || deg % 2 != 0 {
        return Err(AppError::BadInput(
            "curve polynomial must have even degree 2g+2 >= 4".into(),
        ));
    }
    check_square_leading(f)?;
    if f.gcd(&f.derivative()).deg0() > 0 {
        return Err(AppError::BadInput("curve polynomial must be squarefree".into()));
    }
    let genus = (deg as u64 - 2) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Validate the point and normalize the Weierstrass case to the odd
    // branch with m = 1.
    enum Branch {
        Rational { x0: Rat, y0: Rat },
        Odd { minpoly: UniPoly, h: UniPoly },
    }
    let branch = match point {
        HyperPoint::Rational { x0, y0 } => {
            let fx0 = f.eval(x0);
            if &fx0 != &(y0 * y0) {
                return Err(AppError::NotOnCurve);
            }
            if y0.is_zero() {
                // Weierstrass point: odd-degree branch with m = 1, h = 0.
                let minpoly = UniPoly::from_rats(vec![-x0.clone(), Rat::one()]);
                Branch::Odd {
                    minpoly,
                    h: UniPoly::zero(),
                }
            } else {
                Branch::Rational {
                    x0: x0.clone(),
                    y0: y0.clone(),
                }
            }
        }
        HyperPoint::Odd { minpoly, h } => {
            if minpoly.deg0() % 2 == 0 {
                return Err(AppError::EvenDegreeInput);
            }
            if !is_irreducible_q(minpoly).is_irreducible() {
                return Err(AppError::BadInput("point minimal polynomial reducible".into()));
            }
            let rel = &(h * h) - f;
            if !rel.rem(minpoly).is_zero() {
                return Err(AppError::NotOnCurve);
            }
            Branch::Odd {
                minpoly: minpoly.clone(),
                h: h.clone(),
            }
        }
    };

    let mut out = Vec::with_capacity(targets.len());
    for &target in targets {
        let (minpoly, x_t, y_t) = match &branch {
            Branch::Rational { x0, y0 } => {
                let f_shifted = f.shift(x0);
                rational_branch(&f_shifted, x0, y0, genus, target, &mut rng)?
            }
            Branch::Odd { minpoly, h } => odd_branch(f, minpoly, h, genus, target, &mut rng)?,
        };
        out.push(point_from_curve_data(f, minpoly, x_t, y_t));
    }
    Ok(out)
}

/// Realize degrees in Frob(d-1, q) on the superelliptic curve a y^q = g(x)
/// from a nonsingular rational base point, via the G(t) = t^e construction:
/// the target n = (d-1)e + qs is met by x = x0 + c t^e and
/// y = y0 + t^e w(t) with deg w = (d/q)e + s - e.
pub fn superelliptic_frob(
    a: &Int,
    g: &UniPoly,
    q: u32,
    base: (&Rat, &Rat),
    targets: &[u64],
    seed: u64,
) -> Result<Vec<PointRep>, AppError> {
    let d = g.degree().ok_or_else(|| AppError::BadInput("zero curve".into()))? as u64;
    if q < 2 || d % q as u64 != 0 {
        return Err(AppError::BadInput("need q >= 2 dividing deg g".into()));
    }
    let (x0, y0) = base;
    let lhs = Rat::from_integer(a.clone()) * y0.pow(q as i32);
    if lhs != g.eval(x0) {
        return Err(AppError::NotOnCurve);
    }
    // Nonsingularity of the affine point: (q a y0^{q-1}, -g'(x0)) != 0.
    let dy = Rat::from_integer(a.clone() * Int::from(q)) * y0.pow(q as i32 - 1);
    let dx = g.derivative().eval(x0);
    if dy.is_zero() && dx.is_zero() {
        return Err(AppError::BadInput("base point is singular".into()));
    }
    let ambient = superelliptic_form(a, q, g);
    let window = frobenius_window(&[d - 1, q as u64], (2 * d * d) as usize + 64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(targets.len());
    for &target in targets {
        // Decompose target = (d-1) e + q s.
        let mut decomp = None;
        let mut e = 0u64;
        while (d - 1) * e <= target {
            let rest = target - (d - 1) * e;
            if rest % q as u64 == 0 {
                decomp = Some((e, rest / q as u64));
                break;
            }
            e += 1;
        }
        let Some((e, s)) = decomp else {
            debug_assert!(!window.is_member(target));
            return Err(AppError::TargetUnreachable(target));
        };
        let d1 = (d / q as u64) * e + s;
        if d1 == 0 {
            return Err(AppError::TargetUnreachable(target));
        }
        let mut made = None;
        for _ in 0..RETRY_BUDGET {
            let x_t = if e == 0 {
                UniPoly::constant(
                    x0 + &Rat::from_integer(rng.gen_bigint_range(&Int::from(1), &Int::from(30))),
                )
            } else {
                let c = Rat::from_integer(rng.gen_bigint_range(&Int::from(1), &Int::from(9)));
                &UniPoly::constant(x0.clone()) + &UniPoly::monomial(c, e as usize)
            };
            let wdeg = (d1 - e) as usize;
            let mut w: Vec<Rat> = (0..=wdeg)
                .map(|_| Rat::from_integer(rng.gen_bigint_range(&Int::from(-6), &Int::from(7))))
                .collect();
            if w[wdeg].is_zero() {
                w[wdeg] = Rat::one();
            }
            let y_t = if e == 0 {
                UniPoly::from_rats(w)
            } else {
                &UniPoly::constant(y0.clone())
                    + &(&UniPoly::monomial(Rat::one(), e as usize) * &UniPoly::from_rats(w))
            };
            let full = ambient.evaluate_composition(&[x_t.clone(), y_t.clone()]);
            let modulus = UniPoly::monomial(Rat::one(), e as usize);
            let Ok(candidate) = full.divide_exact(&modulus) else {
                continue;
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
                coords: vec![x_t.rem(&minpoly), y_t.rem(&minpoly)],
                minpoly,
                verdict,
            };
            debug_assert!(point.verify(&ambient));
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
