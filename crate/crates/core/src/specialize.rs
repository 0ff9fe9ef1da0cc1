//! Polynomial specialization machinery: leading-coefficient selection,
//! random irreducible specializations f(x(t)), non-singularity checks,
//! Hensel lifting of polynomial solutions to prime powers, CRT combination,
//! minimal-representative reduction, and the quotient form
//! g(x)[t] = f(xG + u)/G.

use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{
    charpoly, dot_exp_rat, pow_ceil_rational, AlgebraError, Int, MultiPoly, MultiPolyT, Rat,
    RatVec, UniPoly,
};
use crate::factor::{is_irreducible_q_effort, Effort, IrreducibilityVerdict};
use crate::polytope::{newton_polytope, Polytope, PolytopeError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("coordinates are not a solution modulo the given polynomial")]
    NotASolution,
    #[error("solution is singular modulo the given polynomial")]
    SingularInput,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("corner coefficients of the quotient form disagree with the input form")]
    CornerMismatch,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// A specialization tuple: coordinate polynomials with prescribed degrees,
/// leading coefficients and height budget.
#[derive(Debug, Clone)]
pub struct SpecTuple {
    pub x: Vec<UniPoly>,
    pub degrees: Vec<u64>,
    pub leading: Vec<Int>,
    pub height_t: u64,
    pub exponents: RatVec,
}

/// One prime-power factor of a solution modulus, with the index of a
/// partial derivative that stays invertible modulo the base.
#[derive(Debug, Clone)]
pub struct ModulusFactor {
    pub base: UniPoly,
    pub exponent: u32,
    pub witness_j: usize,
}

/// Coordinates solving f = 0 modulo a product of prime powers of
/// irreducible polynomials.
#[derive(Debug, Clone)]
pub struct PolySolution {
    pub modulus: UniPoly,
    pub factors: Vec<ModulusFactor>,
    pub coords: Vec<UniPoly>,
}

impl PolySolution {
    /// Exact re-check of the defining congruence.
    pub fn verify(&self, f: &MultiPoly) -> bool {
        let fy = f.evaluate_composition(&self.coords);
        fy.rem(&self.modulus).is_zero()
    }
}

/// Positive integers n with sum <= m + deg g and g(n) != 0, found by
/// peeling the last variable and scanning at most deg+1 values for it.
pub fn pick_n(g: &MultiPoly) -> Vec<Int> {
    assert!(!g.is_zero(), "pick_n needs a nonzero polynomial");
    let m = g.num_vars();
    if m == 0 {
        return vec![];
    }
    // Leading coefficient of g in the last variable.
    let dm = g.degree_in(m - 1);
    if m == 1 {
        // Univariate: scan 1..=deg+1 for a non-root.
        for n in 1..=(dm as i64 + 1) {
            if !g.eval_ints(&[Int::from(n)]).is_zero() {
                return vec![Int::from(n)];
            }
        }
        unreachable!("a nonzero univariate polynomial has at most deg roots");
    }
    let mut lead = MultiPoly::zero(m - 1);
    for (e, c) in g.terms() {
        if e[m - 1] == dm {
            lead.add_term(e[..m - 1].to_vec(), c.clone());
        }
    }
    let mut n = pick_n(&lead);
    // With the first m-1 values fixed, g becomes univariate in the last
    // variable with nonzero leading coefficient.
    for cand in 1..=(dm as i64 + 1) {
        let mut point = n.clone();
        point.push(Int::from(cand));
        if !g.eval_ints(&point).is_zero() {
            n.push(Int::from(cand));
            return n;
        }
    }
    unreachable!("leading coefficient is nonzero, so some value below deg+1 works")
}

/// Degree D = max_i i.d over the support and the sub-form of terms
/// attaining it; the leading coefficient of f(x(t)) with degree vector d is
/// g_d evaluated at the leading coefficients.
pub fn leading_form(f: &MultiPoly, d: &[u64]) -> (u64, MultiPoly) {
    let m = f.num_vars();
    assert_eq!(d.len(), m);
    let mut big_d = 0u64;
    for (e, _) in f.terms() {
        let v: u64 = e.iter().zip(d).map(|(&a, &b)| a as u64 * b).sum();
        big_d = big_d.max(v);
    }
    let mut g = MultiPoly::zero(m);
    for (e, c) in f.terms() {
        let v: u64 = e.iter().zip(d).map(|(&a, &b)| a as u64 * b).sum();
        if v == big_d {
            g.add_term(e.clone(), c.clone());
        }
    }
    (big_d, g)
}

/// Outcome of one specialization draw.
#[derive(Debug, Clone)]
pub struct SpecRecord {
    pub tuple: SpecTuple,
    pub f_of_x: UniPoly,
    pub verdict_f: IrreducibilityVerdict,
    pub verdicts_x: Vec<IrreducibilityVerdict>,
    /// Degree dropped or the image vanished; such draws are recorded, not
    /// silently retried.
    pub degenerate: bool,
    pub target_degree: u64,
    pub height: Int,
    pub height_bound: Int,
    pub height_ok: bool,
    /// E = max_h h.e, the height growth exponent.
    pub exp_e: Rat,
}

/// Assess fixed coordinates against the expected degree/leading data; used
/// by `random_spec` and directly by tests that force degenerate draws.
pub fn assess_spec(
    f: &MultiPoly,
    x: Vec<UniPoly>,
    degrees: &[u64],
    leading: Vec<Int>,
    exponents: &[Rat],
    height_t: u64,
    effort: Effort,
) -> SpecRecord {
    let (big_d, g_d) = leading_form(f, degrees);
    let f_of_x = f.evaluate_composition(&x);
    let expected_lead = g_d.eval_ints(&leading);
    let degenerate = f_of_x.degree().map(|d| d as u64) != Some(big_d)
        || f_of_x.leading() != Rat::from_integer(expected_lead.clone());

    // Explicit height bound: sum_i |a_i| prod_j ((d_j + 1) H_j)^{i_j} with
    // H_j = ceil(T^{e_j}); the coefficient-sum bound for the composition.
    let heights: Vec<Int> = exponents
        .iter()
        .map(|e| pow_ceil_rational(height_t.max(1), e.numer().to_u64_digits().1.first().copied().unwrap_or(0), e.denom().to_u64_digits().1.first().copied().unwrap_or(1)))
        .collect();
    let mut bound = Int::zero();
    for (e, c) in f.terms() {
        let mut term = c.abs();
        for (j, &ej) in e.iter().enumerate() {
            let factor = (Int::from(degrees[j] + 1)) * &heights[j];
            term *= factor.pow(ej);
        }
        bound += term;
    }
    let height = f_of_x
        .height()
        .numer()
        .clone();
    let height_ok = height <= bound;
    let exp_e = f
        .terms()
        .map(|(e, _)| dot_exp_rat(e, exponents))
        .max()
        .unwrap_or_else(Rat::zero);

    let verdict_f = if f_of_x.is_zero() {
        IrreducibilityVerdict::Unknown {
            note: "image is identically zero".into(),
        }
    } else {
        is_irreducible_q_effort(&f_of_x, effort)
    };
    let verdicts_x = x
        .iter()
        .map(|xi| is_irreducible_q_effort(xi, effort))
        .collect();
    SpecRecord {
        tuple: SpecTuple {
            x,
            degrees: degrees.to_vec(),
            leading,
            height_t,
            exponents: exponents.to_vec(),
        },
        f_of_x,
        verdict_f,
        verdicts_x,
        degenerate,
        target_degree: big_d,
        height,
        height_bound: bound,
        height_ok,
        exp_e,
    }
}

/// Draw a specialization: leading coefficients from `pick_n` on the leading
/// form, non-leading coefficients uniform in [-ceil(T^{e_i}), ceil(T^{e_i})].
/// Deterministic for a given seed.
pub fn random_spec(
    f: &MultiPoly,
    degrees: &[u64],
    exponents: &[Rat],
    height_t: u64,
    seed: u64,
) -> SpecRecord {
    random_spec_effort(f, degrees, exponents, height_t, seed, Effort::default())
}

pub fn random_spec_effort(
    f: &MultiPoly,
    degrees: &[u64],
    exponents: &[Rat],
    height_t: u64,
    seed: u64,
    effort: Effort,
) -> SpecRecord {
    let m = f.num_vars();
    assert_eq!(degrees.len(), m);
    assert_eq!(exponents.len(), m);
    let (_, g_d) = leading_form(f, degrees);
    let leading = pick_n(&g_d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let heights: Vec<Int> = exponents
        .iter()
        .map(|e| {
            pow_ceil_rational(
                height_t.max(1),
                e.numer().to_u64_digits().1.first().copied().unwrap_or(0),
                e.denom().to_u64_digits().1.first().copied().unwrap_or(1),
            )
        })
        .collect();
    let x: Vec<UniPoly> = (0..m)
        .map(|i| {
            let d = degrees[i] as usize;
            let mut coeffs: Vec<Rat> = (0..d)
                .map(|_| {
                    let lo = -heights[i].clone();
                    let hi = heights[i].clone() + 1;
                    Rat::from_integer(rng.gen_bigint_range(&lo, &hi))
                })
                .collect();
            coeffs.push(Rat::from_integer(leading[i].clone()));
            UniPoly::from_rats(coeffs)
        })
        .collect();
    assess_spec(f, x, degrees, leading, exponents, height_t, effort)
}

/// Non-singularity of a polynomial solution: `Ok(Some(j))` gives the
/// smallest 0-based index with df/dx_j not vanishing mod `p`; `Ok(None)`
/// means the solution is singular.
pub fn check_nonsingular(
    f: &MultiPoly,
    u: &[UniPoly],
    p: &UniPoly,
) -> Result<Option<usize>, SpecError> {
    if p.is_zero() {
        return Err(SpecError::BadInput("zero modulus".into()));
    }
    let fu = f.evaluate_composition(u);
    if !fu.rem(p).is_zero() {
        return Err(SpecError::NotASolution);
    }
    for j in 1..=f.num_vars() {
        let pd = f.partial_derivative(j)?;
        if !pd.evaluate_composition(u).rem(p).is_zero() {
            return Ok(Some(j - 1));
        }
    }
    Ok(None)
}

/// Scale rational coordinates to integers by the lcm of all denominators;
/// homogeneity of f multiplies f(y) by lambda^d, preserving divisibility.
fn integerize(coords: &[UniPoly]) -> Vec<UniPoly> {
    let mut lambda = Int::one();
    for c in coords {
        lambda = lambda.lcm(&c.denominator_lcm());
    }
    let l = Rat::from_integer(lambda);
    coords.iter().map(|c| c.scale(&l)).collect()
}

/// Hensel lifting: upgrade a non-singular solution mod the irreducible `p`
/// to a solution mod `p^e` by the Newton-style correction
/// w_j = y_j - c_j Q_k p^k, where c_j inverts df/dx_j modulo p. Internally
/// rational, integerized once at the end.
pub fn hensel_lift(
    f: &MultiPoly,
    p: &UniPoly,
    coords: &[UniPoly],
    e: u32,
) -> Result<PolySolution, SpecError> {
    if e == 0 {
        return Err(SpecError::BadInput("target exponent must be >= 1".into()));
    }
    let witness = check_nonsingular(f, coords, p)?.ok_or(SpecError::SingularInput)?;
    let mut y: Vec<UniPoly> = coords.iter().map(|c| c.rem(p)).collect();
    let pd = f.partial_derivative(witness + 1)?;
    let dval = pd.evaluate_composition(&y).rem(p);
    let c_inv = dval
        .inverse_mod(p)
        .ok_or(SpecError::SingularInput)?;

    let mut pk = p.clone();
    for _ in 1..e {
        let fy = f.evaluate_composition(&y);
        let q_k = fy.divide_exact(&pk)?;
        // Only c_j q_k mod p matters at this precision.
        let corr = (&c_inv * &q_k).rem(p);
        let delta = &corr * &pk;
        let next_pk = &pk * p;
        y[witness] = (&y[witness] - &delta).rem(&next_pk);
        pk = next_pk;
    }
    let coords_int = integerize(&y);
    let modulus = p.pow(e);
    let out = PolySolution {
        modulus: modulus.clone(),
        factors: vec![ModulusFactor {
            base: p.clone(),
            exponent: e,
            witness_j: witness,
        }],
        coords: coords_int,
    };
    debug_assert!(out.verify(f), "lift must satisfy f(w) = 0 mod p^e");
    if !out.verify(f) {
        return Err(SpecError::NotASolution);
    }
    Ok(out)
}

/// Combine solutions with pairwise coprime moduli into a solution modulo
/// the product, coordinates reduced mod the product.
pub fn crt_combine(f: &MultiPoly, parts: &[PolySolution]) -> Result<PolySolution, SpecError> {
    if parts.is_empty() {
        return Err(SpecError::BadInput("need at least one part".into()));
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i]
                .modulus
                .resultant(&parts[j].modulus)
                .is_zero()
            {
                return Err(SpecError::NotCoprime);
            }
        }
    }
    let m = f.num_vars();
    let mut big_g = UniPoly::one();
    for part in parts {
        big_g = &big_g * &part.modulus;
    }
    let mut coords = vec![UniPoly::zero(); m];
    for part in parts {
        let cofactor = big_g.divide_exact(&part.modulus)?;
        let inv = cofactor
            .rem(&part.modulus)
            .inverse_mod(&part.modulus)
            .ok_or(SpecError::NotCoprime)?;
        let basis = (&cofactor * &inv).rem(&big_g);
        for k in 0..m {
            let add = (&part.coords[k] * &basis).rem(&big_g);
            coords[k] = &coords[k] + &add;
        }
    }
    let coords: Vec<UniPoly> = coords.iter().map(|c| c.rem(&big_g)).collect();
    let coords = integerize(&coords);
    let mut factors = Vec::new();
    for part in parts {
        for fac in &part.factors {
            // Witness partials stay non-vanishing modulo each base.
            let pd = f.partial_derivative(fac.witness_j + 1)?;
            if pd.evaluate_composition(&coords).rem(&fac.base).is_zero() {
                return Err(SpecError::SingularInput);
            }
            factors.push(fac.clone());
        }
    }
    let out = PolySolution {
        modulus: big_g,
        factors,
        coords,
    };
    if !out.verify(f) {
        return Err(SpecError::NotASolution);
    }
    Ok(out)
}

/// Minimal representatives in the residue class: lower every coordinate
/// degree below deg G by repeatedly scaling by the leading coefficient of G
/// and subtracting the matching multiple of G; preserves G | f(u).
pub fn reduce_min(
    f: &MultiPoly,
    y: &[UniPoly],
    g: &UniPoly,
) -> Result<Vec<UniPoly>, SpecError> {
    let dg = g.degree().ok_or_else(|| SpecError::BadInput("zero modulus".into()))?;
    let fy = f.evaluate_composition(y);
    if !fy.rem(g).is_zero() {
        return Err(SpecError::NotASolution);
    }
    let g0 = g.leading();
    let mut u: Vec<UniPoly> = y.to_vec();
    loop {
        let Some(j) = u.iter().position(|c| c.deg0() >= dg && !c.is_zero()) else {
            break;
        };
        if u[j].degree().unwrap() < dg {
            break;
        }
        // Scale every coordinate by g0, then cancel the top term of u_j.
        let c0 = u[j].leading();
        let dj = u[j].degree().unwrap();
        for c in u.iter_mut() {
            *c = c.scale(&g0);
        }
        let shift = UniPoly::monomial(c0, dj - dg);
        u[j] = &u[j] - &(&shift * g);
    }
    // Strip common integer content to tame the g0 powers.
    let mut content = Int::zero();
    let mut all_integral = true;
    for c in &u {
        match c.integer_coeffs() {
            Some(cs) => {
                for x in cs {
                    content = content.gcd(&x);
                }
            }
            None => all_integral = false,
        }
    }
    if all_integral && content > Int::one() {
        let inv = Rat::new(Int::one(), content);
        u = u.iter().map(|c| c.scale(&inv)).collect();
    }
    let fu = f.evaluate_composition(&u);
    if !fu.rem(g).is_zero() {
        return Err(SpecError::NotASolution);
    }
    debug_assert!(u.iter().all(|c| c.deg0() < dg || c.is_zero()));
    Ok(u)
}

/// The quotient form g(x)[t] = f(x1 G + u1, ..., xm G + um) / G together
/// with its corner data; the corner coefficients must equal G^{d-1} times
/// the matching coefficients of f, and the corner sets must agree.
#[derive(Debug, Clone)]
pub struct QuotientForm {
    pub form: MultiPolyT,
    pub corners: Polytope,
}

pub fn quotient_form(
    f: &MultiPoly,
    g: &UniPoly,
    u: &[UniPoly],
) -> Result<QuotientForm, SpecError> {
    let m = f.num_vars();
    if u.len() != m {
        return Err(SpecError::BadInput("one u per variable".into()));
    }
    let dg = g.degree().ok_or_else(|| SpecError::BadInput("zero modulus".into()))?;
    for c in u {
        if !c.is_zero() && c.deg0() >= dg.max(1) && dg > 0 {
            return Err(SpecError::BadInput("u must be reduced below deg G".into()));
        }
    }
    let d = f.total_degree();
    // Per-variable binomial expansions of (x_j G + u_j)^k are assembled
    // term by term.
    let mut expanded = MultiPolyT::zero(m);
    for (e, c) in f.terms() {
        let mut term = MultiPolyT::constant(m, UniPoly::constant(Rat::from_integer(c.clone())));
        for (j, &ej) in e.iter().enumerate() {
            let mut var_lin = MultiPolyT::zero(m);
            let mut unit = vec![0u32; m];
            unit[j] = 1;
            var_lin.add_term(unit, g.clone());
            var_lin.add_term(vec![0; m], u[j].clone());
            for _ in 0..ej {
                term = term.mul(&var_lin);
            }
        }
        for (ee, cc) in term.terms() {
            expanded.add_term(ee.clone(), cc.clone());
        }
    }
    let form = expanded.divide_coeffs_exact(g)?;

    // Corner set of the quotient must equal H_f, and corner coefficients
    // must be G^{d-1} times the corresponding coefficients of f. The
    // quotient's support mixes degrees, so the mixed-sum corner test is
    // used there.
    let h_f = newton_polytope(f)?;
    let support: std::collections::BTreeSet<Vec<u32>> = form.support().into_iter().collect();
    let g_corners = crate::polytope::corner_subset(&support);
    if g_corners != h_f.corners {
        return Err(SpecError::CornerMismatch);
    }
    let g_pow = g.pow(d.saturating_sub(1));
    for h in &h_f.corners {
        let want = g_pow.scale(&Rat::from_integer(f.coeff(h)));
        if form.coeff(h) != want {
            return Err(SpecError::CornerMismatch);
        }
    }
    Ok(QuotientForm {
        form,
        corners: h_f,
    })
}

/// Degree of the minimal polynomial of the coordinate x_j(alpha) over Q,
/// where alpha is a root of F: the squarefree-part degree of the
/// characteristic polynomial of multiplication by x_j on Q[t]/(F).
pub fn coordinate_minpoly_degree(f_of_x: &UniPoly, xj: &UniPoly) -> usize {
    let d = f_of_x.degree().expect("nonzero modulus");
    assert!(d >= 1);
    // Matrix of multiplication by xj in the basis 1, t, ..., t^{d-1}.
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
    for k in 0..d {
        let basis = UniPoly::monomial(Rat::one(), k);
        let prod = (&basis * xj).rem(f_of_x);
        cols.push((0..d).map(|i| prod.coeff(i)).collect());
    }
    let mut mat = vec![vec![Rat::zero(); d]; d];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..d {
            mat[i][k] = col[i].clone();
        }
    }
    let cp = charpoly(&mat);
    let mut coeffs = cp;
    coeffs.push(Rat::one());
    let char_poly = UniPoly::from_rats(coeffs);
    char_poly.squarefree_part().deg0()
}
