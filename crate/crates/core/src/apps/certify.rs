//! Local index certificates: a binary form irreducible mod an exactly-once
//! prime divisor of d rules out odd-degree points on d z^2 = f(x, y); a
//! degree-m form irreducible mod p minus p times a unit-constant remainder
//! forces m to divide every point field degree. Both come with brute-force
//! rational-point search probes.


use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{factor_u64, int_sqrt_floor, is_perfect_square, Int, MultiPoly, Rat, UniPoly};
use crate::factor::factor_mod_p;

use super::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// d z^2 = f(x,y) has no points in any odd-degree field.
    NoOddDegree,
    /// Every point field of F(x,y) = 0 has degree divisible by m.
    IndexDividesM,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub prime: u64,
    pub degree_m: u64,
    pub detail: String,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub enum CertifyOutcome {
    Certified(Certificate),
    NotCertified { reason: String },
}

impl CertifyOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }
}

fn binary_form_irreducible_mod_p(f: &UniPoly, p: u64) -> bool {
    // The binary form y^deg f_uni(x/y) is irreducible mod p iff the
    // univariate reduction keeps full degree (no y factor) and is
    // irreducible.
    let lead = f.leading();
    if !lead.is_integer() || (lead.numer() % Int::from(p)).is_zero() {
        return false;
    }
    match factor_mod_p(f, p) {
        Ok(factors) => factors.len() == 1 && factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Certify that d z^2 = f(x, y) has no odd-degree points: search for a
/// prime p with p || d and the binary form f irreducible mod p. The input
/// is the univariate representative f(t) = f(t, 1) of full (even) degree.
pub fn certify_no_odd(f: &UniPoly, d: &Int) -> Result<CertifyOutcome, AppError> {
    let deg = f.degree().ok_or_else(|| AppError::BadInput("zero form".into()))?;
    if deg % 2 != 0 || deg == 0 {
        return Err(AppError::BadInput(
            "binary form must have even degree 2m >= 2".into(),
        ));
    }
    if !f.is_integral() {
        return Err(AppError::BadInput("form must have integer coefficients".into()));
    }
    if d.is_zero() {
        return Err(AppError::BadInput("d must be nonzero".into()));
    }
    let d_abs = d.abs().to_u64().ok_or_else(|| {
        AppError::BadInput("d beyond word size is out of scope for the certifier".into())
    })?;
    let mut tried = Vec::new();
    for (p, e) in factor_u64(d_abs) {
        if e != 1 {
            continue; // need p || d
        }
        tried.push(p);
        if binary_form_irreducible_mod_p(f, p) {
            return Ok(CertifyOutcome::Certified(Certificate {
                kind: CertificateKind::NoOddDegree,
                prime: p,
                degree_m: (deg / 2) as u64,
                detail: format!("f irreducible mod {p} and {p} || {d}"),
                verified: verify_no_odd(f, d, p),
            }));
        }
    }
    Ok(CertifyOutcome::NotCertified {
        reason: format!("no exactly-once prime divisor of {d} keeps f irreducible (tried {tried:?})"),
    })
}

/// Re-check every hypothesis of a NoOddDegree certificate from scratch.
pub fn verify_no_odd(f: &UniPoly, d: &Int, p: u64) -> bool {
    let Some(deg) = f.degree() else { return false };
    if deg % 2 != 0 || deg == 0 || !f.is_integral() {
        return false;
    }
    let pb = Int::from(p);
    let d_abs = d.abs();
    if (&d_abs % &pb).is_zero() && !(&d_abs % (&pb * &pb)).is_zero() {
        binary_form_irreducible_mod_p(f, p)
    } else {
        false
    }
}

/// Certify that every point field of the affine curve F(x, y) = 0 has
/// degree divisible by m: F must decompose as f - p g with f the degree-m
/// homogeneous part irreducible mod p, deg g <= m-1 and p not dividing
/// g(0,0).
pub fn certify_index_m(f_affine: &MultiPoly, p: u64, m: u64) -> Result<CertifyOutcome, AppError> {
    if f_affine.num_vars() != 2 {
        return Err(AppError::BadInput("F must be a polynomial in x, y".into()));
    }
    if m < 2 {
        return Err(AppError::BadInput("m must be at least 2".into()));
    }
    if !crate::factor::is_prime_u64(p) {
        return Err(AppError::BadInput(format!("{p} is not prime")));
    }
    let pb = Int::from(p);
    // Split off the degree-m homogeneous part.
    let mut top = MultiPoly::zero(2);
    let mut rest = MultiPoly::zero(2);
    for (e, c) in f_affine.terms() {
        let s = e.iter().sum::<u32>() as u64;
        if s == m {
            top.add_term(e.clone(), c.clone());
        } else if s < m {
            rest.add_term(e.clone(), c.clone());
        } else {
            return Ok(CertifyOutcome::NotCertified {
                reason: format!("term of degree {s} exceeds m = {m}"),
            });
        }
    }
    // rest must be -p g with g integral and p not dividing g(0,0).
    for (_, c) in rest.terms() {
        if !(c % &pb).is_zero() {
            return Ok(CertifyOutcome::NotCertified {
                reason: "remainder coefficients are not all divisible by p".into(),
            });
        }
    }
    let g00 = -rest.coeff(&[0, 0]) / &pb;
    if (&g00 % &pb).is_zero() {
        return Ok(CertifyOutcome::NotCertified {
            reason: "p divides g(0,0)".into(),
        });
    }
    // f(t, 1) must be irreducible mod p of degree m.
    let f_t = dehomogenize(&top);
    if f_t.degree() != Some(m as usize) {
        return Ok(CertifyOutcome::NotCertified {
            reason: "homogeneous part has no x^m term".into(),
        });
    }
    if !binary_form_irreducible_mod_p(&f_t, p) {
        return Ok(CertifyOutcome::NotCertified {
            reason: format!("degree-{m} part is reducible mod {p}"),
        });
    }
    Ok(CertifyOutcome::Certified(Certificate {
        kind: CertificateKind::IndexDividesM,
        prime: p,
        degree_m: m,
        detail: format!("F = f - {p} g with f irreducible mod {p} of degree {m}, g({p}-unit constant term)"),
        verified: true,
    }))
}

/// f(x, 1) for a binary form given as a 2-variable polynomial.
fn dehomogenize(f: &MultiPoly) -> UniPoly {
    let mut coeffs: Vec<Rat> = Vec::new();
    for (e, c) in f.terms() {
        let i = e[0] as usize;
        if coeffs.len() <= i {
            coeffs.resize(i + 1, Rat::zero());
        }
        coeffs[i] += Rat::from_integer(c.clone());
    }
    UniPoly::from_rats(coeffs)
}

fn isqrt_i128(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Brute-force soundness probe for NoOddDegree: search (x, y) up to the
/// height bound for d z^2 = f(x, y) with integer z (a rational = degree-1 =
/// odd point). Word arithmetic; coefficients and the height must stay
/// within i128 range (always true at probe scale). Returns the first
/// solution found.
pub fn probe_rational_points_no_odd(
    f: &UniPoly,
    d: &Int,
    height: i64,
) -> Option<(Int, Int, Int)> {
    let deg = f.deg0();
    let coeffs: Vec<i128> = f
        .coeffs()
        .iter()
        .map(|c| c.numer().to_i128().expect("probe coefficients fit i128"))
        .collect();
    let dd = d.to_i128().expect("probe modulus fits i128");
    for x in -height..=height {
        let xi = x as i128;
        // Powers of x once per row.
        let mut xpow = vec![1i128; deg + 1];
        for i in 1..=deg {
            xpow[i] = xpow[i - 1] * xi;
        }
        for y in -height..=height {
            if x == 0 && y == 0 {
                continue;
            }
            let yi = y as i128;
            let mut ypow = 1i128;
            let mut v = 0i128;
            // sum c_i x^i y^{deg-i}: iterate i downward so ypow accumulates.
            for i in (0..=deg).rev() {
                if coeffs[i] != 0 {
                    v += coeffs[i] * xpow[i] * ypow;
                }
                ypow *= yi;
            }
            if v % dd != 0 {
                continue;
            }
            let q = v / dd;
            if q < 0 {
                continue;
            }
            let z = isqrt_i128(q);
            if z * z == q {
                return Some((Int::from(x), Int::from(y), Int::from(z)));
            }
        }
    }
    None
}

/// Brute-force soundness probe for IndexDividesM: search projective
/// rational points of the homogenization of F up to the height bound, by
/// solving the z-polynomial exactly for each (x, y). Quadratic (and lower)
/// z-polynomials are solved in word arithmetic; higher degrees fall back
/// to divisor candidates. Returns the first nontrivial (x, y, z) found.
pub fn probe_rational_points_index(
    f_affine: &MultiPoly,
    height: i64,
) -> Option<(Int, Int, Int)> {
    let m = f_affine.total_degree();
    let terms: Vec<(u32, u32, usize, i128)> = f_affine
        .terms()
        .map(|(e, c)| {
            (
                e[0],
                e[1],
                (m - e[0] - e[1]) as usize,
                c.to_i128().expect("probe coefficients fit i128"),
            )
        })
        .collect();
    let mut w = vec![0i128; m as usize + 1];
    for x in -height..=height {
        let xi = x as i128;
        for y in -height..=height {
            let yi = y as i128;
            for v in w.iter_mut() {
                *v = 0;
            }
            for &(a, b, zdeg, c) in &terms {
                w[zdeg] += c * xi.pow(a) * yi.pow(b);
            }
            if w.iter().all(|&v| v == 0) {
                if x != 0 || y != 0 {
                    return Some((Int::from(x), Int::from(y), Int::from(1)));
                }
                continue;
            }
            let deg_w = w.iter().rposition(|&v| v != 0).unwrap_or(0);
            if deg_w <= 2 {
                for z in roots_deg_le2(&w[..=deg_w]) {
                    if !(x == 0 && y == 0 && z == 0) {
                        return Some((Int::from(x), Int::from(y), Int::from(z)));
                    }
                }
            } else {
                let wp = UniPoly::from_bigints(
                    &w[..=deg_w].iter().map(|&v| Int::from(v)).collect::<Vec<_>>(),
                );
                for z in integer_roots_bounded(&wp, height) {
                    if !(x == 0 && y == 0 && z.is_zero()) {
                        return Some((Int::from(x), Int::from(y), z));
                    }
                }
            }
        }
    }
    None
}

/// Integer roots of a polynomial of degree at most 2 in i128 arithmetic.
fn roots_deg_le2(w: &[i128]) -> Vec<i128> {
    match w.len() {
        0 | 1 => vec![],
        2 => {
            let (b, a) = (w[0], w[1]);
            if b % a == 0 {
                vec![-b / a]
            } else {
                vec![]
            }
        }
        _ => {
            let (c, b, a) = (w[0], w[1], w[2]);
            let disc = b * b - 4 * a * c;
            if disc < 0 {
                return vec![];
            }
            let s = isqrt_i128(disc);
            if s * s != disc {
                return vec![];
            }
            let mut out = Vec::new();
            for num in [-b + s, -b - s] {
                if num % (2 * a) == 0 {
                    out.push(num / (2 * a));
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

/// Integer roots of an integer polynomial with |root| <= bound: exact
/// quadratic formula for degree <= 2, divisor candidates otherwise.
fn integer_roots_bounded(w: &UniPoly, bound: i64) -> Vec<Int> {
    let mut out = Vec::new();
    match w.degree() {
        None | Some(0) => {}
        Some(1) => {
            let a = w.coeff(1);
            let b = w.coeff(0);
            let root = -b / a;
            if root.is_integer() && root.numer().abs() <= Int::from(bound) {
                out.push(root.numer().clone());
            }
        }
        Some(2) => {
            let a = w.coeff(2).numer().clone();
            let b = w.coeff(1).numer().clone();
            let c = w.coeff(0).numer().clone();
            let disc = &b * &b - Int::from(4) * &a * &c;
            if !disc.is_negative() && is_perfect_square(&disc) {
                let s = int_sqrt_floor(&disc);
                for num in [-&b + &s, -&b - &s] {
                    let den = Int::from(2) * &a;
                    let (q, r) = num.div_rem(&den);
                    if r.is_zero() && q.abs() <= Int::from(bound) {
                        out.push(q);
                    }
                }
            }
        }
        Some(_) => {
            // Roots divide the constant term (after stripping powers of t).
            let mut base = w.clone();
            while base.coeff(0).is_zero() {
                out.push(Int::zero());
                base = base.divide_exact(&UniPoly::t()).expect("t divides");
                if base.is_zero() {
                    return out;
                }
            }
            let c0 = base.coeff(0).numer().abs();
            if let Some(c) = c0.to_u64() {
                let mut divisors = vec![1u64];
                for (p, e) in factor_u64(c) {
                    let mut next = Vec::new();
                    for d in &divisors {
                        let mut pe = 1u64;
                        for _ in 0..=e {
                            if let Some(v) = d.checked_mul(pe) {
                                next.push(v);
                            }
                            pe = pe.saturating_mul(p);
                        }
                    }
                    divisors = next;
                }
                divisors.sort_unstable();
                divisors.dedup();
                for d in divisors {
                    if d as i64 > bound {
                        continue;
                    }
                    for cand in [Int::from(d), -Int::from(d)] {
                        if base.eval(&Rat::from_integer(cand.clone())).is_zero() {
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
