//! Factorization over Z: Yun squarefree decomposition, a good prime,
//! Cantor–Zassenhaus mod p, linear Hensel lifting to a Landau–Mignotte
//! modulus and brute-force subset recombination.


use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Int, Rat, UniPoly};

use super::modp::{factor_mod_p_seeded, small_primes_iter, PolyMod};
use super::FactorError;

/// Subset-recombination budget; beyond this the factorization is reported
/// incomplete rather than risking exponential blowup.
pub const RECOMBINATION_CAP: usize = 1 << 12;

/// Degree up to which `factor_over_z` guarantees a complete factorization.
pub const COMPLETE_DEGREE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationZ {
    /// Rational content: input = content * prod(factors^mult) exactly.
    pub content: Rat,
    /// Primitive factors with positive leading coefficients.
    pub factors: Vec<(UniPoly, u32)>,
    /// When false, some listed factors may themselves be reducible.
    pub complete: bool,
}

impl FactorizationZ {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.complete && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Yun's squarefree decomposition of a primitive integer polynomial;
/// returns primitive squarefree parts with multiplicities.
fn squarefree_decomposition(g: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let d = g.derivative();
    let a = g.gcd(&d); // monic over Q
    if a.degree() == Some(0) {
        out.push((g.primitive(), 1));
        return out;
    }
    let mut b = g.divide_exact(&a).expect("gcd divides");
    let mut c = d.divide_exact(&a).expect("gcd divides derivative");
    let mut diff = &c - &b.derivative();
    let mut i = 1u32;
    while b.deg0() > 0 {
        let p = b.gcd(&diff);
        if p.deg0() > 0 {
            out.push((p.primitive(), i));
        }
        b = b.divide_exact(&p).expect("factor divides");
        c = diff.divide_exact(&p).expect("factor divides diff");
        diff = &c - &b.derivative();
        i += 1;
    }
    out
}

/// ceil of the 2-norm of the coefficient vector.
fn norm2_ceil(g: &UniPoly) -> Int {
    let mut sq = Int::zero();
    for c in g.coeffs() {
        let n = c.numer();
        sq += n * n;
    }
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1
    }
}

/// Coefficient vector mod `m`, entries in [0, m).
fn reduce_vec(g: &UniPoly, m: &Int) -> Vec<Int> {
    g.integer_coeffs()
        .expect("integral input")
        .iter()
        .map(|c| c.mod_floor(m))
        .collect()
}

fn trim(v: &mut Vec<Int>) {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
}

fn mul_mod_vec(a: &[Int], b: &[Int], m: &Int) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    trim(&mut out);
    out
}

/// Symmetric representative lift of a mod-m coefficient vector.
fn symmetric_lift(v: &[Int], m: &Int) -> UniPoly {
    let half = m / 2;
    UniPoly::from_bigints(
        &v.iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect::<Vec<_>>(),
    )
}

/// Linear multifactor Hensel lift: given primitive squarefree `s` and its
/// monic factorization mod `p`, lift the monic factors to factors of
/// `s / lc(s)` modulo `p^k` with `p^k >= target`.
fn hensel_lift_factors(
    s: &UniPoly,
    factors_mod_p: &[UniPoly],
    p: u64,
    target: &Int,
) -> (Vec<Vec<Int>>, Int) {
    let pb = Int::from(p);
    let mut pk = pb.clone();
    while &pk < target {
        pk *= &pb;
    }

    // Bezout data mod p: v_i = (prod_{l != i} f_l)^{-1} mod f_i.
    let fp: Vec<PolyMod> = factors_mod_p
        .iter()
        .map(|f| PolyMod::reduce(f, p).expect("factor reduces"))
        .collect();
    let r = fp.len();
    let mut bezout: Vec<PolyMod> = Vec::with_capacity(r);
    for i in 0..r {
        let mut w = PolyMod::one(p);
        for (l, f) in fp.iter().enumerate() {
            if l != i {
                w = w.mul(f).rem(&fp[i]);
            }
        }
        // Invert w mod f_i by extended Euclid over F_p, via UniPoly on lifts.
        let wi = w.to_unipoly();
        let fi = fp[i].to_unipoly();
        let inv = invert_mod_p(&wi, &fi, p);
        bezout.push(PolyMod::reduce(&inv, p).expect("inverse reduces"));
    }

    // Monic version of s modulo p^k.
    let lc = s.leading().numer().clone();
    let lc_inv = mod_inverse(&lc, &pk);
    let s_monic: Vec<Int> = reduce_vec(s, &pk)
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&pk))
        .collect();

    // Current lifted factors, coefficient vectors mod p^j.
    let mut lifted: Vec<Vec<Int>> = factors_mod_p
        .iter()
        .map(|f| reduce_vec(f, &pb))
        .collect();

    let mut pj = pb.clone();
    while &pj < &pk {
        // error e = (s_monic - prod lifted) / p^j mod p
        let mut prod = vec![Int::one()];
        for f in &lifted {
            prod = mul_mod_vec(&prod, f, &pk);
        }
        let n = s_monic.len().max(prod.len());
        let mut e_over = vec![Int::zero(); n];
        for i in 0..n {
            let a = s_monic.get(i).cloned().unwrap_or_else(Int::zero);
            let b = prod.get(i).cloned().unwrap_or_else(Int::zero);
            e_over[i] = (a - b).mod_floor(&pk);
        }
        let e_vec: Vec<u64> = e_over
            .iter()
            .map(|c| {
                let q = c / &pj;
                (q.mod_floor(&pb)).to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect();
        let e_poly = PolyMod::from_coeffs(p, e_vec);
        for i in 0..r {
            let delta = e_poly.mul(&bezout[i]).rem(&fp[i]);
            for (idx, &dc) in delta.coeffs.iter().enumerate() {
                if lifted[i].len() <= idx {
                    lifted[i].resize(idx + 1, Int::zero());
                }
                lifted[i][idx] = (&lifted[i][idx] + Int::from(dc) * &pj).mod_floor(&pk);
            }
        }
        pj *= &pb;
    }
    (lifted, pk)
}

/// Inverse of a mod m for gcd(a, m) = 1.
fn mod_inverse(a: &Int, m: &Int) -> Int {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be a unit");
    e.x.mod_floor(m)
}

/// Inverse of `w` modulo `f` in F_p[x], computed on integer lifts.
fn invert_mod_p(w: &UniPoly, f: &UniPoly, p: u64) -> UniPoly {
    let wm = PolyMod::reduce(w, p).expect("reduce w");
    let fm = PolyMod::reduce(f, p).expect("reduce f");
    // Extended Euclid in F_p[x].
    let (mut r0, mut r1) = (fm.clone(), wm.rem(&fm));
    let (mut t0, mut t1) = (PolyMod::zero(p), PolyMod::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.deg0(), 0, "inputs must be coprime mod p");
    let inv_lead = {
        // scale so r0 == 1
        let l = r0.leading();
        let mut x = 1u64;
        for _ in 0..p - 2 {
            x = (x as u128 * l as u128 % p as u128) as u64;
        }
        x
    };
    t0.scale(inv_lead).to_unipoly()
}

/// Advance `idx` to the next k-combination of {0..n-1} in lexicographic
/// order; false when exhausted.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Pick the smallest prime with p not dividing lc and s squarefree mod p.
fn good_prime(s: &UniPoly) -> u64 {
    let lc = s.leading().numer().clone();
    for p in small_primes_iter().take(200) {
        let pb = Int::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let sm = match PolyMod::reduce(s, p) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let g = sm.gcd(&sm.derivative());
        if g.deg0() == 0 {
            return p;
        }
    }
    // A primitive squarefree integer polynomial is squarefree mod all but
    // finitely many primes; 200 primes is far beyond desk scale.
    unreachable!("no good prime below the scan limit")
}

/// Factor a primitive squarefree integer polynomial of degree >= 1.
/// Returns (irreducible factors, complete).
fn factor_primitive_squarefree(s: &UniPoly, seed: u64) -> (Vec<UniPoly>, bool) {
    let n = s.deg0();
    if n == 1 {
        return (vec![s.clone()], true);
    }
    let p = good_prime(s);
    let modular = factor_mod_p_seeded(s, p, seed).expect("good prime factors");
    debug_assert!(modular.iter().all(|(_, m)| *m == 1));
    if modular.len() == 1 {
        return (vec![s.clone()], true);
    }
    let lc = s.leading().numer().clone();
    // Landau-Mignotte style bound on coefficients of lc * (any factor of s).
    let bound = lc.abs() * (Int::one() << (n as u32 + 1)) * norm2_ceil(s);
    let target = Int::from(2) * &bound + 1;
    let monic_factors: Vec<UniPoly> = modular.into_iter().map(|(f, _)| f).collect();
    let (lifted, pk) = hensel_lift_factors(s, &monic_factors, p, &target);

    // Subset recombination over the lifted factors.
    let mut available: Vec<Vec<Int>> = lifted;
    let mut remaining = s.clone();
    let mut found: Vec<UniPoly> = Vec::new();
    let mut trials = 0usize;
    let mut complete = true;

    'outer: loop {
        let r = available.len();
        if r == 0 || remaining.deg0() == 0 {
            break;
        }
        for size in 1..=r / 2 {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                trials += 1;
                if trials > RECOMBINATION_CAP {
                    complete = false;
                    break 'outer;
                }
                // Candidate: symmetric lift of lc * prod(subset).
                let lc_rem = remaining.leading().numer().clone();
                let mut prod = vec![lc_rem.mod_floor(&pk)];
                for &i in &subset {
                    prod = mul_mod_vec(&prod, &available[i], &pk);
                }
                let cand = symmetric_lift(&prod, &pk).primitive();
                if cand.deg0() >= 1 {
                    if let Ok(q) = remaining.divide_exact(&cand) {
                        found.push(cand);
                        remaining = q.primitive();
                        let mut keep = Vec::new();
                        for (i, f) in available.into_iter().enumerate() {
                            if !subset.contains(&i) {
                                keep.push(f);
                            }
                        }
                        available = keep;
                        continue 'outer;
                    }
                }
                if !next_combination(&mut subset, r) {
                    break;
                }
            }
        }
        break;
    }
    if remaining.deg0() >= 1 {
        found.push(remaining);
    }
    found.sort();
    (found, complete)
}

/// Exact factorization over Z of an integer polynomial of degree >= 1:
/// content times primitive irreducible factors with multiplicities.
/// Complete and certified for degrees up to `COMPLETE_DEGREE_LIMIT`; above
/// that (or past the recombination cap) the result is flagged incomplete.
pub fn factor_over_z_seeded(g: &UniPoly, seed: u64) -> Result<FactorizationZ, FactorError> {
    if g.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if g.deg0() < 1 {
        return Err(FactorError::ConstantInput);
    }
    let (cleared, lambda) = g.clear_denominators();
    let content_int = cleared.int_content().expect("integral after clearing");
    let primitive = cleared.scale(&Rat::new(Int::one(), content_int.clone()));
    let content = Rat::new(content_int, lambda);

    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    let mut complete = true;
    for (part, mult) in squarefree_decomposition(&primitive) {
        if part.deg0() == 0 {
            continue;
        }
        if part.deg0() > COMPLETE_DEGREE_LIMIT {
            factors.push((part, mult));
            complete = false;
            continue;
        }
        let (irr, ok) = factor_primitive_squarefree(&part, seed);
        complete &= ok;
        for f in irr {
            factors.push((f, mult));
        }
    }
    factors.sort();
    // Merge repeated factors across squarefree parts (cannot happen via Yun,
    // but keep the invariant airtight).
    let mut merged: Vec<(UniPoly, u32)> = Vec::new();
    for (f, m) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == f {
                last.1 += m;
                continue;
            }
        }
        merged.push((f, m));
    }
    Ok(FactorizationZ {
        content,
        factors: merged,
        complete,
    })
}
