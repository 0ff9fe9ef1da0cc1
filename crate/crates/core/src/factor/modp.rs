//! Polynomial arithmetic over F_p for word-sized primes, with
//! distinct-degree and Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Int, UniPoly};

use super::FactorError;

/// Dense polynomial over F_p; coefficients reduced to [0, p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMod {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

impl PolyMod {
    pub fn zero(p: u64) -> Self {
        PolyMod { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyMod {
            p,
            coeffs: vec![1],
        }
    }

    pub fn x(p: u64) -> Self {
        PolyMod {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = PolyMod { p, coeffs };
        out.normalize();
        out
    }

    /// Reduce an integer polynomial mod p; errors when p divides the leading
    /// coefficient.
    pub fn reduce(g: &UniPoly, p: u64) -> Result<PolyMod, FactorError> {
        let ints = g
            .integer_coeffs()
            .ok_or_else(|| FactorError::NotIntegral)?;
        let pb = BigInt::from(p);
        let coeffs: Vec<u64> = ints
            .iter()
            .map(|c| {
                let mut r = c % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                r.to_u64().unwrap()
            })
            .collect();
        let out = PolyMod::from_coeffs(p, coeffs);
        if !g.is_zero() && out.degree() != g.degree() {
            return Err(FactorError::BadReduction(p));
        }
        Ok(out)
    }

    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::from_bigints(&self.coeffs.iter().map(|&c| Int::from(c)).collect::<Vec<_>>())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(0)) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &PolyMod) -> PolyMod {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            coeffs[i] = addm(a, b, p);
        }
        PolyMod::from_coeffs(p, coeffs)
    }

    pub fn sub(&self, other: &PolyMod) -> PolyMod {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            coeffs[i] = subm(a, b, p);
        }
        PolyMod::from_coeffs(p, coeffs)
    }

    pub fn mul(&self, other: &PolyMod) -> PolyMod {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return PolyMod::zero(p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = addm(coeffs[i + j], mulm(a, b, p), p);
            }
        }
        PolyMod::from_coeffs(p, coeffs)
    }

    pub fn scale(&self, c: u64) -> PolyMod {
        let p = self.p;
        PolyMod::from_coeffs(p, self.coeffs.iter().map(|&a| mulm(a, c, p)).collect())
    }

    pub fn monic(&self) -> PolyMod {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.leading(), self.p))
    }

    pub fn divrem(&self, b: &PolyMod) -> (PolyMod, PolyMod) {
        let p = self.p;
        assert!(!b.is_zero(), "division by zero polynomial mod p");
        let db = b.degree().unwrap();
        if self.coeffs.len() < db + 1 {
            return (PolyMod::zero(p), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - db;
        let mut quot = vec![0u64; dq + 1];
        let linv = invm(b.leading(), p);
        for k in (0..=dq).rev() {
            let c = mulm(rem[k + db], linv, p);
            if c != 0 {
                for i in 0..=db {
                    rem[k + i] = subm(rem[k + i], mulm(c, b.coeffs[i], p), p);
                }
            }
            quot[k] = c;
        }
        (PolyMod::from_coeffs(p, quot), PolyMod::from_coeffs(p, rem))
    }

    pub fn rem(&self, b: &PolyMod) -> PolyMod {
        self.divrem(b).1
    }

    pub fn gcd(&self, other: &PolyMod) -> PolyMod {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyMod {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return PolyMod::zero(p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % p, p))
            .collect();
        PolyMod::from_coeffs(p, coeffs)
    }

    /// self^e mod modulus with a big-integer exponent.
    pub fn powmod_big(&self, e: &Int, modulus: &PolyMod) -> PolyMod {
        let p = self.p;
        let mut acc = PolyMod::one(p);
        let mut base = self.rem(modulus);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }
}

/// Squarefree decomposition mod p: returns (factor, multiplicity) pairs with
/// squarefree factors; handles p-th power parts.
fn squarefree_decomp_mod(g: &PolyMod) -> Vec<(PolyMod, u32)> {
    let p = g.p;
    let mut out: Vec<(PolyMod, u32)> = Vec::new();
    let mut stack = vec![(g.monic(), 1u32)];
    while let Some((cur, mult)) = stack.pop() {
        if cur.deg0() == 0 {
            continue;
        }
        let d = cur.derivative();
        if d.is_zero() {
            // cur = h(x^p) = h(x)^p
            let step = p as usize;
            let coeffs: Vec<u64> = cur.coeffs.iter().step_by(step).copied().collect();
            let root = PolyMod::from_coeffs(p, coeffs);
            stack.push((root, mult * p as u32));
            continue;
        }
        let mut c = cur.gcd(&d);
        let mut w = cur.divrem(&c).0;
        let mut i = 1u32;
        while w.deg0() > 0 {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if fac.deg0() > 0 {
                out.push((fac.monic(), mult * i));
            }
            w = y.clone();
            c = c.divrem(&y).0;
            i += 1;
        }
        if c.deg0() > 0 {
            stack.push((c, mult));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: returns
/// (product-of-irreducibles-of-degree-d, d) pairs.
fn distinct_degree(g: &PolyMod) -> Vec<(PolyMod, usize)> {
    let p = g.p;
    let mut out = Vec::new();
    let mut h = PolyMod::x(p);
    let mut rest = g.monic();
    let mut d = 0usize;
    while rest.deg0() >= 1 {
        d += 1;
        if 2 * d > rest.deg0() {
            out.push((rest.clone(), rest.deg0()));
            break;
        }
        h = h.powmod_big(&Int::from(p), &rest);
        let diff = h.sub(&PolyMod::x(p));
        let factor = rest.gcd(&diff);
        if factor.deg0() > 0 {
            out.push((factor.clone(), d));
            rest = rest.divrem(&factor).0;
            h = h.rem(&rest);
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting: `g` is a squarefree monic
/// product of irreducibles all of degree `d`.
fn equal_degree(g: &PolyMod, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyMod> {
    let p = g.p;
    if g.deg0() == d {
        return vec![g.monic()];
    }
    let n = g.deg0();
    loop {
        // Random polynomial of degree < n.
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let h = PolyMod::from_coeffs(p, coeffs);
        if h.is_zero() {
            continue;
        }
        let splitter = if p == 2 {
            // Trace map T(h) = h + h^2 + ... + h^{2^{d-1}} mod g.
            let mut acc = h.clone();
            let mut cur = h.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            // h^{(p^d - 1)/2} - 1 mod g.
            let e = (Int::from(p).pow(d as u32) - 1) / 2;
            let hp = h.powmod_big(&e, g);
            hp.sub(&PolyMod::one(p))
        };
        let f1 = g.gcd(&splitter);
        if f1.deg0() > 0 && f1.deg0() < g.deg0() {
            let f2 = g.divrem(&f1).0;
            let mut out = equal_degree(&f1, d, rng);
            out.extend(equal_degree(&f2, d, rng));
            return out;
        }
    }
}

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities; deterministic for a given seed. Requires p prime and
/// p not dividing the leading coefficient.
pub fn factor_mod_p_seeded(
    g: &UniPoly,
    p: u64,
    seed: u64,
) -> Result<Vec<(UniPoly, u32)>, FactorError> {
    if !is_prime_u64(p) {
        return Err(FactorError::NotPrime(p));
    }
    let lead = g.leading();
    if g.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if !lead.is_integer() || (lead.numer() % Int::from(p)).is_zero() {
        return Err(FactorError::BadReduction(p));
    }
    let gm = PolyMod::reduce(g, p)?;
    if gm.deg0() == 0 {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    for (sf, mult) in squarefree_decomp_mod(&gm) {
        for (prod, d) in distinct_degree(&sf) {
            for irr in equal_degree(&prod, d, &mut rng) {
                out.push((irr.monic().to_unipoly(), mult));
            }
        }
    }
    out.sort();
    Ok(out)
}


pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in increasing order, for good-prime scans.
pub fn small_primes_iter() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_unipoly;

    fn fac(s: &str, p: u64) -> Vec<(String, u32)> {
        factor_mod_p_seeded(&parse_unipoly(s).unwrap(), p, 1)
            .unwrap()
            .into_iter()
            .map(|(f, m)| (format!("{}", f), m))
            .collect()
    }

    #[test]
    fn spec_examples() {
        // t^2+1 irreducible mod 3
        assert_eq!(fac("t^2+1", 3), vec![("t^2 + 1".to_string(), 1)]);
        // t^2-1 mod 5 = (t+1)(t+4)
        assert_eq!(
            fac("t^2-1", 5),
            vec![("t + 1".to_string(), 1), ("t + 4".to_string(), 1)]
        );
        // t^2 mod 7 = t^2
        assert_eq!(fac("t^2", 7), vec![("t".to_string(), 2)]);
    }

    #[test]
    fn product_reconstructs_input() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 13, 101] {
            for _ in 0..30 {
                let d = rng.gen_range(1..9);
                let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(0..p as i64)).collect();
                if coeffs[d] % p as i64 == 0 {
                    coeffs[d] = 1;
                }
                let g = UniPoly::from_ints(&coeffs);
                let facs = factor_mod_p_seeded(&g, p, 7).unwrap();
                let mut prod = PolyMod::from_coeffs(p, vec![g.leading().numer().to_u64().unwrap_or(1) % p]);
                for (f, m) in &facs {
                    let fm = PolyMod::reduce(f, p).unwrap();
                    for _ in 0..*m {
                        prod = prod.mul(&fm);
                    }
                }
                let gm = PolyMod::reduce(&g, p).unwrap();
                assert_eq!(prod, gm, "p={} g={}", p, g);
                for (f, _) in &facs {
                    assert!(PolyMod::reduce(f, p).unwrap().deg0() >= 1);
                }
            }
        }
    }

    #[test]
    fn bad_reduction_rejected() {
        let g = parse_unipoly("5*t^2 + 1").unwrap();
        assert!(matches!(
            factor_mod_p_seeded(&g, 5, 1),
            Err(FactorError::BadReduction(5))
        ));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
    }
}
