use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Floor of the integer square root of a nonnegative integer.
pub fn int_sqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "int_sqrt_floor of negative value");
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Floor of the k-th root of a nonnegative integer, by binary search.
pub fn int_nth_root_floor(n: &BigInt, k: u32) -> BigInt {
    assert!(k >= 1);
    assert!(!n.is_negative());
    if k == 1 || n.is_zero() || n.is_one() {
        return n.clone();
    }
    if k == 2 {
        return n.sqrt();
    }
    let bits = n.bits();
    let mut hi = BigInt::one() << (bits / k as u64 + 2);
    let mut lo = BigInt::zero();
    while &lo < &hi {
        let mid: BigInt = (&lo + &hi + 1) >> 1;
        if mid.pow(k) <= *n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Smallest integer `>= T^{p/q}` for T >= 1 and p/q > 0, computed exactly.
pub fn pow_ceil_rational(t: u64, p: u64, q: u64) -> BigInt {
    assert!(q >= 1 && t >= 1);
    if p == 0 {
        return BigInt::one();
    }
    let tp = BigInt::from(t).pow(p as u32);
    let root = int_nth_root_floor(&tp, q as u32);
    if root.pow(q as u32) == tp {
        root
    } else {
        root + 1
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn gcd_slice_u64(v: &[u64]) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc.gcd(&x))
}

/// Deterministic 64-bit mix used to derive per-item seeds from a base seed.
pub fn mix_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base
        .wrapping_add(a.wrapping_mul(0x9e3779b97f4a7c15))
        .wrapping_add(b.wrapping_mul(0xbf58476d1ce4e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Trial-division factorization for word-sized integers.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn radical_u64(n: u64) -> u64 {
    factor_u64(n).iter().map(|(p, _)| p).product()
}
