use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::bareiss_det;
use super::{AlgebraError, Int, Rat};

/// Dense univariate polynomial with exact rational coefficients,
/// `coeffs[i]` being the coefficient of `t^i`. The zero polynomial is the
/// empty coefficient vector; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn from_rats(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::from_rats(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[Int]) -> Self {
        UniPoly::from_rats(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention that the zero polynomial has degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &Int) -> Rat {
        self.eval(&Rat::from_integer(x.clone()))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
            .collect();
        UniPoly::from_rats(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::from_rats(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `t -> t + a`.
    pub fn shift(&self, a: &Rat) -> UniPoly {
        let mut acc = UniPoly::zero();
        let lin = UniPoly::from_rats(vec![a.clone(), Rat::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &lin + UniPoly::constant(c.clone());
        }
        acc
    }

    /// Substitute `t -> 1/t` and clear denominators: `t^n * p(1/t)` for
    /// `n = deg p`, i.e. reverse the coefficients.
    pub fn reversed(&self) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::from_rats(coeffs)
    }

    /// Quotient and remainder over the rationals; `b` must be nonzero.
    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let db = b.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < db + 1 {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let dq = rem.len() - 1 - db;
        let mut quot = vec![Rat::zero(); dq + 1];
        let lb = b.leading();
        for k in (0..=dq).rev() {
            let c = rem[k + db].clone() / &lb;
            if !c.is_zero() {
                for i in 0..=db {
                    let delta = &c * &b.coeffs[i];
                    rem[k + i] -= delta;
                }
            }
            quot[k] = c;
        }
        Ok((UniPoly::from_rats(quot), UniPoly::from_rats(rem)))
    }

    pub fn rem(&self, modulus: &UniPoly) -> UniPoly {
        self.divrem(modulus).expect("nonzero modulus").1
    }

    /// Exact division; errors with `NotDivisible` on a nonzero remainder.
    pub fn divide_exact(&self, b: &UniPoly) -> Result<UniPoly, AlgebraError> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd over the rationals: returns (g, s, v) with
    /// `s*self + v*other = g` and `g` monic (or zero).
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading();
        let inv = Rat::one() / lead;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `modulus`, when the two are coprime.
    pub fn inverse_mod(&self, modulus: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.rem(modulus).xgcd(modulus);
        if g.degree() == Some(0) {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.leading();
        self.scale(&inv)
    }

    /// Squarefree part over Q (self / gcd(self, self')).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.deg0() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.divide_exact(&g).expect("gcd divides")
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Lcm of the coefficient denominators.
    pub fn denominator_lcm(&self) -> Int {
        let mut l = Int::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }

    /// Scale by the denominator lcm to get integer coefficients; returns
    /// (integer-coefficient polynomial, the scale factor used).
    pub fn clear_denominators(&self) -> (UniPoly, Int) {
        let l = self.denominator_lcm();
        (self.scale(&Rat::from_integer(l.clone())), l)
    }

    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// Content of an integer-coefficient polynomial: gcd of coefficients with
    /// the sign of the leading coefficient.
    pub fn int_content(&self) -> Option<Int> {
        let cs = self.integer_coeffs()?;
        if cs.is_empty() {
            return Some(Int::zero());
        }
        let mut g = Int::zero();
        for c in &cs {
            g = g.gcd(c);
        }
        if cs.last().unwrap().is_negative() {
            g = -g;
        }
        Some(g)
    }

    /// Primitive part with positive leading coefficient (integer inputs).
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let (p, _) = self.clear_denominators();
        let c = p.int_content().unwrap();
        p.scale(&Rat::new(Int::one(), c))
    }

    /// Height: max |coefficient| (exact rational).
    pub fn height(&self) -> Rat {
        let mut h = Rat::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Resultant of `self` and `other` over the rationals, by fraction-free
    /// elimination on the Sylvester matrix of the denominator-cleared inputs.
    pub fn resultant(&self, other: &UniPoly) -> Rat {
        let n = match self.degree() {
            Some(n) => n,
            None => return Rat::zero(),
        };
        let m = match other.degree() {
            Some(m) => m,
            None => return Rat::zero(),
        };
        if n == 0 {
            return self.leading().pow(m as i32);
        }
        if m == 0 {
            return other.leading().pow(n as i32);
        }
        let (a, la) = self.clear_denominators();
        let (b, lb) = other.clear_denominators();
        let ai = a.integer_coeffs().unwrap();
        let bi = b.integer_coeffs().unwrap();
        let size = n + m;
        let mut mat = vec![vec![Int::zero(); size]; size];
        for row in 0..m {
            for (k, c) in ai.iter().enumerate() {
                mat[row][row + (n - k)] = c.clone();
            }
        }
        for row in 0..n {
            for (k, c) in bi.iter().enumerate() {
                mat[m + row][row + (m - k)] = c.clone();
            }
        }
        let det = bareiss_det(mat);
        // Res(la*f, lb*g) = la^m lb^n Res(f, g)
        let scale = Rat::from_integer(la.pow(m as u32) * lb.pow(n as u32));
        Rat::from_integer(det) / scale
    }

    /// Discriminant: `(-1)^{D(D-1)/2} Res(g, g') / lc(g)`, exact.
    pub fn discriminant(&self) -> Result<Rat, AlgebraError> {
        let d = self.degree().ok_or(AlgebraError::ConstantPolynomial)?;
        if d == 0 {
            return Err(AlgebraError::ConstantPolynomial);
        }
        if d == 1 {
            return Ok(Rat::one());
        }
        let res = self.resultant(&self.derivative());
        let sign = if (d * (d - 1) / 2) % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        Ok(sign * res / self.leading())
    }

    /// Explicit constant C_D with |disc(g)| <= C_D * ||g||^{2D-2} for every
    /// integer polynomial of degree D, from Hadamard's bound applied to the
    /// two first-column cofactors of the Sylvester matrix of (g, g').
    /// Returned squared so the comparison stays in integers:
    /// disc^2 <= C_D^2 * ||g||^{4D-4} with C_D^2 = 4 (D+1)^{D-1} D^{3D}.
    pub fn disc_bound_sq(degree: usize, height: &Int) -> Int {
        let d = degree as u32;
        if d <= 1 {
            return Int::from(4);
        }
        let c_sq = Int::from(4) * Int::from(d + 1).pow(d - 1) * Int::from(d).pow(3 * d);
        c_sq * height.pow(4 * d - 4)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_rats(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_rats(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_rats(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_rats(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_int;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(coeffs)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, -2, -3]);
        assert!((&a + &b).is_zero());
        assert_eq!(a.degree(), Some(2));
        assert_eq!((&a * &UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn divide_exact_examples() {
        // (t^2 - 2) / (t^2 - 2) = 1
        let g = p(&[-2, 0, 1]);
        assert_eq!(g.divide_exact(&g).unwrap(), UniPoly::one());
        // t^6 - 12 t^4 + 36 t^2 - 32 = (t^2-2)^2 (t^2-8)
        let big = p(&[-32, 0, 36, 0, -12, 0, 1]);
        let q = big.divide_exact(&g.pow(2)).unwrap();
        assert_eq!(q, p(&[-8, 0, 1]));
        assert_eq!(&q * &g.pow(2), big);
        // t^2 + 1 not divisible by t + 1
        let err = p(&[1, 0, 1]).divide_exact(&p(&[1, 1]));
        assert_eq!(err.unwrap_err(), AlgebraError::NotDivisible);
    }

    #[test]
    fn divide_round_trip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let da = rng.gen_range(0..6);
            let db = rng.gen_range(0..4);
            let a = UniPoly::from_rats(
                (0..=da)
                    .map(|_| rat_from_int(rng.gen_range(-9..=9)))
                    .collect(),
            );
            let mut b = UniPoly::from_rats(
                (0..=db)
                    .map(|_| rat_from_int(rng.gen_range(-9..=9)))
                    .collect(),
            );
            if b.is_zero() {
                b = UniPoly::one();
            }
            let prod = &a * &b;
            assert_eq!(prod.divide_exact(&b).unwrap(), a);
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[-2, 0, 1]).discriminant().unwrap(), rat_from_int(8));
        assert_eq!(p(&[1, 1, 1]).discriminant().unwrap(), rat_from_int(-3));
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant().unwrap(), rat_from_int(-23));
    }

    #[test]
    fn discriminant_matches_naive_resultant() {
        // Independent oracle: cofactor-expansion determinant of the Sylvester
        // matrix, on a handful of small polynomials.
        use num_traits::ToPrimitive;
        fn naive_det(m: Vec<Vec<i64>>) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0i64;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * m[0][j] * naive_det(minor);
            }
            acc
        }
        for coeffs in [
            vec![-1i64, -1, 0, 1],
            vec![3, 1, 1],
            vec![2, -1, 0, 0, 1],
            vec![-2, 0, 1],
        ] {
            let g = p(&coeffs);
            let gp = g.derivative();
            let n = g.degree().unwrap();
            let m = gp.degree().unwrap();
            let size = n + m;
            let mut mat = vec![vec![0i64; size]; size];
            let gc: Vec<i64> = g
                .coeffs()
                .iter()
                .map(|c| c.numer().to_i64().unwrap())
                .collect();
            let gpc: Vec<i64> = gp
                .coeffs()
                .iter()
                .map(|c| c.numer().to_i64().unwrap())
                .collect();
            for row in 0..m {
                for (k, c) in gc.iter().enumerate() {
                    mat[row][row + (n - k)] = *c;
                }
            }
            for row in 0..n {
                for (k, c) in gpc.iter().enumerate() {
                    mat[m + row][row + (m - k)] = *c;
                }
            }
            let res = naive_det(mat);
            assert_eq!(
                g.resultant(&gp),
                rat_from_int(res),
                "resultant mismatch for {:?}",
                coeffs
            );
        }
    }

    #[test]
    fn disc_bound_holds_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let d = rng.gen_range(2..=7);
            let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-50..=50)).collect();
            if coeffs[d] == 0 {
                coeffs[d] = 1;
            }
            let g = p(&coeffs);
            let disc = g.discriminant().unwrap();
            assert!(disc.is_integer());
            let h = g.height();
            let disc_sq = disc.numer() * disc.numer();
            let bound = UniPoly::disc_bound_sq(d, h.numer());
            assert!(disc_sq <= bound, "bound failed for {:?}", coeffs);
        }
    }

    #[test]
    fn xgcd_inverse_mod() {
        let modulus = p(&[-2, 0, 1]); // t^2 - 2
        let a = p(&[0, 2]); // 2t
        let inv = a.inverse_mod(&modulus).unwrap();
        let prod = (&a * &inv).rem(&modulus);
        assert_eq!(prod, UniPoly::one());
    }

    #[test]
    fn shift_and_reverse() {
        let g = p(&[1, 0, 1]); // t^2 + 1
        let s = g.shift(&rat_from_int(2)); // (t+2)^2 + 1 = t^2 + 4t + 5
        assert_eq!(s, p(&[5, 4, 1]));
        assert_eq!(p(&[1, 2, 3]).reversed(), p(&[3, 2, 1]));
    }
}
