use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{AlgebraError, Int, Rat, UniPoly};

/// Sparse multivariate polynomial with integer coefficients: a map from
/// exponent vectors (length `m`) to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    m: usize,
    terms: BTreeMap<Vec<u32>, Int>,
}

impl MultiPoly {
    pub fn zero(m: usize) -> Self {
        MultiPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<u32>, Int)>) -> Self {
        let mut p = MultiPoly::zero(m);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: Int) {
        assert_eq!(exp.len(), self.m, "exponent vector length mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Int::zero);
        *entry += coeff;
        if entry.is_zero() {
            // Re-fetch the key to remove; BTreeMap entry API gives no removal.
            let dead: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(e, _)| e.clone())
                .collect();
            for e in dead {
                self.terms.remove(&e);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Int {
        self.terms.get(exp).cloned().unwrap_or_else(Int::zero)
    }

    /// Total degree: max coordinate sum over the support (0 for the zero
    /// polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// All stored exponent vectors have the same coordinate sum.
    pub fn is_homogeneous(&self) -> bool {
        let mut sums = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match sums.next() {
            None => true,
            Some(first) => sums.all(|s| s == first),
        }
    }

    /// Max exponent of variable `j` (0-based) over the support.
    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Int) -> Int) -> MultiPoly {
        MultiPoly::from_terms(self.m, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.m, other.m);
        let mut out = MultiPoly::zero(self.m);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Formal partial derivative with respect to variable `j` (1-based, per
    /// the x1..xm naming).
    pub fn partial_derivative(&self, j: usize) -> Result<MultiPoly, AlgebraError> {
        if j == 0 || j > self.m {
            return Err(AlgebraError::BadVariable(j, self.m));
        }
        let jj = j - 1;
        let mut out = MultiPoly::zero(self.m);
        for (e, c) in self.terms.iter() {
            if e[jj] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[jj] -= 1;
            out.add_term(e2, c * Int::from(e[jj]));
        }
        Ok(out)
    }

    /// Substitute univariate polynomials for the variables:
    /// `f(x_1(t), ..., x_m(t))`, computed exactly.
    pub fn evaluate_composition(&self, x: &[UniPoly]) -> UniPoly {
        assert_eq!(x.len(), self.m, "need one polynomial per variable");
        // Cache powers per variable.
        let mut pow_cache: Vec<Vec<UniPoly>> = x.iter().map(|p| vec![UniPoly::one(), p.clone()]).collect();
        let mut acc = UniPoly::zero();
        for (e, c) in self.terms.iter() {
            let mut term = UniPoly::constant(Rat::from_integer(c.clone()));
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                let cache = &mut pow_cache[j];
                while cache.len() <= ej as usize {
                    let next = &cache[cache.len() - 1] * &x[j];
                    cache.push(next);
                }
                term = &term * &cache[ej as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Evaluate at an integer point.
    pub fn eval_ints(&self, point: &[Int]) -> Int {
        assert_eq!(point.len(), self.m);
        let mut acc = Int::zero();
        for (e, c) in self.terms.iter() {
            let mut t = c.clone();
            for (j, &ej) in e.iter().enumerate() {
                t *= point[j].pow(ej);
            }
            acc += t;
        }
        acc
    }

    /// Evaluate at a rational point.
    pub fn eval_rats(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.m);
        let mut acc = Rat::zero();
        for (e, c) in self.terms.iter() {
            let mut t = Rat::from_integer(c.clone());
            for (j, &ej) in e.iter().enumerate() {
                t *= point[j].pow(ej as i32);
            }
            acc += t;
        }
        acc
    }

    /// Sum of |coefficients| (used for explicit height bounds).
    pub fn coeff_abs_sum(&self) -> Int {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            let mag = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if mag != Int::from(1) || is_const {
                write!(f, "{}", mag)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "x{}", j + 1)?;
                if ej > 1 {
                    write!(f, "^{}", ej)?;
                }
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial in x1..xm whose coefficients are univariate
/// polynomials in t; the shape of the quotient form `g(x)[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolyT {
    m: usize,
    terms: BTreeMap<Vec<u32>, UniPoly>,
}

impl MultiPolyT {
    pub fn zero(m: usize) -> Self {
        MultiPolyT {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, p: UniPoly) -> Self {
        let mut out = MultiPolyT::zero(m);
        out.add_term(vec![0; m], p);
        out
    }

    pub fn from_multipoly(f: &MultiPoly) -> Self {
        let mut out = MultiPolyT::zero(f.num_vars());
        for (e, c) in f.terms() {
            out.add_term(e.clone(), UniPoly::constant(Rat::from_integer(c.clone())));
        }
        out
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: UniPoly) {
        assert_eq!(exp.len(), self.m);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                let s = &*c + &coeff;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &UniPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> UniPoly {
        self.terms.get(exp).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn mul(&self, other: &MultiPolyT) -> MultiPolyT {
        assert_eq!(self.m, other.m);
        let mut out = MultiPolyT::zero(self.m);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Divide every coefficient exactly by `g`.
    pub fn divide_coeffs_exact(&self, g: &UniPoly) -> Result<MultiPolyT, AlgebraError> {
        let mut out = MultiPolyT::zero(self.m);
        for (e, c) in self.terms.iter() {
            out.add_term(e.clone(), c.divide_exact(g)?);
        }
        Ok(out)
    }

    /// Substitute univariate polynomials for x1..xm, yielding a polynomial
    /// in t alone.
    pub fn evaluate_composition(&self, x: &[UniPoly]) -> UniPoly {
        assert_eq!(x.len(), self.m);
        let mut acc = UniPoly::zero();
        for (e, c) in self.terms.iter() {
            let mut term = c.clone();
            for (j, &ej) in e.iter().enumerate() {
                for _ in 0..ej {
                    term = &term * &x[j];
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}
