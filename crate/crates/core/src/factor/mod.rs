//! Irreducibility decisions and factorizations of univariate integer
//! polynomials: complete over F_p, and over Q at desk-scale degrees via
//! Zassenhaus. This is the oracle behind every "f(x(t)) is irreducible"
//! check and behind the descent steps.

mod modp;
mod zassenhaus;

pub use modp::{factor_mod_p_seeded, is_prime_u64, small_primes_iter, PolyMod};
pub use zassenhaus::{factor_over_z_seeded, FactorizationZ, COMPLETE_DEGREE_LIMIT};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Int, Rat, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides the leading coefficient")]
    BadReduction(u64),
    #[error("the zero polynomial has no factorization")]
    ZeroInput,
    #[error("constant polynomials are not factored")]
    ConstantInput,
    #[error("polynomial has non-integer coefficients")]
    NotIntegral,
}

/// Three-valued irreducibility verdict with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible { witness: String },
    Factored { content: Rat, factors: Vec<(UniPoly, u32)> },
    Unknown { note: String },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }

    pub fn is_factored(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Factored { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Unknown { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            IrreducibilityVerdict::Irreducible { witness } => format!("irreducible ({witness})"),
            IrreducibilityVerdict::Factored { factors, .. } => {
                format!("factored into {} part(s)", factors.len())
            }
            IrreducibilityVerdict::Unknown { note } => format!("unknown ({note})"),
        }
    }
}

/// Work budget for `is_irreducible_q_effort`.
#[derive(Debug, Clone, Copy)]
pub struct Effort {
    /// Good primes to try in the degree-pattern screen.
    pub pattern_primes: usize,
    /// Whether to fall through to the full Zassenhaus factorization.
    pub full_factorization: bool,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            pattern_primes: 4,
            full_factorization: true,
        }
    }
}

impl Effort {
    /// Screen-only budget: mod-p patterns, no integer factorization.
    pub fn screen_only() -> Self {
        Effort {
            pattern_primes: 4,
            full_factorization: false,
        }
    }
}

/// Complete factorization over F_p with the default derivation of the
/// splitting seed from the polynomial.
pub fn factor_mod_p(g: &UniPoly, p: u64) -> Result<Vec<(UniPoly, u32)>, FactorError> {
    factor_mod_p_seeded(g, p, 0x5eed)
}

pub fn factor_over_z(g: &UniPoly) -> Result<FactorizationZ, FactorError> {
    factor_over_z_seeded(g, 0x5eed)
}

/// Subset sums of the mod-p factor degrees: the possible degrees of a
/// factor over Q, as a bitmask.
fn degree_pattern(factors: &[(UniPoly, u32)]) -> u64 {
    let mut mask: u64 = 1; // degree 0 is always attainable
    for (f, m) in factors {
        for _ in 0..*m {
            let d = f.deg0();
            if d >= 64 {
                continue;
            }
            mask |= mask << d;
        }
    }
    mask
}

/// Decide irreducibility over Q within an explicit budget; never claims
/// `Irreducible` falsely, and `Unknown` is a valid outcome.
///
/// Pipeline: content and squarefree screen, then mod-p degree-pattern
/// intersection over good primes (a pattern of `{deg g}` at a single prime,
/// or an empty proper-divisor intersection, proves irreducibility), then the
/// full integer factorization when the budget allows.
pub fn is_irreducible_q_effort(g: &UniPoly, effort: Effort) -> IrreducibilityVerdict {
    let Some(deg) = g.degree() else {
        return IrreducibilityVerdict::Unknown {
            note: "zero polynomial".into(),
        };
    };
    if deg == 0 {
        return IrreducibilityVerdict::Unknown {
            note: "constant polynomial".into(),
        };
    }
    let primitive = g.primitive();
    if deg == 1 {
        return IrreducibilityVerdict::Irreducible {
            witness: "degree 1".into(),
        };
    }

    // Squarefree screen: a repeated factor is an immediate factorization.
    let sq_gcd = primitive.gcd(&primitive.derivative());
    if sq_gcd.deg0() > 0 {
        if let Ok(f) = factor_over_z(g) {
            return verdict_from_factorization(f);
        }
    }

    // t = 0 root.
    if primitive.coeff(0).is_zero() {
        if let Ok(f) = factor_over_z(g) {
            return verdict_from_factorization(f);
        }
    }

    // Degree patterns over the first few good primes.
    let mut intersect: u64 = !0;
    let mut primes_used = Vec::new();
    let lc = primitive.leading().numer().clone();
    for p in small_primes_iter().take(60) {
        if primes_used.len() >= effort.pattern_primes {
            break;
        }
        if (&lc % Int::from(p)).is_zero() {
            continue;
        }
        let Ok(pm) = PolyMod::reduce(&primitive, p) else {
            continue;
        };
        if pm.gcd(&pm.derivative()).deg0() != 0 {
            continue; // not squarefree mod p: degree pattern unreliable
        }
        let Ok(factors) = factor_mod_p(&primitive, p) else {
            continue;
        };
        if factors.len() == 1 && factors[0].1 == 1 {
            return IrreducibilityVerdict::Irreducible {
                witness: format!("irreducible mod p={p}"),
            };
        }
        intersect &= degree_pattern(&factors);
        primes_used.push(p);
        let proper: u64 = intersect & !(1u64 | (1u64 << deg.min(63)));
        if proper == 0 && deg < 63 {
            return IrreducibilityVerdict::Irreducible {
                witness: format!("empty factor-degree intersection over primes {primes_used:?}"),
            };
        }
    }

    if !effort.full_factorization {
        return IrreducibilityVerdict::Unknown {
            note: format!("pattern screen inconclusive over primes {primes_used:?}"),
        };
    }

    match factor_over_z(g) {
        Ok(f) if f.complete => verdict_from_factorization(f),
        Ok(f) => IrreducibilityVerdict::Unknown {
            note: format!(
                "incomplete factorization ({} parts, degree limit {})",
                f.factors.len(),
                COMPLETE_DEGREE_LIMIT
            ),
        },
        Err(e) => IrreducibilityVerdict::Unknown {
            note: format!("factorization failed: {e}"),
        },
    }
}

fn verdict_from_factorization(f: FactorizationZ) -> IrreducibilityVerdict {
    if f.is_irreducible() {
        IrreducibilityVerdict::Irreducible {
            witness: "full integer factorization".into(),
        }
    } else if f.complete {
        IrreducibilityVerdict::Factored {
            content: f.content,
            factors: f.factors,
        }
    } else {
        IrreducibilityVerdict::Unknown {
            note: "incomplete factorization".into(),
        }
    }
}

/// Decide irreducibility over Q with the default budget.
pub fn is_irreducible_q(g: &UniPoly) -> IrreducibilityVerdict {
    is_irreducible_q_effort(g, Effort::default())
}
