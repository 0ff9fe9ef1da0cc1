//! Experiment orchestration: seeded field-counting runs over a height
//! ladder with two-sided field dedup proxies, the image-collision probe,
//! and discriminant bookkeeping for specializations.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{is_perfect_square, mix_seed, rat, Int, MultiPoly, Rat, UniPoly};
use crate::degrees::prop_euclid;
use crate::exp::{exp_j_lower, LowerStrategy};
use crate::polytope::newton_polytope;
use crate::specialize::random_spec;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("enumeration bounds too large ({0} tuples exceed the cap {1})")]
    BoundsTooLarge(u64, u64),
    #[error("input polynomial is not certified irreducible")]
    NotIrreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DedupPolicy {
    /// Distinct normalized polynomials (upper proxy for field count).
    NormalizedPoly,
    /// Buckets keyed by (degree, bounded squarefree kernel of the
    /// polynomial discriminant) (collision-merging lower proxy).
    DiscBucket,
    Both,
}

/// Reproducible experiment description: identical config and seed yield
/// identical output.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub form: MultiPoly,
    /// Explicit degree vector (gcd must be 1), or None to derive one from
    /// `target_degree` via the corner construction.
    pub degrees: Option<Vec<u64>>,
    pub target_degree: Option<u64>,
    pub exponents: Vec<Rat>,
    pub t_ladder: Vec<u64>,
    pub seed: u64,
    pub budget: usize,
    /// 0-based coordinate subset J for the exponent comparison.
    pub j_subset: Vec<usize>,
    pub dedup: DedupPolicy,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountRecord {
    pub t: u64,
    pub attempts: usize,
    pub irreducible: usize,
    pub unknown: usize,
    pub distinct_polys: usize,
    pub disc_buckets: usize,
    pub max_disc: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunOutput {
    pub degrees: Vec<u64>,
    pub records: Vec<CountRecord>,
    /// Least-squares slope of log(distinct) against log(max disc).
    pub fitted_exponent: Option<f64>,
    /// Half of the certified Exp_J lower bound, for comparison.
    pub half_exp_lower: String,
    pub note: String,
}

/// Bounded squarefree kernel: strip squared prime factors found by trial
/// division below 10^4, then drop the remainder when it is a perfect
/// square. Deterministic, so equal polynomials always share a bucket.
pub fn squarefree_kernel_bounded(n: &Int) -> Int {
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    let mut kernel = Int::one();
    let mut p = 2u64;
    while p < 10_000 {
        let pb = Int::from(p);
        if (&n % &pb).is_zero() {
            let mut e = 0u32;
            while (&n % &pb).is_zero() {
                n /= &pb;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !is_perfect_square(&n) {
        kernel *= &n;
    }
    kernel
}

fn normalize_poly(f: &UniPoly) -> UniPoly {
    f.primitive()
}

/// Derive a gcd-1 degree vector for a target degree from the first corner
/// whose gcd divides it, steering along the corner's interior direction.
pub fn degrees_for_target(f: &MultiPoly, target: u64) -> Result<Vec<u64>, HarnessError> {
    let h_set = newton_polytope(f).map_err(|e| HarnessError::Config(e.to_string()))?;
    for h in &h_set.corners {
        let gh = h_set.corner_gcd(h).unwrap_or(0);
        if gh == 0 || target % gh != 0 {
            continue;
        }
        // Interior direction: the cached integer witness, nudged strictly
        // positive.
        let w = &h_set.witnesses[h];
        let r: Vec<Rat> = w.iter().map(|&v| rat(v as i64, 1) + rat(1, 1000)).collect();
        if let Ok(d) = prop_euclid(&h_set, h, &r, target) {
            return Ok(d);
        }
    }
    Err(HarnessError::Config(format!(
        "no corner construction reaches target degree {target}"
    )))
}

/// Field-counting run: for each T in the ladder, draw `budget`
/// specializations, count irreducible outcomes, distinct normalized
/// polynomials and discriminant buckets, and fit the growth exponent
/// against X = max |disc|.
pub fn run_count(cfg: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let m = cfg.form.num_vars();
    if cfg.exponents.len() != m {
        return Err(HarnessError::Config("one exponent per variable".into()));
    }
    if cfg.j_subset.is_empty() || cfg.j_subset.iter().any(|&j| j >= m) {
        return Err(HarnessError::Config("J must be a nonempty subset of coordinates".into()));
    }
    if cfg.t_ladder.is_empty() {
        return Err(HarnessError::Config("empty T ladder".into()));
    }
    let degrees = match (&cfg.degrees, cfg.target_degree) {
        (Some(d), _) => {
            if d.len() != m {
                return Err(HarnessError::Config("one degree per variable".into()));
            }
            let g = d.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(HarnessError::Config(format!(
                    "degree vector gcd must be 1, got {g}"
                )));
            }
            d.clone()
        }
        (None, Some(target)) => degrees_for_target(&cfg.form, target)?,
        (None, None) => {
            return Err(HarnessError::Config(
                "either degrees or target_degree is required".into(),
            ))
        }
    };

    let h_set = newton_polytope(&cfg.form).map_err(|e| HarnessError::Config(e.to_string()))?;
    let exp_bound = exp_j_lower(
        &h_set,
        &cfg.j_subset,
        &LowerStrategy::Numeric {
            seed: cfg.seed,
            starts: 4,
        },
    )
    .map_err(|e| HarnessError::Config(e.to_string()))?;
    let half_exp = exp_bound.value / Rat::from_integer(Int::from(2));

    let mut records = Vec::with_capacity(cfg.t_ladder.len());
    for (ti, &t) in cfg.t_ladder.iter().enumerate() {
        let start = Instant::now();
        let draws: Vec<(UniPoly, bool, bool, bool)> = (0..cfg.budget)
            .into_par_iter()
            .map(|i| {
                let seed = mix_seed(cfg.seed, ti as u64, i as u64);
                let rec = random_spec(&cfg.form, &degrees, &cfg.exponents, t, seed);
                let irr = rec.verdict_f.is_irreducible() && !rec.degenerate;
                let unk = rec.verdict_f.is_unknown();
                (rec.f_of_x, irr, unk, rec.degenerate)
            })
            .collect();
        let mut distinct: HashMap<UniPoly, ()> = HashMap::new();
        let mut buckets: HashMap<(usize, Int), ()> = HashMap::new();
        let mut irreducible = 0usize;
        let mut unknown = 0usize;
        let mut max_disc = Int::zero();
        for (fx, irr, unk, _) in &draws {
            if *unk {
                unknown += 1;
                continue;
            }
            if !*irr {
                continue;
            }
            irreducible += 1;
            let norm = normalize_poly(fx);
            let disc = norm
                .discriminant()
                .expect("irreducible polynomials have degree >= 1")
                .numer()
                .abs();
            if disc > max_disc {
                max_disc = disc.clone();
            }
            buckets.insert((norm.deg0(), squarefree_kernel_bounded(&disc)), ());
            distinct.insert(norm, ());
        }
        records.push(CountRecord {
            t,
            attempts: cfg.budget,
            irreducible,
            unknown,
            distinct_polys: distinct.len(),
            disc_buckets: buckets.len(),
            max_disc: max_disc.to_string(),
            elapsed_ms: start.elapsed().as_millis(),
        });
    }

    // Least-squares fit of log(distinct) on log(X).
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| {
            let x: f64 = r.max_disc.parse::<f64>().ok()?;
            if r.distinct_polys == 0 || x < 2.0 {
                return None;
            }
            Some((x.ln(), (r.distinct_polys as f64).ln()))
        })
        .collect();
    let fitted = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        if denom.abs() > 1e-12 {
            Some((n * sxy - sx * sy) / denom)
        } else {
            None
        }
    } else {
        None
    };

    Ok(RunOutput {
        degrees,
        records,
        fitted_exponent: fitted,
        half_exp_lower: half_exp.to_string(),
        note: "finite-T growth only; the asymptotic claim is not verifiable at desk scale".into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RihReport {
    pub total_tuples: u64,
    pub distinct_images: u64,
    /// multiplicity -> how many images attained it
    pub histogram: BTreeMap<u64, u64>,
    pub max_multiplicity: u64,
    /// Fraction of images hit more than once.
    pub share_hit_multiple: f64,
}

const RIH_CAP: u64 = 2_000_000;

/// Enumerate every coordinate tuple with deg <= deg_bound and coefficients
/// in [-coeff_bound, coeff_bound], and histogram how often each image
/// polynomial f(x(t)) repeats.
pub fn rih_probe(
    f: &MultiPoly,
    deg_bound: usize,
    coeff_bound: i64,
) -> Result<RihReport, HarnessError> {
    if coeff_bound < 0 {
        return Ok(RihReport {
            total_tuples: 0,
            distinct_images: 0,
            histogram: BTreeMap::new(),
            max_multiplicity: 0,
            share_hit_multiple: 0.0,
        });
    }
    let m = f.num_vars();
    let slots = m * (deg_bound + 1);
    let base = (2 * coeff_bound + 1) as u64;
    let mut total: u64 = 1;
    for _ in 0..slots {
        total = total
            .checked_mul(base)
            .filter(|&v| v <= RIH_CAP)
            .ok_or(HarnessError::BoundsTooLarge(u64::MAX, RIH_CAP))?;
    }
    let mut counts: HashMap<UniPoly, u64> = HashMap::new();
    let mut digits = vec![0u64; slots];
    loop {
        let coords: Vec<UniPoly> = (0..m)
            .map(|j| {
                let coeffs: Vec<i64> = (0..=deg_bound)
                    .map(|k| digits[j * (deg_bound + 1) + k] as i64 - coeff_bound)
                    .collect();
                UniPoly::from_ints(&coeffs)
            })
            .collect();
        *counts.entry(f.evaluate_composition(&coords)).or_insert(0) += 1;
        // Increment the mixed-radix counter.
        let mut i = 0;
        loop {
            if i == slots {
                break;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == slots {
            break;
        }
    }
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut max_mult = 0u64;
    let mut multi = 0u64;
    for &c in counts.values() {
        *histogram.entry(c).or_insert(0) += 1;
        max_mult = max_mult.max(c);
        if c > 1 {
            multi += 1;
        }
    }
    let distinct = counts.len() as u64;
    Ok(RihReport {
        total_tuples: total,
        distinct_images: distinct,
        histogram,
        max_multiplicity: max_mult,
        share_hit_multiple: if distinct == 0 {
            0.0
        } else {
            multi as f64 / distinct as f64
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscReport {
    pub disc: String,
    pub degree: usize,
    pub height: String,
    pub bound_holds: bool,
}

/// Exact polynomial discriminant of a certified-irreducible specialization,
/// with the explicit Hadamard-constant bound check
/// disc^2 <= C_D^2 ||F||^{4D-4}. The field discriminant divides this and is
/// not computed.
pub fn disc_of_spec(f_of_x: &UniPoly) -> Result<DiscReport, HarnessError> {
    if !crate::factor::is_irreducible_q(f_of_x).is_irreducible() {
        return Err(HarnessError::NotIrreducible);
    }
    let d = f_of_x.deg0();
    let disc = f_of_x.discriminant().expect("degree >= 1");
    let height = f_of_x.height();
    let disc_int = disc.numer().clone();
    let bound = UniPoly::disc_bound_sq(d, height.numer());
    Ok(DiscReport {
        disc: disc_int.to_string(),
        degree: d,
        height: height.numer().to_string(),
        bound_holds: &disc_int * &disc_int <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_multipoly, parse_unipoly, rat_from_int};

    fn quadric() -> MultiPoly {
        parse_multipoly("x1^2 - 2*x2^2 + x1*x3", 3).unwrap()
    }

    fn small_cfg(budget: usize) -> ExperimentConfig {
        ExperimentConfig {
            form: quadric(),
            degrees: Some(vec![2, 3, 2]),
            target_degree: None,
            exponents: vec![rat_from_int(1); 3],
            t_ladder: vec![10, 30],
            seed: 7,
            budget,
            j_subset: vec![0],
            dedup: DedupPolicy::Both,
        }
    }

    #[test]
    fn deterministic_and_bracketed() {
        let cfg = small_cfg(40);
        let a = run_count(&cfg).unwrap();
        let b = run_count(&cfg).unwrap();
        // Byte-identical up to wall-clock diagnostics.
        let strip = |o: &RunOutput| {
            let mut rs = o.records.clone();
            for r in rs.iter_mut() {
                r.elapsed_ms = 0;
            }
            serde_json::to_string(&rs).unwrap()
        };
        assert_eq!(strip(&a), strip(&b));
        for r in &a.records {
            assert!(r.distinct_polys >= r.disc_buckets);
            assert!(r.distinct_polys <= r.irreducible);
            assert!(r.irreducible + r.unknown <= r.attempts);
        }
    }

    #[test]
    fn monotone_in_budget() {
        let small = run_count(&small_cfg(20)).unwrap();
        let large = run_count(&small_cfg(60)).unwrap();
        for (s, l) in small.records.iter().zip(&large.records) {
            assert!(l.distinct_polys >= s.distinct_polys);
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = small_cfg(5);
        cfg.degrees = Some(vec![2, 4, 2]);
        assert!(matches!(run_count(&cfg), Err(HarnessError::Config(_))));
        let mut cfg = small_cfg(5);
        cfg.degrees = None;
        cfg.target_degree = Some(12);
        let out = run_count(&cfg).unwrap();
        let g = out.degrees.iter().fold(0u64, |a, &x| a.gcd(&x));
        assert_eq!(g, 1);
    }

    #[test]
    fn budget_zero_empty_records() {
        let out = run_count(&small_cfg(0)).unwrap();
        for r in &out.records {
            assert_eq!(r.attempts, 0);
            assert_eq!(r.distinct_polys, 0);
        }
    }

    #[test]
    fn rih_additive_form_collides() {
        // f = x + y fails the reasonable image hypothesis: massive
        // collisions already at tiny bounds.
        let f = parse_multipoly("x1 + x2", 2).unwrap();
        let rep = rih_probe(&f, 1, 2).unwrap();
        assert!(rep.max_multiplicity > 1);
        assert!(rep.share_hit_multiple > 0.5);
    }

    #[test]
    fn rih_single_variable_injective() {
        let f = parse_multipoly("x1", 1).unwrap();
        let rep = rih_probe(&f, 1, 3).unwrap();
        assert_eq!(rep.max_multiplicity, 1);
        assert_eq!(rep.share_hit_multiple, 0.0);
    }

    #[test]
    fn rih_empty_bounds() {
        let f = parse_multipoly("x1 + x2", 2).unwrap();
        let rep = rih_probe(&f, 1, -1).unwrap();
        assert_eq!(rep.total_tuples, 0);
        assert!(rep.histogram.is_empty());
    }

    #[test]
    fn target_degree_divisibility() {
        // Hyperelliptic sextic: target 6 reaches a corner with g(h) | 6;
        // an odd target divides no corner gcd and is rejected.
        let hyper = parse_multipoly("x2^2*x3^4 + x1^6 + 2*x1^5*x3 + x3^6", 3).unwrap();
        let mut cfg = small_cfg(4);
        cfg.form = hyper;
        cfg.t_ladder = vec![10];
        cfg.degrees = None;
        cfg.target_degree = Some(12);
        assert!(run_count(&cfg).is_ok());
        cfg.target_degree = Some(7);
        assert!(matches!(run_count(&cfg), Err(HarnessError::Config(_))));
    }

    #[test]
    fn rih_cap() {
        let f = parse_multipoly("x1 + x2 + x3", 3).unwrap();
        assert!(matches!(
            rih_probe(&f, 5, 50),
            Err(HarnessError::BoundsTooLarge(_, _))
        ));
    }

    #[test]
    fn disc_report() {
        let f = parse_unipoly("t^2 - 2").unwrap();
        let rep = disc_of_spec(&f).unwrap();
        assert_eq!(rep.disc, "8");
        assert!(rep.bound_holds);
        let f = parse_unipoly("t^3 - t - 1").unwrap();
        let rep = disc_of_spec(&f).unwrap();
        assert_eq!(rep.disc, "-23");
        assert!(rep.bound_holds);
        // Reducible input is a precondition error.
        let f = parse_unipoly("t^2 - 1").unwrap();
        assert!(matches!(disc_of_spec(&f), Err(HarnessError::NotIrreducible)));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel_bounded(&Int::from(8)), Int::from(2));
        assert_eq!(squarefree_kernel_bounded(&Int::from(-12)), Int::from(3));
        assert_eq!(squarefree_kernel_bounded(&Int::from(49)), Int::from(1));
        assert_eq!(squarefree_kernel_bounded(&Int::from(30)), Int::from(30));
    }
}
