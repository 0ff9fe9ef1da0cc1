//! Acceptance suite: one test per criterion, each timed against its budget
//! and printing a pass line. Exact assertions use rational arithmetic; no
//! tolerance is ever applied to an exact claim.

use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use newpoint_core::algebra::{
    gcd_slice_u64, parse_multipoly, parse_unipoly, rat, rat_from_int, Int, MultiPoly, Rat, UniPoly,
};
use newpoint_core::apps::{
    certify_index_m, certify_no_odd, coray_ascend, coray_descent, hyperelliptic_degrees,
    probe_rational_points_index, probe_rational_points_no_odd, springer_ascend, springer_descent,
    superelliptic_form, HyperPoint,
};
use newpoint_core::degrees::{
    dh_inf, euclid2, euclid_bound, euclid_m, frobenius_window, jacobsthal,
};
use newpoint_core::exp::{
    diagonal_polytope, exp_full, exp_j_lower, superelliptic_polytope, symmetric_polytope,
    LowerStrategy,
};
use newpoint_core::factor::{factor_over_z, is_irreducible_q};
use newpoint_core::harness::{run_count, DedupPolicy, ExperimentConfig};
use newpoint_core::specialize::{check_nonsingular, hensel_lift, quotient_form, reduce_min};

fn finish(name: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "{name} exceeded its {budget_secs}s budget: {elapsed:.2}s"
    );
    println!("acceptance {name}: PASS ({elapsed:.2}s < {budget_secs}s)");
}

fn random_homogeneous(rng: &mut ChaCha8Rng, m: usize, d: u32, tries: usize) -> MultiPoly {
    for _ in 0..tries {
        let mut f = MultiPoly::zero(m);
        for _ in 0..(m + 2) {
            let mut e = vec![0u32; m];
            let mut rest = d;
            for j in 0..m - 1 {
                let x = rng.gen_range(0..=rest);
                e[j] = x;
                rest -= x;
            }
            e[m - 1] = rest;
            f.add_term(e, Int::from(rng.gen_range(-5..=5i64)));
        }
        if !f.is_zero() {
            return f;
        }
    }
    unreachable!("random forms are nonzero with overwhelming probability")
}

#[test]
fn criterion_01_exp_exact_diagonal() {
    let start = Instant::now();
    for m in 2..=4usize {
        for d in 2..=6u32 {
            let h = diagonal_polytope(m, d);
            let res = exp_full(&h).expect("diagonal polytope is feasible");
            assert_eq!(
                res.value,
                rat(m as i64, (d as i64) * (d as i64)),
                "Exp mismatch at m={m}, d={d}"
            );
        }
    }
    finish("01 exp exact on diagonal polytopes", start, 5.0);
}

#[test]
fn criterion_02_exp_lower_bounds() {
    let start = Instant::now();
    for (q, d) in [(2i64, 6i64), (3, 9)] {
        let h = superelliptic_polytope(q as u32, d as u32);
        let e = vec![rat_from_int(q), rat_from_int(d), rat_from_int(0)];
        let res = exp_j_lower(
            &h,
            &[0, 1],
            &LowerStrategy::Witness {
                e: e.clone(),
                r: e.clone(),
            },
        )
        .expect("witness evaluates");
        assert_eq!(res.value, rat(1, q * q) + rat(1, d * d), "(q,d)=({q},{d})");
    }
    for (a, b) in [(2i64, 1i64), (3, 2)] {
        let h = symmetric_polytope(a as u32, b as u32);
        let v = vec![rat_from_int(a), rat_from_int(a + b), rat_from_int(b)];
        let res = exp_j_lower(
            &h,
            &[0, 1, 2],
            &LowerStrategy::Witness {
                e: v.clone(),
                r: v.clone(),
            },
        )
        .expect("witness evaluates");
        assert_eq!(res.value, rat(2, a * a + a * b + b * b), "(a,b)=({a},{b})");
    }
    finish("02 exp lower bounds at the closed-form witnesses", start, 5.0);
}

#[test]
fn criterion_03_frobenius_gap_formula() {
    let start = Instant::now();
    for d in 3..=8u64 {
        let bound = (2 * d * d) as usize + 16;
        let w = frobenius_window(&[d - 1, d], bound);
        assert_eq!(
            w.largest_nonmember(),
            Some(d * d - 3 * d + 1),
            "gap mismatch at d={d}"
        );
        // Independent DP oracle: saturation by repeated addition.
        let mut naive = vec![false; bound + 1];
        naive[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..=bound {
                if naive[v] {
                    for g in [d - 1, d] {
                        let nv = v + g as usize;
                        if nv <= bound && !naive[nv] {
                            naive[nv] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        assert_eq!(w.membership, naive, "window disagrees with oracle at d={d}");
    }
    finish("03 Frobenius gap formula d^2-3d+1", start, 5.0);
}

#[test]
fn criterion_04_euclid_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe0c11d);
    // euclid2: 1000 instances.
    for i in 0..1000 {
        let i1 = rng.gen_range(1..=12u64);
        let mut i2 = rng.gen_range(1..=12u64);
        while i1.gcd(&i2) != 1 {
            i2 = rng.gen_range(1..=12u64);
        }
        let r1 = rat(rng.gen_range(1..=8), rng.gen_range(1..=3));
        let r2 = rat(rng.gen_range(1..=8), rng.gen_range(1..=3));
        let d = rng.gen_range(800..=6000u64);
        let (d1, d2) = euclid2(i1, i2, &r1, &r2, d)
            .unwrap_or_else(|e| panic!("instance {i} failed: {e} (i=({i1},{i2}), D={d})"));
        assert_eq!(i1 * d1 + i2 * d2, d);
        assert_eq!(d1.gcd(&d2), 1);
        assert!(d1 >= 1 && d2 >= 1);
        let s = rat(i1 as i64, 1) * &r1 + rat(i2 as i64, 1) * &r2;
        let j = jacobsthal(d);
        let t1 = &r1 * rat(d as i64, 1) / &s;
        let t2 = &r2 * rat(d as i64, 1) / &s;
        assert!((rat(d1 as i64, 1) - t1).abs() <= rat((i2 * j) as i64, 1));
        assert!((rat(d2 as i64, 1) - t2).abs() <= rat((i1 * j) as i64, 1));
    }
    // euclid_m: 1000 instances with 3..=4 weights.
    for i in 0..1000 {
        let m = rng.gen_range(3..=4usize);
        let iw: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=10u64)).collect();
        let g = gcd_slice_u64(&iw);
        let d = g * rng.gen_range(400..=4000u64);
        let r: Vec<Rat> = (0..m)
            .map(|_| rat(rng.gen_range(1..=6), rng.gen_range(1..=3)))
            .collect();
        let out = euclid_m(&iw, &r, d)
            .unwrap_or_else(|e| panic!("instance {i} failed: {e} (i={iw:?}, D={d})"));
        let total: u64 = iw.iter().zip(&out).map(|(&a, &b)| a * b).sum();
        assert_eq!(total, d);
        assert_eq!(gcd_slice_u64(&out), 1);
        assert!(out.iter().all(|&x| x >= 1));
        let s: Rat = iw
            .iter()
            .zip(&r)
            .map(|(&a, b)| rat(a as i64, 1) * b)
            .fold(Rat::zero(), |a, b| a + b);
        for l in 0..m {
            let target = &r[l] * rat(d as i64, 1) / &s;
            assert!(
                (rat(out[l] as i64, 1) - target).abs() <= euclid_bound(&iw, l, d),
                "proximity failed at instance {i}, coordinate {l}"
            );
        }
    }
    finish("04 euclid2/euclid_m property suite (1000 + 1000)", start, 10.0);
}

/// Random (f, P, u) with u a non-singular solution mod the irreducible P.
fn random_solution_instance(
    rng: &mut ChaCha8Rng,
    max_p_degree: usize,
) -> Option<(MultiPoly, UniPoly, Vec<UniPoly>)> {
    let m = rng.gen_range(2..=3usize);
    let d = rng.gen_range(2..=3u32);
    let f = random_homogeneous(rng, m, d, 8);
    let y: Vec<UniPoly> = (0..m)
        .map(|_| UniPoly::from_ints(&[rng.gen_range(-4..=4), rng.gen_range(1..=3)]))
        .collect();
    let fy = f.evaluate_composition(&y);
    if fy.is_zero() {
        return None;
    }
    let fac = factor_over_z(&fy).ok()?;
    let (p, _) = fac
        .factors
        .iter()
        .find(|(p, _)| p.deg0() >= 1 && p.deg0() <= max_p_degree)?;
    let u: Vec<UniPoly> = y.iter().map(|c| c.rem(p)).collect();
    match check_nonsingular(&f, &u, p) {
        Ok(Some(_)) => Some((f, p.clone(), u)),
        _ => None,
    }
}

#[test]
fn criterion_05_hensel_lifting() {
    let start = Instant::now();
    // Worked example: f = x^2 - 2y^2, P = t^2 - 2, u = (t, 1), e = 2.
    let f = parse_multipoly("x1^2 - 2*x2^2", 2).unwrap();
    let p = parse_unipoly("t^2 - 2").unwrap();
    let lifted = hensel_lift(&f, &p, &[UniPoly::t(), UniPoly::one()], 2).unwrap();
    let image = f.evaluate_composition(&lifted.coords);
    let cofactor = image.divide_exact(&p.pow(2)).expect("P^2 divides f(w)");
    assert_eq!(cofactor.degree(), Some(2), "cofactor must have degree 2");
    assert_eq!(cofactor, parse_unipoly("t^2 - 8").unwrap());

    // 50 random instances lifted to e = 5, checked exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    let mut done = 0;
    let mut draws = 0;
    while done < 50 {
        draws += 1;
        assert!(draws < 5000, "instance generation stalled");
        let Some((f, p, u)) = random_solution_instance(&mut rng, 4) else {
            continue;
        };
        let sol = match hensel_lift(&f, &p, &u, 5) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let fw = f.evaluate_composition(&sol.coords);
        assert!(
            fw.rem(&p.pow(5)).is_zero(),
            "lift failed exact check for f={f}, P={p}"
        );
        done += 1;
    }
    finish("05 Hensel lifting to e=5 (50 instances + worked example)", start, 30.0);
}

#[test]
fn criterion_06_quotient_form_corner_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9f0a);
    let mut done = 0;
    let mut draws = 0;
    while done < 50 {
        draws += 1;
        assert!(draws < 5000, "instance generation stalled");
        let Some((f, p, u)) = random_solution_instance(&mut rng, 3) else {
            continue;
        };
        // Use G = P or P^2 (via a lift), reduced representatives.
        let exponent = rng.gen_range(1..=2u32);
        let sol = match hensel_lift(&f, &p, &u, exponent) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let g = sol.modulus.clone();
        let Ok(reduced) = reduce_min(&f, &sol.coords, &g) else {
            continue;
        };
        let q = match quotient_form(&f, &g, &reduced) {
            Ok(q) => q,
            Err(e) => panic!("quotient form failed on f={f}, G={g}: {e}"),
        };
        // Independent re-check of the corner identity.
        let h_f = newpoint_core::polytope::newton_polytope(&f).unwrap();
        assert_eq!(q.corners.corners, h_f.corners);
        let d = f.total_degree();
        let g_pow = g.pow(d - 1);
        for h in &h_f.corners {
            let expected = g_pow.scale(&Rat::from_integer(f.coeff(h)));
            assert_eq!(q.form.coeff(h), expected, "corner {h:?} of f={f}");
        }
        done += 1;
    }
    finish("06 quotient-form corner identity (50 instances)", start, 30.0);
}

/// Random quadratic (or cubic) form in `m` variables vanishing on a chosen
/// rational point with first coordinate 1.
fn form_through_point(
    rng: &mut ChaCha8Rng,
    m: usize,
    degree: u32,
) -> (MultiPoly, Vec<Rat>) {
    loop {
        let q: Vec<i64> = std::iter::once(1)
            .chain((1..m).map(|_| rng.gen_range(-3..=3i64)))
            .collect();
        let mut f = MultiPoly::zero(m);
        // All exponent vectors of total degree `degree` except the pure
        // first-variable power, which absorbs the correction.
        let mut exps: Vec<Vec<u32>> = Vec::new();
        fn gen_exps(m: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == m - 1 {
                let used: u32 = cur.iter().sum();
                let mut e = cur.clone();
                e.push(d - used);
                out.push(e);
                return;
            }
            let used: u32 = cur.iter().sum();
            for x in 0..=(d - used) {
                cur.push(x);
                gen_exps(m, d, cur, out);
                cur.pop();
            }
        }
        gen_exps(m, degree, &mut Vec::new(), &mut exps);
        let mut lead = vec![0u32; m];
        lead[0] = degree;
        for e in &exps {
            if *e == lead {
                continue;
            }
            f.add_term(e.clone(), Int::from(rng.gen_range(-5..=5i64)));
        }
        // c_lead = -f(q) since q_1 = 1.
        let qi: Vec<Int> = q.iter().map(|&x| Int::from(x)).collect();
        let correction = -f.eval_ints(&qi);
        f.add_term(lead, correction);
        if f.is_zero() {
            continue;
        }
        let qr: Vec<Rat> = q.iter().map(|&x| rat_from_int(x)).collect();
        debug_assert!(f.eval_rats(&qr).is_zero());
        return (f, qr);
    }
}

#[test]
fn criterion_07_springer_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x59a1);
    let mut done = 0;
    let mut draws = 0;
    while done < 20 {
        draws += 1;
        assert!(draws < 400, "round-trip generation stalled");
        let m = if done % 2 == 0 { 3 } else { 4 };
        let (f, q) = form_through_point(&mut rng, m, 2);
        let k = 1 + (done % 2);
        let round = Instant::now();
        let Ok(p) = springer_ascend(&f, &q, k, 1000 + draws as u64) else {
            continue;
        };
        assert_eq!(p.degree(), 2 * k + 1);
        let Ok(back) = springer_descent(&f, &p) else {
            continue;
        };
        assert_eq!(back.degree(), 1);
        let pt = back.rational_coords().unwrap();
        assert!(
            f.eval_rats(&pt).is_zero(),
            "descent output not on F for f={f}"
        );
        assert!(
            round.elapsed().as_secs_f64() < 2.0,
            "round trip exceeded 2s on f={f}"
        );
        done += 1;
    }
    finish("07 Springer ascend/descend round trips (20)", start, 60.0);
}

#[test]
fn criterion_08_coray_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0);
    let mut done = 0;
    let mut draws = 0;
    while done < 10 {
        draws += 1;
        assert!(draws < 300, "round-trip generation stalled");
        let (f, q) = form_through_point(&mut rng, 3, 3);
        let Ok(p) = coray_ascend(&f, &q, 7 + draws as u64) else {
            continue;
        };
        assert_eq!(p.degree(), 2);
        let Ok(back) = coray_descent(&f, &p) else {
            continue;
        };
        assert_eq!(back.degree(), 1);
        let pt = back.rational_coords().unwrap();
        assert!(f.eval_rats(&pt).is_zero());
        done += 1;
    }
    finish("08 cubic degree-2 round trips (10)", start, 5.0);
}

#[test]
fn criterion_09_hyperelliptic_degrees() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e11);
    let nonsquare_leads = [2i64, 3, 5, 6, 7, 8, -2, -3, -5, -7];
    let mut done = 0;
    let mut draws = 0;
    while done < 10 {
        draws += 1;
        assert!(draws < 200, "sextic generation stalled");
        let y0 = rng.gen_range(1..=4i64);
        let mut coeffs = vec![y0 * y0];
        for _ in 1..=5 {
            coeffs.push(rng.gen_range(-6..=6i64));
        }
        coeffs.push(nonsquare_leads[rng.gen_range(0..nonsquare_leads.len())]);
        let f = UniPoly::from_ints(&coeffs);
        if f.gcd(&f.derivative()).deg0() > 0 {
            continue; // not squarefree
        }
        let point = HyperPoint::Rational {
            x0: rat_from_int(0),
            y0: rat_from_int(y0),
        };
        // genus 2: [g+1, 2g+1] = [3,5], plus odd targets 5,7,9.
        let targets = [3u64, 4, 5, 7, 9];
        let pts = match hyperelliptic_degrees(&f, &point, &targets, 31 + draws as u64) {
            Ok(p) => p,
            Err(e) => panic!("construction failed on f={f}: {e}"),
        };
        let ambient = superelliptic_form(&Int::one(), 2, &f);
        for (pt, &target) in pts.iter().zip(&targets) {
            assert_eq!(pt.degree() as u64, target);
            assert!(
                is_irreducible_q(&pt.minpoly).is_irreducible(),
                "minpoly not irreducible for target {target} on f={f}"
            );
            // minpoly divides y^2 - f(x) at the coordinates.
            let value = ambient.evaluate_composition(&pt.coords);
            assert!(value.rem(&pt.minpoly).is_zero());
        }
        done += 1;
    }
    finish("09 hyperelliptic degree realizations (10 sextics)", start, 60.0);
}

#[test]
fn criterion_10_certifiers_and_probes() {
    let start = Instant::now();
    let f_bin = parse_unipoly("t^2 + 1").unwrap();
    let out = certify_no_odd(&f_bin, &Int::from(3)).unwrap();
    assert!(out.is_certified(), "t^2+1 with d=3 must certify");
    assert!(
        probe_rational_points_no_odd(&f_bin, &Int::from(3), 1000).is_none(),
        "soundness probe found a rational point on 3z^2 = x^2 + y^2"
    );
    let f_idx = parse_multipoly("x1^2 + x1*x2 + x2^2 - 2", 2).unwrap();
    let out = certify_index_m(&f_idx, 2, 2).unwrap();
    assert!(out.is_certified(), "x^2+xy+y^2-2 with p=2, m=2 must certify");
    assert!(
        probe_rational_points_index(&f_idx, 1000).is_none(),
        "soundness probe found a rational point on x^2+xy+y^2 = 2"
    );
    finish("10 certifiers with height-1000 soundness probes", start, 60.0);
}

#[test]
fn criterion_11_field_count_experiment() {
    let start = Instant::now();
    let cfg = ExperimentConfig {
        form: parse_multipoly("x1^2 - 2*x2^2 + x1*x3", 3).unwrap(),
        degrees: Some(vec![2, 3, 2]),
        target_degree: None,
        exponents: vec![rat_from_int(1); 3],
        t_ladder: vec![10, 30, 100, 300],
        seed: 7,
        budget: 2000,
        j_subset: vec![0],
        dedup: DedupPolicy::Both,
    };
    let out = run_count(&cfg).expect("experiment runs");
    assert_eq!(out.records.len(), 4);
    for pair in out.records.windows(2) {
        assert!(
            pair[1].distinct_polys > pair[0].distinct_polys,
            "distinct counts must strictly increase along the ladder: {} then {}",
            pair[0].distinct_polys,
            pair[1].distinct_polys
        );
    }
    for r in &out.records {
        assert!(
            r.distinct_polys >= r.disc_buckets,
            "bracket invariant fails at T={}",
            r.t
        );
    }
    let fit = out.fitted_exponent.expect("enough points to fit");
    assert!(fit > 0.0, "fitted growth exponent must be positive, got {fit}");
    finish("11 field-count experiment growth and bracket", start, 300.0);
}

#[test]
fn criterion_12_factorizer_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac);
    // A pool of random primitive irreducibles of degree 1..=4.
    let mut pool: Vec<UniPoly> = Vec::new();
    while pool.len() < 60 {
        let d = rng.gen_range(1..=4usize);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if c[d] == 0 {
            c[d] = 1;
        }
        let g = UniPoly::from_ints(&c).primitive();
        if g.deg0() >= 1 && is_irreducible_q(&g).is_irreducible() {
            pool.push(g);
        }
    }
    for i in 0..500 {
        let mut expected: BTreeMap<UniPoly, u32> = BTreeMap::new();
        let mut prod = UniPoly::one();
        let mut total = 0usize;
        let count = rng.gen_range(2..=4usize);
        for _ in 0..count {
            let f = &pool[rng.gen_range(0..pool.len())];
            if total + f.deg0() > 12 {
                break;
            }
            total += f.deg0();
            *expected.entry(f.clone()).or_insert(0) += 1;
            prod = &prod * f;
        }
        if total == 0 {
            continue;
        }
        let fac = factor_over_z(&prod).expect("factorization runs");
        assert!(fac.complete, "instance {i} incomplete");
        let got: BTreeMap<UniPoly, u32> = fac.factors.into_iter().collect();
        assert_eq!(got, expected, "instance {i}: product {prod}");
    }
    // Fuzz: no false Irreducible on constructed products.
    for i in 0..500 {
        let mk = |rng: &mut ChaCha8Rng| {
            let d = rng.gen_range(1..=5usize);
            let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
            if c[d] == 0 {
                c[d] = 2;
            }
            UniPoly::from_ints(&c)
        };
        let prod = &mk(&mut rng) * &mk(&mut rng);
        assert!(
            !is_irreducible_q(&prod).is_irreducible(),
            "fuzz {i}: false Irreducible on {prod}"
        );
    }
    finish("12 factorizer round trip (500) and fuzz (500)", start, 60.0);
}

#[test]
fn criterion_13_dh_inf_hyperelliptic_window() {
    let start = Instant::now();
    let h = superelliptic_polytope(2, 6);
    let w = dh_inf(&h, None, 200).expect("window computes");
    assert_eq!(w.index, 2);
    assert!(w.fixed_point_reached, "iteration must reach a fixed point");
    let mut last_missing_even = None;
    for v in 1..=200u64 {
        if w.is_member(v) {
            assert_eq!(v % 2, 0, "odd member {v}");
        } else if v % 2 == 0 {
            last_missing_even = Some(v);
        }
    }
    // Even numbers are all members from a threshold on, comfortably inside
    // the window.
    let threshold = last_missing_even.map(|v| v + 2).unwrap_or(2);
    assert!(
        threshold <= 120,
        "even membership threshold {threshold} too close to the window edge"
    );
    for v in (threshold..=200).step_by(2) {
        assert!(w.is_member(v), "even {v} beyond the threshold is missing");
    }
    finish("13 degree window for the hyperelliptic polytope", start, 30.0);
}
