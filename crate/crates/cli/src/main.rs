//! Command-line front end: every subcommand parses the shared polynomial
//! grammar, runs the exact computation and prints a JSON report.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use newpoint_core::algebra::{
    parse_multipoly, parse_multipoly_json, parse_unipoly, rat, Int, MultiPoly, Rat, UniPoly,
};
use newpoint_core::apps::{
    certify_index_m, certify_no_odd, coray_ascend, coray_descent, hyperelliptic_degrees,
    springer_ascend, springer_descent, HyperPoint, PointRep,
};
use newpoint_core::degrees::{dc_inf_augment, dh_inf};
use newpoint_core::exp::{exp_full, exp_j_lower, LowerStrategy};
use newpoint_core::factor::IrreducibilityVerdict;
use newpoint_core::harness::{rih_probe, run_count, DedupPolicy, ExperimentConfig};
use newpoint_core::polytope::{newton_polytope, support};
use newpoint_core::specialize::{check_nonsingular, hensel_lift, quotient_form, random_spec, reduce_min};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "newpoint", version, about = "Newton polytope indices, exponents, degree sets and algebraic point constructions over exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Support, corner set, per-corner gcds, index G(H) and validity flag.
    Polytope {
        /// Polynomial in x1..xm, e.g. "x1^2*x2 - 3*x3^3" (or JSON with --json).
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Exp of the Newton polytope: exact over the full coordinate set, or a
    /// certified lower bound for a subset J.
    Exp {
        poly: String,
        /// Comma-separated 1-based coordinate subset, e.g. "1,2".
        #[arg(long = "J")]
        j_subset: Option<String>,
        /// exact (full J only) or lower.
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Lower-bound strategy: axis, uniform or numeric.
        #[arg(long, default_value = "numeric")]
        strategy: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The degree window D(H)^inf with exception candidates.
    Degrees {
        poly: String,
        #[arg(long, default_value_t = 400)]
        bound: usize,
        /// Extra known degrees seeding the D(C) variant, e.g. "5,7".
        #[arg(long)]
        extras: Option<String>,
    },
    /// Draw a specialization f(x(t)) and report verdicts and checks;
    /// optionally verify a polynomial solution against a modulus.
    Specialize {
        poly: String,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        t: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Height exponents per variable (default all 1).
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<i64>>,
        /// Modulus G(t) for the solution checks.
        #[arg(long)]
        modulus: Option<String>,
        /// Semicolon-separated coordinate polynomials u1;u2;...
        #[arg(long)]
        solution: Option<String>,
        /// Hensel-lift the solution to this power of the modulus.
        #[arg(long)]
        lift: Option<u32>,
    },
    /// Descend an odd-degree point on a quadric to a rational point.
    Springer {
        quad: String,
        /// Point as "g;x1;x2;..." (minimal polynomial, then coordinates).
        #[arg(long)]
        point: String,
    },
    /// Ascend from a rational point on a quadric to a degree 2k+1 point.
    SpringerAscend {
        quad: String,
        /// Rational point as "q1,q2,...".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Descend a degree-2 point on a cubic to a rational point.
    Coray {
        cubic: String,
        #[arg(long)]
        point: String,
        /// Treat the point as rational coordinates and ascend instead.
        #[arg(long)]
        ascend: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Realize target degrees on the hyperelliptic curve y^2 = f(x).
    Hyper {
        /// Curve polynomial f(t) of even degree.
        f: String,
        #[arg(long, value_delimiter = ',')]
        targets: Vec<u64>,
        /// Rational point "x0,y0".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Certify that d z^2 = f(x,y) has no odd-degree points.
    CertifyNoOdd {
        /// Binary form as univariate f(t) of even degree.
        f: String,
        #[arg(long)]
        d: i64,
    },
    /// Certify that every point field degree of F(x,y) = 0 is divisible by m.
    CertifyIndex {
        f: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
    /// Field-counting experiment from a JSON config file.
    Experiment {
        #[arg(long)]
        config: String,
        /// Also write a CSV summary (T, X, counts, fit) to this path.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Exhaustive image-collision probe at tiny bounds.
    ProbeRih {
        poly: String,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long, default_value_t = 3)]
        coeff: i64,
    },
}

#[derive(Serialize)]
struct PointJson {
    degree: usize,
    minpoly: String,
    coords: Vec<String>,
    verdict: String,
}

fn point_json(p: &PointRep) -> PointJson {
    PointJson {
        degree: p.degree(),
        minpoly: p.minpoly.to_string(),
        coords: p.coords.iter().map(|c| c.to_string()).collect(),
        verdict: p.verdict.describe(),
    }
}

fn parse_point(s: &str) -> Result<PointRep, String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() < 2 {
        return Err("point must be g;x1;...;xm".into());
    }
    let minpoly = parse_unipoly(parts[0]).map_err(|e| e.to_string())?;
    let coords = parts[1..]
        .iter()
        .map(|p| parse_unipoly(p).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = newpoint_core::factor::is_irreducible_q(&minpoly);
    Ok(PointRep {
        minpoly,
        coords,
        verdict,
    })
}

fn parse_rational_vector(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            if let Some((num, den)) = x.split_once('/') {
                let n: i64 = num.trim().parse().map_err(|_| format!("bad rational {x}"))?;
                let d: i64 = den.trim().parse().map_err(|_| format!("bad rational {x}"))?;
                Ok(rat(n, d))
            } else {
                let n: i64 = x.parse().map_err(|_| format!("bad number {x}"))?;
                Ok(rat(n, 1))
            }
        })
        .collect()
}

fn parse_j(s: &str, m: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let v: usize = part.trim().parse().map_err(|_| format!("bad index {part}"))?;
        if v == 0 || v > m {
            return Err(format!("index {v} out of range 1..={m}"));
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_poly_arg(s: &str, json: bool) -> Result<MultiPoly, String> {
    if json {
        parse_multipoly_json(s).map_err(|e| e.to_string())
    } else {
        parse_multipoly(s, 0).map_err(|e| e.to_string())
    }
}

fn verdict_json(v: &IrreducibilityVerdict) -> serde_json::Value {
    match v {
        IrreducibilityVerdict::Irreducible { witness } => {
            json!({"status": "irreducible", "witness": witness})
        }
        IrreducibilityVerdict::Factored { content, factors } => json!({
            "status": "factored",
            "content": content.to_string(),
            "factors": factors.iter().map(|(f, m)| json!([f.to_string(), m])).collect::<Vec<_>>(),
        }),
        IrreducibilityVerdict::Unknown { note } => json!({"status": "unknown", "note": note}),
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("NEWPOINT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

enum CliError {
    Config(String),
    Run(String),
}

fn config<E: ToString>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn runtime<E: ToString>(e: E) -> CliError {
    CliError::Run(e.to_string())
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Polytope { poly, json } => {
            let f = parse_poly_arg(&poly, json).map_err(config)?;
            let supp = support(&f).map_err(config)?;
            let h = newton_polytope(&f).map_err(config)?;
            emit(&json!({
                "m": h.m,
                "degree": h.d,
                "support": supp.iter().collect::<Vec<_>>(),
                "corners": h.corners,
                "corner_gcds": h.corners.iter().map(|c| json!([c, h.gcds[c]])).collect::<Vec<_>>(),
                "index_G": h.index_g(),
                "valid": h.is_valid(),
            }));
            Ok(())
        }
        Command::Exp {
            poly,
            j_subset,
            mode,
            strategy,
            seed,
        } => {
            let f = parse_poly_arg(&poly, false).map_err(config)?;
            let h = newton_polytope(&f).map_err(config)?;
            let full: Vec<usize> = (0..h.m).collect();
            // Singletons are the always-valid sub-images, so lower mode
            // defaults to the best single coordinate; exact mode is the
            // full-coordinate optimum.
            let j = match &j_subset {
                Some(s) => parse_j(s, h.m).map_err(config)?,
                None if mode == "exact" => full.clone(),
                None => Vec::new(),
            };
            match mode.as_str() {
                "exact" => {
                    if j != full {
                        return Err(config("exact mode requires the full coordinate set"));
                    }
                    let res = exp_full(&h).map_err(runtime)?;
                    emit(&json!({
                        "mode": "exact",
                        "exp": res.value.to_string(),
                        "min_dot_squared": res.min_dot_squared.map(|v| v.to_string()),
                        "corner": res.corner,
                        "direction": res.direction_e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    }));
                }
                "lower" => {
                    let strat = match strategy.as_str() {
                        "axis" => LowerStrategy::Axis,
                        "uniform" => LowerStrategy::Uniform,
                        "numeric" => LowerStrategy::Numeric { seed, starts: 8 },
                        other => return Err(config(format!("unknown strategy {other}"))),
                    };
                    let (j_used, res) = if j.is_empty() {
                        // Best singleton.
                        let mut best: Option<(Vec<usize>, _)> = None;
                        for jj in 0..h.m {
                            if let Ok(r) = exp_j_lower(&h, &[jj], &strat) {
                                if best.as_ref().map_or(true, |(_, b): &(_, newpoint_core::exp::ExpResult)| r.value > b.value) {
                                    best = Some((vec![jj], r));
                                }
                            }
                        }
                        best.ok_or_else(|| runtime("no singleton bound is defined"))?
                    } else {
                        let r = exp_j_lower(&h, &j, &strat).map_err(runtime)?;
                        (j.clone(), r)
                    };
                    emit(&json!({
                        "mode": "lower",
                        "J": j_used.iter().map(|x| x + 1).collect::<Vec<_>>(),
                        "bound": res.value.to_string(),
                        "corner_e": res.corner,
                        "corner_r": res.corner_r,
                        "direction_e": res.direction_e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "direction_r": res.direction_r.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    }));
                }
                other => return Err(config(format!("unknown mode {other}"))),
            }
            Ok(())
        }
        Command::Degrees {
            poly,
            bound,
            extras,
        } => {
            let f = parse_poly_arg(&poly, false).map_err(config)?;
            let h = newton_polytope(&f).map_err(config)?;
            let degx: Vec<u64> = (0..h.m).map(|j| f.degree_in(j) as u64).collect();
            let degx_from_h: Vec<u64> = (0..h.m).map(|j| h.degree_in(j) as u64).collect();
            let window = match &extras {
                None => dh_inf(&h, Some(&degx), bound).map_err(runtime)?,
                Some(s) => {
                    let ex: Vec<u64> = s
                        .split(',')
                        .map(|x| x.trim().parse::<u64>().map_err(|_| config(format!("bad degree {x}"))))
                        .collect::<Result<_, _>>()?;
                    dc_inf_augment(&h, Some(&degx), bound, &ex).map_err(runtime)?
                }
            };
            emit(&json!({
                "index": window.index,
                "bound": window.bound,
                "member_runs": window.member_runs(),
                "exception_candidates": window.exception_candidates,
                "fixed_point_reached": window.fixed_point_reached,
                "iterations": window.iterations,
                "degx": degx,
                "degx_differs_from_corners": degx != degx_from_h,
            }));
            Ok(())
        }
        Command::Specialize {
            poly,
            degrees,
            t,
            seed,
            exponents,
            modulus,
            solution,
            lift,
        } => {
            let f = parse_poly_arg(&poly, false).map_err(config)?;
            let m = f.num_vars();
            if degrees.len() != m {
                return Err(config(format!("need {m} degrees")));
            }
            let e: Vec<Rat> = match exponents {
                Some(v) if v.len() == m => v.into_iter().map(|x| rat(x, 1)).collect(),
                Some(_) => return Err(config(format!("need {m} exponents"))),
                None => vec![rat(1, 1); m],
            };
            let rec = random_spec(&f, &degrees, &e, t, seed);
            let mut out = json!({
                "degrees": rec.tuple.degrees,
                "leading": rec.tuple.leading.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "coords": rec.tuple.x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "F": rec.f_of_x.to_string(),
                "target_degree": rec.target_degree,
                "degenerate": rec.degenerate,
                "verdict_F": verdict_json(&rec.verdict_f),
                "verdicts_x": rec.verdicts_x.iter().map(verdict_json).collect::<Vec<_>>(),
                "height": rec.height.to_string(),
                "height_bound": rec.height_bound.to_string(),
                "height_ok": rec.height_ok,
                "E": rec.exp_e.to_string(),
            });
            if let (Some(gm), Some(sol)) = (modulus, solution) {
                let g = parse_unipoly(&gm).map_err(config)?;
                let coords: Vec<UniPoly> = sol
                    .split(';')
                    .map(|p| parse_unipoly(p).map_err(|e| config(e.to_string())))
                    .collect::<Result<_, _>>()?;
                let witness = check_nonsingular(&f, &coords, &g).map_err(runtime)?;
                let reduced = reduce_min(&f, &coords, &g).map_err(runtime)?;
                let mut sol_json = json!({
                    "modulus": g.to_string(),
                    "nonsingular_witness": witness,
                    "reduced": reduced.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                });
                if witness.is_some() {
                    let q = quotient_form(&f, &g, &reduced).map_err(runtime)?;
                    sol_json["quotient_corners"] = json!(q.corners.corners);
                    if let Some(e_target) = lift {
                        let lifted = hensel_lift(&f, &g, &coords, e_target).map_err(runtime)?;
                        sol_json["lifted"] = json!({
                            "modulus": lifted.modulus.to_string(),
                            "coords": lifted.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        });
                    }
                }
                out["solution"] = sol_json;
            }
            emit(&out);
            Ok(())
        }
        Command::Springer { quad, point } => {
            let f = parse_poly_arg(&quad, false).map_err(config)?;
            let p = parse_point(&point).map_err(config)?;
            let out = springer_descent(&f, &p).map_err(runtime)?;
            emit(&json!({
                "point": point_json(&out),
                "rational": out.rational_coords().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            }));
            Ok(())
        }
        Command::SpringerAscend {
            quad,
            point,
            k,
            seed,
        } => {
            let f = parse_poly_arg(&quad, false).map_err(config)?;
            let q = parse_rational_vector(&point).map_err(config)?;
            let out = springer_ascend(&f, &q, k, seed).map_err(runtime)?;
            emit(&json!({ "point": point_json(&out) }));
            Ok(())
        }
        Command::Coray {
            cubic,
            point,
            ascend,
            seed,
        } => {
            let f = parse_poly_arg(&cubic, false).map_err(config)?;
            if ascend {
                let q = parse_rational_vector(&point).map_err(config)?;
                let out = coray_ascend(&f, &q, seed).map_err(runtime)?;
                emit(&json!({ "point": point_json(&out) }));
            } else {
                let p = parse_point(&point).map_err(config)?;
                let out = coray_descent(&f, &p).map_err(runtime)?;
                emit(&json!({
                    "point": point_json(&out),
                    "rational": out.rational_coords().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                }));
            }
            Ok(())
        }
        Command::Hyper {
            f,
            targets,
            point,
            seed,
        } => {
            let curve = parse_unipoly(&f).map_err(config)?;
            let pt = parse_rational_vector(&point).map_err(config)?;
            if pt.len() != 2 {
                return Err(config("point must be x0,y0"));
            }
            let hp = HyperPoint::Rational {
                x0: pt[0].clone(),
                y0: pt[1].clone(),
            };
            let points = hyperelliptic_degrees(&curve, &hp, &targets, seed).map_err(runtime)?;
            emit(&json!({
                "points": points.iter().map(point_json).collect::<Vec<_>>(),
            }));
            Ok(())
        }
        Command::CertifyNoOdd { f, d } => {
            let form = parse_unipoly(&f).map_err(config)?;
            let out = certify_no_odd(&form, &Int::from(d)).map_err(runtime)?;
            emit(&serde_json::to_value(&out).expect("serializable"));
            Ok(())
        }
        Command::CertifyIndex { f, p, m } => {
            let form = parse_poly_arg(&f, false).map_err(config)?;
            let out = certify_index_m(&form, p, m).map_err(runtime)?;
            emit(&serde_json::to_value(&out).expect("serializable"));
            Ok(())
        }
        Command::Experiment { config: path, csv } => {
            let text = std::fs::read_to_string(&path).map_err(config)?;
            let cfg = parse_experiment_config(&text).map_err(config)?;
            let out = run_count(&cfg).map_err(|e| match e {
                newpoint_core::harness::HarnessError::Config(msg) => CliError::Config(msg),
                other => CliError::Run(other.to_string()),
            })?;
            emit(&serde_json::to_value(&out).expect("serializable"));
            if let Some(csv_path) = csv {
                let mut file = std::fs::File::create(&csv_path).map_err(runtime)?;
                writeln!(file, "T,X,attempts,irreducible,unknown,distinct,buckets,fit").map_err(runtime)?;
                for r in &out.records {
                    writeln!(
                        file,
                        "{},{},{},{},{},{},{},{}",
                        r.t,
                        r.max_disc,
                        r.attempts,
                        r.irreducible,
                        r.unknown,
                        r.distinct_polys,
                        r.disc_buckets,
                        out.fitted_exponent.map(|x| x.to_string()).unwrap_or_default()
                    )
                    .map_err(runtime)?;
                }
            }
            Ok(())
        }
        Command::ProbeRih { poly, deg, coeff } => {
            let f = parse_poly_arg(&poly, false).map_err(config)?;
            let rep = rih_probe(&f, deg, coeff).map_err(runtime)?;
            emit(&serde_json::to_value(&rep).expect("serializable"));
            Ok(())
        }
    }
}

fn parse_experiment_config(text: &str) -> Result<ExperimentConfig, String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let form_str = v["form"].as_str().ok_or("config needs a form string")?;
    let form = parse_multipoly(form_str, 0).map_err(|e| e.to_string())?;
    let m = form.num_vars();
    let degrees = v.get("degrees").and_then(|d| d.as_array()).map(|arr| {
        arr.iter()
            .map(|x| x.as_u64().ok_or("degrees must be nonnegative integers".to_string()))
            .collect::<Result<Vec<_>, _>>()
    });
    let degrees = match degrees {
        Some(r) => Some(r?),
        None => None,
    };
    let target_degree = v.get("target_degree").and_then(|x| x.as_u64());
    let exponents: Vec<Rat> = match v.get("exponents").and_then(|e| e.as_array()) {
        Some(arr) => arr
            .iter()
            .map(|x| {
                if let Some(n) = x.as_i64() {
                    Ok(rat(n, 1))
                } else if let Some(s) = x.as_str() {
                    parse_rational_vector(s).map(|v| v[0].clone())
                } else {
                    Err("bad exponent".to_string())
                }
            })
            .collect::<Result<_, _>>()?,
        None => vec![rat(1, 1); m],
    };
    let t_ladder: Vec<u64> = v["t_ladder"]
        .as_array()
        .ok_or("config needs t_ladder")?
        .iter()
        .map(|x| x.as_u64().ok_or("bad T".to_string()))
        .collect::<Result<_, _>>()?;
    let seed = v.get("seed").and_then(|x| x.as_u64()).unwrap_or(1);
    let budget = v
        .get("budget")
        .and_then(|x| x.as_u64())
        .unwrap_or(100)
        .to_usize()
        .ok_or("budget too large")?;
    let j_subset: Vec<usize> = match v.get("j_subset").and_then(|x| x.as_array()) {
        Some(arr) => {
            let mut out = Vec::new();
            for x in arr {
                let idx = x.as_u64().ok_or("bad J index")? as usize;
                if idx == 0 || idx > m {
                    return Err(format!("J index {idx} out of range 1..={m}"));
                }
                out.push(idx - 1);
            }
            out
        }
        None => (0..m).collect(),
    };
    let dedup = match v.get("dedup").and_then(|x| x.as_str()).unwrap_or("both") {
        "poly" => DedupPolicy::NormalizedPoly,
        "disc" => DedupPolicy::DiscBucket,
        _ => DedupPolicy::Both,
    };
    Ok(ExperimentConfig {
        form,
        degrees,
        target_degree,
        exponents,
        t_ladder,
        seed,
        budget,
        j_subset,
        dedup,
    })
}
