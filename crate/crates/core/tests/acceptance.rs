//! Acceptance criteria, one PASS/FAIL line each.
//!
//! The n = 5 survey runs only with `EIGENFRAME_LONG=1`.

mod common;

use std::time::{Duration, Instant};

use common::{brute_force_xspace_dim, cayley, integral_least_eigenvalue, one_walk_regular_graphs, random_graph};
use eigenframe::cli::run;
use eigenframe::color::{is_uniquely_vector_colorable_1wr, validate_coloring, ColoringCheck};
use eigenframe::exact::{integer_least_eigenvalue, ExactMatrix, Scalar, DEFAULT_TOLERANCE};
use eigenframe::framework::{
    canonical_stress, dominates, kneser_framework, least_eigenvalue_framework, BackendChoice, Matrix,
};
use eigenframe::graph::{cayley_z2, kneser, parse_graph6_lines, petersen, q_kneser, Graph};
use eigenframe::survey::enumerate_orbits;
use eigenframe::uc::{
    dominated_frameworks, equal_on_close_pairs, is_universally_completable, xspace, xspace_with, ConditionFlags, Phi,
    XSpaceMethod,
};
use nalgebra::DMatrix;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SURVEY_SMALL_BUDGET: Duration = Duration::from_secs(60);
const SURVEY_LONG_BUDGET: Duration = Duration::from_secs(4 * 3600);
const ODD_CYCLE_BUDGET: Duration = Duration::from_secs(5);
const KNESER_BUDGET: Duration = Duration::from_secs(30);
const QKNESER_BUDGET: Duration = Duration::from_secs(60);
const MIN_MARGIN: f64 = 1e-4;
const FLOAT_TOL: f64 = 1e-8;
const INVARIANT_RUNS: usize = 500;
const RANDOM_GRAPHS: usize = 100;
const SEED: u64 = 0x5eed_2013;

const CONNECTED_LE7: &str = include_str!("data/connected_le7.g6");

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("eigenframe").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(())
    } else {
        Err(format!("took {t:.1?}, budget {budget:?}"))
    }
}

fn survey_counts(n: u32, workers: usize) -> Result<(usize, usize), String> {
    let (code, out, err) = cli(&["survey", "--n", &n.to_string(), "--workers", &workers.to_string()]);
    if code != 0 {
        return Err(format!("survey --n {n} exited {code}: {err}"));
    }
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    let uc = rows.iter().filter(|l| l.ends_with(",true")).count();
    let summary = format!("n = {n}: {} connected, {uc} UC", rows.len());
    if !err.contains(&summary) {
        return Err(format!("summary line missing: {err:?}"));
    }
    Ok((rows.len(), uc))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expect = [(1, 1), (2, 2), (6, 6), (36, 34)];
    for (k, &e) in (1..=4).zip(&expect) {
        let got = survey_counts(k, 4)?;
        if got != e {
            return Err(format!("n = {k}: got {got:?}, expected {e:?}"));
        }
    }
    within(start, SURVEY_SMALL_BUDGET)?;
    Ok(format!("(1,1) (2,2) (6,6) (36,34) in {:.1?}", start.elapsed()))
}

fn criterion_1_long() -> Option<Outcome> {
    if std::env::var("EIGENFRAME_LONG").as_deref() != Ok("1") {
        return None;
    }
    let start = Instant::now();
    Some((|| {
        let got = survey_counts(5, 8)?;
        if got != (1326, 1293) {
            return Err(format!("got {got:?}, expected (1326, 1293)"));
        }
        within(start, SURVEY_LONG_BUDGET)?;
        Ok(format!("(1326,1293) in {:.1?}", start.elapsed()))
    })())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    for n in (3..=21).step_by(2) {
        let (code, out, err) = cli(&["check-uc", "--gen", &format!("cycle:{n}"), "--backend", "floating"]);
        if code != 0 {
            return Err(format!("C{n}: exit {code}: {err}"));
        }
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let r = &v[0];
        // a complete graph leaves no unknowns, hence no margin
        let margin: f64 = match r["margin"].as_str() {
            Some(m) => m.parse().map_err(|_| format!("C{n}: bad margin {m}"))?,
            None if n == 3 => f64::INFINITY,
            None => return Err(format!("C{n}: margin missing")),
        };
        if r["verdict"] != "UC" || r["x_dim"] != 0 || r["backend"] != "floating" || margin <= MIN_MARGIN {
            return Err(format!("C{n}: {r}"));
        }
        worst = worst.min(margin);
    }
    within(start, ODD_CYCLE_BUDGET)?;
    Ok(format!("C3..C21 UC, smallest margin {worst:.3e}, {:.1?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for (n, r, t) in [(5, 2, "5/2"), (7, 2, "7/2"), (7, 3, "7/3")] {
        let (code, out, err) = cli(&["vc", "--gen", &format!("kneser:{n},{r}")]);
        if code != 0 {
            return Err(format!("K({n},{r}): exit {code}: {err}"));
        }
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        if v[0]["uvc"] != true || v[0]["t"] != t || v[0]["strict"] != true {
            return Err(format!("K({n},{r}): {}", v[0]));
        }
        let res = is_uniquely_vector_colorable_1wr(&kneser(n, r).unwrap()).map_err(|e| e.to_string())?;
        if res.coloring.t != Scalar::Exact(BigRational::new(n.into(), (r as i64).into())) {
            return Err(format!("K({n},{r}): library value {}", res.coloring.t));
        }
    }
    within(start, KNESER_BUDGET)?;
    Ok(format!("t = 5/2, 7/2, 7/3 exactly, all UVC, {:.1?}", start.elapsed()))
}

/// `(n/d)E_τ` of the least-eigenvalue framework.
fn scaled_projector(g: &Graph) -> Result<ExactMatrix, String> {
    let fw = least_eigenvalue_framework(g, BackendChoice::Exact, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let d = fw.spectrum().unwrap().tau_multiplicity;
    let e = fw.gram().as_exact().ok_or("not exact")?;
    Ok(e.scale(&BigRational::new((g.order() as i64).into(), (d as i64).into())))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = q_kneser(2, 4, 2).unwrap();
    let res = is_uniquely_vector_colorable_1wr(&g).map_err(|e| e.to_string())?;
    if res.is_uvc() {
        return Err("reported UVC".into());
    }
    let second = res.second.as_ref().ok_or("no second coloring")?;
    let first = scaled_projector(&g)?;
    let Matrix::Exact(s) = &second.gram else { return Err("second coloring is not exact".into()) };
    if *s == first {
        return Err("second Gram equals (n/d)E".into());
    }
    if res.coloring.gram != Matrix::Exact(first) {
        return Err("first coloring is not (n/d)E".into());
    }
    let check = validate_coloring(&g, &second.gram, &res.coloring.t).map_err(|e| e.to_string())?;
    if check != ColoringCheck::ValidStrict || second.t != res.coloring.t {
        return Err(format!("second coloring: {check:?} at t = {}", second.t));
    }
    within(start, QKNESER_BUDGET)?;
    Ok(format!("not UVC, second coloring valid-strict at t = {}, {:.1?}", res.coloring.t, start.elapsed()))
}

fn criterion_5() -> Outcome {
    let k = kneser_framework(5, 2).and_then(|f| f.rescaled_to_unit_diagonal()).map_err(|e| e.to_string())?;
    let target = scaled_projector(&petersen())?;
    match k.gram() {
        Matrix::Exact(m) if *m == target => Ok("rescaled Kneser Gram == (n/d)E of Petersen".into()),
        Matrix::Exact(_) => Err("Gram matrices differ".into()),
        Matrix::Float(_) => Err("Kneser framework is not exact".into()),
    }
}

fn criterion_6() -> Outcome {
    let graphs = parse_graph6_lines(CONNECTED_LE7).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for g in &graphs {
        let oracle_tau = integral_least_eigenvalue(g);
        let lib = integer_least_eigenvalue(&ExactMatrix::adjacency(g)).map_err(|e| e.to_string())?;
        let g6 = eigenframe::graph::emit_graph6(g);
        match (oracle_tau, lib) {
            (None, None) => continue,
            (Some(t), Some(s)) if s.tau == Scalar::integer(t) => {
                let want = brute_force_xspace_dim(g, t);
                for method in [XSpaceMethod::Direct, XSpaceMethod::Eigenbasis] {
                    let got = xspace_with(g, &s, method).map_err(|e| e.to_string())?.dim();
                    if got != want {
                        return Err(format!("{g6}: {method:?} gives {got}, brute force {want}"));
                    }
                }
                checked += 1;
            }
            (o, l) => return Err(format!("{g6}: integral least eigenvalue {o:?} vs {:?}", l.map(|s| s.tau))),
        }
    }
    Ok(format!("{checked} of {} graphs with integral least eigenvalue agree", graphs.len()))
}

fn random_invariant_graph(rng: &mut ChaCha8Rng) -> Graph {
    if rng.random_bool(0.5) {
        let n = rng.random_range(3..=9);
        let p = rng.random_range(0.2..0.8);
        random_graph(rng, n, p)
    } else {
        let m: u32 = rng.random_range(2..=4);
        loop {
            let set: Vec<u32> = (1..(1u32 << m)).filter(|_| rng.random_bool(0.4)).collect();
            if !set.is_empty() {
                return cayley(m, &set);
            }
        }
    }
}

fn check_invariants(g: &Graph) -> Result<(), String> {
    let err = |e: eigenframe::Error| e.to_string();
    let fw = least_eigenvalue_framework(g, BackendChoice::Auto, DEFAULT_TOLERANCE).map_err(err)?;
    let spectrum = fw.spectrum().unwrap().clone();
    let a = ExactMatrix::adjacency(g);
    match (fw.gram(), &spectrum.tau) {
        (Matrix::Exact(e), Scalar::Exact(tau)) => {
            if e.mul(e) != *e {
                return Err("E^2 != E".into());
            }
            if a.mul(e) != e.scale(tau) {
                return Err("AP != tau P".into());
            }
            let z = canonical_stress(g, &spectrum).map_err(err)?;
            let c = z.check(&fw).map_err(err)?;
            if !c.all() {
                return Err(format!("stress conditions {c:?}"));
            }
        }
        (e, tau) => {
            let (e, tau, a) = (e.to_f64(), tau.to_f64(), a.to_f64());
            let p = fw.matrix().ok_or("no framework matrix")?.to_f64();
            if (&e * &e - &e).abs().max() > FLOAT_TOL || (&a * &p - &p * tau).abs().max() > FLOAT_TOL {
                return Err("E^2 != E or AP != tau P".into());
            }
            let z = &a - DMatrix::identity(g.order(), g.order()) * tau;
            let eig = nalgebra::SymmetricEigen::new(z.clone()).eigenvalues;
            let corank = eig.iter().filter(|v| v.abs() <= FLOAT_TOL).count();
            if eig.min() < -FLOAT_TOL || (&z * &p).abs().max() > FLOAT_TOL || corank != p.ncols() {
                return Err("floating stress conditions".into());
            }
        }
    }
    let xs = xspace(g, &spectrum).map_err(err)?;
    let phi = Phi::for_framework(&fw).map_err(err)?;
    for x in xs.basis.iter().take(3) {
        let r = phi.phi_inverse(x).map_err(err)?;
        let back = phi.phi(&r).map_err(err)?;
        if (back.to_f64() - x.to_f64()).abs().max() > FLOAT_TOL || (x.is_exact() && back != *x) {
            return Err("Phi round trip".into());
        }
        let q = dominated_frameworks(&fw, x, None).map_err(err)?;
        if !dominates(&fw, &q).map_err(err)? || !equal_on_close_pairs(&fw, &q) {
            return Err("dominated framework breaks equality on closed neighborhoods".into());
        }
    }
    Ok(())
}

fn check_walk_regular_constants(g: &Graph) -> Result<(), String> {
    let fw = least_eigenvalue_framework(g, BackendChoice::Auto, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let s = fw.spectrum().unwrap();
    let (n, d, r) = (g.order() as i64, s.tau_multiplicity as i64, g.regular_degree().ok_or("not regular")? as i64);
    match (fw.gram(), &s.tau) {
        (Matrix::Exact(e), Scalar::Exact(tau)) => {
            let a = BigRational::new(d.into(), n.into());
            let b = tau * BigRational::new(d.into(), (n * r).into());
            if (0..g.order()).any(|i| e[(i, i)] != a) || g.edges().any(|(i, j)| e[(i, j)] != b) {
                return Err("constants differ".into());
            }
        }
        (e, tau) => {
            let e = e.to_f64();
            let a = d as f64 / n as f64;
            let b = tau.to_f64() * d as f64 / (n * r) as f64;
            if (0..g.order()).any(|i| (e[(i, i)] - a).abs() > FLOAT_TOL)
                || g.edges().any(|(i, j)| (e[(i, j)] - b).abs() > FLOAT_TOL)
            {
                return Err("constants differ".into());
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for run in 0..INVARIANT_RUNS {
        let g = random_invariant_graph(&mut rng);
        if let Err(e) = check_invariants(&g) {
            failures.push(format!("run {run} ({}): {e}", eigenframe::graph::emit_graph6(&g)));
        }
    }
    let walk_regular = one_walk_regular_graphs();
    for (name, g) in &walk_regular {
        if let Err(e) = check_walk_regular_constants(g) {
            failures.push(format!("{name}: {e}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{INVARIANT_RUNS} random runs and {} 1-walk-regular graphs, zero failures", walk_regular.len()))
    } else {
        Err(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn criterion_8() -> Outcome {
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 1..=4 {
        graphs.extend(enumerate_orbits(n, 4).map_err(|e| e.to_string())?.iter().map(|s| cayley_z2(s).unwrap()));
    }
    let cayley_count = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.random_range(2..=9);
        let p = rng.random_range(0.2..0.9);
        graphs.push(random_graph(&mut rng, n, p));
    }
    let mut applicable = 0;
    for g in &graphs {
        let flags = ConditionFlags::evaluate(g).map_err(|e| e.to_string())?;
        if flags.neighborhood || flags.clique {
            applicable += 1;
            let r = is_universally_completable(g, BackendChoice::Auto, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
            if r.xspace.dim() != 0 {
                return Err(format!("{}: condition holds but dim X = {}", eigenframe::graph::emit_graph6(g), r.xspace.dim()));
            }
        }
    }
    Ok(format!("{cayley_count} Cayley + {RANDOM_GRAPHS} random graphs, {applicable} covered by a condition, zero counterexamples"))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Option<Outcome>>)> = vec![
        ("1  cayley survey counts, n <= 4", Box::new(|| Some(criterion_1()))),
        ("1b cayley survey counts, n = 5 (long)", Box::new(criterion_1_long)),
        ("2  odd cycles universally completable", Box::new(|| Some(criterion_2()))),
        ("3  Kneser graphs uniquely vector colorable", Box::new(|| Some(criterion_3()))),
        ("4  q-Kneser second optimal coloring", Box::new(|| Some(criterion_4()))),
        ("5  Kneser framework congruence", Box::new(|| Some(criterion_5()))),
        ("6  X-space dimension oracle, connected n <= 7", Box::new(|| Some(criterion_6()))),
        ("7  framework invariants", Box::new(|| Some(criterion_7()))),
        ("8  sufficient-condition soundness", Box::new(|| Some(criterion_8()))),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Some(Ok(msg)) => println!("PASS  criterion {name}: {msg}"),
            Some(Err(msg)) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
            None => println!("SKIP  criterion {name}: set EIGENFRAME_LONG=1 to run"),
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
