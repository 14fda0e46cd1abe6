//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use ainf_core::auslander::{product_index_inequality, quotient_index_inequality, AuslanderCategory};
use ainf_core::corpus;
use ainf_core::filtration::{appendix_filtration, check_filtration, degree_filtration, quotient_algebra, radical, Filtration};
use ainf_core::format::{category_to_spec, parse_cochain_spec, parse_spec, to_json, CochainSpec};
use ainf_core::hochschild::{
    coboundary_isomorphism, cochain_basis, cocycle_basis, deform_by_cocycle, hochschild_differential, random_combination,
    Bimodule, DeformOptions,
};
use ainf_core::perfmod::{sod_report, TwistedCategory};
use ainf_core::random::random_filtered_algebra;
use ainf_core::{AInfCategory, ExactField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const AC1_LIMIT: Duration = Duration::from_secs(1);
const AC3_LIMIT: Duration = Duration::from_secs(10);
const AC4_LIMIT: Duration = Duration::from_secs(120);
const AC5_LIMIT: Duration = Duration::from_secs(1);
const LIFT_ROUNDS: usize = 50;
const RANDOM_FILTERED: usize = 25;
const YONEDA_PAIRS: usize = 100;
const RANDOM_COCHAINS: usize = 50;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_path(name: &str) -> String {
    corpus_dir().join(name).to_string_lossy().into_owned()
}

fn toy_appendix() -> (AInfCategory, Filtration) {
    let r = corpus::toy();
    let (f, _) = appendix_filtration(&r, 1).expect("appendix filtration");
    (r, f)
}

fn ac1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, c) in corpus::associative_corpus() {
        let t = Instant::now();
        let rep = c.check_stasheff(None);
        let dt = t.elapsed();
        ensure(rep.passed(), || format!("{name} fails Stasheff: {}", rep.summary()))?;
        within(dt, AC1_LIMIT, name)?;
        slowest = slowest.max(dt);
    }
    let t = Instant::now();
    let rep = corpus::nonassoc().check_stasheff(None);
    within(t.elapsed(), AC1_LIMIT, "nonassoc")?;
    ensure(!rep.passed(), || "nonassoc passes Stasheff".into())?;
    let first = rep.witnesses().next().ok_or("no witness")?;
    ensure(first.arity == 3 && first.tuple == ["x", "x", "x"], || format!("first witness {:?} at n = {}", first.tuple, first.arity))?;
    Ok(format!("6 algebras pass, nonassoc fails at (x,x,x); slowest {slowest:.2?}"))
}

fn ac2() -> Outcome {
    let (r, f) = toy_appendix();
    ensure(f.dims() == [3, 2, 1, 1, 0] && f.n() == 4, || format!("dims {:?}, n = {}", f.dims(), f.n()))?;
    let rep = check_filtration(&r, &f).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || rep.summary())?;
    let (rbar, _) = quotient_algebra(&r, f.level(1)).map_err(|e| e.to_string())?;
    let rad = radical(&rbar).map_err(|e| e.to_string())?;
    ensure(rbar.dim() == 1 && rad.dim() == 0, || format!("R/F^1 dim {}, radical dim {}", rbar.dim(), rad.dim()))?;
    Ok("dims (3,2,1,1,0), n = 4, filtration check passes, R/F^1 = k".into())
}

fn ac3() -> Outcome {
    let t = Instant::now();
    let (r, f) = toy_appendix();
    let a = AuslanderCategory::build(&r, &f).map_err(|e| e.to_string())?;
    let expected = vec![vec![3, 2, 1, 1], vec![2, 2, 1, 0], vec![2, 2, 2, 1], vec![1, 1, 1, 1]];
    ensure(a.hom_dims() == expected, || format!("hom dims {:?}", a.hom_dims()))?;
    let bound = 2 * a.gamma().arity_bound() - 1;
    let rep = a.gamma().check_stasheff(Some(bound));
    ensure(rep.passed(), || rep.summary())?;
    let lifts = a.check_lift_independence(LIFT_ROUNDS, &mut ChaCha8Rng::seed_from_u64(0xac3));
    ensure(lifts.passed(), || lifts.summary())?;
    let dt = t.elapsed();
    within(dt, AC3_LIMIT, "build and checks")?;
    Ok(format!("hom dims match, Stasheff n <= {bound}, {LIFT_ROUNDS} lift perturbations; {dt:.2?}"))
}

fn ac4() -> Outcome {
    let t = Instant::now();
    let r = corpus::toy();
    let mut cases = vec![("toy+appendix".to_string(), toy_appendix().1, 4)];
    cases.push(("toy+degree".to_string(), degree_filtration(&r).map_err(|e| e.to_string())?, 2));
    for (label, f, n) in &cases {
        ensure(f.n() == *n, || format!("{label}: n = {}", f.n()))?;
        let a = AuslanderCategory::build(&r, f).map_err(|e| e.to_string())?;
        let rep = sod_report(&a).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{label}: {}", rep.report.summary()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xac4);
    for k in 0..RANDOM_FILTERED {
        let (alg, f) = random_filtered_algebra(5, &mut rng);
        ensure(alg.dim() <= 6 && f.n() <= 5, || format!("random #{k}: dim {}, n = {}", alg.dim(), f.n()))?;
        let check = check_filtration(&alg, &f).map_err(|e| e.to_string())?;
        ensure(check.passed(), || format!("random #{k}: {}", check.summary()))?;
        let a = AuslanderCategory::build(&alg, &f).map_err(|e| e.to_string())?;
        let rep = sod_report(&a).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("random #{k} dims {:?}: {}", f.dims(), rep.report.summary()))?;
    }
    let dt = t.elapsed();
    within(dt, AC4_LIMIT, "sod sweep")?;
    Ok(format!("toy (n = 4, n = 2) and {RANDOM_FILTERED} random filtered algebras; {dt:.2?}"))
}

fn ac5() -> Outcome {
    let t = Instant::now();
    let mut count = 0u64;
    for n in 1..=8usize {
        for p in 1..=6usize {
            let mut idx = vec![0usize; p + 1];
            loop {
                count += 1;
                ensure(product_index_inequality(&idx), || format!("product inequality fails at {idx:?}"))?;
                ensure(quotient_index_inequality(&idx, n), || format!("quotient inequality fails at {idx:?}, n = {n}"))?;
                let mut pos = 0;
                while pos < idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
    }
    let dt = t.elapsed();
    within(dt, AC5_LIMIT, "exhaustive sweep")?;
    Ok(format!("{count} index tuples; {dt:.2?}"))
}

fn ac6() -> Outcome {
    let r = corpus::toy();
    let chain = corpus::two_degree_chain();
    let filtered = [
        toy_appendix(),
        (r.clone(), degree_filtration(&r).map_err(|e| e.to_string())?),
        (chain.clone(), appendix_filtration(&chain, 1).map_err(|e| e.to_string())?.0),
    ];
    let gammas: Vec<AuslanderCategory> =
        filtered.iter().map(|(r, f)| AuslanderCategory::build(r, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let tws: Vec<TwistedCategory> =
        gammas.iter().map(|a| TwistedCategory::new(a.gamma())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xac6);
    let mut nonzero = 0;
    for k in 0..YONEDA_PAIRS {
        let which = k % tws.len();
        let tw = &tws[which];
        let steps = rng.gen_range(1..=3);
        let y = tw.random_complex(steps, &mut rng);
        let j = rng.gen_range(0..gammas[which].n());
        let p = tw.representable(j, 0).map_err(|e| e.to_string())?;
        let lhs = tw.hom_complex(&p, &y).dims();
        let rhs = tw.evaluate_at(&y, j).cohomology().dims();
        ensure(lhs == rhs, || format!("pair #{k}: hom dims {lhs:?}, evaluation dims {rhs:?}"))?;
        if !lhs.is_empty() {
            nonzero += 1;
        }
    }
    Ok(format!("{YONEDA_PAIRS} pairs over 3 Auslander categories agree ({nonzero} with nonzero cohomology)"))
}

fn ac7() -> Outcome {
    let q = ExactField::Rationals;
    let mut algebras = corpus::associative_corpus();
    algebras.push(("toy", corpus::toy()));
    algebras.push(("two_degree_chain", corpus::two_degree_chain()));
    algebras.retain(|(_, c)| c.dim() <= 5);
    let mut rng = ChaCha8Rng::seed_from_u64(0xac7);
    // (algebra, degree) pairs with nonzero normalized cochains
    let mut slots = Vec::new();
    for (name, c) in &algebras {
        let m = Bimodule::diagonal(c);
        for n in 2..=3i64 {
            let all = cochain_basis(c, &m, n, n as usize, true);
            if !all.is_empty() {
                let closed = cocycle_basis(c, &m, n, n as usize).map_err(|e| e.to_string())?;
                slots.push((*name, c, m.clone(), n, all, closed));
            }
        }
    }
    let (mut cocycles, mut others) = (0, 0);
    let mut drawn = 0;
    let mut attempt = 0usize;
    while drawn < RANDOM_COCHAINS {
        let (name, c, m, n, all, closed_basis) = &slots[attempt % slots.len()];
        // every other draw comes from the cocycle space so both sides of the
        // equivalence are exercised
        let basis = if attempt % 2 == 0 { all } else { closed_basis };
        attempt += 1;
        let eta = random_combination(basis, *n, q, &mut rng);
        if eta.is_zero() {
            continue;
        }
        drawn += 1;
        eta.check_normalized(c).map_err(|e| format!("{name}: {e}"))?;
        let closed = hochschild_differential(c, m, &eta).map_err(|e| e.to_string())?.is_zero();
        let e = deform_by_cocycle(c, m, &eta, DeformOptions::default()).map_err(|e| e.to_string())?;
        let stasheff = e.check_stasheff(None).passed();
        ensure(closed == stasheff, || format!("{name} n = {n}: cocycle {closed}, Stasheff {stasheff}"))?;
        if closed {
            cocycles += 1;
        } else {
            others += 1;
        }
    }
    ensure(cocycles > 0 && others > 0, || format!("one-sided sample: {cocycles} cocycles, {others} others"))?;
    let mut coboundaries = 0;
    let mut strict = 0;
    for (name, c) in &algebras {
        let m = Bimodule::diagonal(c);
        for k in 1..=2usize {
            let basis = cochain_basis(c, &m, k as i64, k, true);
            for _ in 0..2 {
                let phi = random_combination(&basis, k as i64, q, &mut rng);
                let (deformed, plain, f) = coboundary_isomorphism(c, &m, &phi).map_err(|e| e.to_string())?;
                ensure(deformed.check_stasheff(None).passed(), || format!("{name}: deformation by a coboundary fails"))?;
                let rep = f.verify(&deformed, &plain, None);
                ensure(rep.passed(), || format!("{name}: 1 + phi is not an isomorphism: {}", rep.summary()))?;
                coboundaries += 1;
                if f.is_strict() {
                    strict += 1;
                }
            }
        }
    }
    Ok(format!(
        "{RANDOM_COCHAINS} nonzero cochains over {} (algebra, degree) pairs ({cocycles} cocycles, {others} not); {coboundaries} coboundaries with verified 1 + phi ({strict} strict)",
        slots.len()
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ainf_cli::run(std::iter::once("ainf").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn canonical(text: &str) -> Result<String, String> {
    let w = parse_spec(text).and_then(|s| s.load()).map_err(|e| e.to_string())?;
    Ok(to_json(&category_to_spec(&w.category, w.filtration.as_ref(), w.kappa)))
}

fn ac8() -> Outcome {
    let (code, out) = cli(&["sod", &corpus_path("toy.json"), "--format", "json"]);
    let report: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(code == 0 && report["verdict"] == "PASS", || format!("sod exit {code}"))?;
    for key in ["hom_P_S", "hom_S_S"] {
        let rows = report["tables"][key].as_array().map(|r| r.len());
        ensure(rows == Some(4), || format!("{key} has {rows:?} rows"))?;
    }

    let (code, out) = cli(&["stasheff", &corpus_path("nonassoc.json"), "--format", "json"]);
    let report: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let w = &report["witnesses"][0];
    ensure(code == 1 && w["n"] == 3 && w["tuple"] == serde_json::json!(["x", "x", "x"]), || {
        format!("stasheff exit {code}, first witness {w}")
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let g = dir.path().join("gamma.json").to_string_lossy().into_owned();
    let (code, _) = cli(&["gamma", "build", &corpus_path("toy.json"), "-o", &g]);
    ensure(code == 0, || format!("gamma build exit {code}"))?;
    let (code, _) = cli(&["validate", &g]);
    ensure(code == 0, || format!("validate exit {code}"))?;
    let gamma_text = std::fs::read_to_string(&g).map_err(|e| e.to_string())?;
    ensure(canonical(&gamma_text)? == gamma_text, || "gamma file does not round-trip".into())?;

    let mut files = 0;
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir()).map_err(|e| e.to_string())?.flatten().map(|e| e.path()).collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if let Ok(cochain) = parse_cochain_spec(&text) {
            let base = corpus::dual_numbers();
            let (m, phi) = cochain.load(&base).map_err(|e| e.to_string())?;
            let once = to_json(&CochainSpec::from_cochain(&base, &m, &cochain.bimodule, &phi));
            let (m2, phi2) = parse_cochain_spec(&once).and_then(|s| s.load(&base)).map_err(|e| e.to_string())?;
            let twice = to_json(&CochainSpec::from_cochain(&base, &m2, &cochain.bimodule, &phi2));
            ensure(once == twice, || format!("{name} does not round-trip"))?;
        } else {
            let once = canonical(&text)?;
            ensure(canonical(&once)? == once, || format!("{name} does not round-trip"))?;
        }
        files += 1;
    }
    // filtered files and the Auslander category as well
    let (r, f) = toy_appendix();
    let a = AuslanderCategory::build(&r, &f).map_err(|e| e.to_string())?;
    for text in [to_json(&category_to_spec(&r, Some(&f), Some(1))), to_json(&category_to_spec(a.gamma(), None, None))] {
        ensure(canonical(&text)? == text, || "filtered TOY or its Auslander category does not round-trip".into())?;
    }
    Ok(format!("sod exit 0, stasheff exit 1 at (x,x,x), gamma build+validate exit 0; {files} corpus files round-trip"))
}

fn main() {
    let criteria: [(&str, Criterion); 8] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7), ("AC8", ac8)];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        match outcome {
            Ok(detail) => println!("{name} PASS {detail} [{dt:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("{name} FAIL {why} [{dt:.2?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
