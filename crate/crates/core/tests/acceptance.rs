//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p ordtop --test acceptance`.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ordtop::harness::{
    check_alexandrov_antitone, check_chain_restriction, check_decision_procedure, check_linear_extensions_lsc,
    check_lsc_iff_upper, check_scott_necessity, check_topology_coincidence, chain_pivot_pairs, derive_seed,
    random_instance, TheoremReport,
};
use ordtop::io::parse_instance;
use ordtop::representation::{
    construct_finite_lsc_rp_multiutility, construct_indicator_multiutility, construct_rp_utility, is_multiutility,
    is_richter_peleg_multiutility, preorder_semicontinuity, semicontinuity, PreorderSemicontinuity,
    SemicontinuityKind,
};
use ordtop::{ContourKind, Error, FunctionFamily, LscRpResult, Preorder, Topology, ValueFunction};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_violations(r: &TheoremReport) -> Result<(), String> {
    match r.violations.first() {
        None => Ok(()),
        Some(v) => Err(format!("{:?} violated: {} on {:?}", v.theorem, v.detail, v.case)),
    }
}

/// Counts reflexive-transitive boolean matrices on `n` points by
/// filtering every matrix, independently of `Preorder::enumerate_all`.
fn count_preorder_matrices(n: usize) -> (usize, HashSet<Vec<Vec<bool>>>) {
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut found = HashSet::new();
    for mask in 0u64..1 << off.len() {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in off.iter().enumerate() {
            m[i][j] = mask >> bit & 1 == 1;
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(m[i][j] && m[j][k]) || m[i][k])));
        if transitive {
            found.insert(m);
        }
    }
    (found.len(), found)
}

fn random_preorder(rng: &mut StdRng, sizes: std::ops::RangeInclusive<usize>) -> Preorder {
    let n = rng.gen_range(sizes);
    let density = rng.gen_range(0.05..0.5);
    Preorder::random(n, density, rng)
}

/// The 1000 seeded (preorder, topology) pairs shared by criteria 2 and 3.
fn seeded_pairs() -> Vec<(Preorder, Topology)> {
    (0..1000u64)
        .map(|i| {
            let mut rng = StdRng::seed_from_u64(derive_seed(2024, i));
            random_instance(&mut rng, 6)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let expected_counts = [1usize, 4, 29, 355];
    let mut checked = 0;
    for n in 1..=4 {
        let all = Preorder::enumerate_all(n).map_err(|e| e.to_string())?;
        let (count, matrices) = count_preorder_matrices(n);
        ensure(count == expected_counts[n - 1], || format!("matrix counter found {count} preorders on {n}"))?;
        ensure(all.len() == count, || format!("enumeration produced {} preorders on {n}, counter {count}", all.len()))?;
        let enumerated: HashSet<Vec<Vec<bool>>> = all.iter().map(Preorder::matrix).collect();
        ensure(enumerated == matrices, || format!("enumerated family differs from counter on {n}"))?;
        for p in &all {
            no_violations(&check_topology_coincidence(p).map_err(|e| e.to_string())?)?;
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..500 {
        let p = random_preorder(&mut rng, 5..=6);
        let (u, s, a) = (Topology::upper(&p), Topology::scott(&p).map_err(|e| e.to_string())?, Topology::alexandrov(&p));
        ensure(s.is_finer(&u).unwrap().holds() && a.is_finer(&s).unwrap().holds(), || {
            format!("inclusion chain broken on {:?}", p.matrix())
        })?;
        ensure(u == s && s == a, || format!("families differ on {:?}", p.matrix()))?;
        checked += 1;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:.2?}, budget 30 s"))?;
    Ok(format!("355 preorders on 4 points (matrix counter agrees); {checked} preorders, all three families equal; {elapsed:.2?}"))
}

fn criterion_2(pairs: &[(Preorder, Topology)]) -> Outcome {
    let mut both_false = 0;
    let mut both_true = 0;
    for (p, t) in pairs {
        ensure(p.len() <= 6, || "instance larger than 6".into())?;
        let r = check_lsc_iff_upper(p, t).map_err(|e| e.to_string())?;
        no_violations(&r)?;
        // recount both sides directly
        let lsc = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower).unwrap().holds();
        let finer = t.is_finer(&Topology::upper(p)).unwrap().holds();
        ensure(lsc == finer, || "sides disagree".into())?;
        if lsc {
            both_true += 1;
        } else {
            both_false += 1;
        }
    }
    ensure(both_false >= 200, || format!("only {both_false} pairs with both sides false, need 200"))?;
    Ok(format!("{} pairs, 0 violations, {both_true} both true, {both_false} both false", pairs.len()))
}

fn criterion_3(pairs: &[(Preorder, Topology)]) -> Outcome {
    let (mut families, mut obstructions) = (0, 0);
    for (p, t) in pairs {
        no_violations(&check_decision_procedure(p, t).map_err(|e| e.to_string())?)?;
        no_violations(&check_scott_necessity(p, t).map_err(|e| e.to_string())?)?;
        let lsc = preorder_semicontinuity(p, t, PreorderSemicontinuity::Lower).unwrap().holds();
        match construct_finite_lsc_rp_multiutility(p, t).unwrap() {
            LscRpResult::Family(f) => {
                ensure(lsc, || "family for a non-lsc preorder".into())?;
                ensure(f.len() <= p.len(), || "family larger than |X|".into())?;
                ensure(is_richter_peleg_multiutility(&f, p).unwrap().holds(), || "family not RP".into())?;
                for g in f.members() {
                    ensure(semicontinuity(g, t, SemicontinuityKind::Lower).unwrap().holds(), || {
                        "member not lsc".into()
                    })?;
                }
                ensure(t.is_finer(&Topology::scott(p).unwrap()).unwrap().holds(), || "τ not finer than Scott".into())?;
                families += 1;
            }
            LscRpResult::Obstruction(a) => {
                ensure(!lsc, || "obstruction for an lsc preorder".into())?;
                let contour = p.contour(a, ContourKind::WeakLower).unwrap();
                ensure(!t.is_closed(contour).unwrap(), || "obstruction contour is closed".into())?;
                obstructions += 1;
            }
        }
    }
    Ok(format!("{families} families verified, {obstructions} obstructions verified, 0 violations"))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut strict = 0;
    for _ in 0..500 {
        let p = random_preorder(&mut rng, 1..=6);
        let n = p.len();
        let forced: Vec<(usize, usize)> =
            (0..rng.gen_range(1..=4)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let fine = p.extend_with(&forced).unwrap();
        let r = check_alexandrov_antitone(&p, &fine).map_err(|e| e.to_string())?;
        no_violations(&r)?;
        strict += r.premise_held;
    }
    Ok(format!("500 pairs, {strict} strict refinements, 0 violations"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..200u64 {
        let p = random_preorder(&mut rng, 1..=6);
        let t = Topology::alexandrov(&p).random_between(derive_seed(5, i), rng.gen_range(0..=3));
        no_violations(&check_linear_extensions_lsc(&p, &t, 10, i).map_err(|e| e.to_string())?)?;
    }
    let mut succeeded = 0;
    let mut rejected = 0;
    for call in 0..1000u64 {
        let p = random_preorder(&mut rng, 1..=6);
        let n = p.len();
        let incomparable: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p.incomparable(a, b)).collect();
        let forced: Vec<(usize, usize)> = if incomparable.is_empty() {
            Vec::new()
        } else {
            (0..rng.gen_range(0..=2)).map(|_| incomparable[rng.gen_range(0..incomparable.len())]).collect()
        };
        match p.szpilrajn_extension(&forced, call) {
            Ok(ext) => {
                ensure(ext.is_total(), || "extension not total".into())?;
                ensure(p.is_contained_in(&ext).holds(), || "extension drops a pair".into())?;
                for a in 0..n {
                    for b in 0..n {
                        ensure(!p.lt(a, b) || ext.lt(a, b), || "strict pair not preserved".into())?;
                    }
                }
                ensure(forced.iter().all(|&(a, b)| ext.lt(a, b)), || "forced pair not strict".into())?;
                succeeded += 1;
            }
            Err(Error::InconsistentForcing(..)) => {
                // independently confirm: some forced (a, b) ends up with b ≾ a
                let closed = p.extend_with(&forced).unwrap();
                ensure(forced.iter().any(|&(a, b)| closed.leq(b, a)), || "spurious InconsistentForcing".into())?;
                rejected += 1;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "200 instances with τ ⊇ Alexandrov, all extensions lsc; 1000 Szpilrajn calls ({succeeded} extensions verified, {rejected} inconsistent forcings confirmed)"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut non_vacuous = 0;
    for n in 1..=4 {
        let preorders = Preorder::enumerate_all(n).unwrap();
        let mut topologies: Vec<Topology> = preorders.iter().map(Topology::alexandrov).collect();
        for (k, q) in preorders.iter().enumerate() {
            topologies.push(Topology::upper(q).random_between(derive_seed(6, k as u64), 1));
        }
        let mut seen = HashSet::new();
        topologies.retain(|t| seen.insert(t.clone()));
        for p in &preorders {
            for (chain, pivot) in chain_pivot_pairs(p) {
                for t in &topologies {
                    let r = check_chain_restriction(p, t, chain, pivot).map_err(|e| e.to_string())?;
                    no_violations(&r)?;
                    checked += 1;
                    non_vacuous += r.premise_held;
                }
            }
        }
    }
    ensure(non_vacuous >= 50, || format!("only {non_vacuous} non-vacuous instances"))?;
    Ok(format!("{checked} (preorder, chain, pivot, topology) instances, {non_vacuous} non-vacuous, 0 violations"))
}

fn vf(v: &[i64]) -> ValueFunction {
    ValueFunction::from_integers(v)
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn criterion_7() -> Outcome {
    let vee = Preorder::build(&["a", "b", "c"], &[("a", "c"), ("b", "c")], true).unwrap();
    let indicator = FunctionFamily::new(vec![vf(&[1, 0, 1]), vf(&[0, 1, 1]), vf(&[0, 0, 1])]);
    ensure(construct_indicator_multiutility(&vee) == indicator, || "indicator family differs".into())?;
    ensure(construct_rp_utility(&vee) == vf(&[1, 1, 2]), || "f differs from (1,1,2)".into())?;
    let f = construct_rp_utility(&vee);
    ensure(f.max().unwrap() + 1 == ordtop::Rational::from_integer(3), || "scale is not 3".into())?;
    let g = FunctionFamily::new(vec![vf(&[1, 4, 5]), vf(&[4, 1, 5]), vf(&[1, 1, 2])]);
    let built = construct_finite_lsc_rp_multiutility(&vee, &Topology::upper(&vee)).unwrap();
    ensure(built == LscRpResult::Family(g), || format!("g-family differs: {built:?}"))?;

    let text = std::fs::read_to_string(fixtures_dir().join("two_copies.json")).map_err(|e| e.to_string())?;
    let doc = parse_instance(&text).map_err(|e| e.to_string())?;
    let p = doc.preorder().map_err(|e| e.to_string())?;
    ensure(p.len() == 10, || "truncation should have 10 points".into())?;
    let family = doc.family().map_err(|e| e.to_string())?.ok_or("no functions in fixture")?;
    match is_multiutility(&family, &p).map_err(|e| e.to_string())?.into_witness() {
        None => Ok("vee values reproduce; two-copies truncation represented by printed u, v".into()),
        Some(w) => {
            let (u, v) = (&family.members()[0], &family.members()[1]);
            Err(format!(
                "vee values reproduce, but the printed u, v do not represent the two-copies truncation: \
                 {} and {} are {:?} yet u = ({}, {}), v = ({}, {}) ({:?})",
                p.label(w.x),
                p.label(w.y),
                p.classify_pair(w.x, w.y).unwrap(),
                u.value(w.x),
                u.value(w.y),
                v.value(w.x),
                v.value(w.y),
                w.failure,
            ))
        }
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordtop")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_8() -> Outcome {
    let dir = fixtures_dir();
    let mut fixtures: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    fixtures.sort();
    for path in &fixtures {
        let doc = parse_instance(&std::fs::read_to_string(path).unwrap()).map_err(|e| format!("{path:?}: {e}"))?;
        let again = parse_instance(&doc.to_json()).map_err(|e| e.to_string())?;
        ensure(again == doc, || format!("round trip changed {path:?}"))?;
        ensure(again.to_json() == doc.to_json(), || format!("text round trip changed {path:?}"))?;
    }

    let started = Instant::now();
    let (code, out) = cli(&["theorems", "--all", "--max-size", "4"]);
    let elapsed = started.elapsed();
    ensure(code == 0, || format!("theorems exited {code}:\n{out}"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("theorems took {elapsed:.2?}"))?;

    let scratch = std::env::temp_dir().join(format!("ordtop-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    let chain = dir.join("chain.json");
    let vee = dir.join("vee.json");
    let two = dir.join("two_copies.json");
    let antichain = dir.join("antichain.json");
    let failing: [(&str, Vec<&str>); 4] = [
        ("check-lsc", vec!["check-lsc", chain.to_str().unwrap(), "--topology", "indiscrete", "--json"]),
        ("decide-rp", vec!["decide-rp", chain.to_str().unwrap(), "--topology", "indiscrete", "--json"]),
        ("represent", vec!["represent", two.to_str().unwrap(), "--json"]),
        ("represent-antichain", vec!["represent", antichain.to_str().unwrap(), "--json"]),
    ];
    for (name, args) in failing {
        let (code, out) = cli(&args);
        ensure(code == 1, || format!("{name} exited {code}"))?;
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let witness = scratch.join(format!("{name}.json"));
        std::fs::write(&witness, v["witness"].to_string()).unwrap();
        let (code, out) = cli(&["validate", args[1], "--witness", witness.to_str().unwrap()]);
        ensure(code == 0, || format!("validate did not confirm the {name} witness: {out}"))?;
    }
    let (code, out) = cli(&["decide-rp", vee.to_str().unwrap(), "--topology", "upper"]);
    ensure(code == 0 && out.contains("Family of 3 functions"), || format!("decide-rp on vee: {out}"))?;
    let _ = std::fs::remove_dir_all(&scratch);
    Ok(format!(
        "{} fixtures round-trip; theorems --all --max-size 4 exit 0 in {elapsed:.2?}; 4 failure witnesses confirmed by validate",
        fixtures.len()
    ))
}

fn main() {
    // `cargo test` passes harness flags such as `--quiet`; a listing request
    // must not run the suite.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let started = Instant::now();
    let pairs = seeded_pairs();
    let criteria: Vec<Criterion> = vec![
        ("1 topology coincidence and inclusion", Box::new(criterion_1)),
        ("2 lsc iff finer than Upper", Box::new(|| criterion_2(&pairs))),
        ("3 decision procedure soundness", Box::new(|| criterion_3(&pairs))),
        ("4 Alexandrov antitonicity", Box::new(criterion_4)),
        ("5 linear extensions lsc", Box::new(criterion_5)),
        ("6 chain restriction", Box::new(criterion_6)),
        ("7 representation fixtures", Box::new(criterion_7)),
        ("8 CLI round trip and witnesses", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail} ({:.2?})", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({:.2?})", t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
