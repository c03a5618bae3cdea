//! Acceptance criteria, one PASS/FAIL line each. Runs the `kmetric` binary
//! in sequential mode with the default budget; exits nonzero if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use kmetric_core::families::{divergence_evidence, ladder_label, lollipop_bases, make, DivergenceFamily};
use kmetric_core::{FamilySpec, PointSet, SolveOptions};
use serde_json::{json, Value};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn run_raw(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kmetric"))
        .args(args)
        .env_remove("KMETRIC_BUDGET_SECS")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (stdout, code) = run_raw(&all)?;
    if code != 0 {
        return Err(format!("{args:?} exited with {code}"));
    }
    serde_json::from_slice(&stdout).map_err(|e| format!("{args:?}: {e}"))
}

fn sequence(family: &str) -> Result<(Value, Value), String> {
    let v = run_json(&["sequence", "--family", family])?;
    Ok((v["sequence"].clone(), v["tail_start"].clone()))
}

fn expect_sequence(family: &str, entries: Vec<u64>, tail: u64) -> Check {
    let (seq, ts) = sequence(family)?;
    if seq != json!(entries) || ts != json!(tail) {
        return Err(format!("{family}: got {seq} tail {ts}, want {entries:?} tail {tail}"));
    }
    Ok(())
}

fn within(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c1() -> Check {
    within(secs(10), || expect_sequence("petersen", vec![3, 4, 7, 8, 9, 10], 7))
}

fn c2() -> Check {
    within(secs(1), || {
        for n in 3..=8u64 {
            expect_sequence(&format!("complete:{n}"), vec![n - 1, n], 3)?;
        }
        Ok(())
    })
}

fn c3() -> Check {
    within(secs(5), || {
        for n in 2..=10u64 {
            let entries = if n <= 3 { vec![1, 2] } else { [1, 2].into_iter().chain(4..=n).collect() };
            let tail = entries.len() as u64 + 1;
            expect_sequence(&format!("path:{n}"), entries, tail)?;
        }
        Ok(())
    })
}

fn c4() -> Check {
    within(secs(30), || {
        expect_sequence("cycle:7", vec![2, 3, 4, 5, 6, 7], 7)?;
        expect_sequence("cycle:8", vec![2, 3, 4, 6, 7, 8], 7)?;
        for n in (3..=11u64).step_by(2) {
            let (seq, _) = sequence(&format!("cycle:{n}"))?;
            for k in 1..n {
                if seq[(k - 1) as usize] != json!(k + 1) {
                    return Err(format!("C{n}: dim_{k} = {}, want {}", seq[(k - 1) as usize], k + 1));
                }
            }
        }
        for q in 3..=5u64 {
            let entries: Vec<u64> = (2..=q).chain(q + 2..=2 * q).collect();
            let tail = entries.len() as u64 + 1;
            expect_sequence(&format!("cycle:{}", 2 * q), entries, tail)?;
        }
        Ok(())
    })
}

fn c5() -> Check {
    within(secs(5), || {
        for t in 2..=4usize {
            let family = format!("lollipop:5,{t}");
            let (seq, _) = sequence(&family)?;
            for k in 1..=4usize {
                if seq[k - 1] != json!(k + 1) {
                    return Err(format!("{family}: dim_{k} = {}, want {}", seq[k - 1], k + 1));
                }
            }
            let space = make(&FamilySpec::Lollipop { cycle: 5, tail: t })
                .map_err(|e| e.to_string())?
                .metric()
                .map_err(|e| e.to_string())?;
            for (i, labels) in lollipop_bases(t).iter().enumerate() {
                let set = PointSet::new(labels.iter().map(|l| space.index_of(l).expect("label")));
                let k = i + 1;
                if !space.is_k_generator(&set, k).valid || set.len() != k + 1 {
                    return Err(format!("{family}: S{k} = {labels:?} is not a {k}-basis"));
                }
            }
        }
        Ok(())
    })
}

fn c6() -> Check {
    within(secs(1), || {
        for m in 4..=8u64 {
            let family = format!("sqrt-primes:{m}");
            let v = run_json(&["analyze", "--family", &family, "--bisectors"])?;
            let bisectors = v["bisectors"].as_array().ok_or("no bisectors")?;
            if let Some(b) = bisectors.iter().find(|b| b["bisector"] != json!([])) {
                return Err(format!("{family}: non-empty bisector {b}"));
            }
            let (seq, _) = sequence(&family)?;
            if seq != json!((1..=m).collect::<Vec<_>>()) {
                return Err(format!("{family}: {seq}"));
            }
        }
        Ok(())
    })
}

fn c7() -> Check {
    within(secs(1), || {
        let mut cases = vec![("petersen".to_string(), 6), ("lollipop:5,4".into(), 4), ("cycle:7".into(), 6)];
        cases.extend((3..=8).map(|n| (format!("complete:{n}"), 2)));
        for (family, want) in cases {
            let v = run_json(&["analyze", "--family", &family])?;
            if v["max_k"] != json!(want) {
                return Err(format!("{family}: max_k = {}, want {want}", v["max_k"]));
            }
        }
        Ok(())
    })
}

fn suite_all_pass(v: &Value, cases: Option<u64>) -> Check {
    for suite in v["suites"].as_array().ok_or("no suites")? {
        for p in suite["properties"].as_array().ok_or("no properties")? {
            if p["passed"] != p["cases"] || cases.is_some_and(|c| p["cases"].as_u64() < Some(c)) {
                return Err(format!("{} / {}: {}/{}", suite["suite"], p["property"], p["passed"], p["cases"]));
            }
        }
    }
    Ok(())
}

fn c8() -> Check {
    within(secs(600), || {
        let v = run_json(&["verify", "--suite", "oracle", "--random", "200", "--n", "12", "--seed", "0"])?;
        suite_all_pass(&v, Some(200))
    })
}

fn c9() -> Check {
    for (suite, random, cases) in [
        ("monotonicity", "100", 100),
        ("truncation", "50", 150),
        ("nesting", "50", 50),
        ("join", "50", 50),
        ("trivial-join", "20", 20),
        ("bipartite", "20", 22),
    ] {
        let v = run_json(&["verify", "--suite", suite, "--random", random, "--seed", "0"])?;
        suite_all_pass(&v, Some(cases))?;
    }
    Ok(())
}

fn c10() -> Check {
    let dir = std::env::temp_dir().join(format!("kmetric-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let x1 = dir.join("x1.json");
    let x2 = dir.join("x2.json");
    std::fs::write(&x1, r#"{"labels": ["1", "3"], "points": [[1], [3]]}"#).map_err(|e| e.to_string())?;
    std::fs::write(&x2, r#"{"labels": ["2", "4"], "points": [[2], [4]]}"#).map_err(|e| e.to_string())?;
    let v = run_json(&["join", "--input", x1.to_str().unwrap(), "--input", x2.to_str().unwrap(), "--t", "1"]);
    let _ = std::fs::remove_dir_all(&dir);
    let row = v?["table"][0].clone();
    if row["sum"] != json!(2) || row["join"] != json!(3) {
        return Err(format!("dim_1(X1)+dim_1(X2) = {}, dim_1 of join = {}, want 2 and 3", row["sum"], row["join"]));
    }
    Ok(())
}

fn c11() -> Check {
    let opts = SolveOptions::default();
    let free = divergence_evidence(DivergenceFamily::FreeBall { rank: 2 }, &[1, 2, 3], &opts)
        .map_err(|e| e.to_string())?;
    let dims: Vec<String> = free.radii.iter().map(|r| r.dim1.to_string()).collect();
    let mut problems = Vec::new();
    if !free.dim1_strictly_increasing || !free.radii.iter().all(|r| r.dim1_exact) {
        problems.push(format!("free-ball(2,r) dim_1 = {dims:?} not strictly increasing"));
    }
    let mut ladder_dims = Vec::new();
    for r in 3..=6usize {
        let v = run_json(&["analyze", "--family", &format!("ladder:{r}")])?;
        let dim1 = v["results"][0]["dim_k"].clone();
        ladder_dims.push(dim1.to_string());
        if dim1 != json!(3) {
            problems.push(format!("ladder({r}) dim_1 = {dim1}, want 3"));
        }
        let space = make(&FamilySpec::Ladder(r)).map_err(|e| e.to_string())?.metric().map_err(|e| e.to_string())?;
        let basis = PointSet::new(
            [ladder_label(0, 0), ladder_label(1, 0), ladder_label(0, 1)].iter().map(|l| space.index_of(l).expect("label")),
        );
        if !space.is_k_generator(&basis, 1).valid {
            problems.push(format!("ladder({r}): {{0,1,i}} is not a 1-generator"));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(format!("{} [free-ball dim_1 {dims:?}, ladder dim_1 {ladder_dims:?}]", problems.join("; ")))
    }
}

fn c12() -> Check {
    let mut commands: Vec<Vec<String>> = Vec::new();
    let mut fam = |cmd: &str, f: String| commands.push(vec![cmd.into(), "--family".into(), f, "--format".into(), "json".into()]);
    fam("sequence", "petersen".into());
    for n in 3..=8 {
        fam("sequence", format!("complete:{n}"));
        fam("analyze", format!("complete:{n}"));
    }
    for n in 2..=10 {
        fam("sequence", format!("path:{n}"));
    }
    for n in 3..=12 {
        fam("sequence", format!("cycle:{n}"));
    }
    for t in 2..=4 {
        fam("sequence", format!("lollipop:5,{t}"));
    }
    for m in 4..=8 {
        fam("sequence", format!("sqrt-primes:{m}"));
    }
    for f in ["petersen", "lollipop:5,4", "cycle:7"] {
        fam("analyze", f.into());
    }
    for args in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, _) = run_raw(&args)?;
        let (b, _) = run_raw(&args)?;
        if a != b || a.is_empty() {
            return Err(format!("{args:?}: outputs differ"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Petersen sequence (3,4,7,8,9,10), tail_start 7", c1),
        ("complete graphs K3..K8: (n-1, n), tail_start 3", c2),
        ("paths P2..P10", c3),
        ("cycles: C7, C8, odd n <= 11, C6/C8/C10", c4),
        ("lollipop(5,t), t = 2..4: dim_k = k+1 and S1..S4 validate", c5),
        ("sqrt-primes(m), m = 4..8: empty bisectors, dim_k = k", c6),
        ("max_k: Petersen 6, K_n 2, lollipop(5,4) 4, C7 6", c7),
        ("oracle equivalence on 200 random graphs, n <= 12", c8),
        ("property suites", c9),
        ("two-point line join at t = 1: dim_1 of join = 3", c10),
        ("divergence: free-ball dim_1 increasing, ladder dim_1 = 3 with {0,1,i}", c11),
        ("determinism of JSON output for criteria 1-7", c12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}  ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
