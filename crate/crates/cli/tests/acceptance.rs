//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails for a reason not recorded as a known gap.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use multiserial::dsl::parse;
use multiserial::endalgebra::{end_algebra, reduce_by_socles, verify_repdim_le_3, ProjectiveDimension, DEFAULT_BOUND};
use multiserial::fuzz::{fuzz_generator, FuzzLimits};
use multiserial::pipeline::{auslander_generator, run_theorem1, SplitSide};
use multiserial::presentation::{RelationClass, Side};
use multiserial::representations::{hom, injective_module, projective_module};
use multiserial::{Presentation, Shape};

enum Verdict {
    Pass(String),
    Fail(String),
    /// Fails as stated; the failure matches a documented counterexample family.
    KnownGap(String),
}

type Outcome = Result<Verdict, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Ok(Verdict::Fail(format!($($arg)*)));
        }
    };
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    files.sort();
    files
}

fn corpus() -> Vec<Presentation> {
    corpus_files()
        .iter()
        .filter_map(|f| parse(&std::fs::read_to_string(f).ok()?).ok())
        .collect()
}

fn load(name: &str) -> Presentation {
    parse(&std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file")).expect("parses")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut over_budget = 0;
    let mut flat_steps = 0;
    let mut unexplained = Vec::new();
    for seed in 1..=200 {
        let p = fuzz_generator(seed, FuzzLimits::default()).map_err(|e| e.to_string())?;
        let t = run_theorem1(&p).map_err(|e| format!("seed {seed}: {e}"))?;
        let radical = p.basis().map_err(|e| e.to_string())?.radical_dimension();
        let q = p.quiver();
        let wide = q.vertices().any(|v| q.out_degree(v) >= 3 || q.in_degree(v) >= 3);
        if t.steps.len() > t.initial_c {
            over_budget += 1;
            if !wide {
                unexplained.push(format!("seed {seed}: {} steps for c = {}", t.steps.len(), t.initial_c));
            }
        }
        let mut c = t.initial_c;
        for s in &t.steps {
            ensure!(s.result.is_monomial(), "seed {seed}: intermediate not monomial");
            ensure!(
                s.result.check_condition_s().map_err(|e| e.to_string())?.holds,
                "seed {seed}: intermediate fails (S)"
            );
            ensure!(s.witness.radical_dimension() == radical, "seed {seed}: radical dimension changed");
            ensure!(
                s.result.basis().map_err(|e| e.to_string())?.radical_dimension() == radical,
                "seed {seed}: radical of split differs"
            );
            if s.c_after >= c {
                flat_steps += 1;
                let bq = s.before.quiver();
                let degree = match s.side {
                    SplitSide::S => bq.out_degree(s.datum.vertex),
                    SplitSide::E => bq.in_degree(s.datum.vertex),
                };
                if degree < 3 {
                    unexplained.push(format!("seed {seed}: c did not drop at a vertex of degree {degree}"));
                }
            }
            c = s.c_after;
        }
        ensure!(t.final_c() == 0, "seed {seed}: final c = {}", t.final_c());
        ensure!(
            t.components
                .iter()
                .all(|(_, s)| matches!(s, Shape::LinearA(_) | Shape::CycleATilde(_))),
            "seed {seed}: component of unexpected shape"
        );
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(unexplained.is_empty(), "{}", unexplained.join("; "));
    ensure!(secs < 10.0, "took {secs:.1}s");
    let summary = format!(
        "200 presentations in {secs:.1}s; {over_budget} need more than c(P) steps and {flat_steps} steps leave c unchanged, \
         all at vertices with three or more arrows on the split side; intermediates monomial with (S), dim J preserved, final c = 0"
    );
    if over_budget == 0 && flat_steps == 0 {
        Ok(Verdict::Pass(summary))
    } else {
        Ok(Verdict::KnownGap(summary))
    }
}

fn criterion_2() -> Outcome {
    let mut combinations = 0;
    let mut special = 0;
    for seed in 1..=400 {
        let p = fuzz_generator(seed, FuzzLimits { max_vertices: 3, max_arrows: 6 }).map_err(|e| e.to_string())?;
        for pick in 0..4 {
            let Some(r) = common::with_binomial(&p, pick, 1 + pick as i64) else { continue };
            if !r.is_admissible(64).admissible || !r.is_special_multiserial() {
                continue;
            }
            special += 1;
            let classes = r.classify_relations().map_err(|e| e.to_string())?;
            ensure!(!classes.contains(&RelationClass::Violation), "seed {seed}: violation in a special algebra");
            combinations += classes.iter().filter(|c| **c == RelationClass::SocleCombination).count();
        }
    }
    ensure!(combinations > 0, "no socle combination was exercised");
    let mut injected = 0;
    for seed in 1..=200 {
        let p = fuzz_generator(seed, FuzzLimits::default()).map_err(|e| e.to_string())?;
        let Some((r, arrow)) = common::with_violation(&p) else { continue };
        let s = r.check_condition_s().map_err(|e| e.to_string())?;
        let q = r.quiver();
        ensure!(
            !s.holds && s.witnesses.iter().any(|w| w.side == Side::Right && q.arrow_name(w.arrow) == arrow),
            "seed {seed}: injected violation at {arrow} not flagged"
        );
        injected += 1;
    }
    ensure!(injected > 0, "no violation was injected");
    Ok(Verdict::Pass(format!(
        "{special} special presentations with injected binomials ({combinations} socle combinations), {injected}/{injected} injected violations flagged"
    )))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let p = load("kronecker.alg");
    let t = run_theorem1(&p).map_err(|e| e.to_string())?;
    let shapes: Vec<Shape> = t.components.iter().map(|(_, s)| *s).collect();
    ensure!(shapes == [Shape::LinearA(2), Shape::LinearA(2)], "components {shapes:?}");
    let r = verify_repdim_le_3(&p, 5, false).map_err(|e| e.to_string())?;
    let mut dims: Vec<Vec<usize>> = r.generator.summands.iter().map(|s| s.module.dimension_vector().to_vec()).collect();
    dims.sort();
    let expected = vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1], vec![1, 2], vec![2, 1]];
    ensure!(dims == expected, "dimension vectors {dims:?}");
    ensure!(
        r.gldim.global_dimension == ProjectiveDimension::Finite(3),
        "gldim {}",
        r.gldim.global_dimension
    );
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s");
    Ok(Verdict::Pass(format!(
        "LinearA(2) + LinearA(2), 6 summands, dim End = {}, gldim = 3 ({secs:.2}s)",
        r.end_dimension
    )))
}

fn gldim(text: &str) -> Result<ProjectiveDimension, String> {
    let p = parse(text).map_err(|e| e.to_string())?;
    Ok(verify_repdim_le_3(&p, DEFAULT_BOUND, false).map_err(|e| e.to_string())?.gldim.global_dimension)
}

fn linear(n: usize, truncated: bool) -> String {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut s = format!("algebra lin{n}\nvertices {}\n", vertices.join(" "));
    for i in 1..n {
        s += &format!("arrow x{i} : {i} -> {}\n", i + 1);
    }
    if truncated && n > 2 {
        s += "relations\n";
        for i in 1..n - 1 {
            s += &format!("  x{i}.x{}\n", i + 1);
        }
        s += "end\n";
    }
    s
}

fn criterion_4() -> Outcome {
    let mut seen = Vec::new();
    for n in 2..=5 {
        let word = vec!["a"; n].join(".");
        let cases = [
            (format!("loop{n}"), format!("algebra loop{n}\nvertices v\narrow a : v -> v\nrelations\n  {word}\nend\n")),
            (format!("A{n}"), linear(n, false)),
            (format!("A{n}/rad2"), linear(n, true)),
        ];
        for (label, text) in cases {
            let d = gldim(&text)?;
            ensure!(matches!(d, ProjectiveDimension::Finite(k) if k <= 2), "{label}: gldim {d}");
            seen.push(format!("{label}:{d}"));
        }
    }
    for text in ["algebra semisimple\nvertices 1 2\n", "algebra point\nvertices 1\n"] {
        let d = gldim(text)?;
        ensure!(d == ProjectiveDimension::Finite(0), "semisimple: gldim {d}");
    }
    Ok(Verdict::Pass(format!("{}; semisimple 0", seen.join(" "))))
}

fn criterion_5() -> Outcome {
    let e3 = load("e3.alg");
    let quotient = e3.socle_quotient().map_err(|e| e.to_string())?;
    let relations: BTreeSet<String> = quotient.relations().iter().map(|r| quotient.relation_string(r)).collect();
    let expected: BTreeSet<String> = ["a.b", "b.a", "a.a", "b.b"].iter().map(|s| s.to_string()).collect();
    ensure!(relations == expected, "relations {relations:?}");
    ensure!(quotient.is_monomial() && quotient.is_special_multiserial(), "quotient not monomial special multiserial");
    let r = verify_repdim_le_3(&quotient, DEFAULT_BOUND, false).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for p in corpus() {
        let dim = p.dimension().map_err(|e| e.to_string())?;
        let soc = p.socle_dimension().map_err(|e| e.to_string())?;
        let quo = p.socle_quotient().map_err(|e| e.to_string())?.dimension().map_err(|e| e.to_string())?;
        ensure!(dim == quo + soc, "{}: {dim} != {quo} + {soc}", p.name());
        checked += 1;
    }
    Ok(Verdict::Pass(format!(
        "E3/soc has relations a.b, b.a, a.a, b.b and gldim {}; dimension identity on {checked} corpus algebras",
        r.gldim.global_dimension
    )))
}

fn criterion_6() -> Outcome {
    let mut modules = 0;
    let mut full_checks = 0;
    let mut algebras = 0;
    for p in corpus() {
        if !p.is_special_multiserial() {
            continue;
        }
        let (p, _) = reduce_by_socles(&p).map_err(|e| e.to_string())?;
        let g = auslander_generator(&p).map_err(|e| e.to_string())?;
        algebras += 1;
        let ms: Vec<_> = g.summands.iter().map(|s| s.module.clone()).collect();
        let q = p.quiver();
        for m in &ms {
            for v in q.vertices() {
                let pv = projective_module(&p, v).map_err(|e| e.to_string())?;
                let iv = injective_module(&p, v).map_err(|e| e.to_string())?;
                ensure!(hom(&p, &pv, m).dim() == m.dim_at(v), "{}: Hom(P_v, M)", p.name());
                ensure!(hom(&p, m, &iv).dim() == m.dim_at(v), "{}: Hom(M, I_v)", p.name());
                ensure!(
                    hom(&p, &pv, m).dim() == common::hom_dim_dense(&p, &pv, m),
                    "{}: hom disagrees with dense system",
                    p.name()
                );
            }
            modules += 1;
        }
        let end = end_algebra(&p, &ms).map_err(|e| e.to_string())?;
        if end.algebra.dim() <= 64 {
            ensure!(end.algebra.associativity_failure(64).is_none(), "{}: not associative", p.name());
            full_checks += 1;
        }
    }
    Ok(Verdict::Pass(format!(
        "{modules} generator summands over {algebras} algebras; full associativity on {full_checks} End algebras"
    )))
}

fn criterion_7() -> Outcome {
    let mut instances: Vec<Presentation> = corpus().into_iter().filter(|p| p.is_monomial()).collect();
    for seed in 1..=200 {
        instances.push(fuzz_generator(seed, FuzzLimits::default()).map_err(|e| e.to_string())?);
    }
    instances.push(load("e3.alg").socle_quotient().map_err(|e| e.to_string())?);
    let mut paths = 0;
    for p in &instances {
        let ours = common::computed(p);
        ensure!(ours == common::subpath_avoidance(p), "{}: basis differs", p.name());
        paths += ours.len();
    }
    Ok(Verdict::Pass(format!("{} monomial instances, {paths} basis paths", instances.len())))
}

fn criterion_8() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_msa");
    let mut runs: Vec<Vec<String>> = Vec::new();
    for f in corpus_files() {
        let f = f.to_string_lossy().into_owned();
        for cmd in ["check", "basis", "pipeline", "generator", "verify", "soclequotient"] {
            runs.push(vec![cmd.into(), f.clone()]);
        }
        runs.push(vec!["verify".into(), "--via-socle".into(), f.clone()]);
    }
    let k = corpus_dir().join("kronecker.alg").to_string_lossy().into_owned();
    runs.push(vec!["split".into(), k, "--vertex".into(), "1".into(), "--datum".into(), r#"{"S1":["a"],"S2":["b"]}"#.into()]);
    runs.push(["fuzz", "--seed", "3", "--count", "5"].iter().map(|s| s.to_string()).collect());
    for args in &runs {
        let go = || {
            Command::new(exe)
                .arg("--format")
                .arg("json")
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (go()?, go()?);
        ensure!(a.stdout == b.stdout && a.status == b.status, "{args:?} differs between runs");
        ensure!(
            serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok(),
            "{args:?} did not print JSON"
        );
    }
    Ok(Verdict::Pass(format!("{} invocations byte-identical across two runs", runs.len())))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("pipeline soundness", criterion_1),
        ("relation classification", criterion_2),
        ("Kronecker end-to-end", criterion_3),
        ("representation-finite family", criterion_4),
        ("socle-quotient route", criterion_5),
        ("linear-algebra oracles", criterion_6),
        ("monomial-basis oracle", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let line = match run() {
            Ok(Verdict::Pass(msg)) => format!("PASS  criterion {} ({name}): {msg}", i + 1),
            Ok(Verdict::KnownGap(msg)) => format!("FAIL  criterion {} ({name}) [known gap]: {msg}", i + 1),
            Ok(Verdict::Fail(msg)) | Err(msg) => {
                failed += 1;
                format!("FAIL  criterion {} ({name}): {msg}", i + 1)
            }
        };
        println!("{line}");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
