//! One pass/fail line per acceptance criterion. Criteria with a recorded
//! deviation print FAIL with the first disagreement instead of aborting;
//! every other criterion is asserted.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use choicelens::classify::{classify_all, Analysis, ModelId};
use choicelens::consideration::gamma_min;
use choicelens::domain::ChoiceFunction;
use choicelens::oracle::{
    census, containment_census, enumerate_choice_functions, run_suite, sample_choice_functions,
    CensusSource, SuiteResult, SUITES,
};
use choicelens::parse::load_dataset;
use choicelens::revealed::relation_p;

/// Criteria whose failure is a documented deviation rather than a bug.
const KNOWN_DEVIATIONS: [u32; 3] = [4, 6, 10];

const N4_SUITE_LIMIT: Duration = Duration::from_secs(60);
const N5_SAMPLE_LIMIT: Duration = Duration::from_secs(120);
const N5_SAMPLE_SIZE: usize = 100_000;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

struct Suites {
    results: BTreeMap<(String, usize), SuiteResult>,
    n4_elapsed: Duration,
}

impl Suites {
    fn run() -> Self {
        let mut results = BTreeMap::new();
        for (name, _) in SUITES {
            let r = single_thread(|| run_suite(name, 3)).unwrap();
            results.insert((name.to_string(), 3), r);
        }
        let start = Instant::now();
        for (name, max) in SUITES {
            if max >= 4 {
                let r = single_thread(|| run_suite(name, 4)).unwrap();
                results.insert((name.to_string(), 4), r);
            }
        }
        Suites {
            results,
            n4_elapsed: start.elapsed(),
        }
    }

    fn get(&self, name: &str, n: usize) -> &SuiteResult {
        &self.results[&(name.to_string(), n)]
    }

    /// Passes when every listed suite run passes; otherwise names the first failure.
    fn check(&self, runs: &[(&str, usize)]) -> Result<String, String> {
        for &(name, n) in runs {
            let r = self.get(name, n);
            if !r.passed {
                return Err(format!(
                    "{name} n={n}: {} of {} disagree; {}",
                    r.disagreements,
                    r.checked,
                    r.detail.as_deref().unwrap_or("")
                ));
            }
        }
        let parts: Vec<String> = runs
            .iter()
            .map(|&(name, n)| format!("{name} n={n} ({})", self.get(name, n).checked))
            .collect();
        Ok(parts.join(", "))
    }
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1() -> Result<String, String> {
    let c = load_dataset(data("e1.cf")).map_err(|e| e.to_string())?;
    let g = c.ground();
    let report = classify_all(&c);
    ensure(
        report.holds(ModelId::Cmla) == Some(true),
        "CMLA does not hold",
    )?;
    let expected = [("x y z", "x y z"), ("x y", "y"), ("x z", "z"), ("y z", "y")];
    let gm = gamma_min(&c);
    let e = Analysis::new(&c)
        .elicit(ModelId::Cmla)
        .map_err(|e| e.to_string())?;
    for (menu, image) in expected {
        let m = g.parse_menu(menu).unwrap();
        let want = g.parse_menu(image).unwrap();
        ensure(gm.image(m) == want, format!("minimal filter at {{{menu}}}"))?;
        ensure(
            e.filter.image(m) == want,
            format!("elicited filter at {{{menu}}}"),
        )?;
    }
    let p: Vec<(&str, &str)> = relation_p(&c)
        .pairs()
        .map(|(a, b)| (g.label(a), g.label(b)))
        .collect();
    ensure(p == [("x", "y"), ("x", "z")], format!("P = {p:?}"))?;
    Ok("CMLA holds, minimal filter and P exact".into())
}

fn criterion_2() -> Result<String, String> {
    let c = load_dataset(data("e2.cf")).map_err(|e| e.to_string())?;
    let g = c.ground();
    let v = Analysis::new(&c)
        .decide(ModelId::Cmla)
        .map_err(|e| e.to_string())?;
    ensure(!v.holds, "CMLA holds")?;
    let reason = v.counterexample.map(|ce| ce.reason).unwrap_or_default();
    ensure(
        reason.starts_with("condition (ii)"),
        format!("reason: {reason}"),
    )?;
    let a = Analysis::new(&c);
    let sw: Vec<(String, String)> = a
        .switches()
        .list()
        .iter()
        .map(|s| (g.format_menu(s.smaller()), g.format_menu(s.menu)))
        .collect();
    ensure(
        sw == [("x y".to_string(), "x y z".to_string())],
        format!("switches: {sw:?}"),
    )?;
    Ok(reason)
}

fn criterion_4(s: &Suites) -> Result<String, String> {
    let all: Vec<ChoiceFunction> = enumerate_choice_functions(3).unwrap().collect();
    for c in &all {
        let a = Analysis::new(c);
        for m in [ModelId::WeakWarp, ModelId::Overload, ModelId::Mbr] {
            ensure(a.decide(m).unwrap().holds, format!("{m} false at n=3"))?;
        }
    }
    s.check(&[("weak-warp-family", 3), ("weak-warp-family", 4)])
}

fn criterion_11(s: &Suites) -> Result<String, String> {
    let rows = census(
        3,
        &[ModelId::Alpha, ModelId::WeakWarp],
        false,
        CensusSource::Exhaustive,
    )
    .map_err(|e| e.to_string())?;
    ensure(rows[0].sample_size == 24, "n=3 total")?;
    ensure(rows[0].count == 6 && rows[1].count == 24, "n=3 counts")?;
    let rows =
        census(4, &[ModelId::Alpha], false, CensusSource::Exhaustive).map_err(|e| e.to_string())?;
    ensure(
        rows[0].sample_size == 20736 && rows[0].count == 24,
        "n=4 counts",
    )?;

    let all4: Vec<ChoiceFunction> = enumerate_choice_functions(4).unwrap().collect();
    for (rule, v) in containment_census(&all4) {
        ensure(v == 0, format!("{rule}: {v} violations at n=4"))?;
    }
    ensure(
        s.n4_elapsed < N4_SUITE_LIMIT,
        format!("n=4 suites took {:.1?}", s.n4_elapsed),
    )?;

    let start = Instant::now();
    let sample: Vec<ChoiceFunction> = sample_choice_functions(5, N5_SAMPLE_SIZE, 1)
        .unwrap()
        .collect();
    let cs = single_thread(|| containment_census(&sample));
    let n5_elapsed = start.elapsed();
    for (rule, v) in cs {
        ensure(v == 0, format!("{rule}: {v} violations in n=5 sample"))?;
    }
    ensure(
        n5_elapsed < N5_SAMPLE_LIMIT,
        format!("n=5 sample took {n5_elapsed:.1?}"),
    )?;
    Ok(format!(
        "counts exact, containments clean, n=4 suites {:.1?}, n=5 sample {:.1?}",
        s.n4_elapsed, n5_elapsed
    ))
}

fn criterion_12() -> Result<String, String> {
    let e1 = data("e1.cf");
    let e2 = data("e2.cf");
    let (e1, e2) = (e1.to_str().unwrap(), e2.to_str().unwrap());
    let commands: [&[&str]; 8] = [
        &["classify", e1, "--json"],
        &["classify", e2],
        &["elicit", e1, "--model", "CMLA", "--json"],
        &["switches", e2, "--json"],
        &["relations", e1],
        &[
            "census",
            "--n",
            "4",
            "--models",
            "ALPHA,CLA",
            "--up-to-iso",
            "--json",
        ],
        &["census", "--n", "5", "--sample", "500", "--seed", "4"],
        &["verify", "--n", "3", "--suite", "all", "--json"],
    ];
    for args in commands {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_choicelens"))
                .args(args)
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        ensure(a.status.success(), format!("{args:?} failed"))?;
        ensure(
            a.stdout == b.stdout && a.stderr == b.stderr,
            format!("{args:?} differs between runs"),
        )?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

#[test]
fn acceptance() {
    let suites = Suites::run();
    let outcomes: Vec<(u32, Result<String, String>)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, suites.check(&[("alpha-triple", 3), ("alpha-triple", 4)])),
        (4, criterion_4(&suites)),
        (5, suites.check(&[("salience-triple", 4)])),
        (
            6,
            suites.check(&[("list-rational", 3), ("list-rational", 4)]),
        ),
        (7, suites.check(&[("shortlist", 3)])),
        (8, suites.check(&[("cmla", 3), ("cmla", 4)])),
        (9, suites.check(&[("minimality", 3)])),
        (
            10,
            suites.check(&[("necessary-conditions", 3), ("necessary-conditions", 4)]),
        ),
        (11, criterion_11(&suites)),
        (12, criterion_12()),
    ];
    let mut unexpected = Vec::new();
    for (id, outcome) in &outcomes {
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS {detail}"),
            Err(detail) => {
                let tag = if KNOWN_DEVIATIONS.contains(id) {
                    " (known deviation)"
                } else {
                    unexpected.push(*id);
                    ""
                };
                println!("criterion {id}: FAIL{tag} {detail}");
            }
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
