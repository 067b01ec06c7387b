//! Acceptance checks for the ATM fixture. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::ATM_PATHS;
use seqswarm::harness::{replicate_paper, ExperimentSpec, TableKind};
use seqswarm::objectives::{cyclomatic_term, oracle_cost, PriorityContext};
use seqswarm::optimizers::{run, PAPER_SWARM_SIZES, STANDARD_SEEDS};
use seqswarm::pareto::non_dominated_filter;
use seqswarm::path::enumerate_all_sequences;
use seqswarm::{atm_fixture, Algorithm, CostVariant, ObjectiveVector, PathSuite, RunResult, TestSequence};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Six covering sequences from the reference PSO results.
const REFERENCE_PATHS: [&str; 6] = [
    "1,2,7,8",
    "1,2,3,7,8",
    "1,2,3,5,7",
    "1,2,3,4,7",
    "1,2,3,5,6,7",
    "1,2,4,8",
];

/// Reference MOPSO objective pairs with ten particles.
const REFERENCE_P10: [(f64, f64); 6] = [
    (0.3625, 1.0697),
    (0.3901, 0.2520),
    (0.4313, 1.2820),
    (0.4250, 0.2247),
    (0.4143, 1.2977),
    (0.3625, 0.3518),
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn seq(s: &str) -> TestSequence {
    s.parse().unwrap()
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure!(took < limit, "took {took:.2?}, limit {limit:?}");
    Ok(took)
}

fn fixture_fidelity() -> Outcome {
    let started = Instant::now();
    let g = atm_fixture();
    ensure!(g.node_count() == 8, "{} nodes", g.node_count());
    ensure!(g.edge_count() == 13, "{} edges", g.edge_count());
    ensure!(
        g.predicate_nodes().len() == 4,
        "predicate nodes {:?}",
        g.predicate_nodes()
    );
    let mut suite = PathSuite::new();
    for p in REFERENCE_PATHS {
        let s = seq(p);
        s.validate(&g).map_err(|e| format!("{p}: {e}"))?;
        suite.accept(s);
    }
    ensure!(
        suite.coverage_complete(&g),
        "reference paths cover {} edges",
        suite.covered_edges().len()
    );
    let took = within(Duration::from_secs(1), started)?;
    Ok(format!(
        "8 nodes, 13 edges, 4 predicates; 6 reference paths cover all edges ({took:.0?})"
    ))
}

fn oracle_enumeration() -> Outcome {
    let started = Instant::now();
    let g = atm_fixture();
    let got: Vec<String> = enumerate_all_sequences(&g)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure!(
        got == ATM_PATHS,
        "enumeration differs from the hand-derived list: {got:?}"
    );
    let set: BTreeSet<&str> = got.iter().map(String::as_str).collect();
    ensure!(
        REFERENCE_PATHS.iter().all(|p| set.contains(p)),
        "a reference path is missing from the enumeration"
    );
    let took = within(Duration::from_secs(1), started)?;
    // The reference listing has 13 entries and omits 1,2,4,7,8, which is a
    // valid path (1->2, 2->4, 4->7, 7->8 are all transitions).
    Ok(format!(
        "{} paths, equal to independent derivation (listed 13 plus 1,2,4,7,8); reference 6 included ({took:.0?})",
        got.len()
    ))
}

fn dominance_on_reference_values() -> Outcome {
    let started = Instant::now();
    let vs: Vec<ObjectiveVector> = REFERENCE_P10.iter().map(|&(p, c)| ObjectiveVector::new(p, c)).collect();
    let got = non_dominated_filter(&vs);
    let want = vec![
        ObjectiveVector::new(0.4313, 1.2820),
        ObjectiveVector::new(0.4250, 0.2247),
    ];
    ensure!(got == want, "filter returned {got:?}");
    let took = within(Duration::from_secs(1), started)?;
    Ok(format!(
        "non-dominated set is {{(0.4313, 1.2820), (0.4250, 0.2247)}} ({took:.0?})"
    ))
}

fn sweep() -> (Vec<RunResult>, Duration) {
    let g = atm_fixture();
    let started = Instant::now();
    let mut runs = Vec::new();
    for alg in Algorithm::ALL {
        for n in PAPER_SWARM_SIZES {
            for seed in STANDARD_SEEDS {
                runs.push(run(&g, &seqswarm::SwarmConfig::new(alg, n, seed)).expect("run"));
            }
        }
    }
    (runs, started.elapsed())
}

fn coverage_convergence(runs: &[RunResult], took: Duration) -> Outcome {
    let g = atm_fixture();
    ensure!(runs.len() == 120, "{} runs", runs.len());
    ensure!(took < Duration::from_secs(60), "sweep took {took:.2?}");
    let mut largest = 0;
    for r in runs {
        let tag = format!("{} P={} seed {}", r.algorithm, r.agents, r.seed);
        ensure!(r.converged && r.suite.coverage_complete(&g), "{tag} did not cover");
        ensure!(r.iterations <= 200, "{tag} used {} iterations", r.iterations);
        ensure!(r.suite.len() <= 7, "{tag} suite has {} sequences", r.suite.len());
        let distinct: BTreeSet<&TestSequence> = r.suite.iter().collect();
        ensure!(distinct.len() == r.suite.len(), "{tag} has a duplicate sequence");
        for s in r.suite.iter() {
            ensure!(s.is_valid(&g), "{tag}: {s} repeats a node or edge");
            let edges: Vec<_> = s.edges().collect();
            let unique: BTreeSet<_> = edges.iter().collect();
            ensure!(unique.len() == edges.len(), "{tag}: {s} repeats an edge");
        }
        largest = largest.max(r.suite.len());
    }
    Ok(format!(
        "120/120 runs covered all 13 edges, max suite size {largest}, {took:.2?} total"
    ))
}

fn brute_force_front(vs: &[ObjectiveVector]) -> BTreeSet<usize> {
    (0..vs.len())
        .filter(|&i| {
            !vs.iter().any(|o| {
                let b = vs[i];
                o.priority >= b.priority && o.cost <= b.cost && (o.priority > b.priority || o.cost < b.cost)
            })
        })
        .collect()
}

fn archive_correctness(runs: &[RunResult]) -> Outcome {
    let mut checked = 0;
    for r in runs.iter().filter(|r| r.algorithm.is_multi_objective()) {
        let want: BTreeSet<&TestSequence> = brute_force_front(&r.objectives)
            .into_iter()
            .map(|i| &r.suite.sequences()[i])
            .collect();
        let got: BTreeSet<&TestSequence> = r.archive.entries().iter().map(|e| &e.sequence).collect();
        ensure!(
            got == want && r.archive.len() == want.len(),
            "{} P={} seed {}: archive {:?} vs filter {:?}",
            r.algorithm,
            r.agents,
            r.seed,
            got,
            want
        );
        for e in r.archive.entries() {
            let i = r.suite.sequences().iter().position(|s| s == &e.sequence).unwrap();
            ensure!(
                e.objectives == r.objectives[i],
                "archived vector differs from suite vector"
            );
        }
        checked += 1;
    }
    ensure!(checked == 60, "{checked} multi-objective runs");
    Ok(format!(
        "archive equals the brute-force front in all {checked} MOPSO/MOFA runs"
    ))
}

fn formula_spot_checks() -> Outcome {
    let g = atm_fixture();
    let a = cyclomatic_term(&seq("1,2,7,8"), &g);
    let b = cyclomatic_term(&seq("1,2,3,5,6,7"), &g);
    ensure!(a == 2 && b == 4, "cyclomatic terms {a}, {b}");
    let cost = oracle_cost(0.8562, &PriorityContext::new(6, 13, 0.8562, CostVariant::MaxPriority))
        .map_err(|e| e.to_string())?;
    ensure!((cost - 0.5391).abs() <= 1e-4, "oracle cost {cost}");
    let mut worst: f64 = 0.0;
    for tc in 1..=20 {
        for bp in [5, 13, 40] {
            for max in [0.1, 0.8562, 19.6] {
                let base = oracle_cost(max, &PriorityContext::new(tc, bp, max, CostVariant::MaxPriority)).unwrap();
                for k in 2..=5 {
                    let scaled =
                        oracle_cost(max, &PriorityContext::new(k * tc, bp, max, CostVariant::MaxPriority)).unwrap();
                    worst = worst.max((scaled - k as f64 * base).abs() / scaled);
                }
            }
        }
    }
    ensure!(worst <= 1e-12, "homogeneity error {worst:e}");
    Ok(format!(
        "CC 2 and 4; oracle cost {cost:.5}; homogeneity error {worst:.1e}"
    ))
}

fn replicate_into(dir: &Path, format: &str) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_seqswarm"))
        .args(["replicate", "--format", format, "--out"])
        .arg(dir)
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "replicate exited with {status}");
    Ok(())
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let mut compared = 0;
    for format in ["md", "csv", "json"] {
        let a = tempfile::tempdir().map_err(|e| e.to_string())?;
        let b = tempfile::tempdir().map_err(|e| e.to_string())?;
        replicate_into(a.path(), format)?;
        replicate_into(b.path(), format)?;
        let (fa, fb) = (read_dir_sorted(a.path()), read_dir_sorted(b.path()));
        let names = |fs: &[(String, Vec<u8>)]| fs.iter().map(|f| f.0.clone()).collect::<Vec<_>>();
        ensure!(names(&fa) == names(&fb), "{format}: file lists differ");
        ensure!(
            names(&fa).contains(&"timing.json".to_string()),
            "{format}: no timing file"
        );
        for ((name, x), (_, y)) in fa.iter().zip(&fb) {
            if name == "timing.json" {
                continue;
            }
            ensure!(x == y, "{format}: {name} differs between invocations");
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} report files byte-identical across two invocations (md, csv, json; timing.json excluded)"
    ))
}

fn table_format() -> Outcome {
    let rep = replicate_paper(&ExperimentSpec::default()).map_err(|e| e.to_string())?;
    let report = &rep.report;

    let pso = report.table("pso_priority").ok_or("no PSO table")?;
    let md = pso.to_markdown();
    let header = md
        .lines()
        .find(|l| l.starts_with("| Optimal"))
        .ok_or("PSO header missing")?;
    let want =
        "| Optimal Test Sequences Generated | Independent paths generated | Path Priority P=3 | Path Priority P=5 \
                | Path Priority P=7 | Path Priority P=10 | Path Priority P=15 | Path Priority P=20 |";
    ensure!(header == want, "PSO header {header:?}");
    ensure!(
        md.lines().last().is_some_and(|l| l.starts_with("| Average Value |")),
        "PSO average row missing"
    );

    for id in ["mopso_10", "mofa_10"] {
        let t = report.table(id).ok_or(format!("no {id} table"))?;
        ensure!(t.kind == TableKind::Objectives && t.columns.len() == 1, "{id} shape");
        let md = t.to_markdown();
        ensure!(
            md.contains("| Optimal Test Sequences Generated | Independent paths generated | Path Priority | Cost |"),
            "{id} header"
        );
        ensure!(md.contains("**"), "{id} has no bold non-dominated rows");
        ensure!(
            md.lines().last().is_some_and(|l| l.starts_with("| Average Values |")),
            "{id} average row"
        );
        let cells: Vec<_> = t.columns[0].cells.iter().flatten().copied().collect();
        let vs: Vec<ObjectiveVector> = cells.iter().map(|c| ObjectiveVector::new(c.priority, c.cost)).collect();
        let front = brute_force_front(&vs);
        ensure!(
            cells
                .iter()
                .enumerate()
                .all(|(i, c)| c.non_dominated == front.contains(&i)),
            "{id} flags disagree with brute force"
        );
        for line in md
            .lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| Optimal") && !l.starts_with("| Average"))
        {
            let fields: Vec<&str> = line
                .trim_matches('|')
                .split('|')
                .map(|f| f.trim().trim_matches('*'))
                .collect();
            ensure!(
                fields[2..]
                    .iter()
                    .all(|f| f.split('.').nth(1).is_some_and(|d| d.len() == 4)),
                "{id} value not at 4 decimals: {line}"
            );
        }
    }

    for (a, b) in [(3, 5), (7, 10), (15, 20)] {
        let id = format!("compare_{a}_{b}");
        let t = report.table(&id).ok_or(format!("no {id} table"))?;
        let groups: Vec<(Algorithm, usize)> = t.columns.iter().map(|c| (c.algorithm, c.agents)).collect();
        let want = vec![
            (Algorithm::Mopso, a),
            (Algorithm::Mofa, a),
            (Algorithm::Mopso, b),
            (Algorithm::Mofa, b),
        ];
        ensure!(groups == want, "{id} columns {groups:?}");
        ensure!(
            t.to_markdown().contains(&format!("MOPSO Particles={a} Path Priority")),
            "{id} header"
        );
    }
    Ok(
        "PSO P=3..P=20 with Average Value; MOPSO/MOFA P=10 with flagged Path Priority/Cost; pairs (3,5) (7,10) (15,20)"
            .into(),
    )
}

fn main() {
    let (runs, took) = sweep();
    let criteria: Vec<Criterion> = vec![
        ("1 fixture fidelity", Box::new(fixture_fidelity)),
        ("2 oracle enumeration", Box::new(oracle_enumeration)),
        (
            "3 dominance on reference values",
            Box::new(dominance_on_reference_values),
        ),
        ("4 coverage convergence", Box::new(|| coverage_convergence(&runs, took))),
        ("5 archive correctness", Box::new(|| archive_correctness(&runs))),
        ("6 formula spot checks", Box::new(formula_spot_checks)),
        ("7 determinism", Box::new(determinism)),
        ("8 table format", Box::new(table_format)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
