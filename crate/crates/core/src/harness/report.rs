//! Table assembly and rendering (csv, markdown, json).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::objectives::ObjectiveVector;
use crate::optimizers::{Algorithm, RunResult};
use crate::pareto::{dominates, non_dominated_indices};
use crate::path::TestSequence;

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Md,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Md => "md",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Md),
            "json" => Ok(OutputFormat::Json),
            _ => Err(HarnessError::UnsupportedFormat(s.to_string())),
        }
    }
}

/// One aggregated `(priority, cost)` value in a table column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub priority: f64,
    pub cost: f64,
    pub non_dominated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub algorithm: Algorithm,
    pub agents: usize,
    pub header: String,
    /// One entry per table row; `None` when no run found that sequence.
    pub cells: Vec<Option<Cell>>,
    /// Priority-only tables average every present cell; objective tables
    /// average the non-dominated cells only.
    pub average: ObjectiveVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// Path Priority only, one column per swarm size.
    Priority,
    /// Path Priority and Cost per column, non-dominated cells flagged.
    Objectives,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: String,
    pub title: String,
    pub kind: TableKind,
    pub rows: Vec<TestSequence>,
    /// New transitions each row contributes over the rows above it.
    pub row_segments: Vec<String>,
    pub columns: Vec<Column>,
}

/// Head-to-head numbers for one swarm size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeVerdict {
    pub agents: usize,
    pub mopso: ObjectiveVector,
    pub mofa: ObjectiveVector,
    pub higher_priority: Algorithm,
    pub lower_cost: Algorithm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WinnerSummary {
    pub per_size: Vec<SizeVerdict>,
    pub mopso_priority_wins: usize,
    pub mopso_cost_wins: usize,
    pub mofa_priority_wins: usize,
    pub mofa_cost_wins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub algorithm: Algorithm,
    pub agents: usize,
    pub runs: usize,
    pub converged: usize,
    pub mean_iterations_to_coverage: Option<f64>,
    pub mean_suite_size: f64,
    pub max_suite_size: usize,
    pub distinct_sequences_evaluated: usize,
}

/// The full replication report. Contains no timing data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub graph: String,
    pub seeds: Vec<u64>,
    pub sizes: Vec<usize>,
    pub tables: Vec<Table>,
    pub convergence: Vec<ConvergenceRow>,
    pub summary: Option<WinnerSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmTiming {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub total_seconds: f64,
    pub mean_seconds: f64,
}

/// Wall-clock data, kept apart from the deterministic report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingSummary {
    pub hardware: String,
    pub per_algorithm: Vec<AlgorithmTiming>,
}

pub fn timing_summary(runs: &[RunResult]) -> TimingSummary {
    let mut per: BTreeMap<Algorithm, (usize, f64)> = BTreeMap::new();
    for r in runs {
        let e = per.entry(r.algorithm).or_default();
        e.0 += 1;
        e.1 += r.wall_time;
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    TimingSummary {
        hardware: format!(
            "{} {} ({threads} threads)",
            std::env::consts::OS,
            std::env::consts::ARCH
        ),
        per_algorithm: per
            .into_iter()
            .map(|(algorithm, (runs, total))| AlgorithmTiming {
                algorithm,
                runs,
                total_seconds: total,
                mean_seconds: total / runs as f64,
            })
            .collect(),
    }
}

fn size_header(algorithm: Algorithm, agents: usize, long: bool) -> String {
    match (algorithm.is_firefly(), long) {
        (false, false) => format!("P={agents}"),
        (true, false) => format!("FF={agents}"),
        (false, true) => format!("Particles={agents}"),
        (true, true) => format!("Fireflies={agents}"),
    }
}

/// Per-sequence means over the runs whose final suite holds the sequence.
fn aggregate<'a>(runs: impl Iterator<Item = &'a RunResult>) -> BTreeMap<TestSequence, ObjectiveVector> {
    let mut sums: BTreeMap<TestSequence, (f64, f64, usize)> = BTreeMap::new();
    for r in runs {
        for (seq, v) in r.entries() {
            let e = sums.entry(seq.clone()).or_default();
            e.0 += v.priority;
            e.1 += v.cost;
            e.2 += 1;
        }
    }
    sums.into_iter()
        .map(|(s, (p, c, n))| (s, ObjectiveVector::new(p / n as f64, c / n as f64)))
        .collect()
}

/// Flags must agree with a direct pairwise dominance scan.
fn assert_flags(values: &[ObjectiveVector], flags: &[bool]) {
    for (i, v) in values.iter().enumerate() {
        let dominated = values.iter().any(|o| dominates(o, v));
        assert_eq!(
            flags[i], !dominated,
            "non-dominated flag disagrees with brute-force scan"
        );
    }
}

fn mean(values: impl Iterator<Item = ObjectiveVector>) -> ObjectiveVector {
    let (mut p, mut c, mut n) = (0.0, 0.0, 0usize);
    for v in values {
        p += v.priority;
        c += v.cost;
        n += 1;
    }
    if n == 0 {
        ObjectiveVector::new(f64::NAN, f64::NAN)
    } else {
        ObjectiveVector::new(p / n as f64, c / n as f64)
    }
}

fn novel_segments(rows: &[TestSequence]) -> Vec<String> {
    let mut covered = BTreeSet::new();
    rows.iter()
        .map(|seq| {
            let edges: Vec<_> = seq.edges().collect();
            let first = edges.iter().position(|e| !covered.contains(e));
            let last = edges.iter().rposition(|e| !covered.contains(e));
            covered.extend(edges.iter().copied());
            match (first, last) {
                (Some(a), Some(b)) => TestSequence::new(seq.nodes()[a..=b + 1].to_vec()).to_string(),
                _ => seq.to_string(),
            }
        })
        .collect()
}

/// Builds a table from `(algorithm, agents)` column groups.
pub fn build_table(
    id: &str,
    title: &str,
    kind: TableKind,
    groups: &[(Algorithm, usize)],
    runs: &[RunResult],
    long_headers: bool,
) -> Table {
    let aggregated: Vec<BTreeMap<TestSequence, ObjectiveVector>> = groups
        .iter()
        .map(|&(alg, n)| aggregate(runs.iter().filter(|r| r.algorithm == alg && r.agents == n)))
        .collect();
    let rows: Vec<TestSequence> = aggregated
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let columns = groups
        .iter()
        .zip(&aggregated)
        .map(|(&(algorithm, agents), values)| {
            let present: Vec<ObjectiveVector> = rows.iter().filter_map(|s| values.get(s).copied()).collect();
            let nd: BTreeSet<usize> = non_dominated_indices(&present).into_iter().collect();
            let flags: Vec<bool> = (0..present.len()).map(|i| nd.contains(&i)).collect();
            assert_flags(&present, &flags);
            let average = match kind {
                TableKind::Priority => mean(present.iter().copied()),
                TableKind::Objectives => mean(present.iter().zip(&flags).filter(|(_, &f)| f).map(|(v, _)| *v)),
            };
            let mut flag_iter = flags.into_iter();
            let cells = rows
                .iter()
                .map(|s| {
                    values.get(s).map(|v| Cell {
                        priority: v.priority,
                        cost: v.cost,
                        non_dominated: flag_iter.next().expect("one flag per present cell"),
                    })
                })
                .collect();
            Column {
                algorithm,
                agents,
                header: size_header(algorithm, agents, long_headers),
                cells,
                average,
            }
        })
        .collect();

    Table {
        id: id.to_string(),
        title: title.to_string(),
        kind,
        row_segments: novel_segments(&rows),
        rows,
        columns,
    }
}

fn fmt4(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.4}")
    } else {
        "-".to_string()
    }
}

const SEQ_HEADERS: [&str; 2] = ["Optimal Test Sequences Generated", "Independent paths generated"];

impl Table {
    fn average_label(&self) -> &'static str {
        match (self.kind, self.columns.len()) {
            (TableKind::Objectives, 1) => "Average Values",
            _ => "Average Value",
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {}\n", self.title);
        let mut header = vec![SEQ_HEADERS[0].to_string(), SEQ_HEADERS[1].to_string()];
        for c in &self.columns {
            match self.kind {
                TableKind::Priority => header.push(format!("Path Priority {}", c.header)),
                TableKind::Objectives => {
                    let prefix = if self.columns.len() > 1 {
                        format!("{} {} ", c.algorithm.display_name(), c.header)
                    } else {
                        String::new()
                    };
                    header.push(format!("{prefix}Path Priority"));
                    header.push(format!("{prefix}Cost"));
                }
            }
        }
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for (i, seq) in self.rows.iter().enumerate() {
            let mut line = vec![self.row_segments[i].clone(), seq.to_string()];
            for c in &self.columns {
                match (self.kind, c.cells[i]) {
                    (_, None) if self.kind == TableKind::Priority => line.push("-".into()),
                    (_, None) => line.extend(["-".to_string(), "-".to_string()]),
                    (TableKind::Priority, Some(cell)) => line.push(fmt4(cell.priority)),
                    (TableKind::Objectives, Some(cell)) => {
                        let (p, k) = (fmt4(cell.priority), fmt4(cell.cost));
                        if cell.non_dominated {
                            line.push(format!("**{p}**"));
                            line.push(format!("**{k}**"));
                        } else {
                            line.push(p);
                            line.push(k);
                        }
                    }
                }
            }
            let _ = writeln!(out, "| {} |", line.join(" | "));
        }
        let mut avg = vec![self.average_label().to_string(), String::new()];
        for c in &self.columns {
            avg.push(fmt4(c.average.priority));
            if self.kind == TableKind::Objectives {
                avg.push(fmt4(c.average.cost));
            }
        }
        let _ = writeln!(out, "| {} |", avg.join(" | "));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec!["segment".to_string(), "sequence".to_string()];
        for c in &self.columns {
            let tag = format!("{}_{}", c.algorithm.name(), c.agents);
            header.push(format!("{tag}_priority"));
            if self.kind == TableKind::Objectives {
                header.push(format!("{tag}_cost"));
                header.push(format!("{tag}_non_dominated"));
            }
        }
        let _ = writeln!(out, "{}", header.join(","));
        for (i, seq) in self.rows.iter().enumerate() {
            let mut line = vec![format!("\"{}\"", self.row_segments[i]), format!("\"{seq}\"")];
            for c in &self.columns {
                let cell = c.cells[i];
                line.push(cell.map_or(String::new(), |x| fmt4(x.priority)));
                if self.kind == TableKind::Objectives {
                    line.push(cell.map_or(String::new(), |x| fmt4(x.cost)));
                    line.push(cell.map_or(String::new(), |x| x.non_dominated.to_string()));
                }
            }
            let _ = writeln!(out, "{}", line.join(","));
        }
        let mut avg = vec!["average".to_string(), String::new()];
        for c in &self.columns {
            avg.push(fmt4(c.average.priority));
            if self.kind == TableKind::Objectives {
                avg.push(fmt4(c.average.cost));
                avg.push(String::new());
            }
        }
        let _ = writeln!(out, "{}", avg.join(","));
        out
    }
}

impl ComparisonReport {
    pub fn table(&self, id: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.id == id)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Test sequence generation report\n");
        let _ = writeln!(out, "Graph: `{}`  ", self.graph);
        let _ = writeln!(
            out,
            "Seeds: {}  ",
            self.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        );
        let _ = writeln!(
            out,
            "Swarm sizes: {}\n",
            self.sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
        );
        let _ = writeln!(out, "Non-dominated values are shown in **bold**.\n");
        for t in &self.tables {
            out.push_str(&t.to_markdown());
            out.push('\n');
        }
        out.push_str("### Convergence\n\n");
        out.push_str("| Algorithm | Agents | Runs | Converged | Mean iterations to coverage | Mean suite size | Max suite size | Distinct sequences evaluated |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for c in &self.convergence {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {:.4} | {} | {} |",
                c.algorithm.display_name(),
                c.agents,
                c.runs,
                c.converged,
                c.mean_iterations_to_coverage.map_or("-".into(), fmt4),
                c.mean_suite_size,
                c.max_suite_size,
                c.distinct_sequences_evaluated
            );
        }
        if let Some(s) = &self.summary {
            out.push_str("\n### MOPSO vs MOFA\n\n");
            out.push_str("| Agents | MOPSO Path Priority | MOPSO Cost | MOFA Path Priority | MOFA Cost | Higher priority | Lower cost |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for v in &s.per_size {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    v.agents,
                    fmt4(v.mopso.priority),
                    fmt4(v.mopso.cost),
                    fmt4(v.mofa.priority),
                    fmt4(v.mofa.cost),
                    v.higher_priority.display_name(),
                    v.lower_cost.display_name()
                );
            }
            let _ = writeln!(
                out,
                "\nMOPSO: higher priority at {} sizes, lower cost at {} sizes. MOFA: higher priority at {} sizes, lower cost at {} sizes.",
                s.mopso_priority_wins, s.mopso_cost_wins, s.mofa_priority_wins, s.mofa_cost_wins
            );
        }
        out
    }

    /// Renders the report as `(file name, contents)` pairs.
    pub fn render(&self, format: OutputFormat) -> Vec<(String, String)> {
        match format {
            OutputFormat::Md => vec![("report.md".into(), self.to_markdown())],
            OutputFormat::Json => vec![(
                "report.json".into(),
                serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            )],
            OutputFormat::Csv => {
                let mut files: Vec<(String, String)> = self
                    .tables
                    .iter()
                    .map(|t| (format!("{}.csv", t.id), t.to_csv()))
                    .collect();
                let mut conv = String::from(
                    "algorithm,agents,runs,converged,mean_iterations_to_coverage,mean_suite_size,max_suite_size,distinct_sequences_evaluated\n",
                );
                for c in &self.convergence {
                    let _ = writeln!(
                        conv,
                        "{},{},{},{},{},{:.4},{},{}",
                        c.algorithm,
                        c.agents,
                        c.runs,
                        c.converged,
                        c.mean_iterations_to_coverage.map_or(String::new(), fmt4),
                        c.mean_suite_size,
                        c.max_suite_size,
                        c.distinct_sequences_evaluated
                    );
                }
                files.push(("convergence.csv".into(), conv));
                files
            }
        }
    }
}

/// Assembles every table, the convergence summary and the MOPSO/MOFA
/// verdicts from a finished sweep.
pub fn build_report(graph: &str, seeds: &[u64], sizes: &[usize], runs: &[RunResult]) -> ComparisonReport {
    let present: BTreeSet<Algorithm> = runs.iter().map(|r| r.algorithm).collect();
    let mut tables = Vec::new();

    for (alg, id, title) in [
        (Algorithm::Pso, "pso_priority", "PSO: Path Priority per particle count"),
        (Algorithm::Fa, "fa_priority", "FA: Path Priority per firefly count"),
    ] {
        if present.contains(&alg) {
            let groups: Vec<_> = sizes.iter().map(|&n| (alg, n)).collect();
            tables.push(build_table(id, title, TableKind::Priority, &groups, runs, false));
        }
    }

    for alg in [Algorithm::Mopso, Algorithm::Mofa] {
        if !present.contains(&alg) {
            continue;
        }
        for chunk in sizes.chunks(3) {
            let groups: Vec<_> = chunk.iter().map(|&n| (alg, n)).collect();
            let span = chunk.iter().map(usize::to_string).collect::<Vec<_>>().join("_");
            tables.push(build_table(
                &format!("{}_objectives_{span}", alg.name()),
                &format!(
                    "{}: objective values for {}",
                    alg.display_name(),
                    chunk
                        .iter()
                        .map(|&n| size_header(alg, n, true))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                TableKind::Objectives,
                &groups,
                runs,
                true,
            ));
        }
        for &n in sizes {
            tables.push(build_table(
                &format!("{}_{}", alg.name(), n),
                &format!(
                    "{}: objective values with {}",
                    alg.display_name(),
                    size_header(alg, n, true)
                ),
                TableKind::Objectives,
                &[(alg, n)],
                runs,
                true,
            ));
        }
    }

    let both = present.contains(&Algorithm::Mopso) && present.contains(&Algorithm::Mofa);
    if both {
        for pair in sizes.chunks(2) {
            let groups: Vec<_> = pair
                .iter()
                .flat_map(|&n| [(Algorithm::Mopso, n), (Algorithm::Mofa, n)])
                .collect();
            let span = pair.iter().map(usize::to_string).collect::<Vec<_>>().join("_");
            tables.push(build_table(
                &format!("compare_{span}"),
                &format!(
                    "MOPSO vs MOFA: Path Priority and Cost, swarm sizes {}",
                    pair.iter().map(usize::to_string).collect::<Vec<_>>().join(" and ")
                ),
                TableKind::Objectives,
                &groups,
                runs,
                true,
            ));
        }
    }

    let mut convergence = Vec::new();
    for alg in Algorithm::ALL.into_iter().filter(|a| present.contains(a)) {
        for &n in sizes {
            let group: Vec<&RunResult> = runs.iter().filter(|r| r.algorithm == alg && r.agents == n).collect();
            if group.is_empty() {
                continue;
            }
            let reached: Vec<f64> = group
                .iter()
                .filter_map(|r| r.iterations_to_coverage.map(|i| i as f64))
                .collect();
            let distinct: BTreeSet<&TestSequence> = group.iter().flat_map(|r| r.evaluated.iter()).collect();
            convergence.push(ConvergenceRow {
                algorithm: alg,
                agents: n,
                runs: group.len(),
                converged: group.iter().filter(|r| r.converged).count(),
                mean_iterations_to_coverage: (!reached.is_empty())
                    .then(|| reached.iter().sum::<f64>() / reached.len() as f64),
                mean_suite_size: group.iter().map(|r| r.suite.len() as f64).sum::<f64>() / group.len() as f64,
                max_suite_size: group.iter().map(|r| r.suite.len()).max().unwrap_or(0),
                distinct_sequences_evaluated: distinct.len(),
            });
        }
    }

    let summary = both.then(|| {
        let per_size: Vec<SizeVerdict> = sizes
            .iter()
            .map(|&n| {
                let nd_mean =
                    |alg| build_table("", "", TableKind::Objectives, &[(alg, n)], runs, true).columns[0].average;
                let mopso = nd_mean(Algorithm::Mopso);
                let mofa = nd_mean(Algorithm::Mofa);
                SizeVerdict {
                    agents: n,
                    mopso,
                    mofa,
                    higher_priority: if mopso.priority >= mofa.priority {
                        Algorithm::Mopso
                    } else {
                        Algorithm::Mofa
                    },
                    lower_cost: if mopso.cost <= mofa.cost {
                        Algorithm::Mopso
                    } else {
                        Algorithm::Mofa
                    },
                }
            })
            .collect();
        let count = |f: &dyn Fn(&SizeVerdict) -> bool| per_size.iter().filter(|v| f(v)).count();
        WinnerSummary {
            mopso_priority_wins: count(&|v| v.higher_priority == Algorithm::Mopso),
            mopso_cost_wins: count(&|v| v.lower_cost == Algorithm::Mopso),
            mofa_priority_wins: count(&|v| v.higher_priority == Algorithm::Mofa),
            mofa_cost_wins: count(&|v| v.lower_cost == Algorithm::Mofa),
            per_size,
        }
    });

    ComparisonReport {
        graph: graph.to_string(),
        seeds: seeds.to_vec(),
        sizes: sizes.to_vec(),
        tables,
        convergence,
        summary,
    }
}

/// Renders one run. The csv schema is `sequence,priority,cost,non_dominated`.
pub fn emit_run(result: &RunResult, format: OutputFormat) -> String {
    let vectors: Vec<ObjectiveVector> = result.objectives.clone();
    let nd: BTreeSet<usize> = non_dominated_indices(&vectors).into_iter().collect();
    let flags: Vec<bool> = (0..vectors.len()).map(|i| nd.contains(&i)).collect();
    assert_flags(&vectors, &flags);
    if result.algorithm.is_multi_objective() {
        for (seq, &flag) in result.suite.iter().zip(&flags) {
            assert_eq!(
                result.archive.contains(seq),
                flag,
                "archive disagrees with non-dominated filter"
            );
        }
    }
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(result).expect("run result serializes") + "\n",
        OutputFormat::Csv => {
            let mut out = String::from("sequence,priority,cost,non_dominated\n");
            for ((seq, v), flag) in result.entries().zip(&flags) {
                let _ = writeln!(out, "\"{seq}\",{},{},{flag}", fmt4(v.priority), fmt4(v.cost));
            }
            out
        }
        OutputFormat::Md => {
            let mut out = format!(
                "### {} with {} (seed {})\n\n| Sequence | Path Priority | Cost |\n|---|---|---|\n",
                result.algorithm.display_name(),
                size_header(result.algorithm, result.agents, true),
                result.seed
            );
            for ((seq, v), &flag) in result.entries().zip(&flags) {
                let (p, c) = (fmt4(v.priority), fmt4(v.cost));
                if flag {
                    let _ = writeln!(out, "| **{seq}** | **{p}** | **{c}** |");
                } else {
                    let _ = writeln!(out, "| {seq} | {p} | {c} |");
                }
            }
            let avg = mean(vectors.iter().zip(&flags).filter(|(_, &f)| f).map(|(v, _)| *v));
            let _ = writeln!(out, "| Average Values | {} | {} |", fmt4(avg.priority), fmt4(avg.cost));
            out
        }
    }
}

/// Parses a run previously written with [`OutputFormat::Json`].
pub fn parse_run(json: &str) -> Result<RunResult, HarnessError> {
    serde_json::from_str(json).map_err(|e| HarnessError::Io(format!("cannot parse run result: {e}")))
}
