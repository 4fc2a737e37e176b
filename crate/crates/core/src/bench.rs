//! Timed batch runs over a suite manifest and IPC speed scoring.
//!
//! A case scores `1 / (1 + log10(T / T*))` for a system that solved it in
//! `T` seconds, where `T*` is the best time any system achieved on it. Any
//! solved time under one second scores 1. Failures score 0, and a case no
//! system solved is dropped from the valid-case count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::str::FromStr;
use std::sync::{mpsc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wait_timeout::ChildExt;

use crate::af::{parse_apx, parse_tgf};
use crate::encoding::EncodingId;
use crate::enumerate::{enumerate_preferred_with_budget, Backend};
use crate::external::ExternalSolverConfig;
use crate::generate::{GenParam, Manifest, ManifestEntry};
use crate::sat::Budget;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(900);
/// Budget of the desk-scale profile.
pub const DESK_BUDGET: Duration = Duration::from_secs(60);
pub const CSV_HEADER: &str = "instance_id,system_id,outcome,seconds";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no benchmark records to score")]
    NoRecords,
    #[error("bad system id {0:?} (expected ENCODING:builtin or ENCODING:ext:PATH)")]
    BadSystem(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solved,
    Timeout,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub system_id: String,
    pub outcome: Outcome,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverChoice {
    Builtin,
    External(PathBuf),
}

/// An encoding paired with a SAT backend, written `C2:builtin` or
/// `C2:ext:/path/to/solver`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub encoding: EncodingId,
    pub solver: SolverChoice,
}

impl System {
    pub fn builtin(encoding: EncodingId) -> Self {
        System { encoding, solver: SolverChoice::Builtin }
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// The value of the CLI's `--solver` flag for this system.
    pub fn solver_arg(&self) -> String {
        match &self.solver {
            SolverChoice::Builtin => "builtin".into(),
            SolverChoice::External(p) => format!("ext:{}", p.display()),
        }
    }

    pub fn backend(&self) -> Result<Backend, crate::external::ExternalError> {
        Ok(match &self.solver {
            SolverChoice::Builtin => Backend::default(),
            SolverChoice::External(p) => Backend::External(ExternalSolverConfig::new(p)?),
        })
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.encoding, self.solver_arg())
    }
}

impl FromStr for System {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let bad = || BenchError::BadSystem(s.to_string());
        let (enc, solver) = s.split_once(':').ok_or_else(bad)?;
        let encoding = enc.parse().map_err(|_| bad())?;
        let solver = match solver {
            "builtin" => SolverChoice::Builtin,
            other => match other.strip_prefix("ext:") {
                Some(path) if !path.is_empty() => SolverChoice::External(PathBuf::from(path)),
                _ => return Err(bad()),
            },
        };
        Ok(System { encoding, solver })
    }
}

/// Parses a comma-separated system list.
pub fn parse_systems(list: &str) -> Result<Vec<System>, BenchError> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
}

/// Merges repeated runs of the same (instance, system) pair: the pair fails
/// if any run failed, otherwise it keeps the median time.
pub fn collapse_repetitions(records: &[BenchRecord]) -> Vec<BenchRecord> {
    let mut groups: BTreeMap<(&str, &str), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((&r.instance_id, &r.system_id)).or_default().push(r);
    }
    groups
        .into_values()
        .map(|runs| {
            if let Some(failed) = runs.iter().find(|r| r.outcome != Outcome::Solved) {
                return (*failed).clone();
            }
            let mut times: Vec<f64> = runs.iter().map(|r| r.seconds).collect();
            times.sort_by(f64::total_cmp);
            let m = times.len() / 2;
            let median = if times.len() % 2 == 1 { times[m] } else { (times[m - 1] + times[m]) / 2.0 };
            BenchRecord { seconds: median, ..runs[0].clone() }
        })
        .collect()
}

/// Score of one solved run given the case's best time.
pub fn case_score(t: f64, t_best: f64) -> f64 {
    if t < 1.0 {
        1.0
    } else {
        1.0 / (1.0 + (t / t_best).log10())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IpcRow {
    pub group: String,
    pub system: String,
    pub raw: f64,
    pub valid_cases: usize,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IpcTable {
    pub rows: Vec<IpcRow>,
}

/// Instance id to group keys. Every instance also lands in group `all`.
pub type GroupFn<'a> = &'a dyn Fn(&str) -> Vec<String>;

pub fn no_groups(_: &str) -> Vec<String> {
    Vec::new()
}

fn system_order(records: &[BenchRecord]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    records.iter().filter(|r| seen.insert(r.system_id.clone())).map(|r| r.system_id.clone()).collect()
}

fn groups_of(id: &str, group_of: GroupFn) -> Vec<String> {
    let mut g = vec!["all".to_string()];
    g.extend(group_of(id));
    g
}

/// Solved runs slower than `budget` count as failures. A system with no
/// record for a case fails it.
pub fn ipc_score(records: &[BenchRecord], budget: Duration, group_of: GroupFn) -> Result<IpcTable, BenchError> {
    if records.is_empty() {
        return Err(BenchError::NoRecords);
    }
    let limit = budget.as_secs_f64();
    let records = collapse_repetitions(records);
    let systems = system_order(&records);
    let mut cases: BTreeMap<&str, HashMap<&str, f64>> = BTreeMap::new();
    for r in &records {
        let entry = cases.entry(&r.instance_id).or_default();
        if r.outcome == Outcome::Solved && r.seconds <= limit {
            entry.insert(&r.system_id, r.seconds);
        }
    }

    let mut raw: BTreeMap<(String, String), f64> = BTreeMap::new();
    let mut valid: BTreeMap<String, usize> = BTreeMap::new();
    let mut group_names = Vec::new();
    for (id, solved) in &cases {
        let groups = groups_of(id, group_of);
        for g in &groups {
            if !group_names.contains(g) {
                group_names.push(g.clone());
            }
        }
        let Some(best) = solved.values().copied().reduce(f64::min) else { continue };
        for g in &groups {
            *valid.entry(g.clone()).or_default() += 1;
            for s in &systems {
                let score = solved.get(s.as_str()).map_or(0.0, |&t| case_score(t, best));
                *raw.entry((g.clone(), s.clone())).or_default() += score;
            }
        }
    }

    group_names.sort_by(|a, b| (a != "all", a).cmp(&(b != "all", b)));
    let mut rows = Vec::new();
    for g in &group_names {
        let n = valid.get(g).copied().unwrap_or(0);
        for s in &systems {
            let r = raw.get(&(g.clone(), s.clone())).copied().unwrap_or(0.0);
            let normalized = if n == 0 { 0.0 } else { r / n as f64 * 100.0 };
            rows.push(IpcRow { group: g.clone(), system: s.clone(), raw: r, valid_cases: n, normalized });
        }
    }
    Ok(IpcTable { rows })
}

impl IpcTable {
    pub fn get(&self, group: &str, system: &str) -> Option<&IpcRow> {
        self.rows.iter().find(|r| r.group == group && r.system == system)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("group,system,raw,valid_cases,normalized\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.group, r.system, r.raw, r.valid_cases, r.normalized));
        }
        out
    }

    /// One line per group, one column per system, normalized scores.
    pub fn to_gnuplot(&self) -> String {
        pivot(self.rows.iter().map(|r| (r.group.as_str(), r.system.as_str(), r.normalized)))
    }
}

fn pivot<'a>(cells: impl Iterator<Item = (&'a str, &'a str, f64)>) -> String {
    let mut groups: Vec<&str> = Vec::new();
    let mut systems: Vec<&str> = Vec::new();
    let mut values = HashMap::new();
    for (g, s, v) in cells {
        if !groups.contains(&g) {
            groups.push(g);
        }
        if !systems.contains(&s) {
            systems.push(s);
        }
        values.insert((g, s), v);
    }
    let mut out = format!("# group {}\n", systems.join(" "));
    for g in groups {
        out.push_str(g);
        for s in &systems {
            match values.get(&(g, *s)) {
                Some(v) => out.push_str(&format!(" {v:.4}")),
                None => out.push_str(" ?"),
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuccessRow {
    pub group: String,
    pub system: String,
    pub solved: usize,
    pub total: usize,
    pub rate: f64,
}

/// Fraction of cases each system solved, per group. Timeouts and errors both
/// count as failures.
pub fn success_rate(records: &[BenchRecord], group_of: GroupFn) -> Vec<SuccessRow> {
    let records = collapse_repetitions(records);
    let mut counts: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    let mut order = Vec::new();
    for r in &records {
        for g in groups_of(&r.instance_id, group_of) {
            let key = (g, r.system_id.clone());
            if !counts.contains_key(&key) {
                order.push(key.clone());
            }
            let c = counts.entry(key).or_default();
            c.1 += 1;
            if r.outcome == Outcome::Solved {
                c.0 += 1;
            }
        }
    }
    order.sort_by(|a, b| (a.0 != "all", &a.0, &a.1).cmp(&(b.0 != "all", &b.0, &b.1)));
    order
        .into_iter()
        .map(|(group, system)| {
            let (solved, total) = counts[&(group.clone(), system.clone())];
            SuccessRow { group, system, solved, total, rate: solved as f64 / total as f64 }
        })
        .collect()
}

pub fn success_gnuplot(rows: &[SuccessRow]) -> String {
    pivot(rows.iter().map(|r| (r.group.as_str(), r.system.as_str(), r.rate)))
}

/// Ways to bucket instances using their manifest entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBy {
    /// `k=25`, `k=50`, ...
    ArgCount,
    /// `p=0.25`, ... for the probability method; `count`, `empty`,
    /// `fully_connected` otherwise.
    Density,
    Class,
}

pub fn group_key(entry: &ManifestEntry, by: GroupBy) -> String {
    match by {
        GroupBy::ArgCount => format!("k={}", entry.k),
        GroupBy::Class => entry.class_id.clone(),
        GroupBy::Density => match (&entry.method[..], &entry.param) {
            ("probability", Some(GenParam::Number(p))) => format!("p={p}"),
            (m, _) => m.to_string(),
        },
    }
}

/// Builds a grouping function from a manifest.
pub fn manifest_grouping(manifest: &Manifest, by: &[GroupBy]) -> impl Fn(&str) -> Vec<String> {
    let map: HashMap<String, Vec<String>> = manifest
        .instances
        .iter()
        .map(|e| (e.instance_id(), by.iter().map(|&b| group_key(e, b)).collect()))
        .collect();
    move |id| map.get(id).cloned().unwrap_or_default()
}

/// Where each run executes.
#[derive(Debug, Clone, PartialEq)]
pub enum Isolation {
    /// A fresh `<exe> enumerate ...` process per run, killed at the budget.
    Process { exe: PathBuf },
    InProcess,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub systems: Vec<System>,
    pub budget: Duration,
    pub repetitions: usize,
    pub jobs: usize,
    pub isolation: Isolation,
    /// Records stream here as they complete; pairs already present are not
    /// run again.
    pub csv: Option<PathBuf>,
}

impl BenchConfig {
    pub fn new(systems: Vec<System>, isolation: Isolation) -> Self {
        BenchConfig { systems, budget: DEFAULT_BUDGET, repetitions: 1, jobs: 1, isolation, csv: None }
    }

    /// 60-second budget, otherwise as [`BenchConfig::new`].
    pub fn desk(systems: Vec<System>, isolation: Isolation) -> Self {
        BenchConfig { budget: DESK_BUDGET, ..BenchConfig::new(systems, isolation) }
    }
}

/// Reads a record CSV, skipping `#` comment lines.
pub fn read_records(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    let mut out = Vec::new();
    for rec in rdr.deserialize() {
        out.push(rec?);
    }
    Ok(out)
}

struct Job<'a> {
    entry: &'a ManifestEntry,
    system: &'a System,
}

fn run_one(job: &Job, base: &Path, cfg: &BenchConfig) -> BenchRecord {
    let path = base.join(&job.entry.path);
    let (outcome, seconds) = match &cfg.isolation {
        Isolation::Process { exe } => run_in_child(exe, &path, job.system, cfg.budget),
        Isolation::InProcess => run_here(&path, job.system, cfg.budget),
    };
    let limit = cfg.budget.as_secs_f64();
    let (outcome, seconds) = match outcome {
        Outcome::Solved if seconds > limit => (Outcome::Timeout, limit),
        Outcome::Timeout => (Outcome::Timeout, limit),
        other => (other, seconds.min(limit)),
    };
    BenchRecord { instance_id: job.entry.instance_id(), system_id: job.system.id(), outcome, seconds }
}

fn run_in_child(exe: &Path, input: &Path, system: &System, budget: Duration) -> (Outcome, f64) {
    let started = Instant::now();
    let child = Command::new(exe)
        .arg("enumerate")
        .args(["--encoding", system.encoding.as_str()])
        .args(["--solver", &system.solver_arg()])
        .args(["--timeout", &budget.as_secs_f64().to_string()])
        .arg(input)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(_) => return (Outcome::Error, 0.0),
    };
    match child.wait_timeout(budget) {
        Ok(Some(status)) => {
            let t = started.elapsed().as_secs_f64();
            match status.code() {
                Some(0) => (Outcome::Solved, t),
                Some(3) => (Outcome::Timeout, t),
                _ => (Outcome::Error, t),
            }
        }
        Ok(None) => {
            let _ = child.kill();
            let _ = child.wait();
            (Outcome::Timeout, budget.as_secs_f64())
        }
        Err(_) => {
            let _ = child.kill();
            let _ = child.wait();
            (Outcome::Error, started.elapsed().as_secs_f64())
        }
    }
}

fn run_here(input: &Path, system: &System, budget: Duration) -> (Outcome, f64) {
    let started = Instant::now();
    let Ok(text) = fs::read_to_string(input) else { return (Outcome::Error, 0.0) };
    let parsed = if input.extension().is_some_and(|e| e == "tgf") { parse_tgf(&text) } else { parse_apx(&text) };
    let Ok(af) = parsed else { return (Outcome::Error, started.elapsed().as_secs_f64()) };
    let Ok(backend) = system.backend() else { return (Outcome::Error, started.elapsed().as_secs_f64()) };
    let b = Budget { max_conflicts: None, deadline: Some(started + budget) };
    let result = enumerate_preferred_with_budget(&af, system.encoding, &backend, b);
    let t = started.elapsed().as_secs_f64();
    match result {
        Ok(_) => (Outcome::Solved, t),
        Err(crate::enumerate::EnumerateError::Incomplete { .. }) => (Outcome::Timeout, t),
        Err(_) => (Outcome::Error, t),
    }
}

fn open_writer(path: &Path) -> Result<fs::File, BenchError> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    if fresh {
        writeln!(file, "# afsat {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(file, "{CSV_HEADER}")?;
    }
    Ok(file)
}

fn csv_line(r: &BenchRecord) -> Result<String, BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.serialize(r)?;
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Runs every (instance, system) pair `repetitions` times and returns all
/// records, including ones resumed from `cfg.csv`, ordered by manifest
/// position and then system.
pub fn run_bench(manifest: &Manifest, base: &Path, cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = match &cfg.csv {
        Some(p) if p.exists() && fs::metadata(p)?.len() > 0 => read_records(p)?,
        _ => Vec::new(),
    };
    let mut done: HashMap<(String, String), usize> = HashMap::new();
    for r in &records {
        *done.entry((r.instance_id.clone(), r.system_id.clone())).or_default() += 1;
    }
    let mut jobs = Vec::new();
    for entry in &manifest.instances {
        for system in &cfg.systems {
            let have = done.get(&(entry.instance_id(), system.id())).copied().unwrap_or(0);
            for _ in have..cfg.repetitions {
                jobs.push(Job { entry, system });
            }
        }
    }

    let mut writer = cfg.csv.as_deref().map(open_writer).transpose()?;
    let queue = Mutex::new(jobs.iter());
    let (tx, rx) = mpsc::channel();
    let mut write_error = None;
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1) {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let next = queue.lock().expect("queue lock").next();
                let Some(job) = next else { break };
                if tx.send(run_one(job, base, cfg)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for record in rx {
            if let (Some(w), None) = (writer.as_mut(), &write_error) {
                let res = csv_line(&record).and_then(|line| {
                    w.write_all(line.as_bytes())?;
                    w.flush()?;
                    Ok(())
                });
                if let Err(e) = res {
                    write_error = Some(e);
                }
            }
            records.push(record);
        }
    });
    if let Some(e) = write_error {
        return Err(e);
    }

    let pos: HashMap<String, usize> =
        manifest.instances.iter().enumerate().map(|(i, e)| (e.instance_id(), i)).collect();
    let sys: HashMap<String, usize> = cfg.systems.iter().enumerate().map(|(i, s)| (s.id(), i)).collect();
    records.sort_by_key(|r| {
        (
            pos.get(&r.instance_id).copied().unwrap_or(usize::MAX),
            sys.get(&r.system_id).copied().unwrap_or(usize::MAX),
        )
    });
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(i: &str, s: &str, outcome: Outcome, seconds: f64) -> BenchRecord {
        BenchRecord { instance_id: i.into(), system_id: s.into(), outcome, seconds }
    }

    const B: Duration = Duration::from_secs(900);

    #[test]
    fn unit_scores() {
        assert_eq!(case_score(5.0, 5.0), 1.0);
        assert_eq!(case_score(20.0, 2.0), 0.5);
        assert_eq!(case_score(0.4, 0.01), 1.0);
    }

    #[test]
    fn failing_system_scores_zero() {
        let rs = vec![rec("x", "A", Outcome::Solved, 3.0), rec("x", "B", Outcome::Timeout, 900.0)];
        let t = ipc_score(&rs, B, &no_groups).unwrap();
        assert_eq!(t.get("all", "A").unwrap().normalized, 100.0);
        assert_eq!(t.get("all", "B").unwrap().normalized, 0.0);
    }

    #[test]
    fn invalid_cases_are_dropped() {
        let rs = vec![
            rec("x", "A", Outcome::Solved, 2.0),
            rec("x", "B", Outcome::Solved, 20.0),
            rec("y", "A", Outcome::Timeout, 900.0),
            rec("y", "B", Outcome::Error, 0.0),
        ];
        let t = ipc_score(&rs, B, &no_groups).unwrap();
        let b = t.get("all", "B").unwrap();
        assert_eq!((b.raw, b.valid_cases, b.normalized), (0.5, 1, 50.0));
    }

    #[test]
    fn over_budget_counts_as_failure() {
        let rs = vec![rec("x", "A", Outcome::Solved, 2.0), rec("x", "B", Outcome::Solved, 1000.0)];
        assert_eq!(ipc_score(&rs, B, &no_groups).unwrap().get("all", "B").unwrap().raw, 0.0);
    }

    #[test]
    fn empty_records_error() {
        assert!(matches!(ipc_score(&[], B, &no_groups), Err(BenchError::NoRecords)));
    }

    #[test]
    fn groups_and_success_rate() {
        let g = |id: &str| vec![format!("g{}", &id[..1])];
        let rs = vec![
            rec("1a", "A", Outcome::Solved, 0.1),
            rec("1b", "A", Outcome::Solved, 0.1),
            rec("1c", "A", Outcome::Solved, 0.1),
            rec("1d", "A", Outcome::Timeout, 900.0),
            rec("2a", "A", Outcome::Error, 0.0),
        ];
        let rows = success_rate(&rs, &g);
        let find = |grp: &str| rows.iter().find(|r| r.group == grp).unwrap().rate;
        assert_eq!(find("g1"), 0.75);
        assert_eq!(find("g2"), 0.0);
        assert_eq!(find("all"), 0.6);
        let t = ipc_score(&rs, B, &g).unwrap();
        assert_eq!(t.get("g1", "A").unwrap().valid_cases, 3);
        assert_eq!(t.get("g2", "A").unwrap().normalized, 0.0);
        assert!(t.to_gnuplot().starts_with("# group A\nall 100.0000\n"));
    }

    #[test]
    fn repetitions_collapse_to_median() {
        let rs = vec![
            rec("x", "A", Outcome::Solved, 3.0),
            rec("x", "A", Outcome::Solved, 1.0),
            rec("x", "A", Outcome::Solved, 2.0),
            rec("y", "A", Outcome::Solved, 1.0),
            rec("y", "A", Outcome::Timeout, 9.0),
        ];
        let c = collapse_repetitions(&rs);
        assert_eq!(c[0].seconds, 2.0);
        assert_eq!(c[1].outcome, Outcome::Timeout);
    }

    #[test]
    fn system_ids() {
        let s: System = "c2:builtin".parse().unwrap();
        assert_eq!(s.id(), "C2:builtin");
        let e: System = "C1a:ext:/opt/bin/solver".parse().unwrap();
        assert_eq!(e.solver, SolverChoice::External("/opt/bin/solver".into()));
        assert_eq!(e.id(), "C1a:ext:/opt/bin/solver");
        for bad in ["C2", "C9:builtin", "C2:ext:", "C2:other"] {
            assert!(bad.parse::<System>().is_err(), "{bad}");
        }
        assert_eq!(parse_systems("C1:builtin, C2:builtin").unwrap().len(), 2);
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        let mut f = open_writer(&p).unwrap();
        let r = rec("x-0001", "C2:builtin", Outcome::Solved, 0.125);
        f.write_all(csv_line(&r).unwrap().as_bytes()).unwrap();
        drop(f);
        let text = fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("# afsat "));
        assert!(text.contains("instance_id,system_id,outcome,seconds\nx-0001,C2:builtin,solved,0.125\n"));
        assert_eq!(read_records(&p).unwrap(), vec![r]);
    }
}
