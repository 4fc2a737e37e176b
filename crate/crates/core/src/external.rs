//! Driving an external SAT solver executable over DIMACS files.
//!
//! The solver is expected to follow the SAT competition output convention:
//! one `s SATISFIABLE` / `s UNSATISFIABLE` / `s UNKNOWN` status line and, for
//! satisfiable inputs, `v ...` value lines terminated by `0`. Every model is
//! re-checked against the formula before it is handed back.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;
use wait_timeout::ChildExt;

use crate::encoding::{to_dimacs, CnfFormula, Lit};
use crate::sat::{Interrupt, SatError, SolveOutcome};

/// Placeholder replaced by the DIMACS input path in argument templates.
pub const INPUT_PLACEHOLDER: &str = "{input}";

#[derive(Debug, Error)]
pub enum ExternalError {
    #[error("solver executable `{0}` not found or not executable")]
    NotExecutable(PathBuf),
    #[error("I/O error talking to the external solver: {0}")]
    Io(#[from] std::io::Error),
    #[error("solver protocol error ({message}); exit status {status:?}")]
    Protocol { message: String, status: Option<i32> },
    #[error("model reported by the external solver does not satisfy the formula")]
    ModelVerification,
    #[error(transparent)]
    Clause(#[from] SatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolverConfig {
    pub executable: PathBuf,
    /// Arguments; [`INPUT_PLACEHOLDER`] is substituted with the DIMACS path.
    /// If no argument contains it, the path is appended.
    pub args: Vec<String>,
    pub working_dir: Option<PathBuf>,
    /// Per-call wall-clock limit.
    pub timeout: Option<Duration>,
}

fn is_executable(path: &Path) -> bool {
    let Ok(meta) = std::fs::metadata(path) else {
        return false;
    };
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        meta.is_file() && meta.permissions().mode() & 0o111 != 0
    }
    #[cfg(not(unix))]
    {
        meta.is_file()
    }
}

fn resolve(executable: &Path) -> Option<PathBuf> {
    if executable.components().count() > 1 || executable.is_absolute() {
        return is_executable(executable).then(|| executable.to_path_buf());
    }
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path).map(|dir| dir.join(executable)).find(|p| is_executable(p))
}

impl ExternalSolverConfig {
    /// Checks that `executable` exists and is runnable; bare names are looked
    /// up on `PATH`.
    pub fn new(executable: impl AsRef<Path>) -> Result<Self, ExternalError> {
        let requested = executable.as_ref();
        let executable =
            resolve(requested).ok_or_else(|| ExternalError::NotExecutable(requested.to_path_buf()))?;
        Ok(ExternalSolverConfig { executable, args: Vec::new(), working_dir: None, timeout: None })
    }

    pub fn with_args<I, S>(mut self, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.args = args.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    fn command_args(&self, input: &Path) -> Vec<String> {
        let input = input.to_string_lossy();
        if self.args.iter().any(|a| a.contains(INPUT_PLACEHOLDER)) {
            self.args.iter().map(|a| a.replace(INPUT_PLACEHOLDER, &input)).collect()
        } else {
            let mut args = self.args.clone();
            args.push(input.into_owned());
            args
        }
    }
}

/// What a solver printed, before any checking against the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawAnswer {
    Sat(Vec<Lit>),
    Unsat,
    Unknown,
}

/// Parses SAT-competition style output.
pub fn parse_competition_output(stdout: &str) -> Result<RawAnswer, String> {
    let mut status = None;
    let mut values = Vec::new();
    for line in stdout.lines() {
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix("s ") {
            if status.is_some() {
                return Err("more than one status line".into());
            }
            status = Some(match rest.trim() {
                "SATISFIABLE" => 10,
                "UNSATISFIABLE" => 20,
                "UNKNOWN" => 0,
                other => return Err(format!("unrecognised status `{other}`")),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: Lit = tok.parse().map_err(|_| format!("bad value literal `{tok}`"))?;
                if lit != 0 {
                    values.push(lit);
                }
            }
        } else if line == "v" {
            continue;
        }
    }
    match status {
        Some(10) => Ok(RawAnswer::Sat(values)),
        Some(20) => Ok(RawAnswer::Unsat),
        Some(_) => Ok(RawAnswer::Unknown),
        None => Err("no status line".into()),
    }
}

/// Turns reported literals into a total model (unmentioned variables default
/// to false) and verifies it against `f`.
pub fn complete_and_verify(f: &CnfFormula, values: &[Lit]) -> Result<Vec<bool>, ExternalError> {
    let mut model = vec![false; f.num_vars()];
    for &lit in values {
        let var = lit.unsigned_abs() as usize;
        if var == 0 || var > f.num_vars() {
            return Err(ExternalError::Protocol {
                message: format!("value line mentions undeclared variable {lit}"),
                status: None,
            });
        }
        model[var - 1] = lit > 0;
    }
    if f.is_satisfied_by(&model) {
        Ok(model)
    } else {
        Err(ExternalError::ModelVerification)
    }
}

/// Writes `f` to a fresh temporary file, runs the solver on it and returns a
/// verified outcome. `deadline`, when given, further caps the call.
pub fn solve_external_until(
    cfg: &ExternalSolverConfig,
    f: &CnfFormula,
    deadline: Option<Instant>,
) -> Result<SolveOutcome, ExternalError> {
    let mut input = tempfile::Builder::new().prefix("afsat-").suffix(".cnf").tempfile()?;
    input.write_all(to_dimacs(f, &[]).as_bytes())?;
    input.flush()?;

    let mut cmd = Command::new(&cfg.executable);
    cmd.args(cfg.command_args(input.path()))
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null());
    if let Some(dir) = &cfg.working_dir {
        cmd.current_dir(dir);
    }
    let mut child = cmd.spawn()?;
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let reader = std::thread::spawn(move || {
        let mut buf = String::new();
        stdout.read_to_string(&mut buf).map(|_| buf)
    });

    let mut limit = cfg.timeout;
    if let Some(d) = deadline {
        let left = d.saturating_duration_since(Instant::now());
        limit = Some(limit.map_or(left, |l| l.min(left)));
    }
    let status = match limit {
        Some(limit) => match child.wait_timeout(limit)? {
            Some(status) => status,
            None => {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolveOutcome::Unknown(Interrupt::Deadline));
            }
        },
        None => child.wait()?,
    };
    let output = reader.join().map_err(|_| ExternalError::Protocol {
        message: "output reader panicked".into(),
        status: status.code(),
    })??;

    match parse_competition_output(&output) {
        Ok(RawAnswer::Sat(values)) => Ok(SolveOutcome::Sat(complete_and_verify(f, &values)?)),
        Ok(RawAnswer::Unsat) => Ok(SolveOutcome::Unsat),
        Ok(RawAnswer::Unknown) => Ok(SolveOutcome::Unknown(Interrupt::SolverGaveUp)),
        Err(message) => Err(ExternalError::Protocol { message, status: status.code() }),
    }
}

pub fn solve_external(cfg: &ExternalSolverConfig, f: &CnfFormula) -> Result<SolveOutcome, ExternalError> {
    solve_external_until(cfg, f, None)
}

/// A stateless session: clauses accumulate in memory and the whole formula
/// is re-emitted on every solve.
#[derive(Debug, Clone)]
pub struct ExternalSession {
    cfg: ExternalSolverConfig,
    formula: CnfFormula,
    unsat: bool,
    deadline: Option<Instant>,
    calls: u64,
}

impl ExternalSession {
    pub fn new(cfg: ExternalSolverConfig, formula: CnfFormula) -> Self {
        ExternalSession { cfg, formula, unsat: false, deadline: None, calls: 0 }
    }

    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.deadline = deadline;
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<(), ExternalError> {
        for &l in lits {
            if l == 0 {
                return Err(SatError::ZeroLiteral.into());
            }
            if l.unsigned_abs() as usize > self.formula.num_vars() {
                return Err(SatError::VarOutOfRange { lit: l, num_vars: self.formula.num_vars() }.into());
            }
        }
        if lits.is_empty() {
            self.unsat = true;
            return Ok(());
        }
        self.formula.add_clause(lits).expect("literals validated above");
        Ok(())
    }

    pub fn solve(&mut self) -> Result<SolveOutcome, ExternalError> {
        if self.unsat {
            return Ok(SolveOutcome::Unsat);
        }
        self.calls += 1;
        solve_external_until(&self.cfg, &self.formula, self.deadline)
    }
}
