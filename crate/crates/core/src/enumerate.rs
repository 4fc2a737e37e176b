//! Enumeration of preferred and complete extensions through SAT calls.
//!
//! Preferred extensions are found by a nested search. The outer loop keeps a
//! session holding the labelling encoding plus one clause per preferred
//! extension found so far, forbidding every subset of it. Each outer
//! iteration clones that session and runs a depth-first climb: whenever the
//! solver returns a complete extension `S`, the clone is strengthened so that
//! the next answer must contain `S` and at least one more argument. When the
//! climb stalls, the last `S` is maximal, hence preferred.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::af::{sort_extensions, AfError, ArgumentationFramework, Extension};
use crate::encoding::{encode, encode_complete, model_to_labelling, CnfFormula, EncodingError, EncodingId, Lit, VarLayout};
use crate::external::{ExternalError, ExternalSession, ExternalSolverConfig};
use crate::sat::{Budget, Interrupt, SatError, SolveOutcome, Solver, SolverConfig, SolverStats};

/// Which SAT solver answers the calls.
#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    Builtin(SolverConfig),
    External(ExternalSolverConfig),
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Builtin(SolverConfig::default())
    }
}

impl Backend {
    pub fn builtin_seeded(seed: u64) -> Self {
        Backend::Builtin(SolverConfig { seed: Some(seed), ..SolverConfig::default() })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EnumerationStats {
    pub sat_calls: u64,
    pub outer_iterations: u64,
    pub inner_iterations: u64,
    #[serde(serialize_with = "as_seconds")]
    pub wall_time: Duration,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl EnumerationStats {
    fn absorb(&mut self, before: SolverStats, after: SolverStats) {
        self.conflicts += after.conflicts - before.conflicts;
        self.decisions += after.decisions - before.decisions;
        self.propagations += after.propagations - before.propagations;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationResult {
    /// Sorted by size (largest first), then by member names.
    pub extensions: Vec<Extension>,
    pub stats: EnumerationStats,
    /// False only inside [`EnumerateError::Incomplete`].
    pub complete: bool,
    /// For preferred enumeration: the in-sets returned within each inner
    /// loop, in order.
    pub chains: Vec<Vec<Extension>>,
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("solver budget exhausted ({reason:?}); {} extensions found so far", partial.extensions.len())]
    Incomplete { partial: Box<EnumerationResult>, reason: Interrupt },
    #[error(transparent)]
    External(#[from] ExternalError),
    #[error("solver returned an ill-formed model: {0}")]
    Decode(#[from] EncodingError),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Argument(#[from] AfError),
}

#[derive(Debug, Clone)]
enum Session {
    Builtin(Box<Solver>),
    External(ExternalSession),
}

impl Session {
    fn new(backend: &Backend, f: CnfFormula, budget: Budget) -> Self {
        match backend {
            Backend::Builtin(cfg) => {
                let mut s = Solver::from_formula(&f, *cfg);
                s.set_budget(budget);
                Session::Builtin(Box::new(s))
            }
            Backend::External(cfg) => {
                let mut s = ExternalSession::new(cfg.clone(), f);
                s.set_deadline(budget.deadline);
                Session::External(s)
            }
        }
    }

    fn add_clause(&mut self, lits: &[Lit]) -> Result<(), EnumerateError> {
        match self {
            Session::Builtin(s) => s.add_clause(lits)?,
            Session::External(s) => s.add_clause(lits)?,
        }
        Ok(())
    }

    fn solve(&mut self, stats: &mut EnumerationStats) -> Result<SolveOutcome, EnumerateError> {
        stats.sat_calls += 1;
        match self {
            Session::Builtin(s) => {
                let before = s.stats();
                let out = s.solve();
                stats.absorb(before, s.stats());
                Ok(out)
            }
            Session::External(s) => Ok(s.solve()?),
        }
    }
}

fn incomplete(
    af: &ArgumentationFramework,
    mut found: Vec<Extension>,
    mut stats: EnumerationStats,
    chains: Vec<Vec<Extension>>,
    started: Instant,
    reason: Interrupt,
) -> EnumerateError {
    sort_extensions(af, &mut found);
    stats.wall_time = started.elapsed();
    EnumerateError::Incomplete {
        partial: Box::new(EnumerationResult { extensions: found, stats, complete: false, chains }),
        reason,
    }
}

pub fn enumerate_preferred(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
) -> Result<EnumerationResult, EnumerateError> {
    enumerate_preferred_with_budget(af, enc, backend, Budget::default())
}

/// Enumerates all preferred extensions. Returns `{∅}` when the framework has
/// no non-empty complete extension.
pub fn enumerate_preferred_with_budget(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
    budget: Budget,
) -> Result<EnumerationResult, EnumerateError> {
    let started = Instant::now();
    let layout = VarLayout::new(af.len());
    let mut stats = EnumerationStats::default();
    let mut found: Vec<Extension> = Vec::new();
    let mut chains = Vec::new();
    let mut outer = Session::new(backend, encode(af, enc), budget);

    loop {
        stats.outer_iterations += 1;
        let mut inner = outer.clone();
        let mut candidate: Option<Extension> = None;
        let mut chain = Vec::new();
        loop {
            stats.inner_iterations += 1;
            let model = match inner.solve(&mut stats)? {
                SolveOutcome::Sat(model) => model,
                SolveOutcome::Unsat => break,
                SolveOutcome::Unknown(reason) => {
                    chains.push(chain);
                    return Err(incomplete(af, found, stats, chains, started, reason));
                }
            };
            let in_set = model_to_labelling(layout, &model)?.extension();
            for a in in_set.iter() {
                inner.add_clause(&[layout.in_var(a)])?;
            }
            let remaining: Vec<Lit> = (0..af.len()).filter(|a| !in_set.contains(*a)).map(|a| layout.in_var(a)).collect();
            chain.push(in_set.clone());
            candidate = Some(in_set);
            if remaining.is_empty() {
                break;
            }
            inner.add_clause(&remaining)?;
        }
        chains.push(chain);
        let Some(preferred) = candidate else {
            break;
        };
        // any later answer must contain an argument outside this extension
        let escape: Vec<Lit> = (0..af.len()).filter(|a| !preferred.contains(*a)).map(|a| layout.in_var(a)).collect();
        outer.add_clause(&escape)?;
        found.push(preferred);
    }

    if found.is_empty() {
        found.push(Extension::empty());
    }
    sort_extensions(af, &mut found);
    stats.wall_time = started.elapsed();
    Ok(EnumerationResult { extensions: found, stats, complete: true, chains })
}

pub fn enumerate_complete(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
) -> Result<EnumerationResult, EnumerateError> {
    enumerate_complete_with_budget(af, enc, backend, Budget::default())
}

/// Enumerates every complete extension (the empty one included) by blocking
/// each in-set as it is found.
pub fn enumerate_complete_with_budget(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
    budget: Budget,
) -> Result<EnumerationResult, EnumerateError> {
    let started = Instant::now();
    let layout = VarLayout::new(af.len());
    let mut stats = EnumerationStats::default();
    let mut found = Vec::new();
    let mut session = Session::new(backend, encode_complete(af, enc), budget);
    loop {
        stats.inner_iterations += 1;
        let model = match session.solve(&mut stats)? {
            SolveOutcome::Sat(model) => model,
            SolveOutcome::Unsat => break,
            SolveOutcome::Unknown(reason) => {
                return Err(incomplete(af, found, stats, Vec::new(), started, reason));
            }
        };
        let in_set = model_to_labelling(layout, &model)?.extension();
        let block: Vec<Lit> = (0..af.len())
            .map(|a| if in_set.contains(a) { -layout.in_var(a) } else { layout.in_var(a) })
            .collect();
        session.add_clause(&block)?;
        found.push(in_set);
    }
    sort_extensions(af, &mut found);
    stats.wall_time = started.elapsed();
    Ok(EnumerationResult { extensions: found, stats, complete: true, chains: Vec::new() })
}

/// Whether argument `a` belongs to some preferred extension, decided with a
/// single SAT call on the encoding plus the unit clause forcing `a` in.
pub fn credulous_accept(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
    a: usize,
) -> Result<bool, EnumerateError> {
    af.attackers(a)?;
    let layout = VarLayout::new(af.len());
    let mut session = Session::new(backend, encode(af, enc), Budget::default());
    session.add_clause(&[layout.in_var(a)])?;
    match session.solve(&mut EnumerationStats::default())? {
        SolveOutcome::Sat(_) => Ok(true),
        SolveOutcome::Unsat => Ok(false),
        SolveOutcome::Unknown(reason) => Err(EnumerateError::Incomplete {
            partial: Box::new(EnumerationResult {
                extensions: Vec::new(),
                stats: EnumerationStats::default(),
                complete: false,
                chains: Vec::new(),
            }),
            reason,
        }),
    }
}

/// Whether argument `a` belongs to every preferred extension.
pub fn skeptical_accept(
    af: &ArgumentationFramework,
    enc: EncodingId,
    backend: &Backend,
    a: usize,
) -> Result<bool, EnumerateError> {
    af.attackers(a)?;
    let result = enumerate_preferred(af, enc, backend)?;
    Ok(result.extensions.iter().all(|e| e.contains(a)))
}
