//! A CDCL SAT solver with a monotone, cloneable session interface.
//!
//! The engine follows the usual MiniSat architecture: two watched literals
//! with blocker literals, first-UIP conflict analysis with local
//! minimization, VSIDS branching on a binary heap with phase saving,
//! geometric restarts, and activity-based reduction of the learnt clause
//! database at restart boundaries.
//!
//! Sessions only ever grow: clauses can be added between calls to
//! [`Solver::solve`], never removed. Cloning a session yields an independent
//! copy that shares nothing with the original.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::encoding::{CnfFormula, Lit as DimacsLit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("literal {lit} refers to an undeclared variable (the session has {num_vars})")]
    VarOutOfRange { lit: DimacsLit, num_vars: usize },
    #[error("literal 0 is not a valid literal")]
    ZeroLiteral,
}

/// Why a solve call stopped without an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interrupt {
    ConflictLimit,
    Deadline,
    /// An external solver reported `s UNKNOWN`.
    SolverGaveUp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A total model; `model[v - 1]` is the value of variable `v`.
    Sat(Vec<bool>),
    Unsat,
    /// The resource budget ran out. Never to be read as unsatisfiable.
    Unknown(Interrupt),
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SolveOutcome::Sat(m) => Some(m),
            _ => None,
        }
    }
}

/// Per-call resource limits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    /// Conflicts allowed in a single `solve` call.
    pub max_conflicts: Option<u64>,
    /// Wall-clock instant after which any `solve` call gives up.
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// `None` keeps branching fully deterministic (lowest index breaks ties,
    /// negative initial phase). `Some(seed)` perturbs initial activities and
    /// phases.
    pub seed: Option<u64>,
    /// Disable to get plain DPLL with chronological backtracking.
    pub learning: bool,
    pub restart_first: u64,
    pub restart_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { seed: None, learning: true, restart_first: 100, restart_factor: 1.5 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Lit(u32);

impl Lit {
    fn new(var: usize, negated: bool) -> Lit {
        Lit((var as u32) << 1 | negated as u32)
    }

    fn from_dimacs(l: DimacsLit) -> Lit {
        Lit::new(l.unsigned_abs() as usize - 1, l < 0)
    }

    #[inline]
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    fn code(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unassigned,
}

#[derive(Debug, Clone)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    activity: f64,
    deleted: bool,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap of variables keyed by activity; lower index wins ties.
#[derive(Debug, Clone, Default)]
struct VarHeap {
    heap: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl VarHeap {
    fn better(act: &[f64], a: usize, b: usize) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    fn grow(&mut self, n: usize) {
        self.position.resize(n, None);
    }

    fn contains(&self, v: usize) -> bool {
        self.position[v].is_some()
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        self.position[v] = Some(self.heap.len() - 1);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if let Some(pos) = self.position[v] {
            self.sift_up(pos, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0);
        self.position[top] = None;
        if !self.heap.is_empty() {
            self.position[self.heap[0]] = Some(0);
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut pos: usize, act: &[f64]) {
        let v = self.heap[pos];
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if !Self::better(act, v, self.heap[parent]) {
                break;
            }
            self.heap[pos] = self.heap[parent];
            self.position[self.heap[pos]] = Some(pos);
            pos = parent;
        }
        self.heap[pos] = v;
        self.position[v] = Some(pos);
    }

    fn sift_down(&mut self, mut pos: usize, act: &[f64]) {
        let v = self.heap[pos];
        loop {
            let left = 2 * pos + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len() && Self::better(act, self.heap[right], self.heap[left]) {
                right
            } else {
                left
            };
            if !Self::better(act, self.heap[child], v) {
                break;
            }
            self.heap[pos] = self.heap[child];
            self.position[self.heap[pos]] = Some(pos);
            pos = child;
        }
        self.heap[pos] = v;
        self.position[v] = Some(pos);
    }
}

enum SearchResult {
    Sat,
    Unsat,
    Restart,
    Interrupted(Interrupt),
}

#[derive(Debug, Clone)]
pub struct Solver {
    config: SolverConfig,
    num_vars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    // DPLL mode: whether the decision at each level has already been flipped
    flipped: Vec<bool>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    num_learnts: usize,
    max_learnts: f64,
    budget: Budget,
    stats: SolverStats,
}

const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f64 = 0.999;

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        Self::with_config(num_vars, SolverConfig::default())
    }

    pub fn with_config(num_vars: usize, config: SolverConfig) -> Self {
        let mut solver = Solver {
            config,
            num_vars: 0,
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            flipped: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            phase: Vec::new(),
            seen: Vec::new(),
            ok: true,
            num_learnts: 0,
            max_learnts: 0.0,
            budget: Budget::default(),
            stats: SolverStats::default(),
        };
        solver.add_vars(num_vars);
        solver
    }

    /// Loads every clause of `f` into a fresh session.
    pub fn from_formula(f: &CnfFormula, config: SolverConfig) -> Self {
        let mut s = Self::with_config(f.num_vars(), config);
        for c in f.clauses() {
            s.add_clause(c).expect("formula literals are within its declared range");
        }
        s
    }

    fn add_vars(&mut self, n: usize) {
        let mut rng = self.config.seed.map(ChaCha8Rng::seed_from_u64);
        let total = self.num_vars + n;
        self.watches.resize(2 * total, Vec::new());
        self.assigns.resize(total, Value::Unassigned);
        self.level.resize(total, 0);
        self.reason.resize(total, None);
        self.seen.resize(total, false);
        self.heap.grow(total);
        for _ in 0..n {
            let (act, phase) = match rng.as_mut() {
                Some(r) => (r.gen::<f64>() * 1e-5, r.gen::<bool>()),
                None => (0.0, false),
            };
            self.activity.push(act);
            self.phase.push(phase);
        }
        for v in self.num_vars..total {
            self.heap.insert(v, &self.activity);
        }
        self.num_vars = total;
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    /// False once the clause set has been proven unsatisfiable.
    pub fn is_consistent(&self) -> bool {
        self.ok
    }

    #[inline]
    fn value(&self, l: Lit) -> Value {
        match self.assigns[l.var()] {
            Value::Unassigned => Value::Unassigned,
            Value::True if l.negated() => Value::False,
            Value::False if l.negated() => Value::True,
            v => v,
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        debug_assert_eq!(self.value(l), Value::Unassigned);
        let v = l.var();
        self.assigns[v] = if l.negated() { Value::False } else { Value::True };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for i in (keep..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.phase[v] = !l.negated();
            self.assigns[v] = Value::Unassigned;
            self.reason[v] = None;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.flipped.truncate(level);
        self.qhead = keep;
    }

    /// Conjoins a clause. An empty clause (or one falsified at the root)
    /// makes the session permanently unsatisfiable.
    pub fn add_clause(&mut self, lits: &[DimacsLit]) -> Result<(), SatError> {
        for &l in lits {
            if l == 0 {
                return Err(SatError::ZeroLiteral);
            }
            if l.unsigned_abs() as usize > self.num_vars {
                return Err(SatError::VarOutOfRange { lit: l, num_vars: self.num_vars });
            }
        }
        if !self.ok {
            return Ok(());
        }
        self.cancel_until(0);
        let mut clause: Vec<Lit> = lits.iter().map(|&l| Lit::from_dimacs(l)).collect();
        clause.sort_unstable();
        clause.dedup();
        let mut kept = Vec::with_capacity(clause.len());
        for (i, &l) in clause.iter().enumerate() {
            if i + 1 < clause.len() && clause[i + 1] == !l {
                return Ok(());
            }
            match self.value(l) {
                Value::True => return Ok(()),
                Value::False => {}
                Value::Unassigned => kept.push(l),
            }
        }
        match kept.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(kept[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(kept, false);
            }
        }
        Ok(())
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].code()].push(Watcher { cref, blocker: lits[1] });
        self.watches[lits[1].code()].push(Watcher { cref, blocker: lits[0] });
        if learnt {
            self.num_learnts += 1;
            self.stats.learnt_clauses += 1;
        }
        self.clauses.push(Clause { lits, learnt, activity: 0.0, deleted: false });
        cref
    }

    /// Unit propagation; returns a conflicting clause if one arises.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                let watcher = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && self.value(first) == Value::True {
                    ws[j] = watcher;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != Value::False {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[l.code()].push(watcher);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = watcher;
                j += 1;
                if self.value(first) == Value::False {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
        }
        if conflict.is_some() {
            self.qhead = self.trail.len();
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP analysis. Returns the learnt clause (asserting literal first,
    /// highest-level remaining literal second) and the backjump level.
    fn analyze(&mut self, conflict: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut index = self.trail.len();
        let mut clause = conflict as usize;
        let mut asserting: Option<Lit> = None;
        let current = self.decision_level() as u32;

        loop {
            self.bump_clause(clause);
            let start = usize::from(asserting.is_some());
            for k in start..self.clauses[clause].lits.len() {
                let q = self.clauses[clause].lits[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let p = self.trail[index];
            self.seen[p.var()] = false;
            path -= 1;
            asserting = Some(p);
            if path == 0 {
                break;
            }
            clause = self.reason[p.var()].expect("implied literal has a reason") as usize;
        }
        learnt[0] = !asserting.unwrap();

        // local minimization: drop literals implied by the rest of the clause
        let mut minimized = vec![learnt[0]];
        for &l in &learnt[1..] {
            let redundant = match self.reason[l.var()] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..]
                    .iter()
                    .all(|q| self.seen[q.var()] || self.level[q.var()] == 0),
            };
            if !redundant {
                minimized.push(l);
            }
        }
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }

        let mut backjump = 0;
        if minimized.len() > 1 {
            let mut best = 1;
            for k in 2..minimized.len() {
                if self.level[minimized[k].var()] > self.level[minimized[best].var()] {
                    best = k;
                }
            }
            minimized.swap(1, best);
            backjump = self.level[minimized[1].var()] as usize;
        }
        (minimized, backjump)
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == Value::Unassigned {
                return Some(Lit::new(v, !self.phase[v]));
            }
        }
        None
    }

    /// Removes root-satisfied clauses and, if over the limit, the less active
    /// half of the learnt clauses; then rebuilds the watch lists. Only called
    /// at decision level 0.
    fn reduce_db(&mut self) {
        debug_assert_eq!(self.decision_level(), 0);
        let mut learnt_acts: Vec<f64> = self
            .clauses
            .iter()
            .filter(|c| c.learnt && !c.deleted && c.lits.len() > 2)
            .map(|c| c.activity)
            .collect();
        let threshold = if self.num_learnts as f64 >= self.max_learnts && !learnt_acts.is_empty() {
            learnt_acts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Some(learnt_acts[learnt_acts.len() / 2])
        } else {
            None
        };
        let old = std::mem::take(&mut self.clauses);
        let mut kept = Vec::with_capacity(old.len());
        self.num_learnts = 0;
        for mut c in old {
            if c.deleted {
                continue;
            }
            if c.lits.iter().any(|&l| self.value(l) == Value::True) {
                continue;
            }
            if c.learnt && c.lits.len() > 2 {
                if let Some(t) = threshold {
                    if c.activity < t {
                        continue;
                    }
                }
            }
            c.lits.retain(|&l| self.value(l) != Value::False);
            if c.learnt {
                self.num_learnts += 1;
            }
            kept.push(c);
        }
        for w in &mut self.watches {
            w.clear();
        }
        for (i, c) in kept.iter().enumerate() {
            debug_assert!(c.lits.len() >= 2);
            self.watches[c.lits[0].code()].push(Watcher { cref: i as u32, blocker: c.lits[1] });
            self.watches[c.lits[1].code()].push(Watcher { cref: i as u32, blocker: c.lits[0] });
        }
        for r in &mut self.reason {
            *r = None;
        }
        self.clauses = kept;
        if threshold.is_some() {
            self.max_learnts *= 1.1;
        }
    }

    fn search(&mut self, conflict_limit: u64, started_conflicts: u64) -> SearchResult {
        let mut local_conflicts = 0u64;
        let mut ticks = 0u64;
        loop {
            ticks += 1;
            if ticks.is_multiple_of(64) {
                if let Some(deadline) = self.budget.deadline {
                    if Instant::now() >= deadline {
                        return SearchResult::Interrupted(Interrupt::Deadline);
                    }
                }
            }
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                local_conflicts += 1;
                if self.decision_level() == 0 {
                    return SearchResult::Unsat;
                }
                if self.config.learning {
                    let (learnt, backjump) = self.analyze(conflict);
                    self.cancel_until(backjump);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], None);
                    } else {
                        let asserting = learnt[0];
                        let cref = self.attach(learnt, true);
                        self.bump_clause(cref as usize);
                        self.enqueue(asserting, Some(cref));
                    }
                    self.var_inc /= VAR_DECAY;
                    self.cla_inc /= CLAUSE_DECAY;
                } else {
                    // chronological backtracking on the most recent unflipped decision
                    while self.decision_level() > 0 && self.flipped[self.decision_level() - 1] {
                        self.cancel_until(self.decision_level() - 1);
                    }
                    if self.decision_level() == 0 {
                        return SearchResult::Unsat;
                    }
                    let level = self.decision_level();
                    let decision = self.trail[self.trail_lim[level - 1]];
                    self.cancel_until(level - 1);
                    self.trail_lim.push(self.trail.len());
                    self.flipped.push(true);
                    self.enqueue(!decision, None);
                }
                if let Some(max) = self.budget.max_conflicts {
                    if self.stats.conflicts - started_conflicts >= max {
                        return SearchResult::Interrupted(Interrupt::ConflictLimit);
                    }
                }
            } else {
                if self.config.learning && local_conflicts >= conflict_limit {
                    return SearchResult::Restart;
                }
                let Some(decision) = self.pick_branch() else {
                    return SearchResult::Sat;
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.flipped.push(false);
                self.enqueue(decision, None);
            }
        }
    }

    /// Decides the current clause set.
    pub fn solve(&mut self) -> SolveOutcome {
        self.stats.solves += 1;
        if !self.ok {
            return SolveOutcome::Unsat;
        }
        self.cancel_until(0);
        if self.propagate().is_some() {
            self.ok = false;
            return SolveOutcome::Unsat;
        }
        let original = self.clauses.iter().filter(|c| !c.learnt).count() as f64;
        if self.max_learnts == 0.0 {
            self.max_learnts = (original / 3.0).max(2000.0);
        }
        let started = self.stats.conflicts;
        let mut limit = self.config.restart_first as f64;
        loop {
            if self.num_learnts as f64 >= self.max_learnts {
                self.reduce_db();
            }
            match self.search(limit as u64, started) {
                SearchResult::Sat => {
                    let model = (0..self.num_vars).map(|v| self.assigns[v] == Value::True).collect();
                    self.cancel_until(0);
                    return SolveOutcome::Sat(model);
                }
                SearchResult::Unsat => {
                    self.ok = false;
                    self.cancel_until(0);
                    return SolveOutcome::Unsat;
                }
                SearchResult::Interrupted(why) => {
                    self.cancel_until(0);
                    return SolveOutcome::Unknown(why);
                }
                SearchResult::Restart => {
                    self.stats.restarts += 1;
                    self.cancel_until(0);
                    limit *= self.config.restart_factor;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truth_table_sat(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
        (0..1u64 << num_vars).any(|m| {
            clauses
                .iter()
                .all(|c| c.iter().any(|&l| (m >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
        })
    }

    fn satisfies(model: &[bool], clauses: &[Vec<i32>]) -> bool {
        clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    fn pigeonhole(holes: usize) -> (usize, Vec<Vec<i32>>) {
        let pigeons = holes + 1;
        let var = |p: usize, h: usize| (p * holes + h + 1) as i32;
        let mut clauses = Vec::new();
        for p in 0..pigeons {
            clauses.push((0..holes).map(|h| var(p, h)).collect());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    clauses.push(vec![-var(p, h), -var(q, h)]);
                }
            }
        }
        (pigeons * holes, clauses)
    }

    fn load(num_vars: usize, clauses: &[Vec<i32>], config: SolverConfig) -> Solver {
        let mut s = Solver::with_config(num_vars, config);
        for c in clauses {
            s.add_clause(c).unwrap();
        }
        s
    }

    #[test]
    fn unit_and_contradiction() {
        let mut s = Solver::new(1);
        s.add_clause(&[1]).unwrap();
        assert_eq!(s.solve(), SolveOutcome::Sat(vec![true]));
        s.add_clause(&[-1]).unwrap();
        assert_eq!(s.solve(), SolveOutcome::Unsat);
        assert!(!s.is_consistent());
    }

    #[test]
    fn empty_clause_is_permanent() {
        let mut s = Solver::new(2);
        s.add_clause(&[]).unwrap();
        assert_eq!(s.solve(), SolveOutcome::Unsat);
        s.add_clause(&[1, 2]).unwrap();
        assert_eq!(s.solve(), SolveOutcome::Unsat);
    }

    #[test]
    fn bad_literals() {
        let mut s = Solver::new(2);
        assert_eq!(s.add_clause(&[3]), Err(SatError::VarOutOfRange { lit: 3, num_vars: 2 }));
        assert_eq!(s.add_clause(&[1, 0]), Err(SatError::ZeroLiteral));
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for holes in 2..=6 {
            let (n, clauses) = pigeonhole(holes);
            assert_eq!(load(n, &clauses, SolverConfig::default()).solve(), SolveOutcome::Unsat, "php {holes}");
        }
        let (n, clauses) = pigeonhole(4);
        let dpll = SolverConfig { learning: false, ..SolverConfig::default() };
        assert_eq!(load(n, &clauses, dpll).solve(), SolveOutcome::Unsat);
    }

    #[test]
    fn conflict_budget_is_not_unsat() {
        let (n, clauses) = pigeonhole(7);
        let mut s = load(n, &clauses, SolverConfig::default());
        s.set_budget(Budget { max_conflicts: Some(10), deadline: None });
        assert_eq!(s.solve(), SolveOutcome::Unknown(Interrupt::ConflictLimit));
        // the session remains usable with a larger budget
        s.set_budget(Budget::default());
        assert_eq!(s.solve(), SolveOutcome::Unsat);
    }

    #[test]
    fn expired_deadline() {
        let (n, clauses) = pigeonhole(8);
        let mut s = load(n, &clauses, SolverConfig::default());
        s.set_budget(Budget { max_conflicts: None, deadline: Some(Instant::now()) });
        assert_eq!(s.solve(), SolveOutcome::Unknown(Interrupt::Deadline));
    }

    #[test]
    fn blocking_enumerates_all_models() {
        // x1 xor x2, x3 free: 4 models
        let clauses = vec![vec![1, 2], vec![-1, -2]];
        let mut s = load(3, &clauses, SolverConfig::default());
        let mut count = 0;
        while let SolveOutcome::Sat(m) = s.solve() {
            assert!(satisfies(&m, &clauses));
            count += 1;
            let block: Vec<i32> = m.iter().enumerate().map(|(i, &b)| if b { -(i as i32 + 1) } else { i as i32 + 1 }).collect();
            s.add_clause(&block).unwrap();
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn clone_is_independent() {
        let mut a = load(2, &[vec![1, 2]], SolverConfig::default());
        let mut b = a.clone();
        b.add_clause(&[-1]).unwrap();
        b.add_clause(&[-2]).unwrap();
        assert_eq!(b.solve(), SolveOutcome::Unsat);
        assert!(a.solve().is_sat());
    }

    #[test]
    fn random_3sat_matches_truth_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..400 {
            let n = rng.gen_range(3..=12);
            let m = rng.gen_range(1..=(n * 5));
            let clauses: Vec<Vec<i32>> = (0..m)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = rng.gen_range(1..=n) as i32;
                            if rng.gen() { v } else { -v }
                        })
                        .collect()
                })
                .collect();
            let expected = truth_table_sat(n, &clauses);
            for config in [
                SolverConfig::default(),
                SolverConfig { seed: Some(round), ..SolverConfig::default() },
                SolverConfig { learning: false, ..SolverConfig::default() },
            ] {
                match load(n, &clauses, config).solve() {
                    SolveOutcome::Sat(model) => {
                        assert!(expected);
                        assert!(satisfies(&model, &clauses));
                    }
                    SolveOutcome::Unsat => assert!(!expected, "round {round}"),
                    SolveOutcome::Unknown(_) => panic!("no budget set"),
                }
            }
        }
    }

    #[test]
    fn larger_random_instances_agree_with_dpll() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..30 {
            let n = 40;
            let clauses: Vec<Vec<i32>> = (0..170)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = rng.gen_range(1..=n) as i32;
                            if rng.gen() { v } else { -v }
                        })
                        .collect()
                })
                .collect();
            let cdcl = load(n, &clauses, SolverConfig::default()).solve();
            let dpll = load(n, &clauses, SolverConfig { learning: false, ..SolverConfig::default() }).solve();
            assert_eq!(cdcl.is_sat(), dpll.is_sat());
            if let SolveOutcome::Sat(m) = cdcl {
                assert!(satisfies(&m, &clauses));
            }
        }
    }

    #[test]
    fn stats_are_counted() {
        let (n, clauses) = pigeonhole(4);
        let mut s = load(n, &clauses, SolverConfig::default());
        s.solve();
        let st = s.stats();
        assert!(st.conflicts > 0 && st.decisions > 0 && st.propagations > 0);
        assert_eq!(st.solves, 1);
    }
}
