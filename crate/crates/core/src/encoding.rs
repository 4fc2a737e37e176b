//! CNF encodings of complete labellings.
//!
//! Argument `i` (0-based) owns three consecutive variables: `3i+1` ("in"),
//! `3i+2` ("out") and `3i+3` ("undec"). The nine formula families below are
//! numbered as follows; every encoding is a fixed union of some of them.
//!
//! | # | clauses | term |
//! |---|---------|------|
//! | 1 | exactly one label per argument | |
//! | 2 | unattacked arguments are `in` | |
//! | 3 | `I_i ∨ ⋁ ¬O_j` | in, right-to-left |
//! | 4 | `¬I_i ∨ O_j` per attacker | in, left-to-right |
//! | 5 | `¬I_j ∨ O_i` per attacker | out, right-to-left |
//! | 6 | `¬O_i ∨ ⋁ I_j` | out, left-to-right |
//! | 7 | `U_i ∨ ¬U_k ∨ ⋁ I_j` per attacker `k` | undec, right-to-left |
//! | 8 | `¬U_i ∨ ¬I_j` per attacker, and `¬U_i ∨ ⋁ U_j` | undec, left-to-right |
//! | 9 | `⋁ I_i` (some argument is `in`) | |
//!
//! Formulas 3–8 only range over arguments with at least one attacker.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{ArgumentationFramework, Label, Labelling};

pub type Lit = i32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("empty clause")]
    EmptyClause,
    #[error("literal {lit} out of range for {num_vars} variables")]
    LiteralOutOfRange { lit: Lit, num_vars: usize },
    #[error("argument {arg}: model assigns {count} of its three label variables (expected exactly one)")]
    NotExactlyOne { arg: usize, count: usize },
    #[error("model has {got} variables, expected {expected}")]
    ModelSize { got: usize, expected: usize },
    #[error("unknown encoding `{0}` (expected one of C1, C1a, C1b, C1c, C2, C3)")]
    UnknownEncoding(String),
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

/// The variable layout for a framework of `k` arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarLayout {
    pub k: usize,
}

impl VarLayout {
    pub fn new(k: usize) -> Self {
        VarLayout { k }
    }

    pub fn num_vars(self) -> usize {
        3 * self.k
    }

    #[inline]
    pub fn in_var(self, i: usize) -> Lit {
        (3 * i + 1) as Lit
    }

    #[inline]
    pub fn out_var(self, i: usize) -> Lit {
        (3 * i + 2) as Lit
    }

    #[inline]
    pub fn undec_var(self, i: usize) -> Lit {
        (3 * i + 3) as Lit
    }

    /// Which argument and label a variable stands for.
    pub fn role(self, var: usize) -> Option<(usize, Label)> {
        if var == 0 || var > self.num_vars() {
            return None;
        }
        let arg = (var - 1) / 3;
        Some((arg, Label::ALL[(var - 1) % 3]))
    }
}

/// A CNF formula over variables `1..=num_vars`.
///
/// Clauses never contain duplicate literals or a complementary pair and are
/// never empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Adds a clause after removing duplicate literals. Tautologies are
    /// dropped and reported as `Ok(false)`.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<bool, EncodingError> {
        if lits.is_empty() {
            return Err(EncodingError::EmptyClause);
        }
        let mut clause: Vec<Lit> = Vec::with_capacity(lits.len());
        for &lit in lits {
            if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                return Err(EncodingError::LiteralOutOfRange { lit, num_vars: self.num_vars });
            }
            if clause.contains(&-lit) {
                return Ok(false);
            }
            if !clause.contains(&lit) {
                clause.push(lit);
            }
        }
        self.clauses.push(clause);
        Ok(true)
    }

    /// Evaluates the formula under `model`, where `model[v - 1]` is the value
    /// of variable `v`.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        model.len() >= self.num_vars
            && self.clauses.iter().all(|c| {
                c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0))
            })
    }
}

/// The six clause-set compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EncodingId {
    C1,
    C1a,
    C1b,
    C1c,
    C2,
    C3,
}

impl EncodingId {
    pub const ALL: [EncodingId; 6] =
        [EncodingId::C1, EncodingId::C1a, EncodingId::C1b, EncodingId::C1c, EncodingId::C2, EncodingId::C3];

    /// The formula families (numbered 1–9) making up this encoding.
    pub fn formulas(self) -> &'static [u8] {
        match self {
            EncodingId::C1 => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
            EncodingId::C1a => &[1, 2, 3, 4, 5, 6, 9],
            EncodingId::C1b => &[1, 2, 5, 6, 7, 8, 9],
            EncodingId::C1c => &[1, 2, 3, 4, 7, 8, 9],
            EncodingId::C2 => &[1, 2, 4, 6, 8, 9],
            EncodingId::C3 => &[1, 2, 3, 5, 7, 9],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EncodingId::C1 => "C1",
            EncodingId::C1a => "C1a",
            EncodingId::C1b => "C1b",
            EncodingId::C1c => "C1c",
            EncodingId::C2 => "C2",
            EncodingId::C3 => "C3",
        }
    }
}

impl fmt::Display for EncodingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EncodingId {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EncodingId::ALL
            .into_iter()
            .find(|e| e.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| EncodingError::UnknownEncoding(s.to_string()))
    }
}

/// Compiles `af` under `enc`. Models correspond to complete labellings with at
/// least one `in` argument.
pub fn encode(af: &ArgumentationFramework, enc: EncodingId) -> CnfFormula {
    encode_formulas(af, enc.formulas())
}

/// Like [`encode`] but without the non-emptiness clause, so the empty
/// complete extension is a model too.
pub fn encode_complete(af: &ArgumentationFramework, enc: EncodingId) -> CnfFormula {
    let formulas: Vec<u8> = enc.formulas().iter().copied().filter(|&f| f != 9).collect();
    encode_formulas(af, &formulas)
}

fn encode_formulas(af: &ArgumentationFramework, formulas: &[u8]) -> CnfFormula {
    let layout = VarLayout::new(af.len());
    let (i_, o_, u_) = (|i| layout.in_var(i), |i| layout.out_var(i), |i| layout.undec_var(i));
    let mut cnf = CnfFormula::new(layout.num_vars());
    let mut push = |lits: &[Lit]| {
        cnf.add_clause(lits).expect("encoder literals are in range and non-empty");
    };
    let attacked: Vec<usize> = (0..af.len()).filter(|&i| !af.attackers_of(i).is_empty()).collect();

    for &formula in formulas {
        match formula {
            1 => {
                for i in 0..af.len() {
                    push(&[i_(i), o_(i), u_(i)]);
                    push(&[-i_(i), -o_(i)]);
                    push(&[-i_(i), -u_(i)]);
                    push(&[-o_(i), -u_(i)]);
                }
            }
            2 => {
                for i in (0..af.len()).filter(|&i| af.attackers_of(i).is_empty()) {
                    push(&[i_(i)]);
                    push(&[-o_(i)]);
                    push(&[-u_(i)]);
                }
            }
            3 => {
                for &i in &attacked {
                    let mut c = vec![i_(i)];
                    c.extend(af.attackers_of(i).iter().map(|&j| -o_(j)));
                    push(&c);
                }
            }
            4 => {
                for &i in &attacked {
                    for &j in af.attackers_of(i) {
                        push(&[-i_(i), o_(j)]);
                    }
                }
            }
            5 => {
                for &i in &attacked {
                    for &j in af.attackers_of(i) {
                        push(&[-i_(j), o_(i)]);
                    }
                }
            }
            6 => {
                for &i in &attacked {
                    let mut c = vec![-o_(i)];
                    c.extend(af.attackers_of(i).iter().map(|&j| i_(j)));
                    push(&c);
                }
            }
            7 => {
                for &i in &attacked {
                    for &k in af.attackers_of(i) {
                        let mut c = vec![u_(i), -u_(k)];
                        c.extend(af.attackers_of(i).iter().map(|&j| i_(j)));
                        push(&c);
                    }
                }
            }
            8 => {
                for &i in &attacked {
                    for &j in af.attackers_of(i) {
                        push(&[-u_(i), -i_(j)]);
                    }
                    let mut c = vec![-u_(i)];
                    c.extend(af.attackers_of(i).iter().map(|&j| u_(j)));
                    push(&c);
                }
            }
            9 => {
                let c: Vec<Lit> = (0..af.len()).map(i_).collect();
                push(&c);
            }
            other => unreachable!("formula family {other} does not exist"),
        }
    }
    cnf
}

/// Reads a labelling back from a total model (`model[v - 1]` is variable `v`).
pub fn model_to_labelling(layout: VarLayout, model: &[bool]) -> Result<Labelling, EncodingError> {
    if model.len() < layout.num_vars() {
        return Err(EncodingError::ModelSize { got: model.len(), expected: layout.num_vars() });
    }
    let mut labels = Vec::with_capacity(layout.k);
    for arg in 0..layout.k {
        let bits = &model[3 * arg..3 * arg + 3];
        let count = bits.iter().filter(|b| **b).count();
        if count != 1 {
            return Err(EncodingError::NotExactlyOne { arg, count });
        }
        labels.push(Label::ALL[bits.iter().position(|b| *b).unwrap()]);
    }
    Ok(Labelling(labels))
}

/// Standard comment block for an encoded framework: source, encoding and the
/// index-to-name map.
pub fn dimacs_comments(af: &ArgumentationFramework, source: &str, enc: EncodingId) -> Vec<String> {
    let mut out = vec![
        format!("source {source}"),
        format!("encoding {enc}"),
        "layout var 3(i-1)+1 = in, 3(i-1)+2 = out, 3(i-1)+3 = undec of argument i".to_string(),
    ];
    out.extend(af.names().iter().enumerate().map(|(i, n)| format!("arg {} {}", i + 1, n)));
    out
}

/// Recovers the argument names from comments written by [`dimacs_comments`].
pub fn names_from_comments(dimacs: &str) -> Vec<String> {
    dimacs
        .lines()
        .filter_map(|l| l.strip_prefix("c arg "))
        .filter_map(|rest| rest.split_once(' ').map(|(_, name)| name.to_string()))
        .collect()
}

pub fn to_dimacs(f: &CnfFormula, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            out.push_str("c ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("p cnf {} {}\n", f.num_vars, f.clauses.len()));
    for clause in &f.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Clauses may span lines; a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, EncodingError> {
    let mut header: Option<(usize, usize)> = None;
    let mut cnf = CnfFormula::default();
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let trimmed = raw.trim();
        let err = |message: String| EncodingError::Dimacs { line, message };
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(err(format!("bad header `{trimmed}`")));
            }
            let vars = parts[2].parse().map_err(|_| err("bad variable count".into()))?;
            let clauses = parts[3].parse().map_err(|_| err("bad clause count".into()))?;
            header = Some((vars, clauses));
            cnf.num_vars = vars;
            continue;
        }
        if header.is_none() {
            return Err(err("clause before `p cnf` header".into()));
        }
        for tok in trimmed.split_whitespace() {
            let lit: Lit = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(err("empty clause".into()));
                }
                cnf.add_clause(&current).map_err(|e| err(e.to_string()))?;
                current.clear();
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        cnf.add_clause(&current)
            .map_err(|e| EncodingError::Dimacs { line: last_line, message: e.to_string() })?;
    }
    if header.is_none() {
        return Err(EncodingError::Dimacs { line: last_line, message: "missing `p cnf` header".into() });
    }
    Ok(cnf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn af(args: &[&str], attacks: &[(&str, &str)]) -> ArgumentationFramework {
        ArgumentationFramework::from_names(args, attacks).unwrap()
    }

    fn brute_models(f: &CnfFormula) -> Vec<Vec<bool>> {
        (0..1u64 << f.num_vars())
            .map(|m| (0..f.num_vars()).map(|v| m >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|model| f.is_satisfied_by(model))
            .collect()
    }

    #[test]
    fn three_cycle_c2_counts() {
        let cycle = af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        let f = encode(&cycle, EncodingId::C2);
        assert_eq!(f.num_vars(), 9);
        assert_eq!(f.num_clauses(), 25);
    }

    #[test]
    fn single_unattacked_argument() {
        let single = af(&["a"], &[]);
        for enc in EncodingId::ALL {
            let f = encode(&single, enc);
            assert_eq!(f.num_clauses(), 8);
            assert_eq!(brute_models(&f), vec![vec![true, false, false]]);
        }
    }

    #[test]
    fn self_attacker_is_unsat_under_c2() {
        let selfie = af(&["a"], &[("a", "a")]);
        assert!(brute_models(&encode(&selfie, EncodingId::C2)).is_empty());
        // without the non-emptiness clause the all-undec labelling remains
        assert_eq!(brute_models(&encode_complete(&selfie, EncodingId::C2)), vec![vec![false, false, true]]);
    }

    #[test]
    fn self_attack_tautologies_are_dropped() {
        // formula 8's `¬U_a ∨ U_a` disappears: 4 + 1 + 1 + 1 + 1
        let selfie = af(&["a"], &[("a", "a")]);
        assert_eq!(encode(&selfie, EncodingId::C2).num_clauses(), 8);
    }

    #[test]
    fn clause_order_is_by_formula_then_argument() {
        let chain = af(&["a", "b"], &[("a", "b")]);
        let f = encode(&chain, EncodingId::C2);
        let expected: Vec<Vec<Lit>> = vec![
            vec![1, 2, 3],
            vec![-1, -2],
            vec![-1, -3],
            vec![-2, -3],
            vec![4, 5, 6],
            vec![-4, -5],
            vec![-4, -6],
            vec![-5, -6],
            vec![1],
            vec![-2],
            vec![-3],
            vec![-4, 2],
            vec![-5, 1],
            vec![-6, -1],
            vec![-6, 3],
            vec![1, 4],
        ];
        assert_eq!(f.clauses(), expected.as_slice());
    }

    #[test]
    fn layout_roles() {
        let l = VarLayout::new(2);
        assert_eq!((l.in_var(1), l.out_var(1), l.undec_var(1)), (4, 5, 6));
        assert_eq!(l.role(5), Some((1, Label::Out)));
        assert_eq!(l.role(7), None);
        assert_eq!(l.role(0), None);
    }

    #[test]
    fn model_decoding() {
        let l1 = VarLayout::new(1);
        assert_eq!(model_to_labelling(l1, &[true, false, false]).unwrap(), Labelling(vec![Label::In]));
        let l2 = VarLayout::new(2);
        assert_eq!(
            model_to_labelling(l2, &[true, false, false, false, true, false]).unwrap(),
            Labelling(vec![Label::In, Label::Out])
        );
        assert_eq!(
            model_to_labelling(l1, &[true, true, false]),
            Err(EncodingError::NotExactlyOne { arg: 0, count: 2 })
        );
    }

    #[test]
    fn formula_normalization() {
        let mut f = CnfFormula::new(3);
        assert_eq!(f.add_clause(&[1, 1, -2]), Ok(true));
        assert_eq!(f.clauses()[0], vec![1, -2]);
        assert_eq!(f.add_clause(&[1, -1]), Ok(false));
        assert_eq!(f.add_clause(&[]), Err(EncodingError::EmptyClause));
        assert!(matches!(f.add_clause(&[4]), Err(EncodingError::LiteralOutOfRange { .. })));
    }

    #[test]
    fn dimacs_output() {
        let single = af(&["a"], &[]);
        let text = to_dimacs(&encode(&single, EncodingId::C2), &dimacs_comments(&single, "x.apx", EncodingId::C2));
        assert!(text.lines().any(|l| l == "p cnf 3 8"));
        let mut f = CnfFormula::new(5);
        f.add_clause(&[1, -5]).unwrap();
        assert_eq!(to_dimacs(&f, &[]), "p cnf 5 1\n1 -5 0\n");
    }

    #[test]
    fn dimacs_comments_carry_names() {
        let a = af(&["alpha", "beta_2"], &[("alpha", "beta_2")]);
        let text = to_dimacs(&encode(&a, EncodingId::C1), &dimacs_comments(&a, "t", EncodingId::C1));
        assert_eq!(names_from_comments(&text), ["alpha", "beta_2"]);
        assert_eq!(parse_dimacs(&text).unwrap(), encode(&a, EncodingId::C1));
    }

    #[test]
    fn dimacs_parse_errors() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf x 1\n").is_err());
        let f = parse_dimacs("c hi\np cnf 3 2\n1 -2\n 3 0 -1 0\n%\n0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2, 3], vec![-1]]);
    }

    #[test]
    fn encoding_names_parse() {
        for e in EncodingId::ALL {
            assert_eq!(e.as_str().parse::<EncodingId>().unwrap(), e);
        }
        assert!("C4".parse::<EncodingId>().is_err());
    }
}
