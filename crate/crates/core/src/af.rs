//! Argumentation frameworks, labellings and the basic semantics predicates.
//!
//! Arguments are indexed from `0` in declaration order. Every downstream
//! artefact (variable numbering, DIMACS output, reported extensions) derives
//! from this indexing, so two frameworks parsed from the same text always
//! produce byte-identical encodings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the number of arguments accepted by the
/// exponential, oracle-grade checks.
pub const DEFAULT_SIZE_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: argument `{name}` is not declared")]
    UndeclaredArgument { line: usize, name: String },
    #[error("line {line}: argument `{name}` is declared twice")]
    DuplicateArgument { line: usize, name: String },
    #[error("missing `#` separator between arguments and attacks")]
    MissingSeparator,
    #[error("invalid argument name `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidName(String),
    #[error("an argumentation framework needs at least one argument")]
    Empty,
    #[error("argument index {index} out of range for {len} arguments")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{args} arguments exceed the exhaustive-check cap of {cap}")]
    SizeCapExceeded { args: usize, cap: usize },
}

/// A finite abstract argumentation framework `⟨A, R⟩`.
///
/// Attackers and attackees are precomputed in both directions; the lists are
/// sorted by argument index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: BTreeSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    attackees: Vec<Vec<usize>>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ArgumentationFramework {
    /// Builds a framework from argument names and `(attacker, attacked)` index
    /// pairs. Duplicate pairs are collapsed.
    pub fn new<I>(names: Vec<String>, attacks: I) -> Result<Self, AfError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if names.is_empty() {
            return Err(AfError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(AfError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(AfError::DuplicateArgument { line: i + 1, name: name.clone() });
            }
        }
        let len = names.len();
        let mut set = BTreeSet::new();
        for (from, to) in attacks {
            for index in [from, to] {
                if index >= len {
                    return Err(AfError::IndexOutOfRange { index, len });
                }
            }
            set.insert((from, to));
        }
        let mut attackers = vec![Vec::new(); len];
        let mut attackees = vec![Vec::new(); len];
        for &(from, to) in &set {
            attackers[to].push(from);
            attackees[from].push(to);
        }
        for list in &mut attackers {
            list.sort_unstable();
        }
        Ok(ArgumentationFramework { names, index, attacks: set, attackers, attackees })
    }

    /// Convenience constructor working on names, mostly for tests and examples.
    pub fn from_names(args: &[&str], attacks: &[(&str, &str)]) -> Result<Self, AfError> {
        let names: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let lookup: HashMap<&str, usize> = args.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut pairs = Vec::with_capacity(attacks.len());
        for (line, (a, b)) in attacks.iter().enumerate() {
            let get = |n: &str| {
                lookup
                    .get(n)
                    .copied()
                    .ok_or_else(|| AfError::UndeclaredArgument { line: line + 1, name: n.to_string() })
            };
            pairs.push((get(a)?, get(b)?));
        }
        Self::new(names, pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false for a constructed framework; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn num_attacks(&self) -> usize {
        self.attacks.len()
    }

    pub fn attacks_contains(&self, from: usize, to: usize) -> bool {
        self.attacks.contains(&(from, to))
    }

    /// The attackers of argument `i`, checked.
    pub fn attackers(&self, i: usize) -> Result<&[usize], AfError> {
        self.attackers
            .get(i)
            .map(Vec::as_slice)
            .ok_or(AfError::IndexOutOfRange { index: i, len: self.len() })
    }

    /// The attackers of argument `i`. Panics if `i` is out of range.
    #[inline]
    pub fn attackers_of(&self, i: usize) -> &[usize] {
        &self.attackers[i]
    }

    /// The arguments attacked by `i`. Panics if `i` is out of range.
    #[inline]
    pub fn attackees_of(&self, i: usize) -> &[usize] {
        &self.attackees[i]
    }

    fn membership(&self, s: &Extension) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        for &a in &s.0 {
            assert!(a < self.len(), "extension member {a} out of range");
            member[a] = true;
        }
        member
    }

    pub fn is_conflict_free(&self, s: &Extension) -> bool {
        let member = self.membership(s);
        s.iter().all(|a| self.attackers_of(a).iter().all(|&b| !member[b]))
    }

    /// Whether every attacker of `a` is attacked by some member of `s`.
    pub fn is_acceptable(&self, a: usize, s: &Extension) -> bool {
        let member = self.membership(s);
        self.defended(a, &member)
    }

    fn defended(&self, a: usize, member: &[bool]) -> bool {
        self.attackers_of(a)
            .iter()
            .all(|&b| self.attackers_of(b).iter().any(|&c| member[c]))
    }

    fn admissible(&self, member: &[bool]) -> bool {
        (0..self.len()).filter(|&a| member[a]).all(|a| {
            self.attackers_of(a).iter().all(|&b| !member[b]) && self.defended(a, member)
        })
    }

    pub fn is_admissible(&self, s: &Extension) -> bool {
        self.admissible(&self.membership(s))
    }

    pub fn is_complete(&self, s: &Extension) -> bool {
        let member = self.membership(s);
        self.admissible(&member) && (0..self.len()).all(|a| member[a] || !self.defended(a, &member))
    }

    /// Maximal admissibility, checked by scanning every strict superset of `s`.
    pub fn is_preferred(&self, s: &Extension) -> Result<bool, AfError> {
        self.is_preferred_with_cap(s, DEFAULT_SIZE_CAP)
    }

    pub fn is_preferred_with_cap(&self, s: &Extension, cap: usize) -> Result<bool, AfError> {
        if self.len() > cap {
            return Err(AfError::SizeCapExceeded { args: self.len(), cap });
        }
        let mut member = self.membership(s);
        if !self.admissible(&member) {
            return Ok(false);
        }
        let outside: Vec<usize> = (0..self.len()).filter(|&a| !member[a]).collect();
        for mask in 1u64..(1u64 << outside.len()) {
            for (bit, &a) in outside.iter().enumerate() {
                member[a] = mask >> bit & 1 == 1;
            }
            if self.admissible(&member) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the three bi-conditions of a complete labelling at every argument.
    pub fn is_complete_labelling(&self, lab: &Labelling) -> bool {
        assert_eq!(lab.len(), self.len(), "labelling is not total for this framework");
        (0..self.len()).all(|a| {
            let att = self.attackers_of(a);
            let all_out = att.iter().all(|&b| lab[b] == Label::Out);
            let some_in = att.iter().any(|&b| lab[b] == Label::In);
            let some_undec = att.iter().any(|&b| lab[b] == Label::Undec);
            (lab[a] == Label::In) == all_out
                && (lab[a] == Label::Out) == some_in
                && (lab[a] == Label::Undec) == (!some_in && some_undec)
        })
    }

    /// `in` for members, `out` for arguments attacked by a member, `undec`
    /// otherwise.
    pub fn labelling_from_extension(&self, s: &Extension) -> Labelling {
        let member = self.membership(s);
        Labelling(
            (0..self.len())
                .map(|a| {
                    if member[a] {
                        Label::In
                    } else if self.attackers_of(a).iter().any(|&b| member[b]) {
                        Label::Out
                    } else {
                        Label::Undec
                    }
                })
                .collect(),
        )
    }

    /// Canonical APX serialization: all `arg` facts in index order, then all
    /// `att` facts in `(attacker, attacked)` index order.
    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("arg({name}).\n"));
        }
        for &(a, b) in &self.attacks {
            out.push_str(&format!("att({},{}).\n", self.names[a], self.names[b]));
        }
        out
    }

    /// Canonical TGF serialization.
    pub fn to_tgf(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(name);
            out.push('\n');
        }
        out.push_str("#\n");
        for &(a, b) in &self.attacks {
            out.push_str(&format!("{} {}\n", self.names[a], self.names[b]));
        }
        out
    }

    /// Renders an extension as its sorted list of argument names.
    pub fn extension_names(&self, s: &Extension) -> Vec<String> {
        let mut names: Vec<String> = s.iter().map(|a| self.names[a].clone()).collect();
        names.sort();
        names
    }
}

/// Parses the ASPARTIX fact format: `arg(a).` and `att(a,b).` statements,
/// `%` comments, whitespace ignored. Arguments keep first-declaration order.
pub fn parse_apx(text: &str) -> Result<ArgumentationFramework, AfError> {
    let mut names = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw_attacks: Vec<(usize, String, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('%').next().unwrap_or("");
        let mut rest: String = content.chars().filter(|c| !c.is_whitespace()).collect();
        while !rest.is_empty() {
            let syntax = |message: &str| AfError::Syntax { line, message: message.to_string() };
            let open = rest.find('(').ok_or_else(|| syntax("expected `(`"))?;
            let close = rest.find(").").ok_or_else(|| syntax("expected `).`"))?;
            if close < open {
                return Err(syntax("unbalanced parentheses"));
            }
            let predicate = &rest[..open];
            let body = &rest[open + 1..close];
            match predicate {
                "arg" => {
                    if !valid_name(body) {
                        return Err(syntax(&format!("invalid argument name `{body}`")));
                    }
                    if index.contains_key(body) {
                        return Err(AfError::DuplicateArgument { line, name: body.to_string() });
                    }
                    index.insert(body.to_string(), names.len());
                    names.push(body.to_string());
                }
                "att" => {
                    let (a, b) = body
                        .split_once(',')
                        .ok_or_else(|| syntax("expected `att(<a>,<b>)`"))?;
                    if !valid_name(a) || !valid_name(b) {
                        return Err(syntax(&format!("invalid attack `{body}`")));
                    }
                    raw_attacks.push((line, a.to_string(), b.to_string()));
                }
                other => return Err(syntax(&format!("unknown predicate `{other}`"))),
            }
            rest = rest[close + 2..].to_string();
        }
    }

    let mut attacks = Vec::with_capacity(raw_attacks.len());
    for (line, a, b) in raw_attacks {
        let lookup = |n: String| {
            index.get(&n).copied().ok_or(AfError::UndeclaredArgument { line, name: n })
        };
        attacks.push((lookup(a)?, lookup(b)?));
    }
    ArgumentationFramework::new(names, attacks)
}

/// Parses trivial graph format: one argument per line (extra tokens after the
/// name are ignored), a `#` line, then `a b` attack lines.
pub fn parse_tgf(text: &str) -> Result<ArgumentationFramework, AfError> {
    let mut names = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut attacks = Vec::new();
    let mut in_edges = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "#" {
            if in_edges {
                return Err(AfError::Syntax { line, message: "second `#` separator".into() });
            }
            in_edges = true;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        if !in_edges {
            let name = tokens.next().unwrap_or_default();
            if !valid_name(name) {
                return Err(AfError::Syntax { line, message: format!("invalid argument name `{name}`") });
            }
            if index.insert(name.to_string(), names.len()).is_some() {
                return Err(AfError::DuplicateArgument { line, name: name.to_string() });
            }
            names.push(name.to_string());
        } else {
            let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
                return Err(AfError::Syntax { line, message: "expected `<a> <b>`".into() });
            };
            let lookup = |n: &str| {
                index
                    .get(n)
                    .copied()
                    .ok_or_else(|| AfError::UndeclaredArgument { line, name: n.to_string() })
            };
            attacks.push((lookup(a)?, lookup(b)?));
        }
    }
    if !in_edges {
        return Err(AfError::MissingSeparator);
    }
    ArgumentationFramework::new(names, attacks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::In, Label::Out, Label::Undec];
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        })
    }
}

/// A total labelling, indexed by argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling(pub Vec<Label>);

impl Labelling {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The in-set of the labelling.
    pub fn extension(&self) -> Extension {
        Extension(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == Label::In)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// Every labelling over `k` arguments, in lexicographic order of labels.
    pub fn all(k: usize) -> impl Iterator<Item = Labelling> {
        let total = 3usize.pow(k as u32);
        (0..total).map(move |mut code| {
            let mut labels = Vec::with_capacity(k);
            for _ in 0..k {
                labels.push(Label::ALL[code % 3]);
                code /= 3;
            }
            Labelling(labels)
        })
    }
}

impl std::ops::Index<usize> for Labelling {
    type Output = Label;
    fn index(&self, i: usize) -> &Label {
        &self.0[i]
    }
}

/// A set of argument indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Extension(pub BTreeSet<usize>);

impl Extension {
    pub fn empty() -> Self {
        Extension(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(&a)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Builds the extension whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64, k: usize) -> Self {
        Extension((0..k).filter(|&i| mask >> i & 1 == 1).collect())
    }
}

impl FromIterator<usize> for Extension {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Extension(iter.into_iter().collect())
    }
}

/// Sorts extensions by size (largest first), then lexicographically by the
/// sorted list of member names.
pub fn sort_extensions(af: &ArgumentationFramework, exts: &mut [Extension]) {
    exts.sort_by_cached_key(|e| (std::cmp::Reverse(e.len()), af.extension_names(e)));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(items: &[usize]) -> Extension {
        items.iter().copied().collect()
    }

    #[test]
    fn apx_basic() {
        let af = parse_apx("arg(a).\narg(b).\natt(a,b).").unwrap();
        assert_eq!(af.names(), ["a", "b"]);
        assert_eq!(af.attacks().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn apx_self_attack_comments_and_whitespace() {
        let af = parse_apx("% header\n arg( a ) . % trailing\n\natt(a , a).\n").unwrap();
        assert_eq!(af.len(), 1);
        assert!(af.attacks_contains(0, 0));
    }

    #[test]
    fn apx_errors() {
        assert!(matches!(parse_apx("att(a,b)."), Err(AfError::UndeclaredArgument { line: 1, .. })));
        assert!(matches!(
            parse_apx("arg(a).\narg(a)."),
            Err(AfError::DuplicateArgument { line: 2, .. })
        ));
        assert!(matches!(parse_apx("arg(a).\nfoo"), Err(AfError::Syntax { line: 2, .. })));
        assert!(matches!(parse_apx("arg(a).\nargh(b)."), Err(AfError::Syntax { line: 2, .. })));
        assert_eq!(parse_apx("% nothing\n"), Err(AfError::Empty));
    }

    #[test]
    fn tgf_cases() {
        let af = parse_tgf("a\nb\n#\na b").unwrap();
        assert_eq!(af.names(), ["a", "b"]);
        assert_eq!(af.attacks().collect::<Vec<_>>(), vec![(0, 1)]);
        let af = parse_tgf("a\n#\n").unwrap();
        assert_eq!(af.len(), 1);
        assert_eq!(af.num_attacks(), 0);
        assert!(matches!(parse_tgf("a\nb\n#\nb c"), Err(AfError::UndeclaredArgument { .. })));
        assert_eq!(parse_tgf("a\nb\n"), Err(AfError::MissingSeparator));
    }

    #[test]
    fn duplicate_attacks_collapse() {
        let af = parse_apx("arg(a).\narg(b).\natt(a,b).\natt(a,b).").unwrap();
        assert_eq!(af.num_attacks(), 1);
    }

    #[test]
    fn attackers_examples() {
        let af = ArgumentationFramework::from_names(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(af.attackers(1).unwrap(), &[0]);
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]).unwrap();
        assert_eq!(af.attackers(0).unwrap(), &[0]);
        let af = ArgumentationFramework::from_names(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(af.attackers(2).unwrap(), &[0, 1]);
        assert!(matches!(af.attackers(3), Err(AfError::IndexOutOfRange { index: 3, len: 3 })));
    }

    #[test]
    fn conflict_freeness() {
        let af = ArgumentationFramework::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(af.is_conflict_free(&ext(&[0])));
        assert!(!af.is_conflict_free(&ext(&[0, 1])));
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]).unwrap();
        assert!(!af.is_conflict_free(&ext(&[0])));
    }

    #[test]
    fn acceptability() {
        let chain = ArgumentationFramework::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(chain.is_acceptable(2, &ext(&[0])));
        assert!(!chain.is_acceptable(1, &Extension::empty()));
        assert!(chain.is_acceptable(0, &Extension::empty()));
        assert!(chain.is_acceptable(0, &ext(&[1, 2])));
    }

    #[test]
    fn mutual_attack_semantics() {
        let af = ArgumentationFramework::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(af.is_preferred(&ext(&[0])).unwrap());
        assert!(af.is_complete(&Extension::empty()));
        assert!(!af.is_preferred(&Extension::empty()).unwrap());
    }

    #[test]
    fn no_attacks_everything_complete() {
        let af = ArgumentationFramework::from_names(&["a", "b", "c"], &[]).unwrap();
        assert!(af.is_complete(&ext(&[0, 1, 2])));
        assert!(!af.is_complete(&ext(&[0, 1])));
    }

    #[test]
    fn three_cycle() {
        let af = ArgumentationFramework::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
            .unwrap();
        assert!(af.is_complete(&Extension::empty()));
        assert!(af.is_preferred(&Extension::empty()).unwrap());
    }

    #[test]
    fn preferred_cap() {
        let names: Vec<String> = (0..21).map(|i| format!("a{i}")).collect();
        let af = ArgumentationFramework::new(names, []).unwrap();
        assert_eq!(
            af.is_preferred(&Extension::empty()),
            Err(AfError::SizeCapExceeded { args: 21, cap: 20 })
        );
        assert_eq!(af.is_preferred_with_cap(&(0..21).collect(), 21), Ok(true));
    }

    #[test]
    fn complete_labelling_examples() {
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]).unwrap();
        assert!(af.is_complete_labelling(&Labelling(vec![Label::Undec])));
        assert!(!af.is_complete_labelling(&Labelling(vec![Label::In])));
        assert!(!af.is_complete_labelling(&Labelling(vec![Label::Out])));
        let af = ArgumentationFramework::from_names(&["a"], &[]).unwrap();
        assert!(af.is_complete_labelling(&Labelling(vec![Label::In])));
    }

    #[test]
    fn labelling_extension_conversions() {
        let af = ArgumentationFramework::from_names(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(af.labelling_from_extension(&ext(&[0])), Labelling(vec![Label::In, Label::Out]));
        let af = ArgumentationFramework::from_names(&["a"], &[("a", "a")]).unwrap();
        assert_eq!(af.labelling_from_extension(&Extension::empty()), Labelling(vec![Label::Undec]));
        let chain = ArgumentationFramework::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let s = ext(&[0, 2]);
        assert_eq!(chain.labelling_from_extension(&s).extension(), s);
    }

    #[test]
    fn invalid_constructions() {
        assert_eq!(ArgumentationFramework::new(vec![], []), Err(AfError::Empty));
        assert!(matches!(
            ArgumentationFramework::new(vec!["a-b".into()], []),
            Err(AfError::InvalidName(_))
        ));
        assert!(matches!(
            ArgumentationFramework::new(vec!["a".into()], [(0, 1)]),
            Err(AfError::IndexOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn serializers_round_trip() {
        let af = parse_apx("arg(x).\narg(y).\narg(z).\natt(z,x).\natt(x,x).\natt(y,z).").unwrap();
        assert_eq!(parse_apx(&af.to_apx()).unwrap(), af);
        assert_eq!(parse_tgf(&af.to_tgf()).unwrap(), af);
    }

    #[test]
    fn labellings_enumerated() {
        assert_eq!(Labelling::all(3).count(), 27);
        assert_eq!(Labelling::all(0).count(), 1);
    }
}
