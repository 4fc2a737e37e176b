//! Brute-force reference semantics and the classification of constraint
//! subsets.
//!
//! Everything here is exponential and meant as ground truth for the SAT-based
//! machinery: extensions are found by scanning all `2^k` subsets, and the
//! constraint classifier searches small frameworks exhaustively for
//! counterexamples.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::af::{AfError, ArgumentationFramework, Extension, Label, Labelling, DEFAULT_SIZE_CAP};

fn attacker_masks(af: &ArgumentationFramework) -> Vec<u64> {
    (0..af.len())
        .map(|a| af.attackers_of(a).iter().fold(0u64, |m, &b| m | 1 << b))
        .collect()
}

fn check_cap(af: &ArgumentationFramework, cap: usize) -> Result<(), AfError> {
    // masks are u64, so 63 is a hard ceiling regardless of the cap
    if af.len() > cap.min(63) {
        return Err(AfError::SizeCapExceeded { args: af.len(), cap: cap.min(63) });
    }
    Ok(())
}

/// Arguments defended by `set`: those whose every attacker is attacked by `set`.
fn defended_mask(att: &[u64], set: u64) -> u64 {
    let mut out = 0;
    for (a, &attackers) in att.iter().enumerate() {
        let mut rest = attackers;
        let mut ok = true;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if att[b] & set == 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out |= 1 << a;
        }
    }
    out
}

fn conflict_free_mask(att: &[u64], set: u64) -> bool {
    let mut rest = set;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if att[a] & set != 0 {
            return false;
        }
    }
    true
}

fn to_extensions(masks: Vec<u64>, k: usize) -> Vec<Extension> {
    let mut out: Vec<Extension> = masks.into_iter().map(|m| Extension::from_mask(m, k)).collect();
    out.sort();
    out
}

/// All complete extensions, by scanning every subset. Sorted.
pub fn oracle_complete(af: &ArgumentationFramework) -> Result<Vec<Extension>, AfError> {
    oracle_complete_with_cap(af, DEFAULT_SIZE_CAP)
}

pub fn oracle_complete_with_cap(af: &ArgumentationFramework, cap: usize) -> Result<Vec<Extension>, AfError> {
    check_cap(af, cap)?;
    let att = attacker_masks(af);
    let masks = (0..1u64 << af.len())
        .filter(|&s| conflict_free_mask(&att, s) && defended_mask(&att, s) == s)
        .collect();
    Ok(to_extensions(masks, af.len()))
}

/// All preferred extensions as the maximal admissible sets. Sorted.
///
/// This route does not go through complete extensions, so comparing it with
/// the maximal elements of [`oracle_complete`] is a genuine cross-check.
pub fn oracle_preferred(af: &ArgumentationFramework) -> Result<Vec<Extension>, AfError> {
    oracle_preferred_with_cap(af, DEFAULT_SIZE_CAP)
}

pub fn oracle_preferred_with_cap(af: &ArgumentationFramework, cap: usize) -> Result<Vec<Extension>, AfError> {
    check_cap(af, cap)?;
    let att = attacker_masks(af);
    let mut admissible: Vec<u64> = (0..1u64 << af.len())
        .filter(|&s| conflict_free_mask(&att, s) && s & !defended_mask(&att, s) == 0)
        .collect();
    admissible.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut maximal: Vec<u64> = Vec::new();
    for s in admissible {
        if !maximal.iter().any(|&m| s & m == s) {
            maximal.push(s);
        }
    }
    Ok(to_extensions(maximal, af.len()))
}

/// The ⊆-maximal members of a family of extensions. Sorted.
pub fn maximal_elements(family: &[Extension]) -> Vec<Extension> {
    let mut out: Vec<Extension> = family
        .iter()
        .filter(|e| !family.iter().any(|f| f != *e && e.is_subset(f)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// One of the six per-argument terms whose conjunction defines complete
/// labellings. `*Implies` is the left-to-right direction (label ⇒ condition on
/// attackers), `*ImpliedBy` the right-to-left one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintTerm {
    InImplies,
    InImpliedBy,
    OutImplies,
    OutImpliedBy,
    UndecImplies,
    UndecImpliedBy,
}

impl ConstraintTerm {
    pub const ALL: [ConstraintTerm; 6] = [
        ConstraintTerm::InImplies,
        ConstraintTerm::InImpliedBy,
        ConstraintTerm::OutImplies,
        ConstraintTerm::OutImpliedBy,
        ConstraintTerm::UndecImplies,
        ConstraintTerm::UndecImpliedBy,
    ];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    /// Whether the term holds for argument `a` under `lab`.
    pub fn holds(self, af: &ArgumentationFramework, lab: &Labelling, a: usize) -> bool {
        let att = af.attackers_of(a);
        let label = lab[a];
        match self {
            ConstraintTerm::InImplies | ConstraintTerm::InImpliedBy => {
                let cond = att.iter().all(|&b| lab[b] == Label::Out);
                implication(self == ConstraintTerm::InImplies, label == Label::In, cond)
            }
            ConstraintTerm::OutImplies | ConstraintTerm::OutImpliedBy => {
                let cond = att.iter().any(|&b| lab[b] == Label::In);
                implication(self == ConstraintTerm::OutImplies, label == Label::Out, cond)
            }
            ConstraintTerm::UndecImplies | ConstraintTerm::UndecImpliedBy => {
                let cond = att.iter().all(|&b| lab[b] != Label::In)
                    && att.iter().any(|&b| lab[b] == Label::Undec);
                implication(self == ConstraintTerm::UndecImplies, label == Label::Undec, cond)
            }
        }
    }
}

fn implication(forward: bool, labelled: bool, cond: bool) -> bool {
    if forward {
        !labelled || cond
    } else {
        !cond || labelled
    }
}

impl fmt::Display for ConstraintTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintTerm::InImplies => "in->",
            ConstraintTerm::InImpliedBy => "in<-",
            ConstraintTerm::OutImplies => "out->",
            ConstraintTerm::OutImpliedBy => "out<-",
            ConstraintTerm::UndecImplies => "undec->",
            ConstraintTerm::UndecImpliedBy => "undec<-",
        })
    }
}

/// A subset of the six constraint terms, stored as a bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConstraintSubset(u8);

impl ConstraintSubset {
    pub const EMPTY: ConstraintSubset = ConstraintSubset(0);
    pub const FULL: ConstraintSubset = ConstraintSubset(0b11_1111);

    pub fn from_bits(bits: u8) -> Option<Self> {
        (bits <= Self::FULL.0).then_some(ConstraintSubset(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(terms: &[ConstraintTerm]) -> Self {
        ConstraintSubset(terms.iter().fold(0, |m, t| m | t.bit()))
    }

    /// All 64 subsets in bit order.
    pub fn all() -> impl Iterator<Item = ConstraintSubset> {
        (0..=Self::FULL.0).map(ConstraintSubset)
    }

    pub fn contains(self, t: ConstraintTerm) -> bool {
        self.0 & t.bit() != 0
    }

    pub fn terms(self) -> impl Iterator<Item = ConstraintTerm> {
        ConstraintTerm::ALL.into_iter().filter(move |t| self.contains(*t))
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_subset(self, other: ConstraintSubset) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Display for ConstraintSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", terms.join(","))
    }
}

/// The five correct constraints no strict subset of which is correct.
pub fn minimal_correct_subsets() -> [ConstraintSubset; 5] {
    use ConstraintTerm::*;
    [
        ConstraintSubset::of(&[InImplies, InImpliedBy, OutImplies, OutImpliedBy]),
        ConstraintSubset::of(&[OutImplies, OutImpliedBy, UndecImplies, UndecImpliedBy]),
        ConstraintSubset::of(&[InImplies, InImpliedBy, UndecImplies, UndecImpliedBy]),
        ConstraintSubset::of(&[InImplies, OutImplies, UndecImplies]),
        ConstraintSubset::of(&[InImpliedBy, OutImpliedBy, UndecImpliedBy]),
    ]
}

/// Whether `lab` satisfies every term of `c` at every argument.
pub fn satisfies_terms(af: &ArgumentationFramework, lab: &Labelling, c: ConstraintSubset) -> bool {
    (0..af.len()).all(|a| c.terms().all(|t| t.holds(af, lab, a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Weak,
    CorrectNonRedundant,
    Redundant,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Weak => "weak",
            Verdict::CorrectNonRedundant => "correct_non_redundant",
            Verdict::Redundant => "redundant",
        })
    }
}

/// A framework and a labelling on which a constraint and complete labelling
/// disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub af: ArgumentationFramework,
    pub labelling: Labelling,
}

impl Witness {
    pub fn describe(&self) -> String {
        let attacks: Vec<String> = self
            .af
            .attacks()
            .map(|(a, b)| format!("{}->{}", self.af.name(a), self.af.name(b)))
            .collect();
        let labels: Vec<String> = (0..self.af.len())
            .map(|a| format!("{}:{}", self.af.name(a), self.labelling[a]))
            .collect();
        format!("attacks [{}] labelling {{{}}}", attacks.join(","), labels.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub subset: ConstraintSubset,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("no witness found for weak constraint {subset} on frameworks with up to {max_args} arguments")]
    NoWitness { subset: ConstraintSubset, max_args: usize },
}

const ARG_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Every framework over `1..=max_args` arguments (all attack relations,
/// self-attacks included), smallest first.
pub fn small_af_battery(max_args: usize) -> Vec<ArgumentationFramework> {
    assert!(max_args <= ARG_NAMES.len(), "battery limited to {} arguments", ARG_NAMES.len());
    let mut out = Vec::new();
    for k in 1..=max_args {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let attacks = pairs.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, p)| *p);
            let names = ARG_NAMES[..k].iter().map(|s| s.to_string()).collect();
            out.push(ArgumentationFramework::new(names, attacks).expect("battery framework is valid"));
        }
    }
    out
}

/// Searches `battery` for a labelling that satisfies `c` but is not complete.
pub fn find_weakness_witness(c: ConstraintSubset, battery: &[ArgumentationFramework]) -> Option<Witness> {
    battery.iter().find_map(|af| {
        Labelling::all(af.len())
            .find(|lab| satisfies_terms(af, lab, c) && !af.is_complete_labelling(lab))
            .map(|labelling| Witness { af: af.clone(), labelling })
    })
}

/// Searches `battery` for any labelling on which `c` and complete labelling
/// disagree (in either direction).
pub fn find_disagreement(c: ConstraintSubset, battery: &[ArgumentationFramework]) -> Option<Witness> {
    battery.iter().find_map(|af| {
        Labelling::all(af.len())
            .find(|lab| satisfies_terms(af, lab, c) != af.is_complete_labelling(lab))
            .map(|labelling| Witness { af: af.clone(), labelling })
    })
}

fn analytic_verdict(c: ConstraintSubset) -> Verdict {
    let minimal = minimal_correct_subsets();
    if minimal.contains(&c) {
        Verdict::CorrectNonRedundant
    } else if minimal.iter().any(|m| m.is_subset(c)) {
        Verdict::Redundant
    } else {
        Verdict::Weak
    }
}

fn classify_against(
    c: ConstraintSubset,
    battery: &[ArgumentationFramework],
) -> Result<ClassificationVerdict, ClassifyError> {
    let verdict = analytic_verdict(c);
    let witness = match verdict {
        Verdict::Weak => {
            let found = find_weakness_witness(c, battery).or_else(|| {
                // escalate to four arguments, skipping the part already scanned
                let larger = small_af_battery(4);
                find_weakness_witness(c, &larger[battery.len().min(larger.len())..])
            });
            Some(found.ok_or(ClassifyError::NoWitness { subset: c, max_args: 4 })?)
        }
        _ => None,
    };
    Ok(ClassificationVerdict { subset: c, verdict, witness })
}

/// Classifies one constraint subset; weak verdicts carry a witness found on
/// frameworks with at most three arguments (four if needed).
pub fn classify_subset(c: ConstraintSubset) -> Result<ClassificationVerdict, ClassifyError> {
    classify_against(c, &small_af_battery(3))
}

/// Classifies all 64 subsets, in bit order.
pub fn classify_all() -> Result<Vec<ClassificationVerdict>, ClassifyError> {
    let battery = small_af_battery(3);
    ConstraintSubset::all().map(|c| classify_against(c, &battery)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConstraintTerm::*;

    fn af(args: &[&str], attacks: &[(&str, &str)]) -> ArgumentationFramework {
        ArgumentationFramework::from_names(args, attacks).unwrap()
    }

    fn exts(sets: &[&[usize]]) -> Vec<Extension> {
        let mut v: Vec<Extension> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn complete_examples() {
        let mutual = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert_eq!(oracle_complete(&mutual).unwrap(), exts(&[&[], &[0], &[1]]));
        let free = af(&["a", "b", "c", "d"], &[]);
        assert_eq!(oracle_complete(&free).unwrap(), exts(&[&[0, 1, 2, 3]]));
        let cycle = af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(oracle_complete(&cycle).unwrap(), exts(&[&[]]));
    }

    #[test]
    fn preferred_examples() {
        let mutual = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert_eq!(oracle_preferred(&mutual).unwrap(), exts(&[&[0], &[1]]));
        let selfie = af(&["a"], &[("a", "a")]);
        assert_eq!(oracle_preferred(&selfie).unwrap(), exts(&[&[]]));
        for k in 1..=6 {
            let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
            let pairs = (0..k).flat_map(|i| (0..k).map(move |j| (i, j)));
            let full = ArgumentationFramework::new(names, pairs).unwrap();
            assert_eq!(oracle_preferred(&full).unwrap(), exts(&[&[]]));
        }
    }

    #[test]
    fn preferred_is_maximal_complete_on_battery() {
        for af in small_af_battery(3) {
            let complete = oracle_complete(&af).unwrap();
            assert_eq!(oracle_preferred(&af).unwrap(), maximal_elements(&complete), "{}", af.to_apx());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let names: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        let big = ArgumentationFramework::new(names, []).unwrap();
        assert!(matches!(oracle_complete(&big), Err(AfError::SizeCapExceeded { .. })));
        assert_eq!(oracle_complete_with_cap(&big, 21).unwrap().len(), 1);
    }

    #[test]
    fn empty_conjunction_always_holds() {
        let a = af(&["a", "b"], &[("a", "b")]);
        for lab in Labelling::all(2) {
            assert!(satisfies_terms(&a, &lab, ConstraintSubset::EMPTY));
        }
    }

    #[test]
    fn self_attacker_out_satisfies_first_weak_constraint() {
        let a = af(&["a"], &[("a", "a")]);
        let c = ConstraintSubset::of(&[UndecImplies, UndecImpliedBy, InImplies, OutImpliedBy]);
        let lab = Labelling(vec![Label::Out]);
        assert!(satisfies_terms(&a, &lab, c));
        assert!(!a.is_complete_labelling(&lab));
    }

    #[test]
    fn full_set_matches_complete_labelling() {
        for a in small_af_battery(2) {
            for lab in Labelling::all(a.len()) {
                assert_eq!(satisfies_terms(&a, &lab, ConstraintSubset::FULL), a.is_complete_labelling(&lab));
            }
        }
    }

    #[test]
    fn single_verdicts() {
        let c = ConstraintSubset::of(&[InImplies, OutImplies, UndecImplies]);
        assert_eq!(classify_subset(c).unwrap().verdict, Verdict::CorrectNonRedundant);
        let c = ConstraintSubset::of(&[UndecImplies, UndecImpliedBy, InImplies, OutImpliedBy]);
        let v = classify_subset(c).unwrap();
        assert_eq!(v.verdict, Verdict::Weak);
        let w = v.witness.unwrap();
        assert!(satisfies_terms(&w.af, &w.labelling, c));
        assert!(!w.af.is_complete_labelling(&w.labelling));
        assert_eq!(classify_subset(ConstraintSubset::FULL).unwrap().verdict, Verdict::Redundant);
    }

    #[test]
    fn subset_display() {
        let c = ConstraintSubset::of(&[InImplies, OutImpliedBy]);
        assert_eq!(c.to_string(), "{in->,out<-}");
        assert_eq!(ConstraintSubset::from_bits(64), None);
    }
}
