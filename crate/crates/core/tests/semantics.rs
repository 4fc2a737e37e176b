mod common;

use std::collections::BTreeSet;

use afsat::af::{parse_apx, parse_tgf, ArgumentationFramework, Extension, Labelling};
use afsat::oracle::{maximal_elements, oracle_complete, oracle_preferred};
use common::{arb_af, sorted};
use proptest::prelude::*;

fn all_subsets(k: usize) -> impl Iterator<Item = Extension> {
    (0u64..1 << k).map(move |m| Extension::from_mask(m, k))
}

fn complete_via_labellings(af: &ArgumentationFramework) -> BTreeSet<Extension> {
    Labelling::all(af.len()).filter(|l| af.is_complete_labelling(l)).map(|l| l.extension()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semantics_form_a_hierarchy(af in arb_af(7)) {
        for s in all_subsets(af.len()) {
            if af.is_preferred(&s).unwrap() {
                prop_assert!(af.is_complete(&s));
            }
            if af.is_complete(&s) {
                prop_assert!(af.is_admissible(&s));
            }
            if af.is_admissible(&s) {
                prop_assert!(af.is_conflict_free(&s));
            }
        }
    }

    #[test]
    fn labellings_and_extensions_correspond(af in arb_af(7)) {
        let by_subsets: BTreeSet<Extension> = all_subsets(af.len()).filter(|s| af.is_complete(s)).collect();
        prop_assert_eq!(complete_via_labellings(&af), by_subsets);
        for l in Labelling::all(af.len()).filter(|l| af.is_complete_labelling(l)) {
            prop_assert_eq!(af.labelling_from_extension(&l.extension()), l);
        }
    }

    #[test]
    fn preferred_oracle_is_maximal_complete(af in arb_af(9)) {
        let complete = oracle_complete(&af).unwrap();
        prop_assert_eq!(sorted(oracle_preferred(&af).unwrap()), sorted(maximal_elements(&complete)));
    }

    #[test]
    fn apx_round_trip(af in arb_af(12)) {
        prop_assert_eq!(parse_apx(&af.to_apx()).unwrap(), af);
    }

    #[test]
    fn tgf_round_trip(af in arb_af(12)) {
        prop_assert_eq!(parse_tgf(&af.to_tgf()).unwrap(), af);
    }
}

#[test]
fn correspondence_at_ten_arguments() {
    use afsat::generate::gen_probability;
    for (seed, p) in [(1, 0.1), (2, 0.2), (3, 0.35)] {
        let af = gen_probability(10, p, seed).unwrap();
        let by_subsets: BTreeSet<Extension> = all_subsets(10).filter(|s| af.is_complete(s)).collect();
        assert_eq!(complete_via_labellings(&af), by_subsets);
    }
}
