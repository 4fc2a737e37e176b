mod common;

use afsat::encoding::EncodingId;
use afsat::enumerate::{
    credulous_accept, enumerate_complete, enumerate_preferred, skeptical_accept, Backend,
};
use afsat::oracle::{oracle_complete, oracle_preferred};
use afsat::sat::SolverConfig;
use common::{arb_af, sorted};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn preferred_matches_oracle_under_every_encoding(af in arb_af(12)) {
        let expected = sorted(oracle_preferred(&af).unwrap());
        for enc in EncodingId::ALL {
            let got = enumerate_preferred(&af, enc, &Backend::default()).unwrap();
            prop_assert!(got.complete);
            prop_assert_eq!(sorted(got.extensions), expected.clone(), "{}", enc);
        }
    }

    #[test]
    fn complete_matches_oracle(af in arb_af(9), i in 0usize..6) {
        let got = enumerate_complete(&af, EncodingId::ALL[i], &Backend::default()).unwrap();
        prop_assert_eq!(sorted(got.extensions), sorted(oracle_complete(&af).unwrap()));
    }

    #[test]
    fn results_do_not_depend_on_branching_seed(af in arb_af(12)) {
        let base = enumerate_preferred(&af, EncodingId::C2, &Backend::default()).unwrap().extensions;
        for seed in 1..=5 {
            let got = enumerate_preferred(&af, EncodingId::C2, &Backend::builtin_seeded(seed)).unwrap();
            prop_assert_eq!(&got.extensions, &base);
        }
    }

    #[test]
    fn results_do_not_depend_on_clause_learning(af in arb_af(10)) {
        let plain = Backend::Builtin(SolverConfig { learning: false, ..SolverConfig::default() });
        let a = enumerate_preferred(&af, EncodingId::C1, &plain).unwrap().extensions;
        let b = enumerate_preferred(&af, EncodingId::C1, &Backend::default()).unwrap().extensions;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inner_loops_climb_strictly(af in arb_af(12), seed in 0u64..8) {
        let r = enumerate_preferred(&af, EncodingId::C2, &Backend::builtin_seeded(seed)).unwrap();
        for chain in &r.chains {
            prop_assert!(chain.len() <= af.len());
            for w in chain.windows(2) {
                prop_assert!(w[0].is_subset(&w[1]) && w[0] != w[1]);
            }
        }
    }

    #[test]
    fn extensions_form_an_antichain(af in arb_af(12)) {
        let r = enumerate_preferred(&af, EncodingId::C3, &Backend::default()).unwrap();
        for (i, x) in r.extensions.iter().enumerate() {
            for (j, y) in r.extensions.iter().enumerate() {
                prop_assert!(i == j || !x.is_subset(y));
            }
        }
    }

    #[test]
    fn acceptance_queries_match_extensions(af in arb_af(8)) {
        let prefs = oracle_preferred(&af).unwrap();
        for a in 0..af.len() {
            let cred = credulous_accept(&af, EncodingId::C2, &Backend::default(), a).unwrap();
            let skep = skeptical_accept(&af, EncodingId::C2, &Backend::default(), a).unwrap();
            prop_assert_eq!(cred, prefs.iter().any(|e| e.contains(a)));
            prop_assert_eq!(skep, prefs.iter().all(|e| e.contains(a)));
        }
    }
}
