use ccodes::bounds::SmallCase;
use ccodes::code::{column_distances, Code, CodeParams};
use ccodes::explore::{
    enumerate_and_count, greedy_construct, random_search, sample_codes, superregular_in_field, SearchConfig,
};
use ccodes::gf::FieldSpec;
use ccodes::verify::{self, is_superregular_toeplitz, Property};
use num_bigint::BigUint;
use proptest::prelude::*;

fn p(n: usize, k: usize, d: usize) -> CodeParams {
    CodeParams::new(n, k, d).unwrap()
}

const PROPERTIES: [Property; 3] = [Property::Mdp, Property::ReverseMdp, Property::CompleteMdp];

#[test]
fn enumeration_matches_closed_forms() {
    let cfg = SearchConfig::default();
    let mut cases = vec![];
    for q in [2u64, 3, 4, 5, 7] {
        cases.push((p(2, 1, 1), q));
    }
    for n in [3, 4] {
        for q in [3u64, 4, 5] {
            cases.push((p(n, 1, 1), q));
            cases.push((p(n, n - 1, 1), q));
        }
    }
    for (params, q) in cases {
        let r = enumerate_and_count(params, q, Property::Mdp, &cfg).unwrap();
        let small = SmallCase::new(params).unwrap();
        assert_eq!(BigUint::from(r.total), small.sample_space(q), "{params} q={q}");
        for prop in PROPERTIES {
            assert_eq!(
                BigUint::from(r.matrices.get(prop)),
                small.matrix_count(prop, q),
                "{params} q={q} {prop}"
            );
            assert_eq!(BigUint::from(r.codes.get(prop)), small.code_count(prop, q));
        }
        assert_eq!(r.hierarchy_violations, 0);
    }
}

#[test]
fn minimal_fields_match_enumeration() {
    let cfg = SearchConfig::default();
    for params in [p(2, 1, 1), p(3, 1, 1), p(3, 2, 1), p(4, 3, 1)] {
        let small = SmallCase::new(params).unwrap();
        for prop in PROPERTIES {
            let first = [2u64, 3, 4, 5, 7]
                .into_iter()
                .find(|&q| enumerate_and_count(params, q, prop, &cfg).unwrap().exists);
            assert_eq!(first, small.min_field(prop), "{params} {prop}");
        }
    }
}

#[test]
fn greedy_codes_have_optimal_column_distances() {
    for params in [p(3, 2, 1), p(4, 3, 1), p(4, 2, 1)] {
        let out = greedy_construct(params, None, &SearchConfig::default()).unwrap();
        let Code::Parity(h) = out.code.clone().into_code().unwrap() else {
            panic!("greedy returns a parity check")
        };
        let g = h.to_generator().unwrap();
        assert!(column_distances(&g, params.l()).unwrap().is_optimal(), "{params}");
    }
}

/// Brute force over every first column, without the normalization the
/// search relies on.
#[test]
fn superregular_normalization_loses_nothing() {
    for (gamma, q) in [(3usize, 2u64), (3, 3), (4, 4), (4, 5), (5, 5)] {
        let f = FieldSpec::of_order(q).unwrap();
        let mut any = false;
        let total = (q - 1).pow(gamma as u32);
        for idx in 0..total {
            let a: Vec<u32> = (0..gamma).map(|i| 1 + ((idx / (q - 1).pow(i as u32)) % (q - 1)) as u32).collect();
            if is_superregular_toeplitz(&f, &a) {
                any = true;
                break;
            }
        }
        let (found, _) = superregular_in_field(gamma, q, &SearchConfig::default()).unwrap();
        assert_eq!(found.is_some(), any, "gamma {gamma} q {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_witnesses_verify(seed in any::<u64>(), pick in 0usize..4) {
        let (params, q) = [(p(3, 1, 1), 5), (p(3, 2, 1), 5), (p(4, 2, 1), 3), (p(4, 2, 2), 7)][pick];
        let cfg = SearchConfig { seed, max_tries: 2000, ..SearchConfig::default() };
        let r = random_search(params, q, Property::Mdp, &cfg).unwrap();
        if let Some(w) = r.witness {
            let g = match w.into_code().unwrap() {
                Code::Generator(g) => g,
                Code::Parity(h) => {
                    prop_assert!(verify::is_mdp(&h).unwrap().holds());
                    h.to_generator().unwrap()
                }
            };
            prop_assert!(column_distances(&g, params.l()).unwrap().is_optimal());
        }
    }

    #[test]
    fn sampled_codes_are_codes(seed in any::<u64>()) {
        for code in sample_codes(p(5, 3, 2), 3, 5, seed).unwrap() {
            let Code::Parity(h) = code else { panic!("systematic samples are parity checks") };
            prop_assert!(h.is_row_proper() && h.is_left_prime());
            prop_assert_eq!(h.row_degrees().iter().sum::<usize>(), 2);
        }
    }

    #[test]
    fn hierarchy_on_random_instances(seed in any::<u64>()) {
        for code in sample_codes(p(4, 2, 2), 5, 4, seed).unwrap() {
            let Code::Parity(h) = code else { unreachable!() };
            let complete = verify::is_complete_mdp(&h).unwrap().holds();
            let reverse = verify::is_reverse_mdp(&h).unwrap().holds();
            let mdp = verify::is_mdp(&h).unwrap().holds();
            prop_assert!(!complete || reverse);
            prop_assert!(!reverse || mdp);
        }
    }
}
