mod common;

use common::*;
use markov_shap::pattern::build_pattern_wa;
use markov_shap::{Alphabet, Pattern};
use proptest::prelude::*;

fn pattern_strategy(n: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b'), Just('#')], n).prop_map(|v| v.into_iter().collect())
}

#[test]
fn pattern_automata_are_uniform_distributions() {
    let a = Alphabet::from_chars("ab").unwrap();
    let ext = a.extended();
    let mut r = rng(1);
    for n in 0..=6 {
        let w = random_word(&mut r, 2, n);
        for k in 0..=n {
            let f = build_pattern_wa::<f64>(&a, &w, k).unwrap();
            let support: Vec<_> = ext
                .words(n)
                .filter(|p| {
                    let p = Pattern::new(&a, p.clone()).unwrap();
                    p.matches(&w) && p.num_hashes() == k
                })
                .collect();
            let mut total = 0.0;
            for p in ext.words(n) {
                let v = f.evaluate(&p).unwrap();
                assert!(v >= 0.0);
                assert_eq!(v != 0.0, support.contains(&p), "support differs at {p:?}");
                total += v;
            }
            assert!((total - 1.0).abs() < 1e-12);
            for p in &support {
                assert!((f.evaluate(p).unwrap() - 1.0 / support.len() as f64).abs() < 1e-15);
            }
            for other in (0..=8).filter(|&m| m != n) {
                assert_eq!(f.partition_constant(other), 0.0);
            }
        }
    }
}

proptest! {
    #[test]
    fn pos_and_sym_follow_appended_symbols(p in pattern_strategy(5), last in prop_oneof![Just('a'), Just('b'), Just('#')]) {
        let a = Alphabet::from_chars("ab").unwrap();
        let base = Pattern::parse(&a, &p).unwrap();
        let extended = Pattern::parse(&a, &format!("{p}{last}")).unwrap();
        if last == '#' {
            prop_assert_eq!(extended.pos(), base.pos());
            prop_assert_eq!(extended.sym(), base.sym());
        } else {
            prop_assert_eq!(extended.pos(), base.len() + 1);
            prop_assert_eq!(extended.sym(), a.index_of(&last.to_string()));
        }
    }

    #[test]
    fn swap_is_idempotent_and_local(p in pattern_strategy(6), i in 1usize..=6) {
        let a = Alphabet::from_chars("ab").unwrap();
        let p = Pattern::parse(&a, &p).unwrap();
        let s = p.swap(i).unwrap();
        prop_assert_eq!(s.swap(i).unwrap(), s.clone());
        prop_assert!(s.is_hash(i - 1));
        for j in (0..6).filter(|&j| j != i - 1) {
            prop_assert_eq!(s.entries()[j], p.entries()[j]);
        }
    }

    #[test]
    fn swapping_never_shrinks_the_match_set(p in pattern_strategy(4), i in 1usize..=4) {
        let a = Alphabet::from_chars("ab").unwrap();
        let p = Pattern::parse(&a, &p).unwrap();
        let s = p.swap(i).unwrap();
        for w in a.words(4) {
            prop_assert!(!p.matches(&w) || s.matches(&w));
        }
    }
}
