mod common;

use common::*;
use markov_shap::boolean::{check_disjoint, ddnf_to_wa, dt_to_ddnf, shap_boolean, Disjointness};
use markov_shap::{BooleanModel, Clause, DecisionTree, DisjointDnf, Literal, Pipeline, VectorMarkov, WeightMode};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn compiled_formulas_agree_with_truth_tables() {
    let mut r = rng(1);
    for _ in 0..30 {
        let n = r.gen_range(1..=10);
        let tree = random_tree(&mut r, n, 6);
        let dnf = dt_to_ddnf(&tree, n).unwrap();
        let wa = ddnf_to_wa::<f64>(&dnf).unwrap();
        let mut models = 0.0;
        for x in all_bits(n) {
            let w: Vec<usize> = x.iter().map(|&b| b as usize).collect();
            let v = wa.evaluate(&w).unwrap();
            assert_eq!(v, tree.evaluate(&x) as u8 as f64);
            assert_eq!(dnf.evaluate(&x), tree.evaluate(&x));
            models += v;
        }
        assert_eq!(Pipeline::from(wa).partition_constant(n).unwrap(), models);
    }
}

fn clause_strategy(n: usize) -> impl Strategy<Value = Clause> {
    proptest::collection::vec(proptest::option::of(any::<bool>()), n).prop_map(|lits| {
        let literals = lits
            .into_iter()
            .enumerate()
            .filter_map(|(j, l)| l.map(|positive| Literal { var: j + 1, positive }))
            .collect();
        Clause::new(literals).unwrap()
    })
}

proptest! {
    #[test]
    fn overlap_witness_satisfies_both_clauses(clauses in proptest::collection::vec(clause_strategy(5), 1..5)) {
        match check_disjoint(&clauses, 5) {
            Disjointness::Overlap { first, second, witness } => {
                prop_assert!(clauses[first].satisfied_by(&witness));
                prop_assert!(clauses[second].satisfied_by(&witness));
            }
            Disjointness::Disjoint => {
                for x in all_bits(5) {
                    prop_assert!(clauses.iter().filter(|c| c.satisfied_by(&x)).count() <= 1);
                }
            }
        }
    }
}

#[test]
fn constant_models_score_zero() {
    let mut r = rng(2);
    let n = 4;
    let pv = vector_markov(&mut r, n);
    let x = random_bits(&mut r, n);
    for leaf in [true, false] {
        let model = BooleanModel::Tree { tree: DecisionTree::Leaf(leaf), num_vars: n };
        for mode in [WeightMode::ClassicShapley, WeightMode::PaperLiteral] {
            for i in 1..=n {
                assert!(shap_boolean(&model, &x, i, &pv, mode).unwrap().score.abs() < 1e-12);
            }
        }
    }
}

#[test]
fn dimension_and_disjointness_errors() {
    let pv = VectorMarkov::<f64>::independent(3, 0.5).unwrap();
    let model = BooleanModel::Dnf(DisjointDnf::new(2, vec![Clause::from_signed(&[1]).unwrap()]).unwrap());
    assert!(shap_boolean(&model, &[true, false], 1, &pv, WeightMode::ClassicShapley).is_err());
    assert!(DisjointDnf::new(3, vec![Clause::from_signed(&[1, 2]).unwrap(), Clause::from_signed(&[2, 3]).unwrap()]).is_err());
    assert!(DisjointDnf::new(2, vec![Clause::from_signed(&[3]).unwrap()]).is_err());
    let bad_tree = DecisionTree::split(4, DecisionTree::Leaf(true), DecisionTree::Leaf(false));
    assert!(dt_to_ddnf(&bad_tree, 3).is_err());
}
