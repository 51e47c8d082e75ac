mod common;

use common::*;
use markov_shap::boolean::{boolean_engine, ddnf_to_wa, dt_to_ddnf};
use markov_shap::oracle::{oracle_shap_patterns, oracle_shap_subsets, oracle_value, OracleConfig};
use markov_shap::shap::{shap, shap_vector, value_v};
use markov_shap::{BooleanModel, Pattern, Rational, Scalar, ShapEngine, Wa, WeightMode};
use rand::Rng;

const MODES: [WeightMode; 2] = [WeightMode::ClassicShapley, WeightMode::PaperLiteral];

#[test]
fn value_function_matches_enumeration() {
    let mut r = rng(1);
    let cfg = OracleConfig::default();
    for case in 0..10 {
        let size = 2 + case % 2;
        let a = alphabet(size);
        let n = r.gen_range(1..=5);
        let model = random_wa(&mut r, &a, 3);
        let chain = random_chain(&mut r, &a, n);
        let w = random_word(&mut r, size, n);
        let engine = ShapEngine::new(&model, &w, &chain).unwrap();
        let f = |u: &[usize]| model.evaluate(u);
        for _ in 0..10 {
            let p = Pattern::new(&a, random_word(&mut r, size + 1, n)).unwrap();
            let expected = oracle_value(&f, p.entries(), &chain, &cfg).unwrap();
            assert!((engine.value(&p).unwrap() - expected).abs() < 1e-10);
        }
        let fixed = Pattern::from_word(&a, &w).unwrap();
        assert!((value_v(&model, &fixed, &chain).unwrap() - model.evaluate(&w).unwrap()).abs() < 1e-12);
    }
    let a = alphabet(2);
    let c = Wa::constant(a.clone(), -1.5);
    let chain = stationary_chain(&mut r, &a);
    let p = Pattern::parse(&a, "#a#").unwrap();
    assert!((value_v(&c, &p, &chain).unwrap() + 1.5).abs() < 1e-12);
}

#[test]
fn extreme_hash_counts() {
    let mut r = rng(2);
    let a = alphabet(3);
    let n = 4;
    let model = random_wa(&mut r, &a, 3);
    let chain = random_chain(&mut r, &a, n);
    let w = random_word(&mut r, 3, n);
    let engine = ShapEngine::new(&model, &w, &chain).unwrap();
    assert!((engine.shap1(0).unwrap() - model.evaluate(&w).unwrap()).abs() < 1e-12);
    let mean: f64 = a.words(n).map(|u| model.evaluate(&u).unwrap() * chain.seq_probability(&u).unwrap()).sum();
    assert!((engine.shap1(n).unwrap() - mean).abs() < 1e-12);
    for i in 1..=n {
        assert!((engine.shap2(i, n).unwrap() - mean).abs() < 1e-12);
    }
    assert!(engine.shap1(n + 1).is_err());
    assert!(engine.shap2(0, 1).is_err());
}

#[test]
fn vector_matches_single_positions_and_recombines() {
    let mut r = rng(3);
    let a = alphabet(2);
    let n = 5;
    let model = random_wa(&mut r, &a, 4);
    let chain = random_chain(&mut r, &a, n);
    let w = random_word(&mut r, 2, n);
    for mode in MODES {
        let all = shap_vector(&model, &w, &chain, mode).unwrap();
        for report in &all {
            let single = shap(&model, &w, report.position, &chain, mode).unwrap();
            assert_eq!(single.score, report.score);
            assert!((report.recombine().unwrap() - report.score).abs() < 1e-12);
            assert_eq!(report.mode, mode);
        }
    }
}

#[test]
fn thread_count_does_not_change_scores() {
    let mut r = rng(4);
    let a = alphabet(3);
    let n = 6;
    let model = random_wa(&mut r, &a, 3);
    let chain = random_chain(&mut r, &a, n);
    let w = random_word(&mut r, 3, n);
    let engine = ShapEngine::new(&model, &w, &chain).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| engine.shap_vector(WeightMode::ClassicShapley, true).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exact_arithmetic_reproduces_float_scores() {
    let mut r = rng(5);
    let cfg = OracleConfig::default();
    let to_exact = |x: &f64| Rational::from_f64_value(*x).unwrap();
    for case in 0..3 {
        let a = alphabet(2 + case % 2);
        let n = 3;
        let model = random_wa(&mut r, &a, 2);
        let chain = random_chain(&mut r, &a, n);
        let w = random_word(&mut r, a.len(), n);
        let exact_model = model.map_scalar(to_exact);
        let exact_chain = exactly_stochastic(&chain);
        let chain = exact_chain.map_scalar(|x| x.to_f64_lossy()).unwrap();
        let float_engine = ShapEngine::new(&model, &w, &chain).unwrap();
        let exact_engine = ShapEngine::new(&exact_model, &w, &exact_chain).unwrap();
        let f = |u: &[usize]| exact_model.evaluate(u);
        for mode in MODES {
            let floats = float_engine.shap_vector(mode, false).unwrap();
            let exacts = exact_engine.shap_vector(mode, false).unwrap();
            for (x, y) in floats.iter().zip(&exacts) {
                assert!((x.score - y.score.to_f64_lossy()).abs() < 1e-8);
                let oracle = oracle_shap_patterns(&f, &w, y.position, &exact_chain, mode, &cfg).unwrap();
                assert_eq!(oracle, y.score, "exact engine and exact oracle differ");
            }
        }
    }
}

#[test]
fn pattern_and_subset_oracles_coincide_on_boolean_functions() {
    let mut r = rng(6);
    let cfg = OracleConfig::default();
    for _ in 0..10 {
        let n = r.gen_range(1..=6);
        let tree = random_tree(&mut r, n, 4);
        let pv = vector_markov(&mut r, n);
        let x = random_bits(&mut r, n);
        let wa = ddnf_to_wa::<f64>(&dt_to_ddnf(&tree, n).unwrap()).unwrap();
        let chain = pv.sequentialize();
        let word: Vec<usize> = x.iter().map(|&b| b as usize).collect();
        let f_seq = |u: &[usize]| wa.evaluate(u);
        let f_bool = |z: &[bool]| tree.evaluate(z) as u8 as f64;
        for mode in MODES {
            for i in 1..=n {
                let a = oracle_shap_patterns(&f_seq, &word, i, &chain, mode, &cfg).unwrap();
                let b = oracle_shap_subsets(&f_bool, &x, i, &pv, mode, &cfg).unwrap();
                assert!((a - b).abs() < 1e-10);
            }
        }
        let model = BooleanModel::Tree { tree, num_vars: n };
        let direct = ShapEngine::new(&wa, &word, &chain).unwrap().shap_vector(WeightMode::ClassicShapley, false).unwrap();
        let reduced = boolean_engine(&model, &x, &pv).unwrap().shap_vector(WeightMode::ClassicShapley, false).unwrap();
        assert_eq!(direct, reduced);
    }
}

#[test]
fn mismatched_inputs_are_rejected() {
    let mut r = rng(7);
    let (a2, a3) = (alphabet(2), alphabet(3));
    let model = random_wa(&mut r, &a2, 2);
    let chain = stationary_chain(&mut r, &a3);
    assert!(ShapEngine::new(&model, &[0, 1], &chain).is_err());
    let chain = stationary_chain(&mut r, &a2);
    assert!(ShapEngine::new(&model, &[], &chain).is_err());
    assert!(ShapEngine::new(&model, &[0, 2], &chain).is_err());
    let engine = ShapEngine::new(&model, &[0, 1], &chain).unwrap();
    assert!(engine.shap(3, WeightMode::PaperLiteral, false).is_err());
    assert!(engine.value(&Pattern::all_hash(&a2, 3)).is_err());
}
