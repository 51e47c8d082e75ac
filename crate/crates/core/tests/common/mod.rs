//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use markov_shap::{Alphabet, DecisionTree, Extension, MarkovChain, Matrix, Rational, Transitions, VectorMarkov, Wa};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(size: usize) -> Alphabet {
    Alphabet::from_chars(&"abc"[..size]).unwrap()
}

fn uniform_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_wa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, dim: usize) -> Wa {
    let alpha = uniform_vec(rng, dim);
    let beta = uniform_vec(rng, dim);
    let mats = (0..alphabet.len())
        .map(|_| Matrix::from_rows((0..dim).map(|_| uniform_vec(rng, dim)).collect()).unwrap())
        .collect();
    Wa::new(alphabet.clone(), alpha, beta, mats).unwrap()
}

/// Strictly positive probability vector.
pub fn distribution(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

pub fn stochastic(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| distribution(rng, n)).collect()
}

pub fn stationary_chain(rng: &mut ChaCha8Rng, alphabet: &Alphabet) -> MarkovChain<f64> {
    let n = alphabet.len();
    MarkovChain::stationary(alphabet.clone(), distribution(rng, n), stochastic(rng, n)).unwrap()
}

pub fn positional_chain(rng: &mut ChaCha8Rng, alphabet: &Alphabet, stored: usize) -> MarkovChain<f64> {
    let n = alphabet.len();
    let matrices = (0..stored).map(|_| stochastic(rng, n)).collect();
    let extension = if rng.gen_bool(0.5) { Extension::RepeatLast } else { Extension::Uniform };
    MarkovChain::positional(alphabet.clone(), distribution(rng, n), matrices, extension).unwrap()
}

/// Stationary or positional with equal odds.
pub fn random_chain(rng: &mut ChaCha8Rng, alphabet: &Alphabet, len: usize) -> MarkovChain<f64> {
    if rng.gen_bool(0.5) {
        stationary_chain(rng, alphabet)
    } else {
        let stored = rng.gen_range(1..=len.max(1));
        positional_chain(rng, alphabet, stored)
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, size: usize, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..size)).collect()
}

pub fn vector_markov(rng: &mut ChaCha8Rng, n: usize) -> VectorMarkov<f64> {
    let pair = |rng: &mut ChaCha8Rng| {
        let d = distribution(rng, 2);
        [d[0], d[1]]
    };
    let init = pair(rng);
    let transitions = (1..n).map(|_| [pair(rng), pair(rng)]).collect();
    VectorMarkov::new(init, transitions).unwrap()
}

pub fn random_tree(rng: &mut ChaCha8Rng, num_vars: usize, depth: usize) -> DecisionTree {
    fn grow(rng: &mut ChaCha8Rng, free: &mut Vec<usize>, depth: usize) -> DecisionTree {
        if depth == 0 || free.is_empty() || rng.gen_bool(0.25) {
            return DecisionTree::Leaf(rng.gen_bool(0.5));
        }
        let var = free.swap_remove(rng.gen_range(0..free.len()));
        let low = grow(rng, &mut free.clone(), depth - 1);
        let high = grow(rng, &mut free.clone(), depth - 1);
        free.push(var);
        DecisionTree::split(var, low, high)
    }
    grow(rng, &mut (1..=num_vars).collect(), depth)
}

pub fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(0.5)).collect()
}

pub fn all_bits(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |b| (0..n).map(|j| b & (1 << j) != 0).collect())
}

pub fn random_wt(rng: &mut ChaCha8Rng, input: &Alphabet, output: &Alphabet, dim: usize) -> markov_shap::Wt {
    let alpha = uniform_vec(rng, dim);
    let beta = uniform_vec(rng, dim);
    let mats = (0..input.len() * output.len())
        .map(|_| Matrix::from_rows((0..dim).map(|_| uniform_vec(rng, dim)).collect()).unwrap())
        .collect();
    markov_shap::Wt::new(input.clone(), output.clone(), alpha, beta, mats).unwrap()
}

/// Automaton over `alphabet` reading words of length `n` whose value never
/// depends on 1-based position `free`: each position has its own random
/// matrices, shared by all symbols at `free`.
pub fn position_blind_wa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, n: usize, free: usize, d: usize) -> Wa {
    let dim = (n + 1) * d;
    let mut mats = vec![Matrix::zeros(dim, dim); alphabet.len()];
    for j in 0..n {
        let shared: Vec<Vec<f64>> = (0..d).map(|_| uniform_vec(rng, d)).collect();
        for m in mats.iter_mut() {
            let block: Vec<Vec<f64>> = if j + 1 == free { shared.clone() } else { (0..d).map(|_| uniform_vec(rng, d)).collect() };
            for (r, row) in block.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    m.set(j * d + r, (j + 1) * d + c, *v);
                }
            }
        }
    }
    let mut alpha = vec![0.0; dim];
    alpha[..d].copy_from_slice(&uniform_vec(rng, d));
    let mut beta = vec![0.0; dim];
    beta[n * d..].copy_from_slice(&uniform_vec(rng, d));
    Wa::new(alphabet.clone(), alpha, beta, mats).unwrap()
}

/// The state sequence of a deterministic automaton on `word` (the single
/// nonzero coordinate of the forward vector after each prefix).
pub fn deterministic_path(a: &Wa, word: &[usize]) -> Vec<usize> {
    let single = |v: &[f64]| {
        let nz: Vec<usize> = (0..v.len()).filter(|&q| v[q] != 0.0).collect();
        assert_eq!(nz.len(), 1, "forward vector is not a single state");
        nz[0]
    };
    let mut v = a.alpha().to_vec();
    let mut path = vec![single(&v)];
    for &s in word {
        v = a.transition(s).left_mul(&v);
        path.push(single(&v));
    }
    path
}

/// Rounds every probability to a multiple of 1/64 and renormalises in exact
/// arithmetic, so rows sum to exactly one.
pub fn exactly_stochastic(chain: &MarkovChain<f64>) -> MarkovChain<Rational> {
    let row = |r: &[f64]| {
        let ticks: Vec<i64> = r.iter().map(|x| (x * 64.0).round().max(1.0) as i64).collect();
        let total: i64 = ticks.iter().sum();
        ticks.iter().map(|&t| Rational::new(t.into(), total.into())).collect::<Vec<_>>()
    };
    let rows = |m: &Vec<Vec<f64>>| m.iter().map(|r| row(r)).collect::<Vec<_>>();
    let transitions = match chain.transitions() {
        Transitions::Stationary(m) => Transitions::Stationary(rows(m)),
        Transitions::Positional { matrices, extension } => {
            Transitions::Positional { matrices: matrices.iter().map(rows).collect(), extension: *extension }
        }
    };
    MarkovChain::new(chain.alphabet().clone(), row(chain.init()), transitions).unwrap()
}
