//! Times a full attribution vector for random models on growing word lengths.

use std::time::Instant;

use markov_shap::{Alphabet, MarkovChain, Matrix, ShapEngine, WeightMode, Wa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_wa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, dim: usize) -> Wa {
    let mut v = |n: usize| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let alpha = v(dim);
    let beta = v(dim);
    let mats = (0..alphabet.len()).map(|_| Matrix::from_rows((0..dim).map(|_| v(dim)).collect()).unwrap()).collect();
    Wa::new(alphabet.clone(), alpha, beta, mats).unwrap()
}

fn main() {
    let lengths: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("length")).collect();
    let lengths = if lengths.is_empty() { vec![10, 20, 30] } else { lengths };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alphabet = Alphabet::from_chars("ab").unwrap();
    let chain = MarkovChain::stationary(alphabet.clone(), vec![0.3, 0.7], vec![vec![0.6, 0.4], vec![0.25, 0.75]]).unwrap();
    let model = random_wa(&mut rng, &alphabet, 5);
    for n in lengths {
        let word: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let start = Instant::now();
        let engine = ShapEngine::new(&model, &word, &chain).unwrap();
        let scores = engine.shap_vector(WeightMode::ClassicShapley, false).unwrap();
        let total: f64 = scores.iter().map(|r| r.score).sum();
        println!("n={n:3} time={:8.3}s sum={total:.6e}", start.elapsed().as_secs_f64());
    }
}
